mod args;
mod commands;
mod input;
mod report;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Why a run ended without a verdict.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Resource(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Resource(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<addstruct::Error> for Failure {
    fn from(e: addstruct::Error) -> Self {
        match e {
            addstruct::Error::Resource { .. } => Failure::Resource(e.to_string()),
            addstruct::Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<input::InputError> for Failure {
    fn from(e: input::InputError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Usage(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("JSON: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: could not configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
