//! Text inputs: integer set files, real-valued function files, element maps
//! and small inline values such as `p/q`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use addstruct::{IntSet, Rational};
use num_bigint::BigInt;

#[derive(Debug)]
pub struct InputError {
    pub source: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "{}:{}: {}", self.source, l, self.message),
            None => write!(f, "{}: {}", self.source, self.message),
        }
    }
}

impl std::error::Error for InputError {}

fn err(source: &str, line: Option<usize>, message: impl Into<String>) -> InputError {
    InputError {
        source: source.to_string(),
        line,
        message: message.into(),
    }
}

pub fn read_text(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| err(&path.display().to_string(), None, e.to_string()))
}

// Non-blank lines that are not comments, with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_int(token: &str, radix: u32) -> Option<BigInt> {
    let (neg, digits) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token.strip_prefix('+').unwrap_or(token)),
    };
    let digits = if radix == 16 {
        digits
            .strip_prefix("0x")
            .or_else(|| digits.strip_prefix("0X"))
            .unwrap_or(digits)
    } else {
        digits
    };
    if digits.is_empty() || !digits.chars().all(|c| c.is_digit(radix)) {
        return None;
    }
    let v = BigInt::parse_bytes(digits.as_bytes(), radix)?;
    Some(if neg { -v } else { v })
}

/// Parse a set file: one integer per line, `#` comments, an optional first
/// directive `base=10` or `base=16`. Duplicates are merged.
pub fn parse_set(text: &str, source: &str) -> Result<IntSet, InputError> {
    let mut radix = 10;
    let mut elems = Vec::new();
    for (k, (line, body)) in content_lines(text).enumerate() {
        if let Some(b) = body.strip_prefix("base=") {
            if k != 0 {
                return Err(err(source, Some(line), "base directive must precede the first integer"));
            }
            radix = match b.trim() {
                "10" => 10,
                "16" => 16,
                other => return Err(err(source, Some(line), format!("unsupported base '{other}'"))),
            };
            continue;
        }
        let v = parse_int(body, radix)
            .ok_or_else(|| err(source, Some(line), format!("'{body}' is not a base-{radix} integer")))?;
        elems.push(v);
    }
    Ok(elems.into_iter().collect())
}

pub fn load_set(path: &Path) -> Result<IntSet, InputError> {
    parse_set(&read_text(path)?, &path.display().to_string())
}

/// One finite real value per line, `#` comments allowed.
pub fn parse_values(text: &str, source: &str) -> Result<Vec<f64>, InputError> {
    content_lines(text)
        .map(|(line, body)| {
            body.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(source, Some(line), format!("'{body}' is not a finite number")))
        })
        .collect()
}

pub fn load_values(path: &Path) -> Result<Vec<f64>, InputError> {
    parse_values(&read_text(path)?, &path.display().to_string())
}

/// Lines `x y` meaning `x ↦ y`.
pub fn parse_map(text: &str, source: &str) -> Result<Vec<(BigInt, BigInt)>, InputError> {
    content_lines(text)
        .map(|(line, body)| {
            let parts: Vec<&str> = body.split_whitespace().collect();
            match parts.as_slice() {
                [a, b] => match (parse_int(a, 10), parse_int(b, 10)) {
                    (Some(x), Some(y)) => Ok((x, y)),
                    _ => Err(err(source, Some(line), format!("'{body}' is not a pair of integers"))),
                },
                _ => Err(err(source, Some(line), "expected two integers 'x y'")),
            }
        })
        .collect()
}

pub fn load_map(path: &Path) -> Result<Vec<(BigInt, BigInt)>, InputError> {
    parse_map(&read_text(path)?, &path.display().to_string())
}

/// `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let r = Rational::from_str(s.trim()).map_err(|_| format!("'{s}' is not a rational of the form p/q"))?;
    Ok(r)
}

/// Comma-separated integers, e.g. `5,4` or `0,1,1,2`.
pub fn parse_i128_list(s: &str) -> Result<Vec<i128>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i128>().map_err(|_| format!("'{t}' is not an integer")))
        .collect()
}
