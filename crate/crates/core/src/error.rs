use thiserror::Error;

/// Failure modes shared by every operation in the crate.
///
/// Verdicts of theorem-check harnesses (a cover that fails, a sandwich that
/// leaks) are *not* errors; they are returned inside reports. Errors are
/// reserved for inputs outside an operation's contract and for exhausted
/// budgets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation's documented precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A parameter lies outside the operation's domain (e.g. `h = 0`).
    #[error("domain error: {0}")]
    Domain(String),
    /// Structurally malformed input (index out of range, shape mismatch).
    #[error("structural error: {0}")]
    Structural(String),
    /// A search or enumeration would exceed its configured budget.
    #[error("resource budget exceeded: {what} (needed {needed}, limit {limit}){}", if *.partial { ", search incomplete" } else { "" })]
    Resource {
        what: String,
        needed: u128,
        limit: u128,
        partial: bool,
    },
    /// A produced object failed its own certificate. Indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn budget(what: &str, needed: u128, limit: u128) -> Error {
    Error::Resource {
        what: what.to_string(),
        needed,
        limit,
        partial: false,
    }
}
