use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller broke an operation's precondition (shape mismatch, empty subset, ...).
    #[error("contract violation: {0}")]
    Contract(String),
    /// Input is well-formed but outside what the operation accepts.
    #[error("rejected input: {0}")]
    Rejected(String),
    /// Argument outside the domain where a closed formula is known.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not representable: {0}")]
    NotRepresentable(String),
    #[error("series truncation at M = {m} is insufficient (ratio bound {rho} >= 1)")]
    NeedsLargerTruncation { m: usize, rho: f64 },
    #[error("dense budget exceeded: {needed} entries > {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! ensure {
    ($cond:expr, $variant:ident, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::$variant(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;
