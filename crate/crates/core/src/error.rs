use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("value at index {index} has modulus {modulus} > 1")]
    NotOneBounded { index: i64, modulus: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("computation budget exceeded: {what} needs {needed}, limit {limit}")]
    BudgetExceeded { what: String, needed: u128, limit: u128 },

    #[error("hypothesis violated at h = {h}: correlation {corr} < delta {delta}")]
    HypothesisViolated { h: i64, corr: f64, delta: f64 },

    #[error("function is not locally linear: phi({a}) + phi({b}) != phi({sum}) mod 1")]
    NotLocallyLinear { a: i64, b: i64, sum: i64 },

    #[error("inconsistent linear system: rank(A) = {rank_a}, rank([A|b]) = {rank_ab}")]
    Inconsistent { rank_a: usize, rank_ab: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name: name.to_string(), reason: reason.into() }
    }
}
