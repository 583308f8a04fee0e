use thiserror::Error;

/// Errors raised by the arithmetic and search routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse basket {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid orbifold point ({b},{r}): {reason}")]
    InvalidPoint { b: i64, r: i64, reason: &'static str },

    #[error("P_-{m} evaluates to the non-integer {value}; the weighted basket is not geometric")]
    IntegralityFault { m: u32, value: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exceeded: {what} (limit {limit})")]
    SearchBudgetExceeded { what: &'static str, limit: usize },

    #[error("not found within horizon {horizon}: {what}")]
    NotFound { what: &'static str, horizon: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
