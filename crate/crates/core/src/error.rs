use thiserror::Error;

use crate::construction::ConstructionLog;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("missing parameter `{0}`")]
    MissingParam(&'static str),

    #[error("no vector of length {t} and weight {w} has all 1's separated by at least {d} zeros")]
    Infeasible { t: usize, w: usize, d: usize },

    #[error("index {index} out of range for a space of {count} elements")]
    IndexOutOfRange { index: String, count: String },

    #[error("vector is not a member of the space: {0}")]
    NotInSpace(String),

    #[error("enumeration of {count} items exceeds the budget of {budget}")]
    BudgetExceeded { count: String, budget: u64 },

    #[error("exact verification needs about {estimate} row operations, above the limit of {limit}")]
    WorkLimitExceeded { estimate: u128, limit: u128 },

    #[error("construction gave up after {} resamples (seed {})", .log.resample_count, .log.seed)]
    ConstructionBudget { log: Box<ConstructionLog> },

    #[error("column index {index} out of range for {n} columns")]
    ColumnOutOfRange { index: usize, n: usize },

    #[error("syndrome has length {actual}, matrix has {expected} rows")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
