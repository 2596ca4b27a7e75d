use std::fmt;
use std::process::ExitCode;

use serde_json::Value;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    PropertyFail = 1,
    Usage = 2,
    Budget = 3,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

/// A command failure. `report` is still written when present.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
    pub report: Option<Value>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            status: Status::Usage,
            message: message.into(),
            report: None,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<rlsc::Error> for Failure {
    fn from(e: rlsc::Error) -> Self {
        use rlsc::Error::*;
        let status = match e {
            WorkLimitExceeded { .. } | ConstructionBudget { .. } | BudgetExceeded { .. } => Status::Budget,
            _ => Status::Usage,
        };
        Failure {
            status,
            message: e.to_string(),
            report: None,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}
