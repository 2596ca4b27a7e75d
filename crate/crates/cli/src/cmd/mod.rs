pub mod bounds;
pub mod construct;
pub mod enumerate;
pub mod simulate;
pub mod verify;

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use rlsc::verification::WorkLimit;
use rlsc::CodeMatrix;
use serde_json::Value;

use crate::failure::{Failure, Status};

/// What a command hands back to `main` for printing.
pub struct Output {
    pub status: Status,
    pub report: Value,
    pub text: String,
}

/// Resolved command line, minus output-only options.
#[derive(Default)]
pub struct Argv(Vec<String>);

impl Argv {
    pub fn new(verb: &str) -> Self {
        Argv(vec![verb.to_string()])
    }

    pub fn arg(&mut self, flag: &str, value: impl ToString) -> &mut Self {
        self.0.push(flag.to_string());
        self.0.push(value.to_string());
        self
    }

    pub fn opt(&mut self, flag: &str, value: Option<impl ToString>) -> &mut Self {
        if let Some(v) = value {
            self.arg(flag, v);
        }
        self
    }

    pub fn flag(&mut self, flag: &str, on: bool) -> &mut Self {
        if on {
            self.0.push(flag.to_string());
        }
        self
    }

    pub fn positional(&mut self, value: impl ToString) -> &mut Self {
        self.0.push(value.to_string());
        self
    }

    pub fn into_vec(self) -> Vec<String> {
        self.0
    }
}

pub fn read_matrix(path: &Path) -> Result<CodeMatrix, Failure> {
    let file = File::open(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    CodeMatrix::read_from(BufReader::new(file))
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Verifier guard from `RLSC_WORK_LIMIT`: a number, or `none` to disable.
pub fn work_limit_from_env() -> Result<WorkLimit, Failure> {
    match std::env::var("RLSC_WORK_LIMIT") {
        Err(_) => Ok(WorkLimit::default()),
        Ok(v) if v.eq_ignore_ascii_case("none") => Ok(WorkLimit::UNLIMITED),
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map(|x| WorkLimit(Some(x)))
            .map_err(|_| Failure::usage(format!("RLSC_WORK_LIMIT: expected a number or `none`, got {v:?}"))),
    }
}

pub fn fresh_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}
