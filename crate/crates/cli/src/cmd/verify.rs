use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rlsc::verification::{
    check_column_weight, check_runlength, is_selector_exact, is_superimposed_exact, monte_carlo_check, VerificationReport,
    WorkLimit,
};
use rlsc::Error;
use serde_json::json;

use super::{fresh_seed, read_matrix, work_limit_from_env, Argv, Output};
use crate::failure::{Failure, Status};
use crate::report::envelope;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    MonteCarlo,
}

/// Checks a matrix file: runlength and weight, then the coverage property.
#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub path: PathBuf,
    /// Coverage strength; defaults to the file's k.
    #[arg(long)]
    pub k: Option<usize>,
    /// Selector parameter; defaults to the file's p, then to k.
    #[arg(long)]
    pub p: Option<usize>,
    /// Required gap; defaults to the file's d.
    #[arg(long)]
    pub d: Option<usize>,
    /// Required column weight; defaults to the file's w.
    #[arg(long)]
    pub w: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Sampled events (monte-carlo).
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    /// Sampling seed (monte-carlo).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Lift the exact-verification work guard.
    #[arg(long)]
    pub allow_large: bool,
}

fn verdict_line(r: &VerificationReport) -> String {
    let status = if r.is_pass() {
        "pass".to_string()
    } else if r.is_fail() {
        match r.witness() {
            Some(w) => format!("FAIL {}", serde_json::to_string(w).unwrap_or_default()),
            None => "FAIL (violation sampled)".to_string(),
        }
    } else {
        "no violation found".to_string()
    };
    format!("{:?}: {status}\n", r.property)
}

pub fn run(args: &VerifyArgs) -> Result<Output, Failure> {
    let m = read_matrix(&args.path)?;
    let limit = if args.allow_large { WorkLimit::UNLIMITED } else { work_limit_from_env()? };
    let k = args.k.or(m.meta.k);
    let p = args.p.or(m.meta.p.filter(|_| args.k.is_none())).or(k);
    let d = args.d.or(m.meta.d);
    let w = args.w.or(m.meta.w);
    let seed = (args.mode == Mode::MonteCarlo && k.is_some()).then(|| fresh_seed(args.seed));

    let mut argv = Argv::new("verify");
    argv.positional(args.path.display())
        .opt("--k", k)
        .opt("--p", p)
        .opt("--d", d)
        .opt("--w", w)
        .arg("--mode", args.mode.to_possible_value().unwrap().get_name());
    if args.mode == Mode::MonteCarlo {
        argv.arg("--trials", args.trials).opt("--seed", seed);
    }
    argv.flag("--allow-large", args.allow_large);
    let echo = json!({
        "path": args.path.display().to_string(),
        "rows": m.rows(), "cols": m.cols(),
        "k": k, "p": p, "d": d, "w": w,
        "mode": args.mode.to_possible_value().unwrap().get_name(),
        "trials": (args.mode == Mode::MonteCarlo).then_some(args.trials),
        "work_limit": limit.0.map(|x| x.to_string()),
    });
    let argv = argv.into_vec();

    let mut reports = Vec::new();
    if let Some(d) = d {
        reports.push(check_runlength(&m, d));
    }
    if let Some(w) = w {
        reports.push(check_column_weight(&m, w));
    }
    if let Some(k) = k {
        let p = p.unwrap_or(k);
        let coverage = match args.mode {
            Mode::Exact if p == k => is_superimposed_exact(&m, k, limit),
            Mode::Exact => is_selector_exact(&m, k, p, limit),
            Mode::MonteCarlo => monte_carlo_check(&m, k, p, args.trials, seed.expect("seed set")),
        };
        match coverage {
            Ok(r) => reports.push(r),
            Err(e @ Error::WorkLimitExceeded { .. }) => {
                let message = format!("{e}; set RLSC_WORK_LIMIT=none or pass --allow-large to proceed");
                let report = envelope("verify", &argv, seed, echo, json!({ "checks": reports, "refused": e.to_string() }));
                return Err(Failure {
                    status: Status::Budget,
                    message,
                    report: Some(report),
                });
            }
            Err(e) => return Err(e.into()),
        }
    }
    if reports.is_empty() {
        return Err(Failure::usage("nothing to check: pass --k, --d or --w, or record them in the file header"));
    }

    let failed = reports.iter().any(|r| r.is_fail());
    let text = reports.iter().map(verdict_line).collect();
    Ok(Output {
        status: if failed { Status::PropertyFail } else { Status::Ok },
        report: envelope("verify", &argv, seed, echo, json!({ "checks": reports })),
        text,
    })
}
