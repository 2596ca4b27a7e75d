use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{ArgGroup, Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rlsc::combinatorics::{Colex, SubsetCodec};
use rlsc::group_testing::{nagt_simulate, two_stage_simulate, SimAggregate, SimReport};
use rlsc::verification::{is_selector_exact, is_superimposed_exact};
use rlsc::CodeMatrix;
use serde_json::json;

use super::{fresh_seed, read_matrix, work_limit_from_env, Argv, Output};
use crate::failure::{Failure, Status};
use crate::report::envelope;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SimMode {
    /// One stage with a k-superimposed code; exact for up to k-1 positives.
    Nagt,
    /// Selector stage then singleton tests; the file must be a
    /// (2k, n, d, k+1)-selector, exact for up to k positives.
    TwoStage,
}

/// Runs group testing over one or more positive sets.
#[derive(Args, Debug)]
#[command(group(ArgGroup::new("sets").required(true).args(["positives", "all_up_to", "random"])))]
pub struct SimulateArgs {
    pub path: PathBuf,
    #[arg(long, value_enum)]
    pub mode: SimMode,
    /// Code strength (nagt) or positive budget (two-stage); defaults from the file header.
    #[arg(long)]
    pub k: Option<usize>,
    /// Comma-separated positive set; repeat for several sets.
    #[arg(long, allow_hyphen_values = true)]
    pub positives: Vec<String>,
    /// Every positive set of size at most this.
    #[arg(long)]
    pub all_up_to: Option<usize>,
    /// Number of uniformly random positive sets.
    #[arg(long, requires = "size")]
    pub random: Option<u64>,
    /// Size of each random positive set.
    #[arg(long)]
    pub size: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Skip certifying the matrix first; reports are flagged unverified.
    #[arg(long)]
    pub unverified: bool,
    /// Omit per-set reports and keep only the aggregate.
    #[arg(long)]
    pub aggregate_only: bool,
}

fn parse_set(s: &str, n: usize) -> Result<BTreeSet<usize>, Failure> {
    let mut set = BTreeSet::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let j: usize = tok
            .parse()
            .map_err(|_| Failure::usage(format!("--positives: {tok:?} is not a column index")))?;
        if j >= n {
            return Err(Failure::usage(format!("--positives: column {j} out of range for {n} columns")));
        }
        set.insert(j);
    }
    Ok(set)
}

fn resolve_k(args: &SimulateArgs, m: &CodeMatrix) -> Result<usize, Failure> {
    if let Some(k) = args.k {
        return Ok(k);
    }
    let meta = m.meta;
    let guess = match args.mode {
        SimMode::Nagt => meta.k.filter(|&k| meta.p.map_or(true, |p| p == k)),
        SimMode::TwoStage => meta
            .k
            .zip(meta.p)
            .filter(|&(k, p)| k % 2 == 0 && p == k / 2 + 1)
            .map(|(k, _)| k / 2),
    };
    guess.ok_or_else(|| Failure::usage("--k is required: the file header does not determine it"))
}

pub fn run(args: &SimulateArgs) -> Result<Output, Failure> {
    let m = read_matrix(&args.path)?;
    let n = m.cols();
    let k = resolve_k(args, &m)?;
    if k == 0 {
        return Err(Failure::usage("--k must be at least 1"));
    }
    let seed = args.random.map(|_| fresh_seed(args.seed));

    let sets: Vec<BTreeSet<usize>> = if !args.positives.is_empty() {
        args.positives.iter().map(|s| parse_set(s, n)).collect::<Result<_, _>>()?
    } else if let Some(s) = args.all_up_to {
        (0..=s.min(n))
            .flat_map(|size| Colex::new(n, size).map(|v| v.into_iter().collect()))
            .collect()
    } else {
        let count = args.random.expect("clap enforces one source");
        let size = args.size.expect("clap enforces --size");
        if size > n {
            return Err(Failure::usage(format!("--size {size} exceeds the {n} columns")));
        }
        let codec = SubsetCodec::new(n, size);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.expect("seed set"));
        (0..count).map(|_| codec.sample(&mut rng).into_iter().collect()).collect()
    };

    let mode_name = args.mode.to_possible_value().unwrap().get_name().to_string();
    let mut argv = Argv::new("simulate");
    argv.positional(args.path.display()).arg("--mode", &mode_name).arg("--k", k);
    for s in &args.positives {
        argv.arg("--positives", s);
    }
    argv.opt("--all-up-to", args.all_up_to)
        .opt("--random", args.random)
        .opt("--size", args.size.filter(|_| args.random.is_some()))
        .opt("--seed", seed)
        .flag("--unverified", args.unverified)
        .flag("--aggregate-only", args.aggregate_only);
    let argv = argv.into_vec();
    let echo = json!({
        "path": args.path.display().to_string(),
        "rows": m.rows(), "cols": n,
        "mode": mode_name, "k": k,
        "sets": sets.len(),
    });

    let verification = if args.unverified {
        None
    } else {
        let limit = work_limit_from_env()?;
        let r = match args.mode {
            SimMode::Nagt => is_superimposed_exact(&m, k, limit),
            SimMode::TwoStage => is_selector_exact(&m, 2 * k, k + 1, limit),
        };
        match r {
            Ok(r) => Some(r),
            Err(e) => {
                let mut f = Failure::from(e);
                f.message.push_str("; pass --unverified to simulate anyway");
                return Err(f);
            }
        }
    };
    if let Some(v) = verification.as_ref().filter(|v| v.is_fail()) {
        let message = format!(
            "{} is not certified for {mode_name} with k = {k}: {}",
            args.path.display(),
            serde_json::to_string(v.witness().expect("failures carry a witness")).unwrap_or_default()
        );
        let report = envelope("simulate", &argv, seed, echo, json!({ "verified": false, "verification": v }));
        return Err(Failure {
            status: Status::PropertyFail,
            message,
            report: Some(report),
        });
    }

    let runs: Vec<SimReport> = sets
        .iter()
        .map(|p| match args.mode {
            SimMode::Nagt => nagt_simulate(&m, k, p),
            SimMode::TwoStage => two_stage_simulate(&m, k, p),
        })
        .collect::<Result<_, _>>()?;
    let agg = SimAggregate::from_reports(&runs);
    let in_contract_exact = runs.iter().filter(|r| !r.out_of_contract).all(|r| r.exact);

    let text = format!(
        "{} sets ({} in contract), exactness {:.4}, max candidates {}, max tests {}{}\n",
        agg.runs,
        agg.in_contract_runs,
        agg.exactness_rate,
        agg.max_candidates,
        agg.max_total_tests,
        if args.unverified { " [unverified matrix]" } else { "" }
    );
    let mut result = json!({
        "verified": verification.is_some(),
        "aggregate": agg,
    });
    if let Some(v) = &verification {
        result["verification"] = json!(v);
    }
    if !args.aggregate_only {
        result["runs"] = json!(runs);
    }
    Ok(Output {
        status: if verification.is_some() && !in_contract_exact {
            Status::PropertyFail
        } else {
            Status::Ok
        },
        report: envelope("simulate", &argv, seed, echo, result),
        text,
    })
}
