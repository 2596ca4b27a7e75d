use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rlsc::bounds::{
    best_w_for, cheng_bound, cheng_qary_rows, lll_min_length, lower_bound, selector_lll_min_length, Method, Sweep,
};
use rlsc::combinatorics::min_length;
use rlsc::construction::{default_max_resamples, identity_code, moser_tardos_construct, qary_construct, QaryConfig};
use rlsc::verification::{
    check_column_weight, check_runlength, is_selector_exact, is_superimposed_exact, VerificationReport, WorkLimit,
};
use rlsc::{CodeMatrix, CodeParams, ConstructionLog, Error, MatrixMeta};
use serde_json::{json, Value};

use super::{fresh_seed, work_limit_from_env, Argv, Output};
use crate::failure::{Failure, Status};
use crate::report::{envelope, write_atomic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructMethod {
    /// Moser-Tardos resampling over constrained columns.
    Mt,
    /// q-ary draw expanded into binary blocks.
    Qary,
    /// The n x n identity matrix.
    Identity,
}

impl ConstructMethod {
    fn name(self) -> &'static str {
        match self {
            ConstructMethod::Mt => "mt",
            ConstructMethod::Qary => "qary",
            ConstructMethod::Identity => "identity",
        }
    }
}

/// Builds a matrix and writes it in the text matrix format.
#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum, default_value_t = ConstructMethod::Mt)]
    pub method: ConstructMethod,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub d: usize,
    /// Selector parameter, defaults to k.
    #[arg(long)]
    pub p: Option<usize>,
    /// Column weight (mt). Defaults to the minimizer of the threshold sweep.
    #[arg(long)]
    pub w: Option<usize>,
    /// Number of rows (mt). Defaults to the local-lemma threshold at w.
    #[arg(long)]
    pub t: Option<usize>,
    /// Alphabet size (qary).
    #[arg(long)]
    pub q: Option<usize>,
    /// Number of q-ary rows (qary).
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Resampling budget (mt), defaults to 1000 n w.
    #[arg(long)]
    pub max_resamples: Option<u64>,
    /// Redraw budget (qary), defaults to 100.
    #[arg(long)]
    pub max_retries: Option<u64>,
    /// Skip the verification pass.
    #[arg(long)]
    pub no_verify: bool,
    /// Matrix output path.
    #[arg(long)]
    pub out: PathBuf,
}

struct Built {
    matrix: CodeMatrix,
    log: Option<ConstructionLog>,
    params: Value,
    argv: Argv,
    seed: Option<u64>,
}

fn require_k(args: &ConstructArgs) -> Result<usize, Failure> {
    args.k
        .ok_or_else(|| Failure::usage(format!("--k is required for --method {}", args.method.name())))
}

/// Picks `w` and `t` for Moser-Tardos when either is missing.
fn resolve_shape(params: &CodeParams) -> Result<(usize, usize), Failure> {
    let CodeParams { k, n, d, p, .. } = *params;
    let threshold = |w: usize| -> rlsc::Result<u64> {
        if p < k {
            selector_lll_min_length(k, n, d, p, w)
        } else {
            lll_min_length(k, n, d, w)
        }
    };
    let method = if p < k { Method::Selector } else { Method::Lll };
    let sweep = Sweep::default();
    Ok(match (params.w, params.t) {
        (Some(w), Some(t)) => (w, t),
        (Some(w), None) => (w, threshold(w)? as usize),
        (None, None) => {
            let best = best_w_for(method, params, &sweep)?;
            (best.w, best.t as usize)
        }
        (None, Some(t)) => {
            let mut best: Option<(u64, usize)> = None;
            for w in (1..=sweep.w_max(k, n)).filter(|&w| min_length(w, d) <= t) {
                let th = threshold(w)?;
                if best.map_or(true, |(b, _)| th < b) {
                    best = Some((th, w));
                }
            }
            (best.map_or(1, |(_, w)| w), t)
        }
    })
}

fn build_mt(args: &ConstructArgs) -> Result<Built, Failure> {
    let k = require_k(args)?;
    let mut params = CodeParams {
        k,
        n: args.n,
        d: args.d,
        p: args.p.unwrap_or(k),
        w: args.w,
        t: args.t,
    };
    params.validate()?;
    if let Some(t) = args.t {
        let lb = lower_bound(k, args.n, args.d) as usize;
        if !params.is_selector() && t < lb {
            return Err(Failure::usage(format!(
                "t = {t} is below the lower bound min{{n, 1 + (k-1)(d+1)}} = {lb}; \
                 no ({k}, {}, {})-superimposed code of that length exists",
                args.n, args.d
            )));
        }
    }
    let (w, t) = resolve_shape(&params)?;
    params.w = Some(w);
    params.t = Some(t);
    params.validate()?;
    let seed = fresh_seed(args.seed);
    let budget = args.max_resamples.unwrap_or_else(|| default_max_resamples(args.n, w));

    let mut argv = Argv::new("construct");
    argv.arg("--method", "mt")
        .arg("--k", k)
        .arg("--n", args.n)
        .arg("--d", args.d)
        .arg("--p", params.p)
        .arg("--w", w)
        .arg("--t", t)
        .arg("--seed", seed)
        .arg("--max-resamples", budget);
    let echo = json!({
        "method": "mt",
        "k": k, "n": args.n, "d": args.d, "p": params.p, "w": w, "t": t,
        "max_resamples": budget,
    });

    match moser_tardos_construct(&params, seed, Some(budget)) {
        Ok((matrix, log)) => Ok(Built {
            matrix,
            log: Some(log),
            params: echo,
            argv,
            seed: Some(seed),
        }),
        Err(Error::ConstructionBudget { log }) => {
            let message = format!(
                "Moser-Tardos gave up after {} resamples (seed {seed}); try a larger t or --max-resamples",
                log.resample_count
            );
            let report = envelope("construct", &argv.into_vec(), Some(seed), echo, json!({ "log": log }));
            Err(Failure {
                status: Status::Budget,
                message,
                report: Some(report),
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn build_qary(args: &ConstructArgs) -> Result<Built, Failure> {
    let k = require_k(args)?;
    CodeParams::superimposed(k, args.n, args.d).validate()?;
    if k < 2 {
        return Err(Failure::usage("--method qary needs k >= 2"));
    }
    if args.p.is_some_and(|p| p != k) {
        return Err(Failure::usage("--method qary builds superimposed codes only (p = k)"));
    }
    let q = match args.q {
        Some(q) => q,
        None => cheng_bound(k, args.n, args.d, &Sweep::default())?.q,
    };
    if q < 2 {
        return Err(Failure::usage("--q must be at least 2"));
    }
    let rows = match args.rows {
        Some(r) => r,
        None => cheng_qary_rows(k, args.n, q)?,
    };
    let retries = args.max_retries.unwrap_or(100);
    let seed = fresh_seed(args.seed);
    let config = QaryConfig {
        q: Some(q),
        rows: Some(rows),
        max_retries: Some(retries),
    };

    let mut argv = Argv::new("construct");
    argv.arg("--method", "qary")
        .arg("--k", k)
        .arg("--n", args.n)
        .arg("--d", args.d)
        .arg("--q", q)
        .arg("--rows", rows)
        .arg("--seed", seed)
        .arg("--max-retries", retries);
    let echo = json!({
        "method": "qary",
        "k": k, "n": args.n, "d": args.d, "q": q, "rows": rows,
        "t": rows * (q + args.d),
        "max_retries": retries,
    });
    match qary_construct(k, args.n, args.d, seed, &config) {
        Ok((matrix, log)) => Ok(Built {
            matrix,
            log: Some(log),
            params: echo,
            argv,
            seed: Some(seed),
        }),
        Err(Error::ConstructionBudget { log }) => {
            let message = format!("q-ary construction failed after {} redraws (seed {seed})", log.resample_count);
            let report = envelope("construct", &argv.into_vec(), Some(seed), echo, json!({ "log": log }));
            Err(Failure {
                status: Status::Budget,
                message,
                report: Some(report),
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn build_identity(args: &ConstructArgs) -> Result<Built, Failure> {
    if args.n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    if let Some(k) = args.k {
        if k == 0 || k > args.n {
            return Err(Failure::usage(format!("need 1 <= k <= n, got k = {k}, n = {}", args.n)));
        }
    }
    let mut matrix = identity_code(args.n);
    matrix.meta = MatrixMeta {
        k: args.k,
        d: Some(args.d),
        p: args.k,
        w: Some(1),
    };
    let mut argv = Argv::new("construct");
    argv.arg("--method", "identity").opt("--k", args.k).arg("--n", args.n).arg("--d", args.d);
    Ok(Built {
        matrix,
        log: None,
        params: json!({ "method": "identity", "k": args.k, "n": args.n, "d": args.d, "t": args.n, "w": 1 }),
        argv,
        seed: None,
    })
}

/// Structural checks plus the coverage property, if `k` is known.
fn verify_all(m: &CodeMatrix, limit: WorkLimit) -> (Vec<VerificationReport>, Option<String>) {
    let meta = m.meta;
    let mut reports = Vec::new();
    if let Some(d) = meta.d {
        reports.push(check_runlength(m, d));
    }
    if let Some(w) = meta.w {
        reports.push(check_column_weight(m, w));
    }
    let Some(k) = meta.k else {
        return (reports, None);
    };
    let p = meta.p.unwrap_or(k);
    let exact = if p == k {
        is_superimposed_exact(m, k, limit)
    } else {
        is_selector_exact(m, k, p, limit)
    };
    match exact {
        Ok(r) => {
            reports.push(r);
            (reports, None)
        }
        Err(e) => (reports, Some(e.to_string())),
    }
}

pub fn run(args: &ConstructArgs) -> Result<Output, Failure> {
    let limit = if args.no_verify { WorkLimit::UNLIMITED } else { work_limit_from_env()? };
    let mut built = match args.method {
        ConstructMethod::Mt => build_mt(args)?,
        ConstructMethod::Qary => build_qary(args)?,
        ConstructMethod::Identity => build_identity(args)?,
    };
    built.argv.flag("--no-verify", args.no_verify);

    let (verification, skipped) = if args.no_verify {
        (Vec::new(), Some("--no-verify".to_string()))
    } else {
        verify_all(&built.matrix, limit)
    };
    let failed = verification.iter().any(|r| r.is_fail());
    write_atomic(&args.out, built.matrix.to_text().as_bytes())?;

    let m = &built.matrix;
    let mut text = format!("{} x {} matrix written to {}\n", m.rows(), m.cols(), args.out.display());
    if let Some(log) = &built.log {
        text.push_str(&format!("{}: {} resamples, seed {}\n", log.method, log.resample_count, log.seed));
    }
    for r in &verification {
        text.push_str(&format!("{:?}: {}\n", r.property, if r.is_pass() { "pass" } else { "FAIL" }));
    }
    if let Some(why) = &skipped {
        text.push_str(&format!("coverage verification skipped: {why}\n"));
    }

    let mut result = json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "verification": verification,
    });
    if let Some(log) = &built.log {
        result["log"] = json!(log);
    }
    if let Some(why) = skipped {
        result["verification_skipped"] = json!(why);
    }
    let report = envelope("construct", &built.argv.into_vec(), built.seed, built.params, result);
    Ok(Output {
        status: if failed { Status::PropertyFail } else { Status::Ok },
        report,
        text,
    })
}
