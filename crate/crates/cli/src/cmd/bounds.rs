use std::fmt::Write;

use clap::{Args, ValueEnum};
use rlsc::bounds::{bound_report, BoundValue, Method, Sweep};
use rlsc::CodeParams;
use serde_json::json;

use super::{Argv, Output};
use crate::failure::{Failure, Status};
use crate::report::envelope;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundMethod {
    Lll,
    Union,
    Agarwal,
    Cheng,
    Selector,
    Lower,
    Asymptotic,
    All,
}

impl BoundMethod {
    fn methods(self) -> Vec<Method> {
        match self {
            BoundMethod::Lll => vec![Method::Lll],
            BoundMethod::Union => vec![Method::Union],
            BoundMethod::Agarwal => vec![Method::Agarwal],
            BoundMethod::Cheng => vec![Method::Cheng],
            BoundMethod::Selector => vec![Method::Selector],
            BoundMethod::Lower => vec![Method::Lower],
            BoundMethod::Asymptotic => Method::ESTIMATORS.to_vec(),
            BoundMethod::All => {
                let mut all = vec![
                    Method::Lll,
                    Method::Union,
                    Method::Agarwal,
                    Method::Cheng,
                    Method::Selector,
                    Method::Lower,
                ];
                all.extend(Method::ESTIMATORS);
                all
            }
        }
    }
}

/// Length thresholds and estimates for one parameter point.
#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub d: usize,
    /// Selector parameter, defaults to k.
    #[arg(long)]
    pub p: Option<usize>,
    /// Column weight; when absent, weight-dependent bounds sweep w.
    #[arg(long)]
    pub w: Option<usize>,
    #[arg(long, value_enum, default_value_t = BoundMethod::All)]
    pub method: BoundMethod,
    /// Upper end of the w sweep.
    #[arg(long)]
    pub w_max: Option<usize>,
    /// Upper end of the q sweep for the q-ary bound.
    #[arg(long)]
    pub q_max: Option<usize>,
}

impl BoundsArgs {
    fn argv(&self) -> Vec<String> {
        let mut a = Argv::new("bounds");
        a.arg("--k", self.k)
            .arg("--n", self.n)
            .arg("--d", self.d)
            .opt("--p", self.p)
            .opt("--w", self.w)
            .arg("--method", self.method.to_possible_value().unwrap().get_name())
            .opt("--w-max", self.w_max)
            .opt("--q-max", self.q_max);
        a.into_vec()
    }
}

pub fn run(args: &BoundsArgs) -> Result<Output, Failure> {
    let params = CodeParams {
        k: args.k,
        n: args.n,
        d: args.d,
        p: args.p.unwrap_or(args.k),
        w: args.w,
        t: None,
    };
    let sweep = Sweep {
        w_max: args.w_max,
        q_max: args.q_max,
    };
    if sweep.w_max == Some(0) {
        return Err(Failure::usage("--w-max must be at least 1"));
    }
    if matches!(sweep.q_max, Some(q) if q < 2) {
        return Err(Failure::usage("--q-max must be at least 2"));
    }
    let report = bound_report(&params, &args.method.methods(), &sweep)?;

    let mut text = format!("k={} n={} d={} p={}\n", params.k, params.n, params.d, params.p);
    for e in &report.entries {
        let value = match &e.t {
            BoundValue::Exact(t) => t.to_string(),
            BoundValue::Estimate(v) => format!("{v:.3}"),
            BoundValue::Omitted(why) => format!("omitted ({why})"),
        };
        let _ = write!(text, "{:<18} {value}", e.method.name());
        if let Some(w) = e.w {
            let _ = write!(text, "  w={w}");
        }
        if let Some(q) = e.q {
            let _ = write!(text, "  q={q}");
        }
        if !e.guaranteed {
            text.push_str("  (not guaranteed)");
        }
        text.push('\n');
    }
    let echo = json!({
        "k": params.k,
        "n": params.n,
        "d": params.d,
        "p": params.p,
        "w": params.w,
        "method": args.method.to_possible_value().unwrap().get_name(),
        "w_max": sweep.w_max(params.k, params.n),
        "q_max": sweep.q_max(params.k),
    });
    Ok(Output {
        status: Status::Ok,
        report: envelope("bounds", &args.argv(), None, echo, &report.entries),
        text,
    })
}
