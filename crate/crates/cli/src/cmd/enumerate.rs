use clap::Args;
use rlsc::ConstrainedSpace;
use serde_json::json;

use super::{Argv, Output};
use crate::failure::{Failure, Status};
use crate::report::envelope;

/// Lists the runlength-constrained space in rank order.
#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub w: usize,
    #[arg(long, default_value_t = 0)]
    pub d: usize,
    /// Maximum number of vectors to print.
    #[arg(long, default_value_t = 100)]
    pub limit: u64,
}

pub fn run(args: &EnumerateArgs) -> Result<Output, Failure> {
    let space = ConstrainedSpace::new(args.t, args.w, args.d);
    let count = space.count();
    let vectors: Vec<String> = space
        .iter()
        .take(args.limit.min(usize::MAX as u64) as usize)
        .map(|c| c.to_string())
        .collect();
    let mut text = format!("count {count}\n");
    for v in &vectors {
        text.push_str(v);
        text.push('\n');
    }
    let mut argv = Argv::new("enumerate");
    argv.arg("--t", args.t).arg("--w", args.w).arg("--d", args.d).arg("--limit", args.limit);
    let echo = json!({ "t": args.t, "w": args.w, "d": args.d, "limit": args.limit });
    let result = json!({
        "count": count.to_string(),
        "truncated": count > vectors.len().into(),
        "vectors": vectors,
    });
    Ok(Output {
        status: Status::Ok,
        report: envelope("enumerate", &argv.into_vec(), None, echo, result),
        text,
    })
}
