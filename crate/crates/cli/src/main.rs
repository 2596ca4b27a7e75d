//! `rlsc`: bounds, construction, verification and group-testing simulation
//! for runlength-constrained superimposed codes and selectors.

mod cmd;
mod failure;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use cmd::Output;
use failure::{Failure, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "rlsc", version, about = "Runlength-constrained superimposed codes and selectors")]
struct Cli {
    /// Format of the summary printed on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Length thresholds and leading-term estimates.
    Bounds(cmd::bounds::BoundsArgs),
    /// Build a matrix and write it to --out.
    Construct(cmd::construct::ConstructArgs),
    /// Verify a matrix file.
    Verify(cmd::verify::VerifyArgs),
    /// Simulate group testing with a matrix file.
    Simulate(cmd::simulate::SimulateArgs),
    /// List the constrained column space in rank order.
    Enumerate(cmd::enumerate::EnumerateArgs),
    /// Re-run the command recorded in a report.
    Replay(ReplayArgs),
}

#[derive(Args, Debug)]
struct ReplayArgs {
    /// Report written by an earlier run.
    from: PathBuf,
    /// Matrix output path, for construct reports.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn dispatch(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Bounds(a) => cmd::bounds::run(a),
        Command::Construct(a) => cmd::construct::run(a),
        Command::Verify(a) => cmd::verify::run(a),
        Command::Simulate(a) => cmd::simulate::run(a),
        Command::Enumerate(a) => cmd::enumerate::run(a),
        Command::Replay(a) => replay(a),
    }
}

/// Rebuilds the recorded command line and runs it.
fn replay(args: &ReplayArgs) -> Result<Output, Failure> {
    let text = std::fs::read_to_string(&args.from)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.from.display())))?;
    let report: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: not a report: {e}", args.from.display())))?;
    let invocation: Vec<String> = report
        .get("invocation")
        .and_then(Value::as_array)
        .and_then(|a| a.iter().map(|v| v.as_str().map(String::from)).collect())
        .ok_or_else(|| Failure::usage(format!("{}: missing `invocation`", args.from.display())))?;
    if invocation.first().map(String::as_str) == Some("replay") {
        return Err(Failure::usage("refusing to replay a replay"));
    }
    let mut argv: Vec<OsString> = vec!["rlsc".into()];
    argv.extend(invocation.into_iter().map(OsString::from));
    if let Some(out) = &args.out {
        argv.push("--out".into());
        argv.push(out.into());
    }
    let cli = Cli::try_parse_from(argv).map_err(|e| Failure::usage(format!("recorded invocation: {e}")))?;
    dispatch(&cli.command)
}

fn emit(cli: &Cli, report: &Value, text: &str) -> Result<(), Failure> {
    if let Some(path) = &cli.report {
        report::write_atomic(path, report::to_json_string(report).as_bytes())?;
    }
    let mut stdout = std::io::stdout().lock();
    match cli.format {
        Format::Json => stdout.write_all(report::to_json_string(report).as_bytes())?,
        Format::Text => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn write_failure_report(path: Option<&Path>, failure: &Failure) {
    if let (Some(path), Some(report)) = (path, &failure.report) {
        if let Err(e) = report::write_atomic(path, report::to_json_string(report).as_bytes()) {
            eprintln!("rlsc: could not write report: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::Usage.into() } else { Status::Ok.into() };
        }
    };
    match dispatch(&cli.command).and_then(|out| emit(&cli, &out.report, &out.text).map(|_| out.status)) {
        Ok(status) => status.into(),
        Err(failure) => {
            write_failure_report(cli.report.as_deref(), &failure);
            eprintln!("rlsc: {failure}");
            failure.status.into()
        }
    }
}
