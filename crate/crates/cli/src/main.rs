mod config;
mod problem;
mod report;
mod tasks;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use opextkit::kac::Resolution;

use problem::BuildError;
use report::Report;
use tasks::{Failure, Overrides, Task};

#[derive(Parser)]
#[command(name = "opextkit", version, about = "Abelian extension groups of matched pairs of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the groups and the matched-pair axioms
    Validate(Args),
    /// Opext by each configured route
    Opext(Args),
    /// The five-term sequence with d2 and the extension rebuilt
    FiveTerm(Args),
    /// The Kac exact sequence with exactness certificates
    KacSeq(Args),
    /// H^n of F, G or Sigma
    Cohomology(Args),
    /// Compare a closed form with the direct computation
    OracleCompare(Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum ResolutionArg {
    Bar,
    CyclicTensor,
    Auto,
}

#[derive(clap::Args)]
struct Args {
    #[arg(long)]
    config: PathBuf,
    /// Write the JSON report here (`-` for stdout)
    #[arg(long)]
    json: Option<PathBuf>,
    /// Export cocycle representatives
    #[arg(long)]
    reps: bool,
    #[arg(long, value_enum)]
    resolution: Option<ResolutionArg>,
    /// Raise or lower the cap on |Sigma|
    #[arg(long)]
    max_sigma: Option<usize>,
}

fn fail(f: Failure) -> ExitCode {
    eprintln!("error: {}", f.message());
    ExitCode::from(f.code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (task, args) = match cli.command {
        Command::Validate(a) => (Task::Validate, a),
        Command::Opext(a) => (Task::Opext, a),
        Command::FiveTerm(a) => (Task::FiveTerm, a),
        Command::KacSeq(a) => (Task::KacSeq, a),
        Command::Cohomology(a) => (Task::Cohomology, a),
        Command::OracleCompare(a) => (Task::OracleCompare, a),
    };
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => return fail(Failure::Invalid(format!("{}: {e}", args.config.display()))),
    };
    let spec = match config::parse(&text) {
        Ok(s) => s,
        Err(e) => return fail(Failure::Invalid(format!("{}: {e}", args.config.display()))),
    };
    let problem = match problem::build(&spec) {
        Ok(p) => p,
        Err(BuildError::Group(w, opextkit::groups::GroupError::TooLarge(n))) => return fail(Failure::SizeCap(format!("group {w} has order {n}"))),
        Err(e) => return fail(Failure::Invalid(e.to_string())),
    };
    let overrides = Overrides {
        reps: args.reps,
        resolution: args.resolution.map(|r| match r {
            ResolutionArg::Bar => Resolution::Bar,
            ResolutionArg::CyclicTensor => Resolution::CyclicTensor,
            ResolutionArg::Auto => Resolution::Auto,
        }),
        max_sigma: args.max_sigma,
        fixed_timing: std::env::var_os("OPEXTKIT_FIXED_TIMING").is_some(),
    };
    let report = match tasks::run(task, &problem, &overrides) {
        Ok(tasks) => Report { tasks },
        Err(f) => return fail(f),
    };
    match args.json.as_deref() {
        Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()),
        Some(p) => {
            if let Err(e) = std::fs::write(p, report.to_json()) {
                return fail(Failure::Internal(format!("{}: {e}", p.display())));
            }
            print!("{}", report.to_table());
        }
        None => print!("{}", report.to_table()),
    }
    if let Some(t) = report.tasks.iter().find(|t| t.failed()) {
        return fail(Failure::Internal(format!("{}: a certificate failed", t.name)));
    }
    ExitCode::SUCCESS
}
