use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use scott_cli::job::{exit, run, GroupSource, JobSpec, Mode, PSource};

#[derive(Parser)]
#[command(name = "scott", version, about = "Brauer indecomposability of Scott modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks for a group and a p-subgroup, writing a JSON report.
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Criteria,
    Brute,
    Both,
    Corollary13,
    Lemmas,
}

#[derive(Args)]
struct CheckArgs {
    /// Group file (`degree`, `gen` lines).
    #[arg(long, conflicts_with = "named", required_unless_present = "named")]
    group: Option<PathBuf>,
    /// Catalog name, e.g. `alternating:4` or `pgroup:16:3`.
    #[arg(long)]
    named: Option<String>,
    #[arg(long)]
    prime: u32,
    /// `sylow` or a group file holding generators of P.
    #[arg(long, default_value = "sylow")]
    psubgroup: String,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// `auto` or the degree m of GF(p^m).
    #[arg(long, default_value = "auto")]
    field_degree: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn spec_of(a: &CheckArgs) -> Result<JobSpec, String> {
    let group = match (&a.group, &a.named) {
        (Some(path), None) => GroupSource::File(path.clone()),
        (None, Some(name)) => GroupSource::Named(name.clone()),
        _ => return Err("exactly one of --group and --named is required".into()),
    };
    let p_subgroup = match a.psubgroup.as_str() {
        "sylow" => PSource::Sylow,
        path => PSource::File(PathBuf::from(path)),
    };
    let field_degree = match a.field_degree.as_str() {
        "auto" => None,
        s => match s.parse::<u32>() {
            Ok(m) if m >= 1 => Some(m),
            _ => return Err(format!("bad field degree `{s}`")),
        },
    };
    let mode = match a.mode {
        ModeArg::Criteria => Mode::Criteria,
        ModeArg::Brute => Mode::Brute,
        ModeArg::Both => Mode::Both,
        ModeArg::Corollary13 => Mode::Corollary13,
        ModeArg::Lemmas => Mode::Lemmas,
    };
    Ok(JobSpec { group, prime: a.prime, p_subgroup, mode, field_degree, seed: a.seed })
}

fn main() -> ExitCode {
    let Command::Check(args) = Cli::parse().command;
    let spec = match spec_of(&args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::INPUT_ERROR as u8);
        }
    };
    let outcome = match run(&spec) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::INPUT_ERROR as u8);
        }
    };
    let text = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
    if let Err(e) = std::fs::write(&args.out, text + "\n") {
        eprintln!("error: cannot write {}: {e}", args.out.display());
        return ExitCode::from(exit::INPUT_ERROR as u8);
    }
    ExitCode::from(outcome.exit_code as u8)
}
