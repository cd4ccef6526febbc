use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polyperm_cli::{run_export, run_report, run_verify, CliError, Fault, Format, RunConfig, Target};
use polyperm_core::fgroup::DEFAULT_BUDGET;

#[derive(Parser)]
#[command(name = "polyperm", version, about = "Polynomial permutations on Z/p^nZ and their Sylow subgroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orders and counts, each by formula and by enumeration where affordable.
    Report(Common),
    /// Run the invariant checks; exit 1 if any fails.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Run only the named checks (repeatable).
        #[arg(long = "check", value_name = "NAME", env = "POLYPERM_CHECK", value_delimiter = ',')]
        checks: Vec<String>,
    },
    /// List the elements of H or G_n, the Sylow subgroups, or their descriptors.
    Export {
        #[command(flatten)]
        common: Common,
        /// One of H, G, sylow, descriptors.
        what: Target,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, short = 'p', default_value_t = 2, env = "POLYPERM_PRIME")]
    prime: u32,
    /// Highest level n (work happens on Z/p^kZ for k up to n).
    #[arg(long, short = 'n', default_value_t = 2, env = "POLYPERM_LEVEL")]
    level: u32,
    /// Largest set the tool will enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET, env = "POLYPERM_BUDGET")]
    budget: u64,
    #[arg(long, default_value_t = 0, env = "POLYPERM_SEED")]
    seed: u64,
    #[arg(long, default_value_t = Format::Json, env = "POLYPERM_FORMAT")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short = 'o', env = "POLYPERM_OUTPUT")]
    output: Option<PathBuf>,
    #[arg(long, hide = true, env = "POLYPERM_INJECT_FAULT")]
    inject_fault: Option<Fault>,
}

impl Common {
    fn config(&self, checks: Vec<String>) -> RunConfig {
        RunConfig {
            p: self.prime,
            n_max: self.level,
            budget: self.budget,
            seed: self.seed,
            format: self.format,
            checks,
            fault: self.inject_fault,
        }
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.output {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Report(common) => {
            let cfg = common.config(Vec::new());
            let report = run_report(&cfg)?;
            common.emit(&report.render(cfg.format)?)?;
            Ok(if report.consistent() { 0 } else { 1 })
        }
        Command::Verify { common, checks } => {
            let cfg = common.config(checks);
            let outcome = run_verify(&cfg)?;
            common.emit(&outcome.render(cfg.format)?)?;
            Ok(outcome.exit_code())
        }
        Command::Export { common, what } => {
            let cfg = common.config(Vec::new());
            common.emit(&run_export(&cfg, what)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("polyperm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
