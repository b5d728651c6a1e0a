use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itermon::cli::{run_check, run_deloop, Format, RunOptions};
use itermon::report::{CheckOptions, DEFAULT_EXHAUSTIVE_BUDGET, DEFAULT_SAMPLE};

#[derive(Parser)]
#[command(name = "itermon", version, about = "Check k-fold monoidal structures and replay their delooping")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every axiom suite that applies to a structure document.
    Check {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Verify that V-Cat is (k-1)-fold monoidal on a sample of V-categories.
    Deloop {
        /// The kfold document for V.
        base: PathBuf,
        /// Enriched category documents over V.
        #[arg(required = true)]
        categories: Vec<PathBuf>,
        /// Write the product categories to this directory.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Machine,
}

#[derive(Args)]
struct Common {
    /// Diagram instances a check may enumerate before it samples.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BUDGET)]
    exhaustive_budget: u64,
    /// Sampled instances for over-budget checks.
    #[arg(long, default_value_t = DEFAULT_SAMPLE)]
    sample: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
    /// Also write the machine-readable report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

impl Common {
    fn options(&self, emit: Option<PathBuf>) -> RunOptions {
        RunOptions {
            check: CheckOptions {
                exhaustive_budget: self.exhaustive_budget,
                sample: self.sample,
                seed: self.seed,
            },
            format: match self.format {
                OutputFormat::Text => Format::Text,
                OutputFormat::Machine => Format::Machine,
            },
            emit,
            report: self.report.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (outcome, format) = match cli.command {
        Command::Check { path, common } => {
            let options = common.options(None);
            (run_check(&path, &options), options.format)
        }
        Command::Deloop {
            base,
            categories,
            emit,
            common,
        } => {
            let options = common.options(emit);
            (run_deloop(&base, &categories, &options), options.format)
        }
    };
    print!("{}", outcome.rendered(format));
    if let (Some(err), Format::Machine) = (&outcome.error, format) {
        eprintln!("itermon: {err}");
    }
    ExitCode::from(outcome.exit_code as u8)
}
