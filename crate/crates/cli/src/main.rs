use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use ippkit::SolverConfig;
use ippkit_cli::input::{self, Format};
use ippkit_cli::report::EXIT_PARSE;
use ippkit_cli::{cmd_classify, cmd_exact, cmd_survey, cmd_verify, load_corpus, RunOptions};

#[derive(Parser)]
#[command(name = "ippkit", version, about = "Isometric path partitions of small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum isometric path partition of each graph.
    Exact(Common),
    /// Decide ipp = n - matching number from the block structure.
    Classify(Common),
    /// Report connected biconnected even graphs meeting ipp = n - matching number.
    Survey(Common),
    /// Run the invariant suites over a corpus (`bundled:N` or graph6 files).
    Verify(Common),
}

#[derive(Args)]
struct Common {
    /// Input format; sniffed from the extension or first line when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads; output order always follows the input.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = 10_000_000)]
    node_budget: u64,
    /// Seconds per solve.
    #[arg(long, default_value_t = 60.0)]
    time_budget: f64,
    /// Shortest paths kept per vertex pair.
    #[arg(long, default_value_t = 10_000)]
    max_paths: usize,
    /// Human-readable columns instead of JSON Lines.
    #[arg(long)]
    table: bool,
    /// Attach a partition below n - matching number to NOT_EXTREMAL certificates.
    #[arg(long)]
    witness: bool,
    /// Add elapsed_ms to each record (output is then no longer reproducible).
    #[arg(long)]
    timing: bool,
    /// Input files; `-` reads standard input.
    #[arg(required = true)]
    files: Vec<String>,
}

impl Common {
    fn options(&self) -> anyhow::Result<RunOptions> {
        if !(self.time_budget.is_finite() && self.time_budget > 0.0) {
            anyhow::bail!("--time-budget must be a positive number of seconds");
        }
        let solver = SolverConfig {
            max_paths_per_pair: self.max_paths,
            node_budget: self.node_budget,
            time_budget: Duration::from_secs_f64(self.time_budget),
        };
        solver.validate()?;
        Ok(RunOptions {
            solver,
            jobs: self.jobs.max(1),
            witness: self.witness,
            timing: self.timing,
        })
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let (common, verify) = match &cli.command {
        Command::Verify(c) => (c, true),
        Command::Exact(c) | Command::Classify(c) | Command::Survey(c) => (c, false),
    };
    let opts = common.options()?;
    let (text, code) = if verify {
        let corpus = load_corpus(&common.files)?;
        let report = cmd_verify(&corpus, &opts);
        let text = if common.table { report.to_table() } else { report.to_json_lines() };
        (text, report.exit_code())
    } else {
        let inputs = input::load(&common.files, common.format)?;
        let report = match cli.command {
            Command::Exact(_) => cmd_exact(&inputs, &opts),
            Command::Classify(_) => cmd_classify(&inputs, &opts),
            _ => cmd_survey(&inputs, &opts),
        };
        let text = if common.table { report.to_table() } else { report.to_json_lines() };
        (text, report.exit_code())
    };
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("ippkit: {e:#}");
            ExitCode::from(EXIT_PARSE as u8)
        }
    }
}
