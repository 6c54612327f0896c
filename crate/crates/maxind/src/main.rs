use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maxind::commands::{self, NuMode, Outcome};
use maxind::corpus;
use maxind::engine::Limits;
use maxind::report;

/// Maximal-subgroup invariants and generation bounds of permutation
/// groups.
///
/// Exit status: 0 on success, 1 on a failed check or invalid input, 2 when
/// a budget limit refused the computation.
#[derive(Parser)]
#[command(name = "maxind", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Print the JSON report.
    #[arg(long, global = true, conflicts_with = "markdown")]
    json: bool,
    /// Print markdown tables (the default).
    #[arg(long, global = true)]
    markdown: bool,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Monte-Carlo trials per tuple size.
    #[arg(long, global = true, default_value_t = 10_000)]
    trials: u64,
    /// Worker threads for the corpus runner (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Largest group order whose subgroup lattice is enumerated.
    #[arg(long, global = true, default_value_t = 2000)]
    lattice_limit: usize,
    /// Largest permutation degree that is materialized.
    #[arg(long, global = true, default_value_t = 4096)]
    degree_limit: usize,
    /// Largest group order given an element table.
    #[arg(long, global = true, default_value_t = 5000)]
    table_limit: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Mc,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant profile, bound table and nu report.
    Analyze { spec: String },
    /// Bounds for m_n at the given indices (default: all relevant ones).
    Bounds {
        spec: String,
        #[arg(long, value_delimiter = ',')]
        n: Vec<u64>,
    },
    /// nu(G) exactly or by Monte Carlo.
    Nu {
        spec: String,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Build the group a spec denotes and describe it.
    Construct { spec: String },
    /// Run the inequality and oracle suites over a manifest of specs
    /// (one per line); without a manifest, over the default corpus.
    Corpus { manifest: Option<std::path::PathBuf> },
}

fn run(cli: Cli) -> Result<Outcome, maxind::core::Error> {
    let g = &cli.global;
    let limits = Limits {
        lattice_limit: g.lattice_limit,
        degree_limit: g.degree_limit,
        table_limit: g.table_limit,
        seed: g.seed,
        trials: g.trials,
    };
    match &cli.command {
        Command::Analyze { spec } => commands::analyze(spec, &limits),
        Command::Bounds { spec, n } => commands::bounds(spec, n, &limits),
        Command::Nu { spec, mode } => {
            let mode = match mode {
                Mode::Exact => NuMode::Exact,
                Mode::Mc => NuMode::MonteCarlo,
            };
            commands::nu(spec, mode, &limits)
        }
        Command::Construct { spec } => commands::construct(spec, &limits),
        Command::Corpus { manifest } => {
            let specs = match manifest {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| maxind::core::Error::Invalid(format!("{}: {e}", path.display())))?;
                    corpus::read_manifest(&text)
                }
                None => corpus::DEFAULT_CORPUS.iter().map(|s| s.to_string()).collect(),
            };
            let report = corpus::run(&specs, &limits);
            let violations = report["summary"]["violations"].as_u64().unwrap_or(0) as usize;
            Ok(Outcome { report, violations })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.threads)
            .build_global()
            .expect("thread pool configured once");
    }
    let json = cli.global.json;
    match run(cli) {
        Ok(out) => {
            let text = if json {
                serde_json::to_string_pretty(&out.report).expect("report serializes") + "\n"
            } else {
                report::markdown(&out.report)
            };
            // A closed pipe is not an error of ours.
            let _ = std::io::stdout().write_all(text.as_bytes());
            if out.violations > 0 {
                eprintln!("{} check(s) failed", out.violations);
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_limit() { 2 } else { 1 })
        }
    }
}
