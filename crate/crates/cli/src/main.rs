use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod bench;
mod screen;
mod simulate;
mod table;

#[derive(Parser, Debug)]
#[command(name = "fmv", version, about = "Fused mean-variance feature screening")]
struct Cli {
    /// Worker threads (0 = one per core). Never changes outputs.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank the predictors of a CSV dataset.
    Screen(ScreenArgs),
    /// Write one simulated dataset and its active set.
    Simulate(SimulateArgs),
    /// Replicated minimum-model-size benchmark.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct ScreenArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Response column: header name, or 1-based column position.
    #[arg(long)]
    pub response: String,
    #[arg(long, default_value = "continuous")]
    pub kind: String,
    /// Comma-separated slice counts, or `auto` for 3..=ceil(n^(1/3)).
    #[arg(long, default_value = "auto")]
    pub schemes: String,
    /// Number of predictors to report (default ceil(n / ln n)).
    #[arg(long = "dn", alias = "d_n")]
    pub dn: Option<usize>,
    /// Append pairwise products of raw predictors: `all` or a comma-separated list of names.
    #[arg(long)]
    pub interactions: Option<String>,
    /// Append this many standard Cauchy noise columns.
    #[arg(long, default_value_t = 0)]
    pub noise: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Columns to leave out of the predictor set.
    #[arg(long, value_delimiter = ',')]
    pub ignore: Vec<String>,
    /// File listing true active predictor names; the minimum model size is reported.
    #[arg(long)]
    pub active: Option<PathBuf>,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Design id: 1a, 1b, 1c, 1d, 2a, 2b, 2c, 3, 4, 5, 6 or 7.
    #[arg(long = "case", alias = "cases")]
    pub case: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Dataset CSV; the active set goes next to it as `<stem>.active.txt`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Comma-separated design ids or `all`.
    #[arg(long, default_value = "all")]
    pub cases: String,
    /// Comma-separated subset of fmv,sis,rcs,fks or `all`.
    #[arg(long, default_value = "fmv")]
    pub screeners: String,
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    /// Comma-separated slice counts, or `auto` for each design's default.
    #[arg(long, default_value = "auto")]
    pub schemes: String,
    /// Report directory.
    #[arg(long, default_value = "bench-out")]
    pub out: PathBuf,
}

/// `auto` or a comma-separated list of slice counts.
pub fn parse_schemes(spec: &str) -> anyhow::Result<Option<Vec<usize>>> {
    if spec.trim().eq_ignore_ascii_case("auto") {
        return Ok(None);
    }
    let counts = spec
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| anyhow::anyhow!("bad --schemes `{spec}`: {e}"))?;
    if counts.is_empty() || counts.contains(&0) {
        anyhow::bail!("--schemes needs positive slice counts");
    }
    Ok(Some(counts))
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()?;
    }
    match cli.command {
        Command::Screen(args) => screen::run(&args),
        Command::Simulate(args) => simulate::run(&args),
        Command::Bench(args) => bench::run(&args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
