//! `taquin`: command-line access to the poset checkers and the census.
//!
//! Exit status: 0 when every requested verdict holds, 1 when one fails, 2 on
//! usage or input errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Format, Header};

#[derive(Parser, Debug)]
#[command(name = "taquin", version, about = "Jeu de taquin on finite posets")]
struct Cli {
    /// Output format for every report.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the census (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Run the census without worker threads.
    #[arg(long, global = true)]
    sequential: bool,
    /// Seed for sampled runs; echoed in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a family member as poset JSON.
    Gen(GenArgs),
    /// Empty a bi-numbering, printing one line per swap.
    Empty(EmptyArgs),
    /// Check properties of a poset.
    Check(CheckArgs),
    /// Simulate departures on an organizational chart.
    Fairchart(FairArgs),
    /// Enumerate connected posets up to isomorphism.
    Enumerate(EnumerateArgs),
    /// Classify every connected poset of the given sizes.
    Survey(SurveyArgs),
    /// Compare connected doubly-jdt posets with the minuscule posets.
    Conjecture(ConjectureArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GenArgs {
    /// Young diagram, e.g. `--shape 3,3`.
    #[arg(long, value_delimiter = ',')]
    shape: Option<Vec<usize>>,
    /// Shifted diagram with strictly decreasing parts.
    #[arg(long, value_delimiter = ',')]
    shifted: Option<Vec<usize>>,
    /// Rooted tree from a parent list; `-` marks the root, e.g. `--tree=-,0,0,1`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    tree: Option<Vec<String>>,
    /// Double-tailed diamond `b,n`: `b` elements below and `n` above.
    #[arg(long, value_delimiter = ',', num_args = 1, value_names = ["B,N"])]
    delta: Option<Vec<usize>>,
    /// Minuscule poset by name: a(n,j), d(n,n), d(n,1), e6_1, e7_1.
    #[arg(long)]
    minuscule: Option<String>,
    #[arg(long)]
    chain: Option<usize>,
    #[arg(long)]
    antichain: Option<usize>,
}

#[derive(Args, Debug)]
struct EmptyArgs {
    poset: PathBuf,
    bi_numbering: PathBuf,
    /// Slide order for test bi-numberings: `ba` slides A first.
    #[arg(long, value_enum, default_value_t = OrderArg::Ba)]
    order: OrderArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Ba,
    Ab,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Tier {
    Def,
    Challenge,
    Crucial,
}

#[derive(Args, Debug)]
struct CheckArgs {
    poset: PathBuf,
    /// Check the jdt property (the default when nothing else is asked).
    #[arg(long)]
    jdt: bool,
    /// Checker tier for --jdt (default: crucial); implies --jdt.
    #[arg(long, value_enum)]
    tier: Option<Tier>,
    /// Check the d-complete axioms.
    #[arg(long)]
    dcomplete: bool,
    /// Check simultaneity.
    #[arg(long)]
    simultaneous: bool,
    /// With --simultaneous, require strong solutions.
    #[arg(long)]
    strong: bool,
    /// With --simultaneous, print every collision.
    #[arg(long)]
    trace: bool,
    /// Check the fair-chart property by running every scenario.
    #[arg(long)]
    fair: bool,
}

#[derive(Args, Debug)]
struct FairArgs {
    poset: PathBuf,
    /// Initial assignment as a numbering of the whole poset.
    #[arg(long, requires = "filter")]
    ext: Option<PathBuf>,
    /// Departing positions, comma separated.
    #[arg(long, value_delimiter = ',', requires = "ext")]
    filter: Option<Vec<String>>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Write one JSON file per class plus index.json here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include disconnected posets.
    #[arg(long)]
    all: bool,
}

#[derive(Args, Debug)]
struct SurveyArgs {
    /// Largest size surveyed.
    #[arg(long)]
    n: usize,
    /// Smallest size surveyed (defaults to --n).
    #[arg(long)]
    min_n: Option<usize>,
    /// Per-class CSV output; a summary JSON is written next to it.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Summary JSON path (defaults to the report path with `.summary.json`).
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Classify only this many classes, drawn with --seed.
    #[arg(long)]
    sample: Option<usize>,
}

#[derive(Args, Debug)]
struct ConjectureArgs {
    #[arg(long, default_value_t = 8)]
    n_max: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        taquin::exec::configure_threads(t);
    }
    let header = Header { seed: cli.seed, config: std::env::args().skip(1).collect() };
    match commands::run(&cli, &header) {
        Ok((out, ok)) => {
            print!("{out}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
