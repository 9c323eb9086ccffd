//! `mdt`: batch command-line surface over the library.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 corrupt artifact,
//! 4 capacity or contract violation.

mod commands;
mod keys;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "mdt", version, about = "compressed and probabilistic data structure toolkit")]
struct Cli {
    /// Seed for every randomized component (falls back to $MDT_SEED, then 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy measures and Huffman cost of a file.
    Entropy(commands::entropy::EntropyArgs),
    /// Build and query full-text self-indexes.
    #[command(subcommand)]
    Index(commands::index::IndexCmd),
    /// Approximate-membership filters.
    #[command(subcommand)]
    Filter(commands::filter::FilterCmd),
    /// Stream summaries and similarity sketches.
    #[command(subcommand)]
    Sketch(commands::sketch::SketchCmd),
    /// Streaming pattern matching.
    #[command(subcommand)]
    Stream(commands::stream::StreamCmd),
}

fn seed_from(cli_seed: Option<u64>) -> u64 {
    cli_seed
        .or_else(|| std::env::var("MDT_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0)
}

fn exit_code_for(err: &mdt::Error) -> i32 {
    match err {
        mdt::Error::Corrupt(_) => 3,
        mdt::Error::Capacity(_) | mdt::Error::ContractViolation(_) => 4,
        _ => 2,
    }
}

fn main() {
    let cli = Cli::parse();
    let seed = seed_from(cli.seed);
    let result = match cli.command {
        Command::Entropy(args) => commands::entropy::run(args),
        Command::Index(cmd) => commands::index::run(cmd),
        Command::Filter(cmd) => commands::filter::run(cmd, seed),
        Command::Sketch(cmd) => commands::sketch::run(cmd, seed),
        Command::Stream(cmd) => commands::stream::run(cmd, seed),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("mdt: {err}");
            std::process::exit(exit_code_for(&err));
        }
    }
}
