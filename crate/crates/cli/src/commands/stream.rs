use std::io::{Read, Write};

use clap::{Args, Subcommand, ValueEnum};
use mdt::streammatch::{KMismatchMatcher, KrMatcher, PpMatcher};
use mdt::{Error, Result};

use crate::keys::read_text_file;

#[derive(Copy, Clone, ValueEnum)]
pub enum Engine {
    Kr,
    Pp,
}

#[derive(Subcommand)]
pub enum StreamCmd {
    /// Report pattern occurrences in the byte stream on standard input,
    /// one "end_position<TAB>mismatches" line each.
    Match(MatchArgs),
}

#[derive(Args)]
pub struct MatchArgs {
    /// File holding the pattern bytes.
    #[arg(long)]
    pub pattern_file: String,
    #[arg(long, value_enum, default_value = "pp")]
    pub engine: Engine,
    /// Allow up to k mismatches (switches to the shift-decomposition matcher).
    #[arg(long)]
    pub k: Option<u32>,
    /// Upper bound on the stream length, sizing the fingerprint modulus.
    #[arg(long, default_value_t = 1 << 20)]
    pub mmax: u64,
}

pub fn run(cmd: StreamCmd, seed: u64) -> Result<i32> {
    let StreamCmd::Match(args) = cmd;
    let pattern = read_text_file(&args.pattern_file)?;
    if pattern.is_empty() {
        return Err(Error::invalid("empty pattern"));
    }
    let mut stream = Vec::new();
    std::io::stdin().read_to_end(&mut stream)?;
    let mut out = std::io::stdout().lock();

    if let Some(k) = args.k {
        let mut m = KMismatchMatcher::with_stream_bound(&pattern, k, args.mmax, seed)?;
        for &c in &stream {
            if let Some((end, mismatches)) = m.push(c) {
                writeln!(out, "{end}\t{mismatches}")?;
            }
        }
        return Ok(0);
    }
    match args.engine {
        Engine::Kr => {
            let mut m = KrMatcher::with_stream_bound(&pattern, args.mmax, seed)?;
            for (i, &c) in stream.iter().enumerate() {
                if m.push(c) {
                    writeln!(out, "{}\t0", i + 1)?;
                }
            }
        }
        Engine::Pp => {
            let mut m = PpMatcher::with_stream_bound(&pattern, args.mmax, seed)?;
            for (i, &c) in stream.iter().enumerate() {
                for _ in 0..m.push(c) {
                    writeln!(out, "{}\t0", i)?;
                }
            }
            for _ in 0..m.finish() {
                writeln!(out, "{}\t0", stream.len())?;
            }
        }
    }
    Ok(0)
}
