use std::io::Write;

use clap::{Args, Subcommand, ValueEnum};
use mdt::filters::{BloomFilter, CountingBloomFilter, QuotientFilter};
use mdt::{Error, Result};

use crate::keys::{read_tokens, token_key};

#[derive(Copy, Clone, ValueEnum)]
pub enum Kind {
    Bloom,
    Cbf,
    Qf,
}

#[derive(Subcommand)]
pub enum FilterCmd {
    /// Create an empty filter sized for the given capacity and rates.
    Build(BuildArgs),
    /// Insert newline-delimited keys.
    Add(EditArgs),
    /// Delete newline-delimited keys (cbf and qf only).
    Del(EditArgs),
    /// Print 1/0 membership per key.
    Query(EditArgs),
}

#[derive(Args)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Capacity (maximum keys with guaranteed rates).
    #[arg(short, long)]
    pub m: u64,
    /// False-positive rate.
    #[arg(short, long)]
    pub d: f64,
    /// False-negative rate (cbf only).
    #[arg(short, long, default_value_t = 0.001)]
    pub g: f64,
    /// Load-factor cap (qf only).
    #[arg(short, long, default_value_t = 0.9)]
    pub a: f64,
    #[arg(long)]
    pub out: String,
}

#[derive(Args)]
pub struct EditArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Filter file (rewritten by add/del).
    #[arg(long)]
    pub filter: String,
    /// Key source; '-' for standard input.
    #[arg(long, default_value = "-")]
    pub input: String,
}

enum Loaded {
    Bloom(BloomFilter),
    Cbf(CountingBloomFilter),
    Qf(QuotientFilter),
}

fn load(kind: Kind, path: &str) -> Result<Loaded> {
    let bytes = std::fs::read(path)?;
    Ok(match kind {
        Kind::Bloom => Loaded::Bloom(BloomFilter::from_bytes(&bytes)?),
        Kind::Cbf => Loaded::Cbf(CountingBloomFilter::from_bytes(&bytes)?),
        Kind::Qf => Loaded::Qf(QuotientFilter::from_bytes(&bytes)?),
    })
}

fn save(filter: &Loaded, path: &str) -> Result<()> {
    let bytes = match filter {
        Loaded::Bloom(f) => f.to_bytes(),
        Loaded::Cbf(f) => f.to_bytes(),
        Loaded::Qf(f) => f.to_bytes(),
    };
    std::fs::write(path, bytes)?;
    Ok(())
}

pub fn run(cmd: FilterCmd, seed: u64) -> Result<i32> {
    match cmd {
        FilterCmd::Build(args) => {
            let filter = match args.kind {
                Kind::Bloom => {
                    let f = BloomFilter::new(args.m, args.d, seed)?;
                    println!("k={} M={}", f.hash_count(), f.measured_space_bits());
                    Loaded::Bloom(f)
                }
                Kind::Cbf => {
                    let (k, m_counters, t) = mdt::filters::cbf_params(args.m, args.d, args.g)?;
                    let f = CountingBloomFilter::new(args.m, args.d, args.g, seed)?;
                    println!("k={k} M={m_counters} t={t} space_bits={}", f.measured_space_bits());
                    Loaded::Cbf(f)
                }
                Kind::Qf => {
                    let f = QuotientFilter::new(args.m, args.d, args.a, seed)?;
                    println!(
                        "q={} r={} space_bits={}",
                        f.quotient_bits(),
                        f.remainder_bits(),
                        f.measured_space_bits()
                    );
                    Loaded::Qf(f)
                }
            };
            save(&filter, &args.out)?;
            Ok(0)
        }
        FilterCmd::Add(args) => {
            let mut filter = load(args.kind, &args.filter)?;
            let mut rejected = 0u64;
            for token in read_tokens(&args.input)? {
                let key = token_key(&token);
                match &mut filter {
                    Loaded::Bloom(f) => f.insert(key),
                    Loaded::Cbf(f) => f.insert(key),
                    Loaded::Qf(f) => {
                        if f.insert(key).is_err() {
                            rejected += 1;
                        }
                    }
                }
            }
            save(&filter, &args.filter)?;
            if rejected > 0 {
                eprintln!("mdt: capacity exceeded, rejected {rejected} keys");
                return Ok(4);
            }
            Ok(0)
        }
        FilterCmd::Del(args) => {
            let mut filter = load(args.kind, &args.filter)?;
            for token in read_tokens(&args.input)? {
                let key = token_key(&token);
                match &mut filter {
                    Loaded::Bloom(_) => {
                        return Err(Error::invalid("bloom filters do not support deletion"))
                    }
                    Loaded::Cbf(f) => f.remove(key)?,
                    Loaded::Qf(f) => f.remove(key)?,
                }
            }
            save(&filter, &args.filter)?;
            Ok(0)
        }
        FilterCmd::Query(args) => {
            let filter = load(args.kind, &args.filter)?;
            let mut out = std::io::stdout().lock();
            for token in read_tokens(&args.input)? {
                let key = token_key(&token);
                let hit = match &filter {
                    Loaded::Bloom(f) => f.contains(key),
                    Loaded::Cbf(f) => f.contains(key),
                    Loaded::Qf(f) => f.contains(key),
                };
                writeln!(out, "{}", hit as u8)?;
            }
            Ok(0)
        }
    }
}
