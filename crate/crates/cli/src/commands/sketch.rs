use clap::{Args, Subcommand};
use mdt::sketches::{
    jaccard_estimate, minhash_k, DistinctCounter, MinHashSketch, MorrisCounter,
};
use mdt::{Error, Result};

use crate::keys::{read_tokens, token_key};

#[derive(Subcommand)]
pub enum SketchCmd {
    /// Bottom-k distinct-element estimate over newline-delimited tokens.
    Distinct(DistinctArgs),
    /// Build or compare MinHash sketches.
    Minhash(MinhashArgs),
    /// Morris approximate event counter.
    Morris(MorrisArgs),
    /// Sliding-window count/sum over a stream of small integers.
    Dgim(DgimArgs),
}

#[derive(Args)]
pub struct DistinctArgs {
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    #[arg(long, default_value = "-")]
    pub input: String,
    /// Serialize the sketch state here.
    #[arg(long)]
    pub sketch_out: Option<String>,
}

#[derive(Args)]
pub struct MinhashArgs {
    /// Token source to sketch.
    #[arg(long, conflicts_with = "compare")]
    pub input: Option<String>,
    /// Number of hash functions; overrides --eps/--delta sizing.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    #[arg(long)]
    pub sketch_out: Option<String>,
    /// Two serialized sketches: print their Jaccard estimate.
    #[arg(long, num_args = 2)]
    pub compare: Option<Vec<String>>,
}

#[derive(Args)]
pub struct MorrisArgs {
    /// Number of events; otherwise one event per input line.
    #[arg(long)]
    pub count: Option<u64>,
    #[arg(long, default_value = "-")]
    pub input: String,
}

#[derive(Args)]
pub struct DgimArgs {
    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,
    #[arg(long)]
    pub window: u64,
    /// Window width to query after consuming the stream.
    #[arg(long)]
    pub query: u64,
    #[arg(long, default_value = "-")]
    pub input: String,
}

pub fn run(cmd: SketchCmd, seed: u64) -> Result<i32> {
    match cmd {
        SketchCmd::Distinct(args) => {
            let mut counter = DistinctCounter::with_epsilon(args.eps, seed)?;
            for token in read_tokens(&args.input)? {
                counter.offer(token_key(&token));
            }
            println!("{:.6}", counter.estimate());
            if let Some(path) = args.sketch_out {
                std::fs::write(path, counter.to_bytes())?;
            }
            Ok(0)
        }
        SketchCmd::Minhash(args) => {
            if let Some(files) = args.compare {
                let a = MinHashSketch::from_bytes(&std::fs::read(&files[0])?)?;
                let b = MinHashSketch::from_bytes(&std::fs::read(&files[1])?)?;
                println!("{:.6}", jaccard_estimate(&a, &b)?);
                return Ok(0);
            }
            let input =
                args.input.ok_or_else(|| Error::invalid("need --input or --compare"))?;
            let keys: Vec<u64> =
                read_tokens(&input)?.iter().map(|t| token_key(t)).collect();
            let k = args.k.unwrap_or_else(|| minhash_k(args.eps, args.delta));
            let sketch = MinHashSketch::build(&keys, k, seed)?;
            println!("k={}", sketch.k());
            if let Some(path) = args.sketch_out {
                std::fs::write(path, sketch.to_bytes())?;
            }
            Ok(0)
        }
        SketchCmd::Morris(args) => {
            let events = match args.count {
                Some(n) => n,
                None => read_tokens(&args.input)?.len() as u64,
            };
            let mut counter = MorrisCounter::new(seed);
            for _ in 0..events {
                counter.tick();
            }
            println!("{:.6}", counter.estimate());
            Ok(0)
        }
        SketchCmd::Dgim(args) => {
            let values: Vec<u64> = read_tokens(&args.input)?
                .iter()
                .map(|t| t.parse::<u64>().map_err(|_| Error::invalid(format!("bad integer {t}"))))
                .collect::<Result<_>>()?;
            let max = values.iter().copied().max().unwrap_or(0);
            let estimate = if max <= 1 {
                let mut w = mdt::sketches::DgimWindow::new(args.window, args.eps)?;
                for v in values {
                    w.push(v == 1);
                }
                w.count(args.query)?
            } else {
                let bits = 64 - max.leading_zeros();
                let mut w = mdt::sketches::dgim::DgimSumWindow::new(args.window, args.eps, bits)?;
                for v in values {
                    w.push(v)?;
                }
                w.sum(args.query)?
            };
            println!("{estimate}");
            Ok(0)
        }
    }
}
