use std::io::Write;

use clap::{Args, Subcommand, ValueEnum};
use mdt::textindex::{text, CsaIndex, FmIndex, Text};
use mdt::{Error, Result};

use crate::keys::read_text_file;

#[derive(Copy, Clone, ValueEnum)]
pub enum Kind {
    Fm,
    Csa,
}

#[derive(Subcommand)]
pub enum IndexCmd {
    /// Build an index from a text file.
    Build(BuildArgs),
    /// Count occurrences of a pattern.
    Count(QueryArgs),
    /// List sorted 1-based occurrence positions, one per line.
    Locate(QueryArgs),
    /// Print a substring of the indexed text.
    Extract(ExtractArgs),
}

/// Index construction is in-memory; larger inputs are rejected.
const MAX_TEXT_BYTES: u64 = 256 << 20;

#[derive(Args)]
pub struct BuildArgs {
    #[arg(long, value_enum, default_value = "fm")]
    pub kind: Kind,
    /// Text file to index ('$' and byte 0 are reserved; at most 256 MiB).
    #[arg(long)]
    pub text: String,
    /// Output index file.
    #[arg(long)]
    pub out: String,
}

#[derive(Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub index: String,
    #[arg(long)]
    pub pattern: String,
}

#[derive(Args)]
pub struct ExtractArgs {
    #[arg(long)]
    pub index: String,
    /// 1-based start position.
    #[arg(long)]
    pub pos: usize,
    #[arg(long)]
    pub len: usize,
}

#[allow(clippy::large_enum_variant)] // one short-lived value per invocation
enum Loaded {
    Fm(FmIndex),
    Csa(CsaIndex),
}

fn load(path: &str) -> Result<Loaded> {
    let bytes = std::fs::read(path)?;
    if bytes.len() < 5 {
        return Err(Error::corrupt("index file too short"));
    }
    match bytes[4] {
        1 => Ok(Loaded::Csa(CsaIndex::from_bytes(&bytes)?)),
        2 => Ok(Loaded::Fm(FmIndex::from_bytes(&bytes)?)),
        k => Err(Error::corrupt(format!("unknown index kind {k}"))),
    }
}

pub fn run(cmd: IndexCmd) -> Result<i32> {
    match cmd {
        IndexCmd::Build(args) => {
            let size = std::fs::metadata(&args.text)?.len();
            if size > MAX_TEXT_BYTES {
                return Err(Error::invalid(format!(
                    "text is {size} bytes; index construction is capped at {MAX_TEXT_BYTES}"
                )));
            }
            let content = read_text_file(&args.text)?;
            let t = Text::new(&content)?;
            let bytes = match args.kind {
                Kind::Fm => {
                    let idx = FmIndex::build(&t)?;
                    println!("kind=fm n={} bits={}", idx.len(), idx.measured_bits());
                    idx.to_bytes()
                }
                Kind::Csa => {
                    let idx = CsaIndex::build(&t)?;
                    println!("kind=csa n={} bits={}", idx.len(), idx.measured_bits());
                    idx.to_bytes()
                }
            };
            std::fs::write(&args.out, bytes)?;
            Ok(0)
        }
        IndexCmd::Count(args) => {
            let idx = load(&args.index)?;
            let pattern = args.pattern.as_bytes();
            let count = match (&idx, pattern.is_empty()) {
                (_, true) => return Err(Error::invalid("empty pattern")),
                (Loaded::Fm(fm), _) => fm.count(pattern)?,
                (Loaded::Csa(csa), _) => csa.count(pattern)?,
            };
            println!("{count}");
            Ok(0)
        }
        IndexCmd::Locate(args) => {
            let idx = load(&args.index)?;
            let pattern = args.pattern.as_bytes();
            if pattern.is_empty() {
                return Err(Error::invalid("empty pattern"));
            }
            let positions = match &idx {
                Loaded::Fm(fm) => fm.locate(pattern)?,
                Loaded::Csa(csa) => csa.locate(pattern)?,
            };
            let mut out = std::io::stdout().lock();
            for p in positions {
                writeln!(out, "{p}")?;
            }
            Ok(0)
        }
        IndexCmd::Extract(args) => {
            let idx = load(&args.index)?;
            let internal = match &idx {
                Loaded::Fm(fm) => fm.extract(args.pos, args.len)?,
                Loaded::Csa(csa) => csa.extract(args.pos, args.len)?,
            };
            let mut out = std::io::stdout().lock();
            out.write_all(&text::render(&internal))?;
            Ok(0)
        }
    }
}
