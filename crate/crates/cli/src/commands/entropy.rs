use clap::Args;
use mdt::entropy::{hk, FrequencyTable, HuffmanCode};
use mdt::textindex::{FmIndex, Text};
use mdt::{Error, Result};

use crate::keys::read_text_file;

#[derive(Args)]
pub struct EntropyArgs {
    /// Input file.
    pub file: String,
    /// Largest context order to report (H0..Hk).
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    /// Also report the Huffman-coded size in bits.
    #[arg(long)]
    pub huffman: bool,
    /// Also build an FM-index and report its payload bits.
    #[arg(long)]
    pub index: bool,
}

pub fn run(args: EntropyArgs) -> Result<i32> {
    let bytes = read_text_file(&args.file)?;
    if bytes.is_empty() {
        return Err(Error::invalid("empty input file"));
    }
    if args.k > bytes.len() {
        return Err(Error::invalid("context order exceeds file length"));
    }
    let freqs = FrequencyTable::from_bytes(&bytes);
    println!("n={}", bytes.len());
    println!("sigma={}", freqs.sigma());
    for order in 0..=args.k {
        println!("H{order}={:.2}", hk(&bytes, order)?);
    }
    if args.huffman {
        let code = HuffmanCode::build(&freqs)?;
        println!("huffman_bits={}", code.total_bits(&freqs));
    }
    if args.index {
        let text = Text::new(&bytes)?;
        let fm = FmIndex::build(&text)?;
        println!("fm_payload_bits={}", fm.payload_bits());
        println!("fm_total_bits={}", fm.measured_bits());
    }
    Ok(0)
}
