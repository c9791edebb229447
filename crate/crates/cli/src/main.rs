//! `chc`: canonical Huffman files from the command line.
//!
//! Input texts are raw bytes by default, one symbol per byte. With `--u32`
//! they are little-endian 32-bit symbol ids, the format `chc gen` writes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chc_core::codebook::PartitionedCodebook;
use chc_core::harness::{run_point, write_csv, zipf_generate, ZipfSpec};
use chc_core::{decode_stream, encode_text, validate, FileHeader, Strategy};
use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "chc", version, about = "Canonical Huffman coding with a partitioned code dictionary")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compress a text into a CHC1 file.
    Encode {
        input: PathBuf,
        output: PathBuf,
        /// Decode the written file with this decoder and compare.
        #[arg(long, value_name = "DECODER")]
        decoder: Option<Strategy>,
        /// Read the input as little-endian u32 symbols.
        #[arg(long)]
        u32: bool,
    },
    /// Restore a text from a CHC1 file.
    Decode {
        input: PathBuf,
        output: PathBuf,
        /// One of tree, bin, exp, part.
        #[arg(long, default_value = "part")]
        decoder: Strategy,
        /// Write little-endian u32 symbols instead of bytes.
        #[arg(long)]
        u32: bool,
    },
    /// Print the header, the dictionary space audit and the tail census.
    Inspect { file: PathBuf },
    /// Write a Zipf-distributed text of little-endian u32 symbols.
    Gen {
        #[arg(long)]
        sigma: u32,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        output: PathBuf,
    },
    /// Sweep Zipf alphabets and report decoding and space counters as CSV.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sigma_list: Vec<u32>,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Text length per point; 16·σ when omitted.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        csv: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Data(#[from] chc_core::Error),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 2,
            CliError::Data(_) | CliError::Mismatch(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|source| CliError::Io { path: path.into(), source })
}

fn symbols_from_bytes(bytes: &[u8], wide: bool) -> Result<Vec<u32>> {
    if !wide {
        return Ok(bytes.iter().map(|&b| b as u32).collect());
    }
    if !bytes.len().is_multiple_of(4) {
        return Err(chc_core::Error::InvalidParameter(format!(
            "u32 input has {} bytes, not a multiple of 4",
            bytes.len()
        ))
        .into());
    }
    Ok(bytes
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
        .collect())
}

fn symbols_to_bytes(symbols: &[u32], wide: bool) -> Result<Vec<u8>> {
    if wide {
        return Ok(symbols.iter().flat_map(|s| s.to_le_bytes()).collect());
    }
    symbols
        .iter()
        .map(|&s| {
            u8::try_from(s).map_err(|_| {
                CliError::Data(chc_core::Error::InvalidParameter(format!(
                    "symbol {s} does not fit in a byte; use --u32"
                )))
            })
        })
        .collect()
}

fn inspect(path: &Path) -> Result<()> {
    let bytes = read(path)?;
    let (header, offset) = FileHeader::parse(&bytes)?;
    println!("n={}", header.n);
    println!("sigma={}", header.sigma());
    println!("lmax={}", header.max_len());
    println!("counts={:?}", header.count_per_len);
    println!("payload_bytes={}", bytes.len() - offset);
    let Some(code) = header.to_code()? else {
        return Ok(());
    };

    let book = PartitionedCodebook::new(&code)?;
    let space = book.space_report();
    println!("space audit (bits):");
    println!(
        "  partitioned={} (keys={} in {} trees: key_bits={} overhead={} occupancy={} kinds={} sentinel={})",
        space.partitioned_bits(),
        space.stored_keys,
        space.trees,
        space.key_bits,
        space.tree_overhead_bits,
        space.occupancy_bits,
        space.kind_bits,
        space.sentinel_bits
    );
    println!(
        "  plain={} (first_table={} pair_pred={})",
        space.plain_bits(),
        space.plain_first_bits,
        space.plain_pred_bits
    );
    println!("  ratio={:.4}", space.ratio());
    println!(
        "  classes: long width {}, short width {}",
        book.long_width(),
        book.short_width()
    );

    let report = validate(&code, header.n);
    println!("tail census (leftmost codeword per depth):");
    for (i, &count) in report.tail_census.iter().enumerate() {
        let s = i + 1;
        println!(
            "  s={s} count={count} count*2^s/sigma={:.3}",
            count as f64 * 2f64.powi(s as i32) / code.sigma() as f64
        );
    }
    println!("census_max={:.3}", report.census_constant());
    for v in &report.violations {
        println!("violation {}: {}", v.check, v.detail);
    }
    Ok(())
}

fn bench(sigmas: &[u32], alpha: f64, n: Option<usize>, seed: u64, csv: &Path) -> Result<()> {
    let mut rows = Vec::with_capacity(sigmas.len());
    for &sigma in sigmas {
        let spec = ZipfSpec {
            sigma,
            alpha,
            n: n.unwrap_or(16 * sigma as usize),
            seed,
        };
        let start = std::time::Instant::now();
        let point = run_point(&spec)?;
        let r = &point.row;
        println!(
            "sigma={} present={} lmax={} exp={:.3} bin={:.3} probes={:.3} ratio={:.4} rare*sigma={:.3} census={:.3} ({:.2?})",
            r.sigma,
            point.sigma_present,
            r.lmax,
            r.avg_steps_exp,
            r.avg_steps_bin,
            r.avg_probes_part,
            point.space.ratio(),
            r.rare_ratio * point.sigma_present as f64,
            r.census_s_max,
            start.elapsed()
        );
        rows.push(point.row);
    }
    let mut out = Vec::new();
    write_csv(&rows, &mut out)?;
    write(csv, &out)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Encode { input, output, decoder, u32 } => {
            let text = symbols_from_bytes(&read(&input)?, u32)?;
            let bytes = encode_text(&text)?;
            write(&output, &bytes)?;
            if let Some(strategy) = decoder {
                if decode_stream(&bytes, strategy)? != text {
                    return Err(CliError::Mismatch(format!("{strategy} decoder disagrees with the input")));
                }
            }
            Ok(())
        }
        Command::Decode { input, output, decoder, u32 } => {
            let symbols = decode_stream(&read(&input)?, decoder)?;
            write(&output, &symbols_to_bytes(&symbols, u32)?)
        }
        Command::Inspect { file } => inspect(&file),
        Command::Gen { sigma, alpha, n, seed, output } => {
            let text = zipf_generate(&ZipfSpec { sigma, alpha, n, seed })?;
            write(&output, &symbols_to_bytes(&text, true)?)
        }
        Command::Bench { sigma_list, alpha, n, seed, csv } => bench(&sigma_list, alpha, n, seed, &csv),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("chc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
