use std::io::Write;

use serde::Serialize;

use super::zipf::{zipf_generate, ZipfSpec};
use crate::bitio::BitCursor;
use crate::code_builder::{validate, CanonicalCode, FrequencyTable, PHI};
use crate::codebook::SpaceReport;
use crate::codec::{build_code, encode_stream, DecodeStats, Decoder, FileHeader, Strategy};
use crate::error::{Error, Result};
use crate::succinct::WaveletTree;

/// Codeword lengths above `2·log_φ σ` count as rare.
pub fn rare_length_threshold(sigma: usize) -> f64 {
    2.0 * (sigma.max(1) as f64).ln() / PHI.ln()
}

/// Fraction of text positions whose symbol has a codeword longer than
/// [`rare_length_threshold`].
pub fn measure_rare_occurrences(text: &[u32], code: &CanonicalCode) -> f64 {
    if text.is_empty() {
        return 0.0;
    }
    let threshold = rare_length_threshold(code.sigma());
    let freqs = FrequencyTable::from_symbols(text);
    let rare: u64 = freqs
        .counts()
        .iter()
        .filter(|&&(s, _)| {
            code.symbol_index(s)
                .is_some_and(|i| code.lengths()[i] as f64 > threshold)
        })
        .map(|&(_, c)| c)
        .sum();
    rare as f64 / text.len() as f64
}

/// One CSV line of `chc bench`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub sigma: u32,
    pub alpha: f64,
    pub n: usize,
    pub lmax: u32,
    pub dict_bits_plain: usize,
    pub dict_bits_partitioned: usize,
    pub wt_bits: usize,
    pub avg_probes_part: f64,
    pub avg_steps_exp: f64,
    pub avg_steps_bin: f64,
    pub rare_ratio: f64,
    /// Largest count(tail ≥ s)·2^s/σ over all s.
    pub census_s_max: f64,
}

/// Everything measured at one sweep point.
#[derive(Debug, Clone)]
pub struct PointReport {
    pub row: BenchRow,
    /// Distinct symbols actually drawn.
    pub sigma_present: usize,
    pub space: SpaceReport,
    pub wt_payload_bits: usize,
    pub wt_levels: usize,
    pub exp: DecodeStats,
    pub bin: DecodeStats,
    pub part: DecodeStats,
    /// Size of the largest class tree.
    pub largest_class: usize,
}

/// Generates a Zipf text, builds its code, and measures decoding and space.
/// Every decoder's output is checked against the text.
pub fn run_point(spec: &ZipfSpec) -> Result<PointReport> {
    let text = zipf_generate(spec)?;
    let code = build_code(&text)?
        .ok_or_else(|| Error::InvalidParameter("empty text".into()))?;
    let bytes = encode_stream(Some(&code), &text)?;
    let (_, offset) = FileHeader::parse(&bytes)?;
    let payload = &bytes[offset..];

    let stats = |strategy: Strategy| -> Result<(DecodeStats, Decoder)> {
        let decoder = Decoder::new(&code, strategy)?;
        let mut s = DecodeStats::default();
        let decoded = decoder.decode_n(&mut BitCursor::new(payload), text.len() as u64, &mut s)?;
        if decoded != text {
            return Err(Error::Corrupt(format!("{strategy} decoder disagrees with the text")));
        }
        Ok((s, decoder))
    };
    let (exp, _) = stats(Strategy::ExponentialSearch)?;
    let (bin, _) = stats(Strategy::BinarySearch)?;
    let (part, _) = stats(Strategy::Partitioned)?;

    let codebook = crate::codebook::PartitionedCodebook::new(&code)?;
    let space = codebook.space_report();
    let largest_class = codebook.trees().map(|t| t.len()).max().unwrap_or(0);
    let wt = WaveletTree::new(code.lengths(), code.max_len())?;
    let report = validate(&code, text.len() as u64);

    Ok(PointReport {
        row: BenchRow {
            sigma: spec.sigma,
            alpha: spec.alpha,
            n: spec.n,
            lmax: code.max_len(),
            dict_bits_plain: space.plain_bits(),
            dict_bits_partitioned: space.partitioned_bits(),
            wt_bits: wt.space_bits(),
            avg_probes_part: part.avg_node_probes(),
            avg_steps_exp: exp.avg_steps(),
            avg_steps_bin: bin.avg_steps(),
            rare_ratio: measure_rare_occurrences(&text, &code),
            census_s_max: report.census_constant(),
        },
        sigma_present: code.sigma(),
        space,
        wt_payload_bits: wt.payload_bits(),
        wt_levels: wt.depth(),
        exp,
        bin,
        part,
        largest_class,
    })
}

/// Writes rows with a header line, columns in [`BenchRow`] field order.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)
            .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    }
    w.flush()
        .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    Ok(())
}
