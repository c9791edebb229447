//! Symbol and stream coding with four interchangeable decoders.

mod header;
mod search;
mod tree;

use std::fmt;
use std::str::FromStr;

pub use header::{FileHeader, MAGIC, VERSION};
pub use search::{FirstList, SearchResult};
pub use tree::CodeTree;

use crate::bitio::{BitCursor, BitWriter};
use crate::code_builder::{canonicalize, compute_lengths, CanonicalCode, Codeword, FrequencyTable};
use crate::codebook::{LookupStats, PartitionedCodebook};
use crate::error::{Error, Result};
use crate::succinct::WaveletTree;
use tree::exhausted;

/// Maps symbols to codewords through the wavelet matrix over code lengths
/// and the partitioned codebook: `codeword(c) = First[L[c]] + rank_{L[c]}(c) − 1`.
#[derive(Debug, Clone)]
pub struct Encoder {
    code: CanonicalCode,
    lengths: WaveletTree,
    codebook: PartitionedCodebook,
}

impl Encoder {
    pub fn new(code: &CanonicalCode) -> Result<Self> {
        Ok(Self {
            code: code.clone(),
            lengths: WaveletTree::new(code.lengths(), code.max_len())?,
            codebook: PartitionedCodebook::new(code)?,
        })
    }

    pub fn code(&self) -> &CanonicalCode {
        &self.code
    }

    pub fn encode_symbol(&self, symbol: u32) -> Result<Codeword> {
        let idx = self
            .code
            .symbol_index(symbol)
            .ok_or(Error::UnknownSymbol(symbol))?
            + 1;
        let len = self.lengths.access(idx)?;
        let first = self
            .codebook
            .first_of_depth(len)?
            .expect("a symbol's depth is occupied");
        let r = self.lengths.rank(len, idx)?;
        Ok(Codeword::new(first + r as u64 - 1, len))
    }

    pub fn encode_into(&self, symbols: &[u32], out: &mut BitWriter) -> Result<()> {
        for &s in symbols {
            let c = self.encode_symbol(s)?;
            out.write_bits(c.bits, c.len)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Bit-by-bit walk of an explicit code tree.
    TreeWalk,
    /// Binary search over the leftmost codeword of each depth.
    BinarySearch,
    /// Galloping search over the same list.
    ExponentialSearch,
    /// Partitioned codebook plus wavelet matrix.
    Partitioned,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::TreeWalk,
        Strategy::BinarySearch,
        Strategy::ExponentialSearch,
        Strategy::Partitioned,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::TreeWalk => "tree",
            Strategy::BinarySearch => "bin",
            Strategy::ExponentialSearch => "exp",
            Strategy::Partitioned => "part",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown decoder {s:?}")))
    }
}

/// Per-stream decoding counters. Maxima are per symbol.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecodeStats {
    pub symbols: u64,
    pub peeks: u64,
    pub reads: u64,
    /// Search comparisons (bin/exp) or bits walked (tree).
    pub steps: u64,
    pub max_steps: u32,
    pub consults: u64,
    pub max_consults: usize,
    pub node_probes: u64,
    pub max_node_probes: usize,
    pub wt_probes: u64,
    pub max_wt_probes: usize,
}

impl DecodeStats {
    pub fn avg_steps(&self) -> f64 {
        self.steps as f64 / self.symbols.max(1) as f64
    }

    pub fn avg_node_probes(&self) -> f64 {
        self.node_probes as f64 / self.symbols.max(1) as f64
    }

    fn record_steps(&mut self, steps: u32) {
        self.steps += steps as u64;
        self.max_steps = self.max_steps.max(steps);
    }
}

#[derive(Debug, Clone)]
enum Engine {
    Tree(CodeTree),
    Search {
        list: FirstList,
        exponential: bool,
        /// Canonical index of the first symbol of each length.
        offsets: Vec<usize>,
    },
    Partitioned {
        codebook: Box<PartitionedCodebook>,
        lengths: WaveletTree,
    },
}

#[derive(Debug, Clone)]
pub struct Decoder {
    code: CanonicalCode,
    strategy: Strategy,
    engine: Engine,
}

impl Decoder {
    pub fn new(code: &CanonicalCode, strategy: Strategy) -> Result<Self> {
        let engine = match strategy {
            Strategy::TreeWalk => Engine::Tree(CodeTree::new(code)),
            Strategy::BinarySearch | Strategy::ExponentialSearch => {
                let mut offsets = Vec::with_capacity(code.max_len() as usize + 1);
                let mut acc = 0usize;
                for &c in code.count_per_len() {
                    offsets.push(acc);
                    acc += c as usize;
                }
                Engine::Search {
                    list: FirstList::new(code),
                    exponential: strategy == Strategy::ExponentialSearch,
                    offsets,
                }
            }
            Strategy::Partitioned => Engine::Partitioned {
                codebook: Box::new(PartitionedCodebook::new(code)?),
                lengths: WaveletTree::new(code.lengths(), code.max_len())?,
            },
        };
        Ok(Self {
            code: code.clone(),
            strategy,
            engine,
        })
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn code(&self) -> &CanonicalCode {
        &self.code
    }

    /// Depth and leftmost codeword for the window `x`, binary search route.
    pub fn binsearch_depth(&self, x: u64) -> Option<SearchResult> {
        match &self.engine {
            Engine::Search { list, .. } => Some(list.binary(x)),
            _ => None,
        }
    }

    /// Depth and leftmost codeword for the window `x`, galloping route.
    pub fn expsearch_depth(&self, x: u64) -> Option<SearchResult> {
        match &self.engine {
            Engine::Search { list, .. } => Some(list.exponential(x)),
            _ => None,
        }
    }

    /// Decodes the symbol at the cursor, which must sit on a codeword boundary.
    pub fn decode_symbol(&self, cursor: &mut BitCursor<'_>, stats: &mut DecodeStats) -> Result<u32> {
        stats.symbols += 1;
        let max_len = self.code.max_len();
        match &self.engine {
            Engine::Tree(tree) => {
                let (symbol, bits) = tree.decode(cursor)?;
                stats.reads += bits as u64;
                stats.record_steps(bits);
                Ok(symbol)
            }
            Engine::Search {
                list,
                exponential,
                offsets,
            } => {
                let x = cursor.peek(max_len)?;
                stats.peeks += 1;
                let found = if *exponential {
                    list.exponential(x)
                } else {
                    list.binary(x)
                };
                stats.record_steps(found.steps);
                let c = cursor.read(found.depth).map_err(exhausted)?;
                stats.reads += 1;
                let r = (c - found.first) as usize;
                if r >= self.code.count_of_len(found.depth) as usize {
                    return Err(Error::Corrupt(format!("codeword {c:#b} is not assigned")));
                }
                Ok(self.code.canonical_symbols()[offsets[found.depth as usize - 1] + r])
            }
            Engine::Partitioned { codebook, lengths } => {
                let x = cursor.peek(max_len)?;
                stats.peeks += 1;
                let mut lookup = LookupStats::default();
                let found = codebook.lookup_depth_probed(x, &mut lookup);
                stats.consults += lookup.consults as u64;
                stats.max_consults = stats.max_consults.max(lookup.consults);
                stats.node_probes += lookup.node_probes as u64;
                stats.max_node_probes = stats.max_node_probes.max(lookup.node_probes);
                let c = cursor.read(found.depth).map_err(exhausted)?;
                stats.reads += 1;
                let r = c
                    .checked_sub(found.first)
                    .ok_or_else(|| Error::Corrupt(format!("codeword {c:#b} is not assigned")))?;
                let mut probes = 0;
                let idx = lengths
                    .select_probed(found.depth, r as usize + 1, &mut probes)
                    .map_err(|_| Error::Corrupt(format!("codeword {c:#b} is not assigned")))?;
                stats.wt_probes += probes as u64;
                stats.max_wt_probes = stats.max_wt_probes.max(probes);
                Ok(self.code.alphabet()[idx - 1])
            }
        }
    }

    /// Decodes exactly `n` symbols from the cursor.
    pub fn decode_n(
        &self,
        cursor: &mut BitCursor<'_>,
        n: u64,
        stats: &mut DecodeStats,
    ) -> Result<Vec<u32>> {
        let mut out = Vec::with_capacity(n.min(1 << 24) as usize);
        for _ in 0..n {
            out.push(self.decode_symbol(cursor, stats)?);
        }
        Ok(out)
    }
}

/// Writes header and payload for `symbols` under `code`.
pub fn encode_stream(code: Option<&CanonicalCode>, symbols: &[u32]) -> Result<Vec<u8>> {
    let header = FileHeader::new(symbols.len() as u64, code);
    let mut out = Vec::with_capacity(header.encoded_len());
    header.write_to(&mut out);
    if symbols.is_empty() {
        return Ok(out);
    }
    let code = code.ok_or_else(|| Error::UnknownSymbol(symbols[0]))?;
    let encoder = Encoder::new(code)?;
    let mut writer = BitWriter::new();
    encoder.encode_into(symbols, &mut writer)?;
    out.extend_from_slice(&writer.finish());
    Ok(out)
}

/// Builds the Huffman code for `symbols` and encodes them with it.
pub fn encode_text(symbols: &[u32]) -> Result<Vec<u8>> {
    let code = build_code(symbols)?;
    encode_stream(code.as_ref(), symbols)
}

/// Canonical Huffman code for a text; `None` when the text is empty.
pub fn build_code(symbols: &[u32]) -> Result<Option<CanonicalCode>> {
    let freqs = FrequencyTable::from_symbols(symbols);
    if freqs.is_empty() {
        return Ok(None);
    }
    canonicalize(&compute_lengths(&freqs)?).map(Some)
}

pub fn decode_stream(bytes: &[u8], strategy: Strategy) -> Result<Vec<u32>> {
    decode_stream_with_stats(bytes, strategy, &mut DecodeStats::default())
}

pub fn decode_stream_with_stats(
    bytes: &[u8],
    strategy: Strategy,
    stats: &mut DecodeStats,
) -> Result<Vec<u32>> {
    let (header, offset) = FileHeader::parse(bytes)?;
    let Some(code) = header.to_code()? else {
        return Ok(Vec::new());
    };
    let decoder = Decoder::new(&code, strategy)?;
    let mut cursor = BitCursor::new(&bytes[offset..]);
    decoder.decode_n(&mut cursor, header.n, stats)
}
