//! Canonical Huffman coding with a compact code dictionary.
//!
//! The crate builds optimal canonical codes and represents the decoding
//! dictionary in two ways: the classic sorted list of leftmost codewords per
//! depth, and a partitioned form ([`codebook::PartitionedCodebook`]) that
//! stores only truncated tails of those codewords in small predecessor sets.
//! Codeword lengths live in a wavelet matrix ([`succinct::WaveletTree`]) so
//! symbols map to codewords and back with a constant number of probes.

pub mod bitio;
pub mod code_builder;
pub mod codebook;
pub mod codec;
pub mod error;
pub mod harness;
pub mod pred_set;
pub mod succinct;

pub use code_builder::{
    canonicalize, compute_lengths, tail_split, validate, CanonicalCode, CodeLengths, Codeword,
    FrequencyTable, TailSplit, ValidationReport,
};
pub use codebook::{DepthLookup, PartitionedCodebook, SpaceReport};
pub use codec::{decode_stream, encode_stream, encode_text, Decoder, Encoder, FileHeader, Strategy};
pub use error::{Error, Result};
