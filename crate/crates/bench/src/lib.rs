//! Fixtures shared by the decoding benchmarks.

use chc_core::codec::build_code;
use chc_core::harness::{zipf_generate, ZipfSpec};
use chc_core::{encode_stream, CanonicalCode, FileHeader};

/// A Zipf text with its code and encoded payload.
pub struct Fixture {
    pub text: Vec<u32>,
    pub code: CanonicalCode,
    /// Encoded file including the header.
    pub bytes: Vec<u8>,
    /// Byte offset of the payload.
    pub offset: usize,
}

impl Fixture {
    pub fn zipf(sigma: u32, alpha: f64, n: usize, seed: u64) -> Self {
        let text = zipf_generate(&ZipfSpec { sigma, alpha, n, seed }).expect("valid spec");
        let code = build_code(&text).expect("codable").expect("non-empty");
        let bytes = encode_stream(Some(&code), &text).expect("encodable");
        let (_, offset) = FileHeader::parse(&bytes).expect("own header parses");
        Self { text, code, bytes, offset }
    }

    pub fn payload(&self) -> &[u8] {
        &self.bytes[self.offset..]
    }
}
