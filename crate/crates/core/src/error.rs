use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("unexpected end of bit stream: need {need} bits at offset {offset}, have {len}")]
    EndOfStream { offset: u64, need: u32, len: u64 },
    #[error("empty frequency table")]
    EmptyFrequencies,
    #[error("code lengths violate Kraft equality")]
    KraftViolation,
    #[error("maximum codeword length {max_len} too wide for 64-bit packed pairs")]
    CodeTooDeep { max_len: u32 },
    #[error("index {index} out of range 0..={bound}")]
    OutOfRange { index: u64, bound: u64 },
    #[error("keys must be strictly increasing and below 2^{width}")]
    UnsortedKeys { width: u32 },
    #[error("symbol {0} is not part of the code")]
    UnknownSymbol(u32),
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported format version {0}")]
    BadVersion(u8),
    #[error("truncated header")]
    TruncatedHeader,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("corrupt payload: {0}")]
    Corrupt(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
