//! The CHC1 container.
//!
//! ```text
//! magic            4 bytes  "CHC1"
//! version          u8       1
//! n                u64 LE   number of encoded symbols
//! sigma            u32 LE   number of distinct symbols
//! max_len          u8       longest codeword, 0 for an empty alphabet
//! count_per_len    max_len × u32 LE
//! symbols          sigma × u32 LE, sorted by (length, id)
//! payload          MSB-first codewords, zero-padded to a byte boundary
//! ```

use crate::code_builder::CanonicalCode;
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"CHC1";
pub const VERSION: u8 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileHeader {
    pub n: u64,
    pub count_per_len: Vec<u32>,
    pub symbols: Vec<u32>,
}

impl FileHeader {
    pub fn new(n: u64, code: Option<&CanonicalCode>) -> Self {
        match code {
            Some(c) => Self {
                n,
                count_per_len: c.count_per_len().to_vec(),
                symbols: c.canonical_symbols().to_vec(),
            },
            None => Self {
                n,
                count_per_len: Vec::new(),
                symbols: Vec::new(),
            },
        }
    }

    pub fn sigma(&self) -> usize {
        self.symbols.len()
    }

    pub fn max_len(&self) -> u32 {
        self.count_per_len.len() as u32
    }

    pub fn encoded_len(&self) -> usize {
        4 + 1 + 8 + 4 + 1 + 4 * (self.count_per_len.len() + self.symbols.len())
    }

    pub fn write_to(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&self.n.to_le_bytes());
        out.extend_from_slice(&(self.symbols.len() as u32).to_le_bytes());
        out.push(self.count_per_len.len() as u8);
        for c in &self.count_per_len {
            out.extend_from_slice(&c.to_le_bytes());
        }
        for s in &self.symbols {
            out.extend_from_slice(&s.to_le_bytes());
        }
    }

    /// Parses a header, returning it with the offset of the payload.
    pub fn parse(bytes: &[u8]) -> Result<(Self, usize)> {
        let magic_len = bytes.len().min(4);
        if bytes[..magic_len] != MAGIC[..magic_len] {
            return Err(Error::BadMagic);
        }
        let mut r = Reader { bytes, pos: 4 };
        if bytes.len() < 4 {
            return Err(Error::TruncatedHeader);
        }
        let version = r.u8()?;
        if version != VERSION {
            return Err(Error::BadVersion(version));
        }
        let n = u64::from_le_bytes(r.take::<8>()?);
        let sigma = u32::from_le_bytes(r.take::<4>()?) as usize;
        let max_len = r.u8()? as usize;
        let count_per_len = (0..max_len)
            .map(|_| r.take::<4>().map(u32::from_le_bytes))
            .collect::<Result<Vec<_>>>()?;
        if count_per_len.iter().map(|&c| c as u64).sum::<u64>() != sigma as u64 {
            return Err(Error::MalformedHeader(
                "per-length counts do not sum to sigma".into(),
            ));
        }
        let symbols = (0..sigma)
            .map(|_| r.take::<4>().map(u32::from_le_bytes))
            .collect::<Result<Vec<_>>>()?;
        if sigma == 0 && n > 0 {
            return Err(Error::MalformedHeader(
                "symbols present in text but alphabet is empty".into(),
            ));
        }
        Ok((
            Self {
                n,
                count_per_len,
                symbols,
            },
            r.pos,
        ))
    }

    /// The canonical code the header describes; `None` for an empty alphabet.
    pub fn to_code(&self) -> Result<Option<CanonicalCode>> {
        if self.symbols.is_empty() {
            return Ok(None);
        }
        CanonicalCode::from_counts(self.count_per_len.clone(), self.symbols.clone())
            .map(Some)
            .map_err(|e| match e {
                Error::KraftViolation | Error::CodeTooDeep { .. } => e,
                other => Error::MalformedHeader(other.to_string()),
            })
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take<const N: usize>(&mut self) -> Result<[u8; N]> {
        let end = self.pos + N;
        let chunk = self.bytes.get(self.pos..end).ok_or(Error::TruncatedHeader)?;
        self.pos = end;
        Ok(chunk.try_into().expect("slice of length N"))
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take::<1>()?[0])
    }
}
