//! Rank/select bit vectors and a wavelet matrix over codeword lengths.
//!
//! Positions follow the usual succinct conventions: `rank(i)` counts within
//! the first `i` entries and `select(j)` returns the 1-based position of the
//! `j`-th match, with `select(0) = 0`.

mod bitvec;
mod packed;
mod wavelet;

pub use bitvec::RsBitVector;
pub use packed::PackedInts;
pub use wavelet::WaveletTree;
