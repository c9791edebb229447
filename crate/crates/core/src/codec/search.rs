use crate::code_builder::{CanonicalCode, Codeword};

/// Leftmost codeword of each occupied depth, right-padded to `max_len`
/// bits and sorted; the classic canonical decoding table.
#[derive(Debug, Clone)]
pub struct FirstList {
    padded: Vec<u64>,
    words: Vec<Codeword>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchResult {
    pub depth: u32,
    pub first: u64,
    /// Key comparisons performed.
    pub steps: u32,
}

impl FirstList {
    pub fn new(code: &CanonicalCode) -> Self {
        let words: Vec<Codeword> = code.first_codewords().collect();
        let padded = words.iter().map(|c| c.padded(code.max_len())).collect();
        Self { padded, words }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    fn result(&self, pos: usize, steps: u32) -> SearchResult {
        // The shallowest entry is all zeros, so a predecessor always exists.
        let c = self.words[pos.max(1) - 1];
        SearchResult {
            depth: c.len,
            first: c.bits,
            steps,
        }
    }

    /// Predecessor of `x` by binary search over the whole list.
    pub fn binary(&self, x: u64) -> SearchResult {
        // Invariant: entries at positions ≤ lo are ≤ x, entries ≥ hi exceed it.
        let (mut lo, mut hi) = (0usize, self.padded.len() + 1);
        let mut steps = 0;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            steps += 1;
            if self.padded[mid - 1] <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.result(lo, steps)
    }

    /// Predecessor of `x` by galloping from the head of the list, then
    /// binary search inside the bracketed range.
    pub fn exponential(&self, x: u64) -> SearchResult {
        let m = self.padded.len();
        let mut steps = 0;
        let mut bound = 1usize;
        while bound <= m {
            steps += 1;
            if self.padded[bound - 1] > x {
                break;
            }
            bound *= 2;
        }
        let (mut lo, mut hi) = (bound / 2, bound.min(m + 1));
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            steps += 1;
            if self.padded[mid - 1] <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.result(lo, steps)
    }
}
