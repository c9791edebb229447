use crate::error::{Error, Result};

const BLOCK_BITS: usize = 512;
const WORDS_PER_BLOCK: usize = BLOCK_BITS / 64;
const SUPER_BITS: usize = 1 << 16;
const BLOCKS_PER_SUPER: usize = SUPER_BITS / BLOCK_BITS;

/// Static bit vector with a two-level rank directory.
///
/// Superblocks of 2^16 bits hold absolute counts, 512-bit blocks hold
/// counts relative to their superblock. The leading entry of each level is
/// always zero and is not stored. Select binary-searches the directory and
/// finishes with a scan of at most eight words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RsBitVector {
    words: Vec<u64>,
    len: usize,
    ones: usize,
    supers: Vec<u64>,
    blocks: Vec<u16>,
}

impl RsBitVector {
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0usize;
        for b in bits {
            if len.is_multiple_of(64) {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1u64 << (len % 64);
            }
            len += 1;
        }
        Self::from_words(words, len)
    }

    /// Builds from LSB-first words; bits at positions ≥ `len` are ignored.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(64), 0);
        if !len.is_multiple_of(64) {
            let last = words.len() - 1;
            words[last] &= (1u64 << (len % 64)) - 1;
        }
        let n_blocks = words.len().div_ceil(WORDS_PER_BLOCK);
        let mut supers = Vec::new();
        let mut blocks = Vec::new();
        let mut total = 0u64;
        let mut super_base = 0u64;
        for b in 0..n_blocks {
            if b > 0 {
                if b % BLOCKS_PER_SUPER == 0 {
                    super_base = total;
                    supers.push(total);
                }
                blocks.push((total - super_base) as u16);
            }
            let lo = b * WORDS_PER_BLOCK;
            let hi = (lo + WORDS_PER_BLOCK).min(words.len());
            total += words[lo..hi].iter().map(|w| w.count_ones() as u64).sum::<u64>();
        }
        Self {
            words,
            len,
            ones: total as usize,
            supers,
            blocks,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.ones
    }

    /// Bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfRange {
                index: i as u64,
                bound: self.len as u64,
            });
        }
        Ok(self.bit(i - 1))
    }

    /// Bit at 0-based index `idx`.
    pub(crate) fn bit(&self, idx: usize) -> bool {
        (self.words[idx / 64] >> (idx % 64)) & 1 == 1
    }

    fn block_base(&self, block: usize) -> usize {
        let sup = block / BLOCKS_PER_SUPER;
        let s = if sup == 0 { 0 } else { self.supers[sup - 1] as usize };
        let b = if block == 0 { 0 } else { self.blocks[block - 1] as usize };
        s + b
    }

    /// Number of ones among the first `i` bits.
    pub fn rank1(&self, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::OutOfRange {
                index: i as u64,
                bound: self.len as u64,
            });
        }
        Ok(self.rank1_unchecked(i))
    }

    pub(crate) fn rank1_unchecked(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        let block = (i - 1) / BLOCK_BITS;
        let mut count = self.block_base(block);
        let first_word = block * WORDS_PER_BLOCK;
        let last_word = i / 64;
        for w in &self.words[first_word..last_word] {
            count += w.count_ones() as usize;
        }
        if !i.is_multiple_of(64) {
            count += (self.words[last_word] & ((1u64 << (i % 64)) - 1)).count_ones() as usize;
        }
        count
    }

    pub fn rank0(&self, i: usize) -> Result<usize> {
        Ok(i - self.rank1(i)?)
    }

    pub(crate) fn rank0_unchecked(&self, i: usize) -> usize {
        i - self.rank1_unchecked(i)
    }

    /// 1-based position of the `j`-th one; `select1(0) = 0`.
    pub fn select1(&self, j: usize) -> Result<usize> {
        if j > self.ones {
            return Err(Error::OutOfRange {
                index: j as u64,
                bound: self.ones as u64,
            });
        }
        Ok(self.select_impl::<true>(j))
    }

    /// 1-based position of the `j`-th zero; `select0(0) = 0`.
    pub fn select0(&self, j: usize) -> Result<usize> {
        if j > self.count_zeros() {
            return Err(Error::OutOfRange {
                index: j as u64,
                bound: self.count_zeros() as u64,
            });
        }
        Ok(self.select_impl::<false>(j))
    }

    fn select_impl<const ONES: bool>(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        let n_blocks = self.words.len().div_ceil(WORDS_PER_BLOCK);
        let matches_before = |block: usize| {
            let ones = self.block_base(block);
            if ONES {
                ones
            } else {
                block * BLOCK_BITS - ones
            }
        };
        // Last block whose prefix count is < j.
        let (mut lo, mut hi) = (0usize, n_blocks);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if matches_before(mid) < j {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut need = j - matches_before(lo);
        let mut word_idx = lo * WORDS_PER_BLOCK;
        loop {
            let mut w = self.words[word_idx];
            if !ONES {
                w = !w;
            }
            let c = w.count_ones() as usize;
            if c >= need {
                for _ in 1..need {
                    w &= w - 1;
                }
                return word_idx * 64 + w.trailing_zeros() as usize + 1;
            }
            need -= c;
            word_idx += 1;
        }
    }

    /// Payload bits (whole words) plus directory bits.
    pub fn space_bits(&self) -> usize {
        self.payload_bits() + self.directory_bits()
    }

    pub fn payload_bits(&self) -> usize {
        self.words.len() * 64
    }

    pub fn directory_bits(&self) -> usize {
        self.supers.len() * 64 + self.blocks.len() * 16
    }
}
