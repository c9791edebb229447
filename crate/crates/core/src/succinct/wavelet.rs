use super::{PackedInts, RsBitVector};
use crate::code_builder::ceil_log2;
use crate::error::{Error, Result};

/// Wavelet matrix over a sequence of values in `1..=alphabet_size`.
///
/// Each value `v` is stored as `v − 1` in ⌈lg alphabet_size⌉ bits, one
/// level per bit, most significant first. Every query costs exactly one
/// bit-vector rank or select per level; callers can observe that through the
/// `*_probed` variants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveletTree {
    levels: Vec<RsBitVector>,
    zeros: PackedInts,
    /// Final-level offset of each value's run, indexed by `v − 1`.
    starts: PackedInts,
    counts: PackedInts,
    len: usize,
    alphabet_size: u32,
}

impl WaveletTree {
    pub fn new(values: &[u32], alphabet_size: u32) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|&&v| v == 0 || v > alphabet_size) {
            return Err(Error::OutOfRange {
                index: bad as u64,
                bound: alphabet_size as u64,
            });
        }
        let depth = ceil_log2(alphabet_size as u64);
        let mut cur: Vec<u32> = values.iter().map(|&v| v - 1).collect();
        let mut levels = Vec::with_capacity(depth as usize);
        let mut zeros = Vec::with_capacity(depth as usize);
        for level in 0..depth {
            let shift = depth - 1 - level;
            let bv = RsBitVector::from_bits(cur.iter().map(|&v| (v >> shift) & 1 == 1));
            zeros.push(bv.count_zeros() as u64);
            levels.push(bv);
            let (mut lo, hi): (Vec<u32>, Vec<u32>) =
                cur.iter().partition(|&&v| (v >> shift) & 1 == 0);
            lo.extend(hi);
            cur = lo;
        }

        let mut counts = vec![0u64; alphabet_size as usize];
        for &v in values {
            counts[v as usize - 1] += 1;
        }
        let mut tree = Self {
            levels,
            zeros: PackedInts::from_values(&zeros),
            starts: PackedInts::default(),
            counts: PackedInts::from_values(&counts),
            len: values.len(),
            alphabet_size,
        };
        let starts: Vec<u64> = (0..alphabet_size)
            .map(|v| tree.descend(v, 0, &mut 0) as u64)
            .collect();
        tree.starts = PackedInts::from_values(&starts);
        Ok(tree)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    /// Number of bit-vector levels, the per-query probe count.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Number of entries equal to `value`.
    pub fn count(&self, value: u32) -> usize {
        if value == 0 || value > self.alphabet_size {
            0
        } else {
            self.counts.get(value as usize - 1) as usize
        }
    }

    // Maps prefix length `pos` through every level following the bits of `v`.
    fn descend(&self, v: u32, mut pos: usize, probes: &mut usize) -> usize {
        let depth = self.levels.len() as u32;
        for (level, bv) in self.levels.iter().enumerate() {
            *probes += 1;
            if (v >> (depth - 1 - level as u32)) & 1 == 0 {
                pos = bv.rank0_unchecked(pos);
            } else {
                pos = self.zeros.get(level) as usize + bv.rank1_unchecked(pos);
            }
        }
        pos
    }

    /// Value at 1-based position `i`.
    pub fn access(&self, i: usize) -> Result<u32> {
        self.access_probed(i, &mut 0)
    }

    pub fn access_probed(&self, i: usize, probes: &mut usize) -> Result<u32> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfRange {
                index: i as u64,
                bound: self.len as u64,
            });
        }
        let mut idx = i - 1;
        let mut value = 0u32;
        for (level, bv) in self.levels.iter().enumerate() {
            *probes += 1;
            let bit = bv.bit(idx);
            let ones_before = bv.rank1_unchecked(idx);
            value = (value << 1) | bit as u32;
            idx = if bit {
                self.zeros.get(level) as usize + ones_before
            } else {
                idx - ones_before
            };
        }
        Ok(value + 1)
    }

    /// Occurrences of `value` among the first `i` entries.
    pub fn rank(&self, value: u32, i: usize) -> Result<usize> {
        self.rank_probed(value, i, &mut 0)
    }

    pub fn rank_probed(&self, value: u32, i: usize, probes: &mut usize) -> Result<usize> {
        self.check_value(value)?;
        if i > self.len {
            return Err(Error::OutOfRange {
                index: i as u64,
                bound: self.len as u64,
            });
        }
        let end = self.descend(value - 1, i, probes);
        Ok(end - self.starts.get(value as usize - 1) as usize)
    }

    /// 1-based position of the `r`-th occurrence of `value`.
    pub fn select(&self, value: u32, r: usize) -> Result<usize> {
        self.select_probed(value, r, &mut 0)
    }

    pub fn select_probed(&self, value: u32, r: usize, probes: &mut usize) -> Result<usize> {
        self.check_value(value)?;
        let count = self.count(value);
        if r == 0 || r > count {
            return Err(Error::OutOfRange {
                index: r as u64,
                bound: count as u64,
            });
        }
        let v = value - 1;
        let depth = self.levels.len() as u32;
        // 0-based index in the final arrangement, walked back to the top.
        let mut idx = self.starts.get(v as usize) as usize + r - 1;
        for level in (0..self.levels.len()).rev() {
            *probes += 1;
            let bv = &self.levels[level];
            idx = if (v >> (depth - 1 - level as u32)) & 1 == 0 {
                bv.select0(idx + 1)? - 1
            } else {
                bv.select1(idx + 1 - self.zeros.get(level) as usize)? - 1
            };
        }
        Ok(idx + 1)
    }

    fn check_value(&self, value: u32) -> Result<()> {
        if value == 0 || value > self.alphabet_size {
            Err(Error::OutOfRange {
                index: value as u64,
                bound: self.alphabet_size as u64,
            })
        } else {
            Ok(())
        }
    }

    /// Bit-vector payload bits of all levels.
    pub fn payload_bits(&self) -> usize {
        self.levels.iter().map(|l| l.payload_bits()).sum()
    }

    /// Everything: level payloads, rank directories and per-value tables.
    pub fn space_bits(&self) -> usize {
        self.levels.iter().map(|l| l.space_bits()).sum::<usize>()
            + self.zeros.space_bits()
            + self.starts.space_bits()
            + self.counts.space_bits()
    }
}
