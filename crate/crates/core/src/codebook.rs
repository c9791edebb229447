//! Partitioned replacement for the predecessor structure and the `First`
//! table of a canonical code.
//!
//! Only the leftmost codeword of each occupied depth is stored. A codeword
//! is *long-tailed* when the part after its leading run of ones has at
//! least `short_width` bits, and *short-tailed* otherwise. Long-tailed
//! codewords are grouped into length classes of `long_width = ⌈lg σ⌉`
//! depths, short-tailed ones into classes of `short_width = 2⌈lg lg σ⌉`
//! depths. Every codeword in a class of width `w` covering depths
//! `(lo, lo + w]` starts with at least `lo − w + 1` ones, so a class keeps
//! only what follows that shared run: at most `2w − 1` bits plus the
//! depth relative to `lo`.
//!
//! Decoding a peeked window `X` first measures its run of leading ones `u`.
//! The codeword at the front of `X` then has depth in `(u, u + long_width]`,
//! and in `(u, u + short_width]` if its depth's leftmost codeword is
//! short-tailed, so at most two classes of each kind can hold the answer.
//! Each class answers a predecessor query on its truncated keys; the
//! largest reconstructed result wins.
//!
//! `First[ℓ]` is recovered without a table: a bit vector marks occupied
//! depths, a second one marks which of them are long-tailed, and ranks on
//! both give the position of depth `ℓ`'s key inside its class.

use crate::code_builder::{ceil_log2, CanonicalCode, Codeword};
use crate::error::{Error, Result};
use crate::pred_set::PredSet;
use crate::succinct::RsBitVector;

/// Per-tree bookkeeping charged by the space audit: four one-byte fields
/// (class start, shared run, tail width, depth width) and a 32-bit offset.
pub const TREE_HEADER_BITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TailKind {
    Long,
    Short,
}

/// Leading ones of `x` viewed as a `width`-bit word.
pub fn unary_prefix_len(x: u64, width: u32) -> u32 {
    if width == 0 {
        return 0;
    }
    let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
    let negated = !x & mask;
    if negated == 0 {
        width
    } else {
        width - (64 - negated.leading_zeros())
    }
}

fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// One length class of one tail kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTree {
    kind: TailKind,
    /// 1-based class index.
    index: u32,
    /// Depths covered: `lo < ℓ ≤ hi`.
    lo: u32,
    hi: u32,
    shared_ones: u32,
    tail_width: u32,
    depth_bits: u32,
    tree: PredSet,
}

impl ClassTree {
    pub fn kind(&self) -> TailKind {
        self.kind
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn depth_range(&self) -> (u32, u32) {
        (self.lo, self.hi)
    }

    pub fn shared_ones(&self) -> u32 {
        self.shared_ones
    }

    pub fn tail_width(&self) -> u32 {
        self.tail_width
    }

    pub fn key_width(&self) -> u32 {
        self.tail_width + self.depth_bits
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn pred_set(&self) -> &PredSet {
        &self.tree
    }

    fn pack(&self, c: Codeword) -> u64 {
        let rest = c.len - self.shared_ones;
        let tail = c.bits & low_mask(rest);
        (tail << (self.tail_width - rest)) << self.depth_bits | (c.len - self.lo) as u64
    }

    /// The codeword a packed key stands for.
    pub fn unpack(&self, key: u64) -> Codeword {
        let len = self.lo + (key & low_mask(self.depth_bits)) as u32;
        let rest = len - self.shared_ones;
        let tail = (key >> self.depth_bits) >> (self.tail_width - rest);
        let ones = low_mask(self.shared_ones) << rest;
        Codeword::new(ones | tail, len)
    }

    /// Stored codewords in key order.
    pub fn codewords(&self) -> impl Iterator<Item = Codeword> + '_ {
        self.tree.keys().iter().map(|&k| self.unpack(k))
    }

    /// Largest stored codeword whose `max_len`-bit padding is `≤ x`, given
    /// that `x` starts with `ones` ones.
    fn pred(&self, x: u64, ones: u32, max_len: u32, probes: &mut usize) -> Option<Codeword> {
        if ones < self.shared_ones {
            // Every key starts with more ones than x does.
            return None;
        }
        let rest_len = max_len - self.shared_ones;
        let truncated = (x & low_mask(rest_len)) >> (rest_len - self.tail_width);
        let query = truncated << self.depth_bits | low_mask(self.depth_bits);
        self.tree
            .pred_probed(query, probes)
            .map(|(key, _)| self.unpack(key))
    }
}

/// Counters from one depth lookup.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LookupStats {
    /// Class trees consulted.
    pub consults: usize,
    /// Predecessor-set nodes visited.
    pub node_probes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthLookup {
    pub depth: u32,
    /// Smallest codeword of that depth, as a `depth`-bit value.
    pub first: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedCodebook {
    sigma: usize,
    max_len: u32,
    long_width: u32,
    short_width: u32,
    long_trees: Vec<Option<ClassTree>>,
    short_trees: Vec<Option<ClassTree>>,
    /// Bit ℓ set iff depth ℓ has a leaf.
    occupied: RsBitVector,
    /// One bit per occupied depth, set when its leftmost codeword is long-tailed.
    long_tailed: RsBitVector,
    /// First codeword of the deepest level, answered without a tree.
    deepest_first: u64,
}

/// `⌈lg σ⌉`, at least 1.
pub fn long_class_width(sigma: usize) -> u32 {
    ceil_log2(sigma as u64).max(1)
}

/// `2⌈lg lg σ⌉` with σ clamped to at least 4.
pub fn short_class_width(sigma: usize) -> u32 {
    let lg = ceil_log2(sigma.max(4) as u64);
    // ⌈log₂ log₂ σ⌉ is the smallest t with σ ≤ 2^(2^t).
    let mut t = 0u32;
    while (1u64 << t) < lg as u64 {
        t += 1;
    }
    2 * t.max(1)
}

impl PartitionedCodebook {
    pub fn new(code: &CanonicalCode) -> Result<Self> {
        let sigma = code.sigma();
        let max_len = code.max_len();
        let long_width = long_class_width(sigma);
        let short_width = short_class_width(sigma);

        let mut long_members: Vec<Vec<Codeword>> = vec![Vec::new(); max_len.div_ceil(long_width) as usize];
        let mut short_members: Vec<Vec<Codeword>> =
            vec![Vec::new(); max_len.div_ceil(short_width) as usize];
        let mut kinds = Vec::new();
        for c in code.first_codewords() {
            let long = c.tail_split().tail_len >= short_width;
            kinds.push(long);
            let (width, members) = if long {
                (long_width, &mut long_members)
            } else {
                (short_width, &mut short_members)
            };
            members[(c.len.div_ceil(width) - 1) as usize].push(c);
        }

        let build = |kind: TailKind, width: u32, members: Vec<Vec<Codeword>>| {
            members
                .into_iter()
                .enumerate()
                .map(|(k, words)| {
                    if words.is_empty() {
                        return Ok(None);
                    }
                    Self::build_class(kind, k as u32 + 1, width, max_len, &words).map(Some)
                })
                .collect::<Result<Vec<_>>>()
        };
        let long_trees = build(TailKind::Long, long_width, long_members)?;
        let short_trees = build(TailKind::Short, short_width, short_members)?;

        let occupied = RsBitVector::from_bits((1..=max_len).map(|l| code.count_of_len(l) > 0));
        Ok(Self {
            sigma,
            max_len,
            long_width,
            short_width,
            long_trees,
            short_trees,
            occupied,
            long_tailed: RsBitVector::from_bits(kinds),
            deepest_first: code.first(max_len).unwrap_or(0),
        })
    }

    fn build_class(
        kind: TailKind,
        index: u32,
        width: u32,
        max_len: u32,
        words: &[Codeword],
    ) -> Result<ClassTree> {
        let lo = (index - 1) * width;
        let hi = (index * width).min(max_len);
        let shared_ones = lo.saturating_sub(width - 1);
        let tail_width = hi - shared_ones;
        let depth_bits = 64 - ((hi - lo) as u64).leading_zeros();
        if tail_width + depth_bits > 64 {
            return Err(Error::CodeTooDeep { max_len });
        }
        let mut class = ClassTree {
            kind,
            index,
            lo,
            hi,
            shared_ones,
            tail_width,
            depth_bits,
            tree: PredSet::new(Vec::new(), tail_width + depth_bits)?,
        };
        let mut keys = Vec::with_capacity(words.len());
        for &c in words {
            if c.tail_split().ones_run < shared_ones {
                return Err(Error::Contract(format!(
                    "codeword {} breaks the ones-run bound of a canonical code",
                    c.to_bit_string()
                )));
            }
            keys.push(class.pack(c));
        }
        class.tree = PredSet::new(keys, tail_width + depth_bits)?;
        Ok(class)
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn max_len(&self) -> u32 {
        self.max_len
    }

    pub fn long_width(&self) -> u32 {
        self.long_width
    }

    pub fn short_width(&self) -> u32 {
        self.short_width
    }

    pub fn occupied(&self) -> &RsBitVector {
        &self.occupied
    }

    /// Non-empty class trees, long ones first.
    pub fn trees(&self) -> impl Iterator<Item = &ClassTree> {
        self.long_trees.iter().chain(&self.short_trees).flatten()
    }

    /// Depth and leftmost codeword of the codeword at the front of `x`, the
    /// next `max_len` bits of a stream positioned at a codeword boundary.
    pub fn lookup_depth(&self, x: u64) -> DepthLookup {
        self.lookup_depth_probed(x, &mut LookupStats::default())
    }

    pub fn lookup_depth_probed(&self, x: u64, stats: &mut LookupStats) -> DepthLookup {
        let u = unary_prefix_len(x, self.max_len);
        if u == self.max_len {
            return DepthLookup {
                depth: self.max_len,
                first: self.deepest_first,
            };
        }
        let mut best: Option<Codeword> = None;
        for (trees, width) in [
            (&self.long_trees, self.long_width),
            (&self.short_trees, self.short_width),
        ] {
            let first_class = (u + 1).div_ceil(width);
            let last_class = (u + width).div_ceil(width).min(trees.len() as u32);
            for k in first_class..=last_class {
                let Some(tree) = &trees[k as usize - 1] else {
                    continue;
                };
                stats.consults += 1;
                if let Some(c) = tree.pred(x, u, self.max_len, &mut stats.node_probes) {
                    let better = best.is_none_or(|b| {
                        c.padded(self.max_len) > b.padded(self.max_len)
                    });
                    if better {
                        best = Some(c);
                    }
                }
            }
        }
        // A well-formed window always has the all-zeros shallowest codeword
        // as a lower bound, so `best` is only empty for windows that no
        // codeword prefixes.
        let c = best.unwrap_or_else(|| Codeword::new(0, self.shallowest()));
        DepthLookup {
            depth: c.len,
            first: c.bits,
        }
    }

    fn shallowest(&self) -> u32 {
        self.occupied.select1(1).map_or(0, |p| p as u32)
    }

    fn kind_count(&self, depth: u32, kind: TailKind) -> usize {
        let occ = self.occupied.rank1_unchecked(depth as usize);
        let long = self.long_tailed.rank1_unchecked(occ);
        match kind {
            TailKind::Long => long,
            TailKind::Short => occ - long,
        }
    }

    /// Smallest codeword of length `depth`, or `None` when that depth has
    /// no leaf.
    pub fn first_of_depth(&self, depth: u32) -> Result<Option<u64>> {
        if depth == 0 || depth > self.max_len {
            return Err(Error::OutOfRange {
                index: depth as u64,
                bound: self.max_len as u64,
            });
        }
        if !self.occupied.bit(depth as usize - 1) {
            return Ok(None);
        }
        let occ_rank = self.occupied.rank1_unchecked(depth as usize);
        let (kind, width, trees) = if self.long_tailed.bit(occ_rank - 1) {
            (TailKind::Long, self.long_width, &self.long_trees)
        } else {
            (TailKind::Short, self.short_width, &self.short_trees)
        };
        let class = depth.div_ceil(width);
        let lo = (class - 1) * width;
        let tree = trees[class as usize - 1]
            .as_ref()
            .expect("occupied depth has a class tree");
        // Keys in a class are ordered by depth, so the position of this
        // depth among same-kind occupied depths in (lo, depth] is its rank.
        let i = self.kind_count(depth, kind) - self.kind_count(lo, kind);
        let c = tree.unpack(tree.tree.select(i)?);
        debug_assert_eq!(c.len, depth);
        Ok(Some(c.bits))
    }

    /// Space audit against the plain `First` table plus a single predecessor
    /// set of (padded codeword, length) pairs.
    pub fn space_report(&self) -> SpaceReport {
        let trees: Vec<&ClassTree> = self.trees().collect();
        let stored_keys = trees.iter().map(|t| t.len()).sum();
        let key_bits = trees.iter().map(|t| t.tree.key_bits()).sum();
        let tree_overhead_bits = trees
            .iter()
            .map(|t| t.tree.overhead_bits() + TREE_HEADER_BITS)
            .sum::<usize>()
            + self.long_trees.len()
            + self.short_trees.len();
        let occupancy_bits = self.occupied.space_bits();
        let kind_bits = self.long_tailed.space_bits();
        let sentinel_bits = self.max_len as usize;

        let occupied_depths = self.occupied.count_ones();
        let pair_width = self.max_len + ceil_log2(self.max_len as u64);
        let pair_keys: Vec<u64> = (1..=occupied_depths)
            .map(|i| {
                let depth = self.occupied.select1(i).expect("in range") as u32;
                let first = self
                    .first_of_depth(depth)
                    .expect("in range")
                    .expect("occupied");
                Codeword::new(first, depth).padded(self.max_len) << ceil_log2(self.max_len as u64)
                    | depth as u64
            })
            .collect();
        let monolithic = PredSet::new(pair_keys, pair_width).expect("pairs are increasing");
        SpaceReport {
            stored_keys,
            trees: trees.len(),
            key_bits,
            tree_overhead_bits,
            occupancy_bits,
            kind_bits,
            sentinel_bits,
            plain_first_bits: (self.max_len as usize).pow(2),
            plain_pred_bits: monolithic.key_bits() + monolithic.overhead_bits() + TREE_HEADER_BITS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceReport {
    pub stored_keys: usize,
    pub trees: usize,
    pub key_bits: usize,
    pub tree_overhead_bits: usize,
    pub occupancy_bits: usize,
    pub kind_bits: usize,
    pub sentinel_bits: usize,
    /// `max_len²`: one `max_len`-bit entry per depth.
    pub plain_first_bits: usize,
    /// Single predecessor set over (padded codeword, length) pairs, with
    /// the same per-tree header the class trees are charged.
    pub plain_pred_bits: usize,
}

impl SpaceReport {
    pub fn partitioned_bits(&self) -> usize {
        self.key_bits + self.tree_overhead_bits + self.occupancy_bits + self.kind_bits + self.sentinel_bits
    }

    pub fn plain_bits(&self) -> usize {
        self.plain_first_bits + self.plain_pred_bits
    }

    pub fn ratio(&self) -> f64 {
        self.partitioned_bits() as f64 / self.plain_bits().max(1) as f64
    }
}
