//! Static predecessor set over bounded-width integer keys.
//!
//! Keys sit in leaves of 16; internal nodes keep the minimum key of each
//! child together with prefix sums of child subtree sizes, so `pred`,
//! `rank` and `select` all run as one root-to-leaf walk. Inside a node the
//! search is a branch-free count of entries `≤ x`; when sixteen entries fit
//! in 128 bits with a guard bit each, that count is a single packed
//! subtraction and popcount.

use crate::error::{Error, Result};

/// Keys per leaf and children per internal node.
pub const BRANCHING: usize = 16;

/// Sorted values grouped into nodes of [`BRANCHING`] entries.
#[derive(Debug, Clone, PartialEq, Eq)]
struct NodeArray {
    values: Vec<u64>,
    width: u32,
    /// One packed word per node, present when `BRANCHING·(width+1) ≤ 128`.
    packed: Vec<u128>,
}

impl NodeArray {
    fn new(values: Vec<u64>, width: u32) -> Self {
        let field = width + 1;
        let packed = if BRANCHING as u32 * field <= 128 {
            values
                .chunks(BRANCHING)
                .map(|chunk| {
                    chunk
                        .iter()
                        .enumerate()
                        .fold(0u128, |acc, (i, &v)| acc | (v as u128) << (i as u32 * field))
                })
                .collect()
        } else {
            Vec::new()
        };
        Self {
            values,
            width,
            packed,
        }
    }

    fn node(&self, node: usize) -> &[u64] {
        let lo = node * BRANCHING;
        &self.values[lo..(lo + BRANCHING).min(self.values.len())]
    }

    /// Number of entries `≤ x` in `node`.
    fn count_le(&self, node: usize, x: u64) -> usize {
        let slice = self.node(node);
        if self.packed.is_empty() {
            return slice.iter().map(|&v| (v <= x) as usize).sum();
        }
        let field = self.width + 1;
        let guard = 1u128 << self.width;
        let x = (x as u128).min(guard - 1);
        let mut lanes = 0u128;
        let mut guards = 0u128;
        for i in 0..slice.len() as u32 {
            lanes |= (guard | x) << (i * field);
            guards |= guard << (i * field);
        }
        // Each lane holds 2^w + x − v ≥ 1, so no borrow crosses lanes and the
        // guard bit survives exactly when v ≤ x.
        ((lanes - self.packed[node]) & guards).count_ones() as usize
    }

    fn nodes(&self) -> usize {
        self.values.len().div_ceil(BRANCHING)
    }

    fn bits(&self) -> usize {
        self.values.len() * self.width as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct InternalLevel {
    /// Smallest key below each child.
    mins: NodeArray,
    /// Per child: total size of its preceding siblings.
    prefix: NodeArray,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredSet {
    key_width: u32,
    leaves: NodeArray,
    /// Bottom-up; the last level holds the root's children.
    levels: Vec<InternalLevel>,
}

fn bit_width(v: u64) -> u32 {
    64 - v.leading_zeros()
}

impl PredSet {
    pub fn new(keys: Vec<u64>, key_width: u32) -> Result<Self> {
        if key_width > 64 {
            return Err(Error::Contract(format!("key width {key_width} exceeds 64")));
        }
        let fits = |k: u64| key_width == 64 || k >> key_width == 0;
        if keys.windows(2).any(|w| w[0] >= w[1]) || !keys.iter().all(|&k| fits(k)) {
            return Err(Error::UnsortedKeys { width: key_width });
        }

        let prefix_width = bit_width(keys.len() as u64);
        let mut levels = Vec::new();
        let mut child_mins: Vec<u64> = keys.chunks(BRANCHING).map(|c| c[0]).collect();
        let mut child_sizes: Vec<u64> = keys.chunks(BRANCHING).map(|c| c.len() as u64).collect();
        while child_mins.len() > 1 {
            let prefix: Vec<u64> = child_sizes
                .chunks(BRANCHING)
                .flat_map(|chunk| {
                    chunk.iter().scan(0u64, |acc, &s| {
                        let before = *acc;
                        *acc += s;
                        Some(before)
                    })
                })
                .collect();
            let next_mins = child_mins.chunks(BRANCHING).map(|c| c[0]).collect();
            let next_sizes = child_sizes.chunks(BRANCHING).map(|c| c.iter().sum()).collect();
            levels.push(InternalLevel {
                mins: NodeArray::new(child_mins, key_width),
                prefix: NodeArray::new(prefix, prefix_width),
            });
            child_mins = next_mins;
            child_sizes = next_sizes;
        }
        Ok(Self {
            key_width,
            leaves: NodeArray::new(keys, key_width),
            levels,
        })
    }

    pub fn len(&self) -> usize {
        self.leaves.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn key_width(&self) -> u32 {
        self.key_width
    }

    pub fn keys(&self) -> &[u64] {
        &self.leaves.values
    }

    /// Nodes visited by every query on a non-empty set.
    pub fn height(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.levels.len() + 1
        }
    }

    /// Largest key `≤ x` with its 1-based rank.
    pub fn pred(&self, x: u64) -> Option<(u64, usize)> {
        self.pred_probed(x, &mut 0)
    }

    pub fn pred_probed(&self, x: u64, probes: &mut usize) -> Option<(u64, usize)> {
        if self.is_empty() {
            return None;
        }
        let mut node = 0usize;
        let mut rank = 0usize;
        for level in self.levels.iter().rev() {
            *probes += 1;
            let j = level.mins.count_le(node, x);
            if j == 0 {
                return None;
            }
            let child = node * BRANCHING + j - 1;
            rank += level.prefix.values[child] as usize;
            node = child;
        }
        *probes += 1;
        let t = self.leaves.count_le(node, x);
        if t == 0 {
            return None;
        }
        Some((self.leaves.values[node * BRANCHING + t - 1], rank + t))
    }

    /// Number of keys `≤ x`.
    pub fn rank(&self, x: u64) -> usize {
        self.pred(x).map_or(0, |(_, r)| r)
    }

    /// The `i`-th smallest key, 1-based.
    pub fn select(&self, i: usize) -> Result<u64> {
        self.select_probed(i, &mut 0)
    }

    pub fn select_probed(&self, i: usize, probes: &mut usize) -> Result<u64> {
        if i == 0 || i > self.len() {
            return Err(Error::OutOfRange {
                index: i as u64,
                bound: self.len() as u64,
            });
        }
        let mut node = 0usize;
        let mut i = i;
        for level in self.levels.iter().rev() {
            *probes += 1;
            // Children whose preceding total is < i; the first child always is.
            let j = level.prefix.count_le(node, i as u64 - 1);
            let child = node * BRANCHING + j - 1;
            i -= level.prefix.values[child] as usize;
            node = child;
        }
        *probes += 1;
        Ok(self.leaves.values[node * BRANCHING + i - 1])
    }

    /// Bits spent on the keys themselves.
    pub fn key_bits(&self) -> usize {
        self.leaves.bits()
    }

    /// Bits spent on internal nodes.
    pub fn overhead_bits(&self) -> usize {
        self.levels
            .iter()
            .map(|l| l.mins.bits() + l.prefix.bits())
            .sum()
    }

    /// Recomputes every separator and prefix sum from the keys.
    pub fn check_structure(&self) -> Result<()> {
        let keys = self.keys();
        let mut sizes: Vec<u64> = keys.chunks(BRANCHING).map(|c| c.len() as u64).collect();
        let mut mins: Vec<u64> = keys.chunks(BRANCHING).map(|c| c[0]).collect();
        for (depth, level) in self.levels.iter().enumerate() {
            if level.mins.values != mins {
                return Err(Error::Contract(format!("separators differ at level {depth}")));
            }
            for (node, chunk) in sizes.chunks(BRANCHING).enumerate() {
                let mut before = 0;
                for (i, &s) in chunk.iter().enumerate() {
                    if level.prefix.values[node * BRANCHING + i] != before {
                        return Err(Error::Contract(format!(
                            "prefix sum mismatch at level {depth} node {node} child {i}"
                        )));
                    }
                    before += s;
                }
            }
            if level.mins.nodes() != sizes.len().div_ceil(BRANCHING) {
                return Err(Error::Contract(format!("node count mismatch at level {depth}")));
            }
            mins = mins.chunks(BRANCHING).map(|c| c[0]).collect();
            sizes = sizes.chunks(BRANCHING).map(|c| c.iter().sum()).collect();
        }
        if sizes.len() > 1 {
            return Err(Error::Contract("tree has no single root".into()));
        }
        Ok(())
    }
}
