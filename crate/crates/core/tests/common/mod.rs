//! Code generators and brute-force oracles shared by the integration tests.
//! The oracles deliberately avoid the library's own canonical assignment.

#![allow(dead_code)]

use chc_core::{canonicalize, CanonicalCode, CodeLengths};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub const MAX_DEPTH: u32 = 58;

/// Leaf depths of a random full binary tree with `sigma` leaves. `skew` is
/// the chance of splitting one of the deepest leaves instead of a uniform one.
pub fn random_tree_depths(rng: &mut StdRng, sigma: usize, skew: f64) -> Vec<u32> {
    if sigma == 1 {
        return vec![1];
    }
    let mut depths = vec![0u32];
    while depths.len() < sigma {
        let splittable: Vec<usize> = (0..depths.len()).filter(|&i| depths[i] < MAX_DEPTH).collect();
        let i = if rng.gen_bool(skew) {
            let deepest = splittable.iter().map(|&i| depths[i]).max().unwrap();
            let candidates: Vec<usize> =
                splittable.into_iter().filter(|&i| depths[i] == deepest).collect();
            *candidates.choose(rng).unwrap()
        } else {
            *splittable.choose(rng).unwrap()
        };
        let d = depths.swap_remove(i) + 1;
        depths.push(d);
        depths.push(d);
    }
    depths
}

/// Random canonical code over `sigma` distinct random symbol ids.
pub fn random_code(rng: &mut StdRng, sigma: usize, skew: f64) -> CanonicalCode {
    let depths = random_tree_depths(rng, sigma, skew);
    let mut ids: Vec<u32> = Vec::with_capacity(sigma);
    let mut seen = std::collections::HashSet::new();
    while ids.len() < sigma {
        let id = rng.gen_range(0..(sigma as u32 * 4).max(8));
        if seen.insert(id) {
            ids.push(id);
        }
    }
    let entries = ids.into_iter().zip(depths).collect();
    canonicalize(&CodeLengths::new(entries).unwrap()).unwrap()
}

/// Mix of code shapes: uniform-ish, skewed, and caterpillar-like.
pub fn random_code_mix(rng: &mut StdRng, max_sigma: usize) -> CanonicalCode {
    let sigma = rng.gen_range(2..=max_sigma);
    let skew = [0.0, 0.3, 0.7, 0.95][rng.gen_range(0..4)];
    random_code(rng, sigma, skew)
}

/// Codewords assigned independently: walk (length, symbol) in order and
/// increment, shifting left at each length change.
pub fn oracle_codewords(code: &CanonicalCode) -> Vec<(u32, u64, u32)> {
    let mut pairs: Vec<(u32, u32)> = code
        .alphabet()
        .iter()
        .zip(code.lengths())
        .map(|(&s, &l)| (l, s))
        .collect();
    pairs.sort();
    let mut out = Vec::new();
    let mut value = 0u64;
    let mut prev_len = pairs[0].0;
    for (i, &(len, sym)) in pairs.iter().enumerate() {
        if i > 0 {
            value = (value + 1) << (len - prev_len);
        } else {
            value = 0;
        }
        prev_len = len;
        out.push((sym, value, len));
    }
    out
}

/// `first[ℓ]` for every occupied ℓ, from the oracle codewords.
pub fn oracle_first(code: &CanonicalCode) -> Vec<Option<u64>> {
    let mut first = vec![None; code.max_len() as usize + 1];
    for (_, value, len) in oracle_codewords(code) {
        if first[len as usize].is_none() {
            first[len as usize] = Some(value);
        }
    }
    first
}

/// Monolithic predecessor over (padded First, length) pairs: the largest
/// pair not exceeding (x, all-ones length field).
pub fn oracle_lookup(first: &[Option<u64>], max_len: u32, x: u64) -> (u32, u64) {
    let mut best: Option<(u64, u32, u64)> = None;
    for (len, f) in first.iter().enumerate() {
        let Some(f) = *f else { continue };
        let len = len as u32;
        let padded = f << (max_len - len);
        if padded <= x && best.is_none_or(|(p, l, _)| (padded, len) > (p, l)) {
            best = Some((padded, len, f));
        }
    }
    let (_, len, f) = best.expect("the all-zeros codeword is a lower bound");
    (len, f)
}

/// Optimal weighted length by exhaustive search: every non-decreasing
/// Kraft-complete length sequence, frequencies assigned in decreasing order.
pub fn brute_force_cost(freqs: &[u64]) -> u64 {
    let mut f = freqs.to_vec();
    f.sort_unstable_by(|a, b| b.cmp(a));
    let n = f.len();
    if n == 1 {
        return f[0];
    }
    let max_len = (n - 1) as u32;
    let mut best = u64::MAX;
    // Remaining Kraft budget in units of 2^-max_len.
    fn rec(f: &[u64], i: usize, min_len: u32, max_len: u32, budget: u64, cost: u64, best: &mut u64) {
        if i == f.len() {
            if budget == 0 {
                *best = (*best).min(cost);
            }
            return;
        }
        let left = (f.len() - i) as u64;
        for l in min_len..=max_len {
            let unit = 1u64 << (max_len - l);
            // The remaining symbols each take at most `unit`.
            if unit > budget {
                continue;
            }
            if unit * left < budget {
                break;
            }
            rec(f, i + 1, l, max_len, budget - unit, cost + f[i] * l as u64, best);
        }
    }
    rec(&f, 0, 1, max_len, 1u64 << max_len, 0, &mut best);
    best
}

/// Independent Huffman cost with a binary heap.
pub fn heap_huffman_cost(freqs: &[u64]) -> u64 {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    if freqs.len() == 1 {
        return freqs[0];
    }
    let mut heap: BinaryHeap<Reverse<u64>> = freqs.iter().map(|&f| Reverse(f)).collect();
    let mut cost = 0;
    while heap.len() > 1 {
        let Reverse(a) = heap.pop().unwrap();
        let Reverse(b) = heap.pop().unwrap();
        cost += a + b;
        heap.push(Reverse(a + b));
    }
    cost
}

/// Tail length of a `len`-bit codeword: bits after its leading ones.
pub fn oracle_tail_len(value: u64, len: u32) -> u32 {
    let mut j = 0;
    while j < len && (value >> (len - 1 - j)) & 1 == 1 {
        j += 1;
    }
    len - j
}

/// Largest `count(tail ≥ s)·2^s / σ` over the First codewords.
pub fn oracle_census(code: &CanonicalCode) -> f64 {
    let tails: Vec<u32> = oracle_first(code)
        .iter()
        .enumerate()
        .filter_map(|(l, f)| f.map(|f| oracle_tail_len(f, l as u32)))
        .collect();
    let top = tails.iter().copied().max().unwrap_or(0);
    (0..=top)
        .map(|s| tails.iter().filter(|&&t| t >= s).count() as f64 * 2f64.powi(s as i32))
        .fold(0.0, f64::max)
        / code.sigma() as f64
}

pub fn ceil_log2(x: u64) -> u32 {
    let mut k = 0;
    while (1u128 << k) < x as u128 {
        k += 1;
    }
    k
}

/// `⌈log₁₆ k⌉ + 1` node probes per predecessor query.
pub fn probe_bound(k: usize) -> usize {
    let mut levels = 0;
    let mut cap = 1usize;
    while cap < k {
        cap = cap.saturating_mul(16);
        levels += 1;
    }
    levels + 1
}
