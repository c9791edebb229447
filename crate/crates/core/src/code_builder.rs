//! Huffman code lengths, canonical codeword assignment and structural checks.
//!
//! Symbols are arbitrary `u32` ids. Only symbols with a positive count take
//! part in a code; their sorted ids form the alphabet, and position `i` in
//! that sorted list (1-based) is what the succinct structures index by.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};

/// Golden ratio, the base of the maximum-length bound for Huffman codes.
pub const PHI: f64 = 1.618_033_988_749_895;

/// ⌈log₂ x⌉ for x ≥ 1.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// ⌊log_φ n⌋, or 0 for n ≤ 1.
pub fn floor_log_phi(n: u64) -> u32 {
    if n <= 1 {
        return 0;
    }
    // Walk φ^k in floating point; φ^k never lands within 1e-9 of an integer
    // for k ≥ 2, so the comparison is exact for all practical n.
    let target = n as f64;
    let mut k = 0u32;
    let mut power = 1.0f64;
    while power * PHI <= target {
        power *= PHI;
        k += 1;
    }
    k
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: Vec<(u32, u64)>,
    total: u64,
}

impl FrequencyTable {
    /// Builds a table from `(symbol, count)` pairs. Zero counts are dropped
    /// and repeated symbols are merged.
    pub fn from_counts<I: IntoIterator<Item = (u32, u64)>>(pairs: I) -> Self {
        let mut merged: BTreeMap<u32, u64> = BTreeMap::new();
        for (sym, count) in pairs {
            if count > 0 {
                *merged.entry(sym).or_default() += count;
            }
        }
        let total = merged.values().sum();
        Self {
            counts: merged.into_iter().collect(),
            total,
        }
    }

    pub fn from_symbols(text: &[u32]) -> Self {
        let mut merged: BTreeMap<u32, u64> = BTreeMap::new();
        for &s in text {
            *merged.entry(s).or_default() += 1;
        }
        Self::from_counts(merged)
    }

    /// Present symbols with their counts, sorted by symbol id.
    pub fn counts(&self) -> &[(u32, u64)] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn sigma(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Codeword length per present symbol, sorted by symbol id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeLengths {
    entries: Vec<(u32, u32)>,
}

impl CodeLengths {
    pub fn new(mut entries: Vec<(u32, u32)>) -> Result<Self> {
        entries.sort_unstable_by_key(|&(s, _)| s);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Contract("duplicate symbol in code lengths".into()));
        }
        if entries.iter().any(|&(_, l)| l == 0) {
            return Err(Error::Contract("codeword length 0".into()));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn lengths(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().map(|&(_, l)| l)
    }

    pub fn max_len(&self) -> u32 {
        self.lengths().max().unwrap_or(0)
    }
}

/// Optimal code lengths by the two-queue Huffman construction.
///
/// Leaves are queued by (count, symbol id); at equal weight a leaf is taken
/// before an internal node, and internal nodes leave their queue in
/// creation order. A lone symbol gets length 1.
pub fn compute_lengths(freqs: &FrequencyTable) -> Result<CodeLengths> {
    let counts = freqs.counts();
    match counts.len() {
        0 => return Err(Error::EmptyFrequencies),
        1 => return CodeLengths::new(vec![(counts[0].0, 1)]),
        _ => {}
    }

    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by_key(|&i| (counts[i].1, counts[i].0));

    // Nodes 0..σ are leaves, σ.. are internal; parent links recover depths.
    let sigma = counts.len();
    let mut weight: Vec<u64> = counts.iter().map(|&(_, c)| c).collect();
    let mut parent: Vec<usize> = vec![usize::MAX; sigma];
    let mut leaves: VecDeque<usize> = order.into_iter().collect();
    let mut internal: VecDeque<usize> = VecDeque::new();

    fn pop_min(weight: &[u64], leaves: &mut VecDeque<usize>, internal: &mut VecDeque<usize>) -> usize {
        match (leaves.front(), internal.front()) {
            (Some(&l), Some(&i)) if weight[l] <= weight[i] => leaves.pop_front().unwrap(),
            (Some(_), Some(_)) => internal.pop_front().unwrap(),
            (Some(_), None) => leaves.pop_front().unwrap(),
            (None, Some(_)) => internal.pop_front().unwrap(),
            (None, None) => unreachable!("queue exhausted early"),
        }
    }
    for _ in 0..sigma - 1 {
        let a = pop_min(&weight, &mut leaves, &mut internal);
        let b = pop_min(&weight, &mut leaves, &mut internal);
        let node = weight.len();
        weight.push(weight[a] + weight[b]);
        parent.push(usize::MAX);
        parent[a] = node;
        parent[b] = node;
        internal.push_back(node);
    }

    // Parents are created after their children, so a reverse sweep settles
    // every depth.
    let mut depth = vec![0u32; weight.len()];
    for node in (0..weight.len() - 1).rev() {
        depth[node] = depth[parent[node]] + 1;
    }
    CodeLengths::new(
        counts
            .iter()
            .enumerate()
            .map(|(i, &(s, _))| (s, depth[i]))
            .collect(),
    )
}

/// A codeword as an integer value and a bit length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    pub bits: u64,
    pub len: u32,
}

impl Codeword {
    pub fn new(bits: u64, len: u32) -> Self {
        debug_assert!(len <= 64 && (len == 64 || bits >> len == 0));
        Self { bits, len }
    }

    /// Value right-padded with zeros to `width` bits.
    pub fn padded(&self, width: u32) -> u64 {
        debug_assert!(width >= self.len);
        if self.len == 0 {
            0
        } else {
            self.bits << (width - self.len)
        }
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .rev()
            .map(|i| if (self.bits >> i) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn tail_split(&self) -> TailSplit {
        tail_split(*self)
    }
}

/// A codeword split into its maximal leading run of ones and the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TailSplit {
    pub ones_run: u32,
    /// The bits after the run as an integer of `tail_len` bits.
    pub tail: u64,
    pub tail_len: u32,
}

pub fn tail_split(c: Codeword) -> TailSplit {
    let ones_run = if c.len == 0 {
        0
    } else {
        (c.bits << (64 - c.len)).leading_ones().min(c.len)
    };
    let tail_len = c.len - ones_run;
    let tail = if tail_len == 0 {
        0
    } else {
        c.bits & (u64::MAX >> (64 - tail_len))
    };
    TailSplit {
        ones_run,
        tail,
        tail_len,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalCode {
    max_len: u32,
    /// `count_per_len[ℓ-1]` codewords of length ℓ.
    count_per_len: Vec<u32>,
    /// Symbol ids sorted by (length, id).
    canonical_symbols: Vec<u32>,
    /// Recurrence values; entry ℓ-1 is the smallest length-ℓ codeword when
    /// that length is occupied.
    first: Vec<u64>,
    /// Present symbol ids, sorted.
    alphabet: Vec<u32>,
    /// Length of each symbol in `alphabet` order.
    lengths: Vec<u32>,
}

/// Largest supported `max_len`: the packed (codeword, length) pair of width
/// `max_len + ⌈lg max_len⌉` must fit in 64 bits.
pub fn check_pair_width(max_len: u32) -> Result<()> {
    if max_len as u64 + ceil_log2(max_len as u64) as u64 > 64 {
        Err(Error::CodeTooDeep { max_len })
    } else {
        Ok(())
    }
}

/// Assigns canonical codewords in (length, symbol id) order.
pub fn canonicalize(lengths: &CodeLengths) -> Result<CanonicalCode> {
    let max_len = lengths.max_len();
    check_pair_width(max_len)?;
    let mut count_per_len = vec![0u32; max_len as usize];
    for l in lengths.lengths() {
        count_per_len[l as usize - 1] += 1;
    }
    let mut canonical: Vec<(u32, u32)> = lengths.entries().iter().map(|&(s, l)| (l, s)).collect();
    canonical.sort_unstable();
    CanonicalCode::from_counts(count_per_len, canonical.into_iter().map(|(_, s)| s).collect())
}

impl CanonicalCode {
    /// Rebuilds a code from its per-length counts and canonical symbol order,
    /// the form stored in file headers.
    pub fn from_counts(count_per_len: Vec<u32>, canonical_symbols: Vec<u32>) -> Result<Self> {
        let max_len = count_per_len.len() as u32;
        check_pair_width(max_len)?;
        let sigma: u64 = count_per_len.iter().map(|&c| c as u64).sum();
        if sigma != canonical_symbols.len() as u64 {
            return Err(Error::Contract(format!(
                "counts sum to {sigma} but {} symbols given",
                canonical_symbols.len()
            )));
        }
        if max_len > 0 && count_per_len[max_len as usize - 1] == 0 {
            return Err(Error::Contract("deepest length has no codewords".into()));
        }
        // A single symbol of length 1 is the only accepted non-full code.
        let single = sigma == 1 && max_len == 1;
        if sigma > 0 && !single {
            let kraft: u128 = count_per_len
                .iter()
                .enumerate()
                .map(|(i, &c)| (c as u128) << (max_len as usize - 1 - i))
                .sum();
            if kraft != 1u128 << max_len {
                return Err(Error::KraftViolation);
            }
        }

        let mut first = Vec::with_capacity(max_len as usize);
        let mut code = 0u64;
        for &count in &count_per_len {
            first.push(code);
            code = (code + count as u64) << 1;
        }

        let mut alphabet_lengths: Vec<(u32, u32)> = Vec::with_capacity(canonical_symbols.len());
        let mut idx = 0usize;
        for (i, &count) in count_per_len.iter().enumerate() {
            let run = &canonical_symbols[idx..idx + count as usize];
            if run.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Contract(
                    "symbols of equal length must be strictly increasing".into(),
                ));
            }
            alphabet_lengths.extend(run.iter().map(|&s| (s, i as u32 + 1)));
            idx += count as usize;
        }
        alphabet_lengths.sort_unstable();
        if alphabet_lengths.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Contract("duplicate symbol".into()));
        }
        let (alphabet, lengths) = alphabet_lengths.into_iter().unzip();

        Ok(Self {
            max_len,
            count_per_len,
            canonical_symbols,
            first,
            alphabet,
            lengths,
        })
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    pub fn max_len(&self) -> u32 {
        self.max_len
    }

    pub fn count_per_len(&self) -> &[u32] {
        &self.count_per_len
    }

    pub fn count_of_len(&self, len: u32) -> u32 {
        if len == 0 || len > self.max_len {
            0
        } else {
            self.count_per_len[len as usize - 1]
        }
    }

    pub fn canonical_symbols(&self) -> &[u32] {
        &self.canonical_symbols
    }

    /// Sorted present symbol ids.
    pub fn alphabet(&self) -> &[u32] {
        &self.alphabet
    }

    /// Codeword lengths in alphabet order.
    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    /// Smallest codeword of length `len`, if that length is occupied.
    pub fn first(&self, len: u32) -> Option<u64> {
        (self.count_of_len(len) > 0).then(|| self.first[len as usize - 1])
    }

    /// Occupied lengths in increasing order.
    pub fn occupied_lengths(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=self.max_len).filter(|&l| self.count_of_len(l) > 0)
    }

    /// Leftmost codeword of each occupied depth.
    pub fn first_codewords(&self) -> impl Iterator<Item = Codeword> + '_ {
        self.occupied_lengths()
            .map(|l| Codeword::new(self.first[l as usize - 1], l))
    }

    /// Position of `symbol` in the alphabet, 0-based.
    pub fn symbol_index(&self, symbol: u32) -> Option<usize> {
        self.alphabet.binary_search(&symbol).ok()
    }

    /// Codewords in canonical order, paired with their symbols.
    pub fn codewords(&self) -> Vec<(u32, Codeword)> {
        let mut out = Vec::with_capacity(self.canonical_symbols.len());
        let mut idx = 0usize;
        for (i, &count) in self.count_per_len.iter().enumerate() {
            for r in 0..count as usize {
                out.push((
                    self.canonical_symbols[idx + r],
                    Codeword::new(self.first[i] + r as u64, i as u32 + 1),
                ));
            }
            idx += count as usize;
        }
        out
    }

    /// Codeword of one symbol by direct table walk.
    pub fn codeword_of(&self, symbol: u32) -> Option<Codeword> {
        let len = self.lengths[self.symbol_index(symbol)?];
        let before: usize = self.count_per_len[..len as usize - 1]
            .iter()
            .map(|&c| c as usize)
            .sum();
        let run = &self.canonical_symbols[before..before + self.count_of_len(len) as usize];
        let r = run.binary_search(&symbol).ok()?;
        Some(Codeword::new(self.first[len as usize - 1] + r as u64, len))
    }
}

/// One failed structural check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub sigma: usize,
    pub max_len: u32,
    /// min(σ−1, ⌊log_φ n⌋).
    pub max_len_bound: u32,
    /// `tail_census[s-1]` counts leftmost-per-depth codewords with tail length ≥ s.
    pub tail_census: Vec<u64>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Largest count(tail ≥ s)·2^s/σ over all s.
    pub fn census_constant(&self) -> f64 {
        self.tail_census
            .iter()
            .enumerate()
            .map(|(i, &c)| c as f64 * 2f64.powi(i as i32 + 1) / self.sigma.max(1) as f64)
            .fold(0.0, f64::max)
    }
}

/// Checks a list of (symbol, codeword) pairs given in code order.
pub fn validate_codewords(codewords: &[(u32, Codeword)], n: u64) -> ValidationReport {
    let sigma = codewords.len();
    let max_len = codewords.iter().map(|(_, c)| c.len).max().unwrap_or(0);
    let max_len_bound = (sigma.saturating_sub(1) as u32).min(floor_log_phi(n));
    let mut violations = Vec::new();
    let mut fail = |check: &'static str, detail: String| violations.push(Violation { check, detail });

    if sigma >= 2 {
        if max_len > 63 {
            fail("kraft", format!("max length {max_len} too large to check"));
        } else {
            let kraft: u128 = codewords
                .iter()
                .map(|(_, c)| 1u128 << (max_len - c.len))
                .sum();
            if kraft != 1u128 << max_len {
                fail("kraft", format!("Σ 2^(ℓmax−ℓ) = {kraft}, want 2^{max_len}"));
            }
        }
        if max_len > max_len_bound {
            fail(
                "max_len_bound",
                format!("ℓmax = {max_len} exceeds min(σ−1, ⌊log_φ n⌋) = {max_len_bound}"),
            );
        }
    }

    for w in codewords.windows(2) {
        let (a, b) = (w[0].1, w[1].1);
        if a.len > b.len {
            fail(
                "non_decreasing_lengths",
                format!("{} precedes shorter {}", a.to_bit_string(), b.to_bit_string()),
            );
        }
        if a.len == b.len && w[0].0 >= w[1].0 {
            fail(
                "symbol_order",
                format!("equal-length symbols {} and {} out of order", w[0].0, w[1].0),
            );
        }
        if max_len <= 64 && a.padded(max_len) >= b.padded(max_len) {
            fail(
                "strict_increase",
                format!("{} not below {}", a.to_bit_string(), b.to_bit_string()),
            );
        }
    }

    if sigma >= 2 {
        if let (Some((_, shallow)), Some((_, deep))) = (codewords.first(), codewords.last()) {
            if shallow.bits != 0 {
                fail("shallowest_all_zeros", shallow.to_bit_string());
            }
            if deep.tail_split().tail_len != 0 {
                fail("deepest_all_ones", deep.to_bit_string());
            }
        }
    }

    let lg_sigma = ceil_log2(sigma as u64);
    for (_, c) in codewords {
        let t = c.tail_split();
        if t.tail_len > 0 && t.tail_len > lg_sigma.max(1) {
            fail(
                "tail_bound",
                format!("{} has tail {} > ⌈lg σ⌉ = {lg_sigma}", c.to_bit_string(), t.tail_len),
            );
        }
    }

    // Census over the leftmost codeword of every occupied depth.
    let mut leftmost: Vec<Codeword> = Vec::new();
    for (_, c) in codewords {
        if leftmost.last().is_none_or(|l| l.len != c.len) {
            leftmost.push(*c);
        }
    }
    let max_tail = leftmost.iter().map(|c| c.tail_split().tail_len).max().unwrap_or(0);
    let tail_census = (1..=max_tail)
        .map(|s| {
            leftmost
                .iter()
                .filter(|c| c.tail_split().tail_len >= s)
                .count() as u64
        })
        .collect();

    ValidationReport {
        sigma,
        max_len,
        max_len_bound,
        tail_census,
        violations,
    }
}

/// Runs every structural check on a canonical code built for `n` occurrences.
pub fn validate(code: &CanonicalCode, n: u64) -> ValidationReport {
    validate_codewords(&code.codewords(), n)
}
