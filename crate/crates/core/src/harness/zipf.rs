use crate::error::{Error, Result};

/// SplitMix64, fixed so corpora are reproducible in any language:
///
/// ```text
/// state = state + 0x9E3779B97F4A7C15            (wrapping)
/// z = state
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9     (wrapping)
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB     (wrapping)
/// return z ^ (z >> 31)
/// ```
///
/// Uniform doubles in `[0, 1)` take the top 53 bits: `(z >> 11) · 2⁻⁵³`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZipfSpec {
    pub sigma: u32,
    pub alpha: f64,
    pub n: usize,
    pub seed: u64,
}

/// Draws `n` i.i.d. symbols where symbol `r − 1` has probability
/// proportional to `r^(−alpha)`, `r ∈ 1..=sigma`.
///
/// Sampling is by inverse CDF: with cumulative weights `W_r = Σ_{i≤r} i^(−α)`
/// and `u` uniform, the symbol is the first `r` with `W_r > u · W_σ`.
pub fn zipf_generate(spec: &ZipfSpec) -> Result<Vec<u32>> {
    if spec.sigma < 2 {
        return Err(Error::InvalidParameter(format!("sigma {} < 2", spec.sigma)));
    }
    if !(spec.alpha > 0.0 && spec.alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha {} not positive", spec.alpha)));
    }
    let mut cumulative = Vec::with_capacity(spec.sigma as usize);
    let mut total = 0.0f64;
    for r in 1..=spec.sigma {
        total += (r as f64).powf(-spec.alpha);
        cumulative.push(total);
    }
    let mut rng = SplitMix64::new(spec.seed);
    let last = spec.sigma as usize - 1;
    Ok((0..spec.n)
        .map(|_| {
            let target = rng.next_f64() * total;
            cumulative.partition_point(|&w| w <= target).min(last) as u32
        })
        .collect())
}
