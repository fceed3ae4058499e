//! Distributional versus in-probability convergence, measured on
//! simulated couplings.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FisiError;

/// Two-sample Kolmogorov–Smirnov statistic: the largest gap between the
/// two empirical distribution functions.
pub fn two_sample_ks(first: &[f64], second: &[f64]) -> f64 {
    assert!(!first.is_empty() && !second.is_empty(), "need nonempty samples");
    let mut a: Vec<f64> = first.to_vec();
    let mut b: Vec<f64> = second.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let mut i = 0usize;
    let mut j = 0usize;
    let mut largest = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = if a[i] <= b[j] { a[i] } else { b[j] };
        while i < a.len() && a[i] == x {
            i += 1;
        }
        while j < b.len() && b[j] == x {
            j += 1;
        }
        let gap = (i as f64 / na - j as f64 / nb).abs();
        largest = largest.max(gap);
    }
    largest
}

/// How the approximating variable is coupled to the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingMode {
    /// `X_k = X + Z_k` with `Z_k` uniform on `±1/k`: convergence in
    /// probability, hence also in distribution.
    ShrinkingPerturbation,
    /// `X_k` drawn afresh with the law of `X`: the distributions agree
    /// exactly, yet the variables never approach each other.
    IndependentCopies,
}

/// Diagnostics for one coupling at one index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CidReport {
    /// Distance between the distributions.
    pub ks: f64,
    /// Fraction of draws with `|X_k - X| > delta`: the in-probability
    /// escape rate.
    pub escape_rate: f64,
    pub delta: f64,
}

/// Sample the coupling at index `k` and measure both senses of
/// convergence: the Kolmogorov–Smirnov distance between the samples of
/// `X_k` and `X`, and how often the pair is further apart than `delta`.
pub fn cip_implies_cid_harness(
    mode: CouplingMode,
    k: u64,
    samples: u64,
    delta: f64,
    seed: u64,
) -> Result<CidReport, FisiError> {
    if k == 0 || samples == 0 {
        return Err(FisiError::InvalidParameter("need positive counts".into()));
    }
    if !(delta > 0.0) {
        return Err(FisiError::InvalidParameter("delta must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut base = Vec::with_capacity(samples as usize);
    let mut approx = Vec::with_capacity(samples as usize);
    let mut escapes = 0u64;
    let radius = 1.0 / k as f64;
    for _ in 0..samples {
        let x: f64 = rng.gen();
        let xk = match mode {
            CouplingMode::ShrinkingPerturbation => x + rng.gen_range(-radius..radius),
            CouplingMode::IndependentCopies => rng.gen(),
        };
        if (xk - x).abs() > delta {
            escapes += 1;
        }
        base.push(x);
        approx.push(xk);
    }
    Ok(CidReport {
        ks: two_sample_ks(&approx, &base),
        escape_rate: escapes as f64 / samples as f64,
        delta,
    })
}
