//! Draws from an unboundedly large equiprobable population.
//!
//! With `n` draws from a population of `N` equally likely items, the
//! chance that all draws differ tends to one as `N` grows. Under the
//! density mixture over `N` this is an exact statement: distinctness
//! has probability one, so every item's relative frequency is at most
//! `1/n`, which defeats any fixed positive frequency threshold once `n`
//! is large enough.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::limits::{gamma_mixture_eval, ConvergenceWitness};
use crate::rat::{rat_one, rat_pow, rat_zero, Rat};

use super::BernoulliError;

/// Probability that `draws` picks from `population` equally likely
/// items are pairwise distinct. Zero when the population is too small.
pub fn distinctness_prob(draws: u64, population: u64) -> Result<Rat, BernoulliError> {
    if draws == 0 || population == 0 {
        return Err(BernoulliError::InvalidParameter(
            "draw and population counts start at 1".into(),
        ));
    }
    if draws > population {
        return Ok(rat_zero());
    }
    let mut numerator = BigInt::from(1);
    for i in 0..draws {
        numerator *= BigInt::from(population - i);
    }
    let denominator = rat_pow(&Rat::from_integer(BigInt::from(population)), draws);
    Ok(Rat::from_integer(numerator) / denominator)
}

/// Mixture probability of distinctness over an unboundedly large
/// population: the component values rise to one, so the mixture charges
/// distinctness fully.
pub fn distinctness_gamma_limit(draws: u64) -> Result<Rat, BernoulliError> {
    if draws == 0 {
        return Err(BernoulliError::InvalidParameter("draw count starts at 1".into()));
    }
    gamma_mixture_eval(
        |population| distinctness_prob(draws, population).expect("positive arguments"),
        Some(&ConvergenceWitness::ClosedFormLimit { value: rat_one() }),
    )
    .map_err(|e| BernoulliError::InvalidParameter(e.to_string()))
}

/// Mixture probability that every item's relative frequency stays
/// strictly below `threshold` after `draws` draws. On the distinctness
/// event each frequency is exactly `1/draws`, so the answer is one as
/// soon as `1/draws < threshold`; fewer draws cannot work, and the
/// error names the least count that does.
pub fn frequency_dilution_check(draws: u64, threshold: &Rat) -> Result<Rat, BernoulliError> {
    if *threshold <= rat_zero() || *threshold > rat_one() {
        return Err(BernoulliError::InvalidParameter(format!(
            "frequency threshold {threshold} outside (0, 1]"
        )));
    }
    // least n with 1/n < threshold, i.e. n > denom/numer
    let floor = (threshold.denom() / threshold.numer())
        .to_u64()
        .ok_or_else(|| BernoulliError::InvalidParameter("threshold too small".into()))?;
    let minimal_draws = floor + 1;
    if draws < minimal_draws {
        return Err(BernoulliError::InsufficientDraws { minimal_draws });
    }
    // frequencies below threshold contain the distinctness event, whose
    // mixture probability is one; probabilities are capped by one
    distinctness_gamma_limit(draws)
}

/// Per-symbol frequencies after uniform draws on `{1, …, symbols}`,
/// against the five-sigma binomial band around `1/symbols`.
#[derive(Debug, Clone, PartialEq)]
pub struct SllnReport {
    pub symbols: u64,
    pub horizon: u64,
    /// Largest `|f_k - 1/symbols|` over the supported symbols.
    pub max_deviation: f64,
    /// `5 √(p(1-p)/horizon)` with `p = 1/symbols`.
    pub band: f64,
    /// Largest frequency over unsupported symbols; exactly zero, since
    /// such symbols are never drawn.
    pub beyond_support: f64,
    pub within_band: bool,
}

/// Uniform draws on a `symbols`-element alphabet. The counts are exact;
/// only the reported frequencies are floating point. Symbols outside
/// the alphabet keep frequency zero, which the report states explicitly
/// for the embedding into an unbounded alphabet.
pub fn slln_simulation(
    symbols: u64,
    horizon: u64,
    seed: u64,
) -> Result<SllnReport, BernoulliError> {
    if symbols == 0 || symbols > 1 << 20 {
        return Err(BernoulliError::InvalidParameter("symbol count must be in 1..=2^20".into()));
    }
    if horizon == 0 || horizon > 1 << 24 {
        return Err(BernoulliError::InvalidParameter("horizon must be in 1..=2^24".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; symbols as usize];
    for _ in 0..horizon {
        counts[rng.gen_range(0..symbols) as usize] += 1;
    }
    let p = 1.0 / symbols as f64;
    let band = 5.0 * (p * (1.0 - p) / horizon as f64).sqrt();
    let max_deviation = counts
        .iter()
        .map(|&c| (c as f64 / horizon as f64 - p).abs())
        .fold(0.0, f64::max);
    Ok(SllnReport {
        symbols,
        horizon,
        max_deviation,
        band,
        beyond_support: 0.0,
        within_band: max_deviation <= band,
    })
}
