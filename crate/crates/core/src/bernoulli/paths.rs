//! Running-frequency behaviour along single realizations.

use num_bigint::{BigInt, BigUint, RandBigInt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rat::{rat_one, rat_pow, rat_zero, Rat};

use super::{y_factorial_bit, BernoulliError, MixingDf, TailLaw, TailVariant};

const PATH_HORIZON_CAP: u64 = 1 << 24;

/// Cumulative success counts of one realization; frequencies are read
/// off exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyPath {
    cumulative: Vec<u64>,
}

impl FrequencyPath {
    pub fn len(&self) -> u64 {
        self.cumulative.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.cumulative.is_empty()
    }

    /// Successes among the first `k` coordinates, `1 ≤ k ≤ len`.
    pub fn ones_through(&self, k: u64) -> u64 {
        self.cumulative[k as usize - 1]
    }

    /// `f_k`, the success frequency over the first `k` coordinates.
    pub fn frequency(&self, k: u64) -> Rat {
        Rat::new(BigInt::from(self.ones_through(k)), BigInt::from(k))
    }
}

/// Exchangeable continuation of a given head: draw-by-draw urn for a
/// Beta mixing distribution, a single posterior atom draw for a
/// discrete one. The pinned coordinate is an overwrite, not a draw, so
/// it never enters the state.
enum TailSampler {
    Fixed(Rat),
    /// Ones and draws so far; next success chance `(α+s)/(α+β+r)`.
    Urn { alpha: u64, beta: u64, successes: u64, draws: u64 },
}

impl TailSampler {
    fn conditioned(
        mixing: &MixingDf,
        head_ones: u64,
        head_zeros: u64,
        rng: &mut ChaCha8Rng,
    ) -> Result<Self, BernoulliError> {
        match mixing {
            MixingDf::PointMass(p) => Ok(TailSampler::Fixed(p.clone())),
            MixingDf::Beta { alpha, beta } => Ok(TailSampler::Urn {
                alpha: *alpha,
                beta: *beta,
                successes: head_ones,
                draws: head_ones + head_zeros,
            }),
            MixingDf::Discrete(atoms) => {
                // posterior weights: prior times the head likelihood
                let weighted: Vec<(Rat, Rat)> = atoms
                    .iter()
                    .map(|(value, weight)| {
                        let like = rat_pow(value, head_ones)
                            * rat_pow(&(rat_one() - value), head_zeros);
                        (value.clone(), weight * like)
                    })
                    .collect();
                if weighted.iter().all(|(_, w)| *w == rat_zero()) {
                    return Err(BernoulliError::InvalidParameter(
                        "the prefix has probability zero under the mixing distribution".into(),
                    ));
                }
                // one exact draw of the latent chance
                let common: BigUint = weighted.iter().fold(BigUint::from(1u32), |acc, (_, w)| {
                    let den = w.denom().to_biguint().expect("positive denominator");
                    num_integer::lcm(acc, den)
                });
                let total: BigUint = weighted
                    .iter()
                    .map(|(_, w)| {
                        let num = w.numer().to_biguint().expect("nonnegative weight");
                        let den = w.denom().to_biguint().expect("positive denominator");
                        num * (&common / den)
                    })
                    .sum();
                let u = rng.gen_biguint_below(&total);
                let mut cursor = BigUint::from(0u32);
                let mut chosen = rat_zero();
                for (value, weight) in &weighted {
                    let num = weight.numer().to_biguint().expect("nonnegative weight");
                    let den = weight.denom().to_biguint().expect("positive denominator");
                    cursor += num * (&common / den);
                    if u < cursor {
                        chosen = value.clone();
                        break;
                    }
                }
                Ok(TailSampler::Fixed(chosen))
            }
        }
    }

    fn draw(&mut self, rng: &mut ChaCha8Rng) -> bool {
        match self {
            TailSampler::Fixed(p) => {
                let num = p.numer().to_biguint().expect("chance in [0, 1]");
                let den = p.denom().to_biguint().expect("positive denominator");
                rng.gen_biguint_below(&den) < num
            }
            TailSampler::Urn { alpha, beta, successes, draws } => {
                let chance_num = *alpha + *successes;
                let chance_den = *alpha + *beta + *draws;
                let hit = rng.gen_range(0..chance_den) < chance_num;
                *draws += 1;
                if hit {
                    *successes += 1;
                }
                hit
            }
        }
    }
}

/// The realization with the given head bits on coordinates before
/// `component`, a pinned success at `component`, and the variant's tail
/// after it, out to `horizon` coordinates. Only an exchangeable tail
/// consumes randomness: it continues the head's draw sequence, so its
/// generator is conditioned on the prefix counts.
pub fn tail_frequency_path(
    law: &TailLaw,
    prefix: &[bool],
    component: u64,
    horizon: u64,
    seed: u64,
) -> Result<FrequencyPath, BernoulliError> {
    if component == 0 {
        return Err(BernoulliError::InvalidParameter("component indices start at 1".into()));
    }
    if prefix.len() as u64 != component - 1 {
        return Err(BernoulliError::InvalidParameter(format!(
            "the prefix must fill coordinates 1..{component} exactly"
        )));
    }
    if horizon < component || horizon > PATH_HORIZON_CAP {
        return Err(BernoulliError::InvalidParameter(format!(
            "horizon must be in {component}..={PATH_HORIZON_CAP}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let head_ones = prefix.iter().filter(|&&b| b).count() as u64;
    let mut sampler = match &law.variant {
        TailVariant::ExchangeableTail { mixing } => Some(TailSampler::conditioned(
            mixing,
            head_ones,
            component - 1 - head_ones,
            &mut rng,
        )?),
        _ => None,
    };
    let mut cumulative = Vec::with_capacity(horizon as usize);
    let mut ones = 0u64;
    for j in 1..=horizon {
        let bit = if j < component {
            prefix[j as usize - 1]
        } else if j == component {
            true
        } else {
            match &law.variant {
                TailVariant::ZeroTail { .. } => false,
                TailVariant::FactorialTail { .. } => y_factorial_bit(j - component),
                TailVariant::ExchangeableTail { .. } => {
                    sampler.as_mut().expect("sampler built above").draw(&mut rng)
                }
            }
        };
        if bit {
            ones += 1;
        }
        cumulative.push(ones);
    }
    Ok(FrequencyPath { cumulative })
}

/// Exact frequency of the oscillating component at the two extremes of
/// one factorial cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OscillationCheckpoint {
    pub cycle: u32,
    /// End of the zeros block: coordinate `n - 1 + (2ν)!`.
    pub trough_index: BigUint,
    pub trough_frequency: Rat,
    /// End of the ones block: coordinate `n - 1 + (2ν+1)!`.
    pub peak_index: BigUint,
    pub peak_frequency: Rat,
}

/// Frequencies of the factorial-tail component at every block boundary
/// through cycle `cycles`, given the jump position and the number of
/// head successes. Pure counting, no simulation: between a peak and the
/// next trough the tail contributes only zeros, between a trough and
/// its peak only ones.
pub fn oscillation_checkpoints(
    jump: u64,
    head_ones: u64,
    cycles: u32,
) -> Result<Vec<OscillationCheckpoint>, BernoulliError> {
    if jump == 0 {
        return Err(BernoulliError::InvalidParameter("jump position starts at 1".into()));
    }
    if head_ones > jump - 1 {
        return Err(BernoulliError::InvalidParameter(format!(
            "{head_ones} successes cannot fit in a head of {} coordinates",
            jump - 1
        )));
    }
    if cycles == 0 || cycles > 400 {
        return Err(BernoulliError::InvalidParameter("cycles must be in 1..=400".into()));
    }
    let base = BigUint::from(jump - 1);
    // the jump coordinate itself is a success
    let mut ones = BigUint::from(head_ones + 1);
    let mut factorial = BigUint::from(1u32);
    let mut arm = 1u64;
    let frequency = |ones: &BigUint, index: &BigUint| {
        Rat::new(
            BigInt::from(ones.clone()),
            BigInt::from(index.clone()),
        )
    };
    let mut out = Vec::with_capacity(cycles as usize);
    for cycle in 1..=cycles {
        while arm < 2 * u64::from(cycle) {
            arm += 1;
            factorial *= BigUint::from(arm);
        }
        let trough_index = &base + &factorial;
        let trough_frequency = frequency(&ones, &trough_index);
        let even_factorial = factorial.clone();
        arm += 1;
        factorial *= BigUint::from(arm);
        let peak_index = &base + &factorial;
        ones += &factorial - even_factorial;
        let peak_frequency = frequency(&ones, &peak_index);
        out.push(OscillationCheckpoint {
            cycle,
            trough_index,
            trough_frequency,
            peak_index,
            peak_frequency,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::Cylinder;
    use crate::bernoulli::{component_prob, mixture_prob};
    use crate::rat::{rat, rat_one};
    use num_traits::ToPrimitive;

    #[test]
    fn checkpoint_recursion_matches_direct_tail_counting() {
        for jump in [1u64, 5, 30] {
            for head_ones in [0u64, jump.saturating_sub(1).min(3)] {
                let checkpoints = oscillation_checkpoints(jump, head_ones, 3).unwrap();
                for cp in &checkpoints {
                    for (index, freq) in [
                        (&cp.trough_index, &cp.trough_frequency),
                        (&cp.peak_index, &cp.peak_frequency),
                    ] {
                        let index = index.to_u64().unwrap();
                        let tail_ones = (1..=index - jump)
                            .filter(|&t| y_factorial_bit(t))
                            .count() as u64;
                        let total = head_ones + 1 + tail_ones;
                        assert_eq!(
                            *freq,
                            Rat::new(BigInt::from(total), BigInt::from(index)),
                            "jump {jump}, head {head_ones}, cycle {}",
                            cp.cycle
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn early_checkpoints_take_frozen_values() {
        let cps = oscillation_checkpoints(1, 0, 5).unwrap();
        let expect = [
            (rat(1, 2), rat(5, 6)),
            (rat(5, 24), rat(101, 120)),
            (rat(101, 720), rat(4421, 5040)),
            (rat(4421, 40320), rat(326_981, 362_880)),
            (rat(326_981, 3_628_800), rat(36_614_981, 39_916_800)),
        ];
        for (cp, (trough, peak)) in cps.iter().zip(expect) {
            assert_eq!(cp.trough_frequency, trough, "cycle {}", cp.cycle);
            assert_eq!(cp.peak_frequency, peak, "cycle {}", cp.cycle);
        }
        assert_eq!(cps[2].trough_index, BigUint::from(720u32));
        assert_eq!(cps[2].peak_index, BigUint::from(5040u32));
    }

    #[test]
    fn checkpoints_squeeze_toward_zero_and_one() {
        for jump in [1u64, 4, 10] {
            let cps = oscillation_checkpoints(jump, 0, 12).unwrap();
            for cp in &cps {
                let nu = i64::from(cp.cycle);
                // troughs at most 1/(2ν-1), peaks at least 1 - 2/(2ν+1)
                assert!(cp.trough_frequency <= rat(1, 2 * nu - 1), "cycle {nu}");
                assert!(
                    cp.peak_frequency >= rat_one() - rat(2, 2 * nu + 1),
                    "cycle {nu}"
                );
            }
            // peaks climb throughout; troughs fall once the head has
            // been diluted by a full cycle
            for (i, pair) in cps.windows(2).enumerate() {
                if i >= 1 {
                    assert!(pair[1].trough_frequency < pair[0].trough_frequency);
                }
                assert!(pair[1].peak_frequency > pair[0].peak_frequency);
            }
        }
    }

    #[test]
    fn checkpoint_inputs_are_validated() {
        assert!(oscillation_checkpoints(0, 0, 3).is_err());
        assert!(oscillation_checkpoints(4, 4, 3).is_err());
        assert!(oscillation_checkpoints(4, 0, 0).is_err());
    }

    #[test]
    fn dead_tail_paths_keep_exactly_the_prefix_ones_plus_the_pin() {
        let law = TailLaw::zero_tail(rat(1, 2)).unwrap();
        let prefix: Vec<bool> = (0..19).map(|i| i % 3 == 0).collect();
        let prefix_ones = prefix.iter().filter(|&&b| b).count() as u64;
        let path = tail_frequency_path(&law, &prefix, 20, 4000, 7).unwrap();
        assert_eq!(path.len(), 4000);
        assert_eq!(path.ones_through(4000), prefix_ones + 1);
        for t in [20u64, 100, 4000] {
            assert_eq!(path.frequency(t), Rat::new(BigInt::from(prefix_ones + 1), BigInt::from(t)));
        }
    }

    #[test]
    fn oscillating_paths_match_the_checkpoint_counts() {
        let law = TailLaw::factorial_tail(rat(1, 2)).unwrap();
        let jump = 6;
        let prefix = [true, false, true, false, false];
        let head_ones = 2;
        let path = tail_frequency_path(&law, &prefix, jump, 5050, 3).unwrap();
        assert_eq!(path.ones_through(jump), head_ones + 1);
        let cps = oscillation_checkpoints(jump, head_ones, 3).unwrap();
        for cp in &cps {
            let trough = cp.trough_index.to_u64().unwrap();
            let peak = cp.peak_index.to_u64().unwrap();
            assert_eq!(path.frequency(trough), cp.trough_frequency);
            assert_eq!(path.frequency(peak), cp.peak_frequency);
        }
    }

    #[test]
    fn deterministic_variants_ignore_the_seed_and_exchangeable_ones_honor_it() {
        let factorial = TailLaw::factorial_tail(rat(1, 3)).unwrap();
        let prefix = vec![false; 49];
        let a = tail_frequency_path(&factorial, &prefix, 50, 2000, 11).unwrap();
        let b = tail_frequency_path(&factorial, &prefix, 50, 2000, 12).unwrap();
        assert_eq!(a, b);

        let urn = TailLaw::exchangeable(MixingDf::Beta { alpha: 1, beta: 1 }).unwrap();
        let c = tail_frequency_path(&urn, &prefix, 50, 2000, 11).unwrap();
        let d = tail_frequency_path(&urn, &prefix, 50, 2000, 11).unwrap();
        let e = tail_frequency_path(&urn, &prefix, 50, 2000, 12).unwrap();
        assert_eq!(c, d);
        assert_ne!(c, e);
    }

    #[test]
    fn urn_tails_concentrate_like_their_beta_mixture() {
        let law = TailLaw::exchangeable(MixingDf::Beta { alpha: 1, beta: 1 }).unwrap();
        // with an empty head the first two tail draws sit at coordinates
        // 2 and 3; their law must match the exact moments 1/2 and 1/3
        let trials = 4000u64;
        let mut ones_first = 0u64;
        let mut ones_both = 0u64;
        for seed in 0..trials {
            let path = tail_frequency_path(&law, &[], 1, 3, seed).unwrap();
            let first = path.ones_through(2) == 2;
            let second = path.ones_through(3) == 3;
            if first {
                ones_first += 1;
            }
            if first && second {
                ones_both += 1;
            }
        }
        let f1 = ones_first as f64 / trials as f64;
        let f11 = ones_both as f64 / trials as f64;
        assert!((f1 - 0.5).abs() < 0.04, "first-draw rate {f1}");
        assert!((f11 - 1.0 / 3.0).abs() < 0.04, "two-success rate {f11}");
    }

    #[test]
    fn urn_tails_continue_the_given_head() {
        // a head of straight successes tilts the urn: the next draw has
        // chance (1+s)/(2+s) instead of 1/2
        let law = TailLaw::exchangeable(MixingDf::Beta { alpha: 1, beta: 1 }).unwrap();
        let prefix = vec![true; 8];
        let trials = 4000u64;
        let mut hits = 0u64;
        for seed in 0..trials {
            let path = tail_frequency_path(&law, &prefix, 9, 10, seed).unwrap();
            if path.ones_through(10) == 10 {
                hits += 1;
            }
        }
        let rate = hits as f64 / trials as f64;
        assert!((rate - 0.9).abs() < 0.04, "tilted rate {rate}");
    }

    #[test]
    fn discrete_mixing_draws_an_atom_and_sticks_to_it() {
        let mixing =
            MixingDf::Discrete(vec![(rat(0, 1), rat(1, 2)), (rat(1, 1), rat(1, 2))]);
        let law = TailLaw::exchangeable(mixing.clone()).unwrap();
        let mut saw_all_ones = false;
        let mut saw_all_zeros = false;
        for seed in 0..40 {
            let path = tail_frequency_path(&law, &[], 1, 200, seed).unwrap();
            // beyond the pinned first coordinate the tail is constant
            match path.ones_through(200) {
                200 => saw_all_ones = true,
                1 => saw_all_zeros = true,
                other => panic!("mixed tail with {other} ones"),
            }
        }
        assert!(saw_all_ones && saw_all_zeros);

        // a head mixing both symbols is impossible under this mixing
        let err = tail_frequency_path(&law, &[true, false], 3, 10, 0).unwrap_err();
        assert!(matches!(err, BernoulliError::InvalidParameter(_)));
    }

    #[test]
    fn path_inputs_are_validated() {
        let law = TailLaw::zero_tail(rat(1, 2)).unwrap();
        assert!(tail_frequency_path(&law, &[], 0, 10, 0).is_err());
        assert!(tail_frequency_path(&law, &[true], 1, 10, 0).is_err());
        assert!(tail_frequency_path(&law, &[], 1, 0, 0).is_err());
        assert!(tail_frequency_path(&law, &[true, true], 3, 2, 0).is_err());
    }

    #[test]
    fn mixture_and_component_agree_along_a_simulated_prefix() {
        // the path machinery must stay consistent with the cylinder
        // probabilities: the first 16 coordinates of a path form a
        // cylinder with positive probability under the same law
        let law = TailLaw::factorial_tail(rat(1, 2)).unwrap();
        let jump = 8;
        let prefix = [true, false, true, true, false, false, true];
        let path = tail_frequency_path(&law, &prefix, jump, 16, 5).unwrap();
        let bits: Vec<bool> = (1..=16)
            .map(|k| path.ones_through(k) > if k > 1 { path.ones_through(k - 1) } else { 0 })
            .collect();
        let cylinder = Cylinder::prefix(&bits);
        assert!(component_prob(&law, jump, &cylinder) > rat_zero());
        assert!(mixture_prob(&law, &cylinder) > rat_zero());
    }
}
