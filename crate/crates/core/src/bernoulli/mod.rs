//! Finitely additive laws for infinite Bernoulli sequences.
//!
//! Each law here is a density-mixture of component measures indexed by a
//! jump position `n`: coordinates before `n` are an independent head,
//! coordinate `n` is a success, and coordinates after `n` follow the
//! variant's tail (identically zero, the factorial-block oscillator, or
//! further exchangeable draws). All variants agree on every cylinder
//! with the product-form probability, yet they disagree radically on
//! tail events: one sends the running frequency to zero, one makes it
//! oscillate between zero and one, and the exchangeable one sends it to
//! the mixing variable. Everything except the simulation helpers is
//! exact rational arithmetic.

mod cantelli;
mod laws;
mod paths;
mod sampling;

pub use cantelli::{cantelli_probability, find_n0, N0Report, CANTELLI_STATE_CAP};
pub use laws::{component_prob, mixture_prob, y_factorial_bit, y_factorial_bit_big};
pub use paths::{
    oscillation_checkpoints, tail_frequency_path, FrequencyPath, OscillationCheckpoint,
};
pub use sampling::{
    distinctness_gamma_limit, distinctness_prob, frequency_dilution_check, slln_simulation,
    SllnReport,
};

use crate::rat::{rat_one, rat_zero, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BernoulliError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("window end {requested} exceeds the exact-count cap {cap}")]
    WindowTooLarge { requested: u64, cap: u64 },
    #[error("need more than {minimal_draws} draws before every per-item frequency can clear the threshold")]
    InsufficientDraws { minimal_draws: u64 },
}

/// Finitely many coordinate constraints `x_{index} = bit`, distinct
/// indices from one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    constraints: Vec<(u64, bool)>,
}

impl Cylinder {
    pub fn new(mut constraints: Vec<(u64, bool)>) -> Result<Self, BernoulliError> {
        constraints.sort_by_key(|&(i, _)| i);
        for pair in constraints.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(BernoulliError::InvalidParameter(format!(
                    "coordinate {} constrained twice",
                    pair[0].0
                )));
            }
        }
        if constraints.first().is_some_and(|&(i, _)| i == 0) {
            return Err(BernoulliError::InvalidParameter(
                "coordinates are indexed from 1".into(),
            ));
        }
        Ok(Cylinder { constraints })
    }

    /// Constrain the first `bits.len()` coordinates positionally.
    pub fn prefix(bits: &[bool]) -> Self {
        let constraints =
            bits.iter().enumerate().map(|(i, &b)| (i as u64 + 1, b)).collect();
        Cylinder { constraints }
    }

    pub fn constraints(&self) -> &[(u64, bool)] {
        &self.constraints
    }

    pub fn ones(&self) -> u64 {
        self.constraints.iter().filter(|&&(_, b)| b).count() as u64
    }

    pub fn zeros(&self) -> u64 {
        self.constraints.len() as u64 - self.ones()
    }

    pub fn max_index(&self) -> Option<u64> {
        self.constraints.last().map(|&(i, _)| i)
    }
}

/// Mixing distribution for the exchangeable variant: the law of the
/// latent success chance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixingDf {
    PointMass(Rat),
    /// Integer-parameter Beta; moments stay rational.
    Beta { alpha: u64, beta: u64 },
    /// Finitely many atoms `(value, weight)`.
    Discrete(Vec<(Rat, Rat)>),
}

impl MixingDf {
    pub fn validate(&self) -> Result<(), BernoulliError> {
        let in_unit = |v: &Rat| *v >= rat_zero() && *v <= rat_one();
        match self {
            MixingDf::PointMass(p) => {
                if !in_unit(p) {
                    return Err(BernoulliError::InvalidParameter(format!(
                        "point mass {p} outside [0, 1]"
                    )));
                }
            }
            MixingDf::Beta { alpha, beta } => {
                if *alpha == 0 || *beta == 0 {
                    return Err(BernoulliError::InvalidParameter(
                        "Beta parameters must be positive integers".into(),
                    ));
                }
            }
            MixingDf::Discrete(atoms) => {
                if atoms.is_empty() {
                    return Err(BernoulliError::InvalidParameter("no atoms".into()));
                }
                for (value, weight) in atoms {
                    if !in_unit(value) {
                        return Err(BernoulliError::InvalidParameter(format!(
                            "atom {value} outside [0, 1]"
                        )));
                    }
                    if *weight < rat_zero() {
                        return Err(BernoulliError::InvalidParameter("negative weight".into()));
                    }
                }
                let total: Rat = atoms.iter().map(|(_, w)| w.clone()).sum();
                if total != rat_one() {
                    return Err(BernoulliError::InvalidParameter(format!(
                        "weights sum to {total}, not 1"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `∫ θ^ones (1-θ)^zeros dH(θ)`, exactly.
    pub fn moment(&self, ones: u64, zeros: u64) -> Rat {
        use num_bigint::BigInt;
        match self {
            MixingDf::PointMass(p) => {
                crate::rat::rat_pow(p, ones) * crate::rat::rat_pow(&(rat_one() - p), zeros)
            }
            MixingDf::Beta { alpha, beta } => {
                let mut numerator = BigInt::from(1);
                for i in 0..ones {
                    numerator *= BigInt::from(alpha + i);
                }
                for i in 0..zeros {
                    numerator *= BigInt::from(beta + i);
                }
                let mut denominator = BigInt::from(1);
                for i in 0..ones + zeros {
                    denominator *= BigInt::from(alpha + beta + i);
                }
                Rat::new(numerator, denominator)
            }
            MixingDf::Discrete(atoms) => atoms
                .iter()
                .map(|(value, weight)| {
                    weight
                        * crate::rat::rat_pow(value, ones)
                        * crate::rat::rat_pow(&(rat_one() - value), zeros)
                })
                .sum(),
        }
    }
}

/// Tail behaviour after the jump coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TailVariant {
    /// Every later coordinate is zero: the frequency dies.
    ZeroTail { p: Rat },
    /// Later coordinates follow alternating factorial blocks: the
    /// frequency oscillates between zero and one.
    FactorialTail { p: Rat },
    /// Later coordinates keep drawing from the exchangeable head: the
    /// frequency goes to the latent chance.
    ExchangeableTail { mixing: MixingDf },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailLaw {
    pub variant: TailVariant,
}

impl TailLaw {
    fn check_p(p: &Rat) -> Result<(), BernoulliError> {
        if *p < rat_zero() || *p > rat_one() {
            return Err(BernoulliError::InvalidParameter(format!(
                "success chance {p} outside [0, 1]"
            )));
        }
        Ok(())
    }

    pub fn zero_tail(p: Rat) -> Result<Self, BernoulliError> {
        Self::check_p(&p)?;
        Ok(TailLaw { variant: TailVariant::ZeroTail { p } })
    }

    pub fn factorial_tail(p: Rat) -> Result<Self, BernoulliError> {
        Self::check_p(&p)?;
        Ok(TailLaw { variant: TailVariant::FactorialTail { p } })
    }

    pub fn exchangeable(mixing: MixingDf) -> Result<Self, BernoulliError> {
        mixing.validate()?;
        Ok(TailLaw { variant: TailVariant::ExchangeableTail { mixing } })
    }
}
