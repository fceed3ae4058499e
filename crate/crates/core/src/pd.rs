//! Step distribution functions with adherent mass at infinity.
//!
//! A [`StepDf`] is a nondecreasing step function from the reals to
//! `[0, 1]` with finitely many jumps, described by its one-sided values.
//! Its limit at `-∞` (the `lower_tail`) and the gap `1 - upper_tail` at
//! `+∞` are masses adherent to the two infinities: they are charged by a
//! finitely additive probability but by no countably additive one. The
//! module evaluates one-sided limits exactly, checks point-mass
//! assignments against the two-sided bracket
//! `F(d-0) ≤ P{X < d} ≤ P{X ≤ d} ≤ F(d+0)`, forms mixtures, and
//! classifies pointwise limits of step function families, all in exact
//! rational arithmetic.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::rat::{rat_one, rat_zero, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PdError {
    #[error("invalid step function: {0}")]
    InvalidDf(String),
    #[error("invalid mixture: {0}")]
    InvalidMixture(String),
    #[error("family values at {point} do not settle on the claimed limit")]
    LimitNotVerified { point: Rat },
}

/// One jump: the function's left and right limits at `at`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jump {
    pub at: Rat,
    pub left: Rat,
    pub right: Rat,
}

impl Jump {
    pub fn new(at: Rat, left: Rat, right: Rat) -> Self {
        Jump { at, left, right }
    }
}

/// Nondecreasing step function into `[0, 1]`, constant between jumps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepDf {
    jumps: Vec<Jump>,
    lower_tail: Rat,
    upper_tail: Rat,
}

/// What kind of probability a step function is the distribution
/// function of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DfClass {
    /// Tails 0 and 1: all mass sits on the jump points.
    ProperCountablyAdditive,
    /// Some mass adheres to an infinity; only a finitely additive
    /// probability can realize the function as its df.
    ProperFinitelyAdditive { minus_inf_mass: Rat, plus_inf_mass: Rat },
    /// Not a step distribution function at all.
    NotADf,
}

fn validate_parts(lower_tail: &Rat, jumps: &[Jump], upper_tail: &Rat) -> Result<(), PdError> {
    let bad = |msg: String| Err(PdError::InvalidDf(msg));
    if lower_tail < &rat_zero() || upper_tail > &rat_one() || lower_tail > upper_tail {
        return bad(format!("tail values {lower_tail}, {upper_tail} outside [0, 1] order"));
    }
    let mut level = lower_tail.clone();
    let mut prev_at: Option<&Rat> = None;
    for jump in jumps {
        if let Some(p) = prev_at {
            if p >= &jump.at {
                return bad(format!("jump points out of order at {}", jump.at));
            }
        }
        if jump.left != level {
            return bad(format!(
                "left value {} at {} breaks the running level {}",
                jump.left, jump.at, level
            ));
        }
        if jump.right < jump.left {
            return bad(format!("decreasing jump at {}", jump.at));
        }
        level = jump.right.clone();
        prev_at = Some(&jump.at);
    }
    if &level != upper_tail {
        return bad(format!("final level {level} does not meet upper tail {upper_tail}"));
    }
    Ok(())
}

/// Three-way classification of raw parts; invalid parts are reported as
/// [`DfClass::NotADf`] rather than an error.
pub fn classify_step_function(lower_tail: &Rat, jumps: &[Jump], upper_tail: &Rat) -> DfClass {
    match validate_parts(lower_tail, jumps, upper_tail) {
        Ok(()) => classify_tails(lower_tail, upper_tail),
        Err(_) => DfClass::NotADf,
    }
}

fn classify_tails(lower_tail: &Rat, upper_tail: &Rat) -> DfClass {
    if lower_tail.is_zero() && *upper_tail == rat_one() {
        DfClass::ProperCountablyAdditive
    } else {
        DfClass::ProperFinitelyAdditive {
            minus_inf_mass: lower_tail.clone(),
            plus_inf_mass: rat_one() - upper_tail,
        }
    }
}

impl StepDf {
    /// Validated construction; trivial (zero-height) jumps are dropped.
    pub fn new(lower_tail: Rat, jumps: Vec<Jump>, upper_tail: Rat) -> Result<Self, PdError> {
        validate_parts(&lower_tail, &jumps, &upper_tail)?;
        let jumps = jumps.into_iter().filter(|j| j.left != j.right).collect();
        Ok(StepDf { jumps, lower_tail, upper_tail })
    }

    /// Constant function, no jumps.
    pub fn constant(value: Rat) -> Result<Self, PdError> {
        StepDf::new(value.clone(), Vec::new(), value)
    }

    /// Df with the given mass at each listed point plus masses adherent
    /// to `-∞` and `+∞`; the three parts must sum to one.
    pub fn from_point_masses_with_tails(
        minus_inf_mass: Rat,
        masses: &[(Rat, Rat)],
        plus_inf_mass: Rat,
    ) -> Result<Self, PdError> {
        let total: Rat =
            masses.iter().map(|(_, m)| m.clone()).sum::<Rat>() + &minus_inf_mass + &plus_inf_mass;
        if total != rat_one() {
            return Err(PdError::InvalidDf(format!("masses sum to {total}, not 1")));
        }
        let mut sorted: Vec<(Rat, Rat)> = masses.to_vec();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in sorted.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(PdError::InvalidDf(format!("repeated point {}", pair[0].0)));
            }
        }
        let mut level = minus_inf_mass.clone();
        let mut jumps = Vec::with_capacity(sorted.len());
        for (at, mass) in sorted {
            if mass < rat_zero() {
                return Err(PdError::InvalidDf(format!("negative mass at {at}")));
            }
            let next = &level + &mass;
            jumps.push(Jump::new(at, level, next.clone()));
            level = next;
        }
        StepDf::new(minus_inf_mass, jumps, rat_one() - plus_inf_mass)
    }

    /// All mass on finitely many points, none at infinity.
    pub fn from_point_masses(masses: &[(Rat, Rat)]) -> Result<Self, PdError> {
        StepDf::from_point_masses_with_tails(rat_zero(), masses, rat_zero())
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    pub fn lower_tail(&self) -> &Rat {
        &self.lower_tail
    }

    pub fn upper_tail(&self) -> &Rat {
        &self.upper_tail
    }

    /// `F(x-0)`.
    pub fn value_left(&self, x: &Rat) -> Rat {
        // level just below x: the right value of the last jump strictly below
        match self.jumps.partition_point(|j| j.at < *x) {
            0 => self.lower_tail.clone(),
            k => self.jumps[k - 1].right.clone(),
        }
    }

    /// `F(x+0)`.
    pub fn value_right(&self, x: &Rat) -> Rat {
        match self.jumps.partition_point(|j| j.at <= *x) {
            0 => self.lower_tail.clone(),
            k => self.jumps[k - 1].right.clone(),
        }
    }

    /// Height of the jump at `x` (zero off the jump set).
    pub fn jump_height(&self, x: &Rat) -> Rat {
        self.value_right(x) - self.value_left(x)
    }

    pub fn is_jump_point(&self, x: &Rat) -> bool {
        self.jumps.iter().any(|j| j.at == *x)
    }

    /// Masses adherent to `-∞` and `+∞`.
    pub fn adherence_interval(&self) -> (Rat, Rat) {
        (self.lower_tail.clone(), rat_one() - &self.upper_tail)
    }

    pub fn classify(&self) -> DfClass {
        classify_tails(&self.lower_tail, &self.upper_tail)
    }
}

/// Claimed probabilities `P{X < d}` and `P{X ≤ d}` at query points.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MassAssignment {
    pub entries: BTreeMap<Rat, (Rat, Rat)>,
}

impl MassAssignment {
    pub fn new() -> Self {
        MassAssignment::default()
    }

    pub fn set(&mut self, point: Rat, strictly_below: Rat, at_most: Rat) {
        self.entries.insert(point, (strictly_below, at_most));
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassViolation {
    pub point: Rat,
    pub kind: MassViolationKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassViolationKind {
    /// `P{X < d}` below the left limit `F(d-0)`.
    BelowLeftLimit,
    /// `P{X < d}` exceeds `P{X ≤ d}`.
    InternalOrder,
    /// `P{X ≤ d}` above the right limit `F(d+0)`.
    AboveRightLimit,
}

/// Check each claimed pair against the bracket
/// `F(d-0) ≤ P{X < d} ≤ P{X ≤ d} ≤ F(d+0)`. Strict inequality is legal
/// at every link: the df alone does not pin the point probabilities
/// down. Returns every violated link.
pub fn check_mass_consistency(df: &StepDf, assignment: &MassAssignment) -> Vec<MassViolation> {
    let mut violations = Vec::new();
    for (point, (below, at_most)) in &assignment.entries {
        if *below < df.value_left(point) {
            violations
                .push(MassViolation { point: point.clone(), kind: MassViolationKind::BelowLeftLimit });
        }
        if at_most < below {
            violations
                .push(MassViolation { point: point.clone(), kind: MassViolationKind::InternalOrder });
        }
        if *at_most > df.value_right(point) {
            violations
                .push(MassViolation { point: point.clone(), kind: MassViolationKind::AboveRightLimit });
        }
    }
    violations
}

/// Convex mixture of step functions; jump sets merge, tails mix
/// affinely.
pub fn mixture(components: &[(Rat, StepDf)]) -> Result<StepDf, PdError> {
    if components.is_empty() {
        return Err(PdError::InvalidMixture("no components".into()));
    }
    let total: Rat = components.iter().map(|(w, _)| w.clone()).sum();
    if total != rat_one() {
        return Err(PdError::InvalidMixture(format!("weights sum to {total}, not 1")));
    }
    if components.iter().any(|(w, _)| *w < rat_zero()) {
        return Err(PdError::InvalidMixture("negative weight".into()));
    }
    let points: BTreeSet<Rat> = components
        .iter()
        .flat_map(|(_, df)| df.jumps().iter().map(|j| j.at.clone()))
        .collect();
    let weighted = |f: &dyn Fn(&StepDf) -> Rat| -> Rat {
        components.iter().map(|(w, df)| w * f(df)).sum()
    };
    let lower = weighted(&|df| df.lower_tail().clone());
    let upper = weighted(&|df| df.upper_tail().clone());
    let jumps = points
        .into_iter()
        .map(|at| {
            let left = weighted(&|df| df.value_left(&at));
            let right = weighted(&|df| df.value_right(&at));
            Jump::new(at, left, right)
        })
        .collect();
    StepDf::new(lower, jumps, upper)
}

const LIMIT_SCAN_CAP: u64 = 256;
const LIMIT_TAIL_WINDOW: u64 = 16;

/// Verify that a family of step functions settles pointwise on the
/// claimed limit and classify that limit. Only continuity points of the
/// claimed limit are checked; probes landing on its jump points are
/// skipped, since pointwise convergence is not required there.
pub fn weak_limit_classify(
    family: impl Fn(u64) -> StepDf,
    claimed: &StepDf,
    probes: &[Rat],
) -> Result<DfClass, PdError> {
    for point in probes {
        if claimed.is_jump_point(point) {
            continue;
        }
        let target = claimed.value_right(point);
        debug_assert_eq!(target, claimed.value_left(point));
        for n in LIMIT_SCAN_CAP - LIMIT_TAIL_WINDOW + 1..=LIMIT_SCAN_CAP {
            let fn_n = family(n);
            if fn_n.value_left(point) != target || fn_n.value_right(point) != target {
                return Err(PdError::LimitNotVerified { point: point.clone() });
            }
        }
    }
    Ok(claimed.classify())
}
