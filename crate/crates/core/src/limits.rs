//! Natural density on the positive integers and the limit laws built on it.
//!
//! A [`CountingSet`] is a structured description of a subset of
//! `{1, 2, 3, …}` for which the counting function `n ↦ #(A ∩ {1..n})`
//! is cheap to evaluate. [`natural_density`] returns the exact limit of
//! the counting ratios whenever the description admits one (eventually
//! periodic structure, alternating geometric blocks, and negligible or
//! conegligible perturbations thereof) and otherwise produces liminf and
//! limsup information, exact where the structure supplies it and flagged
//! as a horizon estimate where it does not.
//!
//! [`GammaLaw`] is the resulting finitely additive `{0,1}`-free law on
//! the determinable class: zero on every finite set, one on the whole of
//! the integers, additive, and undefined (with an explicit error) off the
//! class. [`gamma_mixture_eval`] evaluates integrals against it: because
//! the law concentrates on arbitrarily large indices, the integral of an
//! eventually constant (or provably convergent) component sequence is its
//! limiting value.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rat::{rat_int, rat_one, rat_zero, Rat};

/// Default scan horizon for densities that have to be estimated.
pub const DEFAULT_HORIZON: u64 = 1_000_000;

/// Cap on the combined period of eventually periodic combinations.
const PERIOD_CAP: u64 = 1 << 22;

/// Structured subset of the positive integers.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountingSet {
    /// Exactly the listed integers.
    Finite(BTreeSet<u64>),
    /// Everything except the listed integers.
    Cofinite(BTreeSet<u64>),
    /// `{first, first + step, first + 2·step, …}`.
    Arithmetic { first: u64, step: u64 },
    /// Finitely many half-open index intervals `[lo, hi)`.
    Blocks(Vec<(u64, u64)>),
    /// The infinite union of blocks `[ratio^{2k}, ratio^{2k+1})`, `k ≥ 0`:
    /// integers whose base-`ratio` magnitude has even exponent.
    GeometricBlocks { ratio: u64 },
    Union(Box<CountingSet>, Box<CountingSet>),
    Intersect(Box<CountingSet>, Box<CountingSet>),
    Complement(Box<CountingSet>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LimitError {
    #[error("invalid counting-set descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("set is outside the determinable class (liminf {liminf}, limsup {limsup}, exact: {exact})")]
    OutsideDeterminableClass { liminf: Rat, limsup: Rat, exact: bool },
    #[error("component sequence does not stabilize and no usable convergence witness was supplied")]
    ComponentNotConvergent,
    #[error("convergence witness is inconsistent with the sampled component values")]
    WitnessRejected,
}

/// Limit behaviour of a ratio sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DensityValue {
    Exists(Rat),
    /// `exact` means the bounds are structural limits, not scan output.
    Divergent { liminf: Rat, limsup: Rat, exact: bool },
}

impl DensityValue {
    pub fn exists(&self) -> Option<&Rat> {
        match self {
            DensityValue::Exists(v) => Some(v),
            DensityValue::Divergent { .. } => None,
        }
    }
}

impl CountingSet {
    pub fn finite(items: impl IntoIterator<Item = u64>) -> Self {
        CountingSet::Finite(items.into_iter().collect())
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> Self {
        CountingSet::Cofinite(excluded.into_iter().collect())
    }

    pub fn union(self, other: CountingSet) -> Self {
        CountingSet::Union(Box::new(self), Box::new(other))
    }

    pub fn intersect(self, other: CountingSet) -> Self {
        CountingSet::Intersect(Box::new(self), Box::new(other))
    }

    pub fn complement(self) -> Self {
        CountingSet::Complement(Box::new(self))
    }

    /// Structural validity: indices start at one, steps and ratios make
    /// the descriptions meaningful.
    pub fn validate(&self) -> Result<(), LimitError> {
        let bad = |msg: &str| Err(LimitError::InvalidDescriptor(msg.to_string()));
        match self {
            CountingSet::Finite(s) | CountingSet::Cofinite(s) => {
                if s.contains(&0) {
                    return bad("indices start at 1");
                }
                Ok(())
            }
            CountingSet::Arithmetic { first, step } => {
                if *first == 0 {
                    return bad("arithmetic first term must be at least 1");
                }
                if *step == 0 {
                    return bad("arithmetic step must be at least 1");
                }
                Ok(())
            }
            CountingSet::Blocks(blocks) => {
                for &(lo, hi) in blocks {
                    if lo == 0 {
                        return bad("block bounds start at 1");
                    }
                    if lo >= hi {
                        return bad("blocks are half-open [lo, hi) with lo < hi");
                    }
                }
                Ok(())
            }
            CountingSet::GeometricBlocks { ratio } => {
                if *ratio < 2 {
                    return bad("geometric block ratio must be at least 2");
                }
                Ok(())
            }
            CountingSet::Union(a, b) | CountingSet::Intersect(a, b) => {
                a.validate()?;
                b.validate()
            }
            CountingSet::Complement(a) => a.validate(),
        }
    }

    /// Membership of `n ≥ 1`.
    pub fn contains(&self, n: u64) -> bool {
        match self {
            CountingSet::Finite(s) => s.contains(&n),
            CountingSet::Cofinite(s) => !s.contains(&n),
            CountingSet::Arithmetic { first, step } => {
                n >= *first && (n - *first) % *step == 0
            }
            CountingSet::Blocks(blocks) => blocks.iter().any(|&(lo, hi)| lo <= n && n < hi),
            CountingSet::GeometricBlocks { ratio } => {
                let mut pow: u128 = 1;
                let mut exponent = 0u32;
                while let Some(next) = pow.checked_mul(u128::from(*ratio)) {
                    if next > u128::from(n) {
                        break;
                    }
                    pow = next;
                    exponent += 1;
                }
                exponent % 2 == 0
            }
            CountingSet::Union(a, b) => a.contains(n) || b.contains(n),
            CountingSet::Intersect(a, b) => a.contains(n) && b.contains(n),
            CountingSet::Complement(a) => !a.contains(n),
        }
    }

    /// `#(A ∩ {1..n})`. Closed form on leaves, a scan on combinations.
    pub fn count_leq(&self, n: u64) -> u64 {
        match self {
            CountingSet::Finite(s) => s.iter().take_while(|&&x| x <= n).count() as u64,
            CountingSet::Cofinite(s) => n - s.iter().take_while(|&&x| x <= n).count() as u64,
            CountingSet::Arithmetic { first, step } => {
                if n < *first {
                    0
                } else {
                    (n - *first) / *step + 1
                }
            }
            CountingSet::Blocks(blocks) => blocks
                .iter()
                .map(|&(lo, hi)| if n < lo { 0 } else { n.min(hi - 1) - lo + 1 })
                .sum(),
            CountingSet::GeometricBlocks { ratio } => {
                let r = u128::from(*ratio);
                let n = u128::from(n);
                let mut total: u128 = 0;
                let mut lo: u128 = 1;
                while lo <= n {
                    let hi = lo * r;
                    total += n.min(hi - 1) - lo + 1;
                    match lo.checked_mul(r * r) {
                        Some(next) => lo = next,
                        None => break,
                    }
                }
                total as u64
            }
            _ => (1..=n).filter(|&k| self.contains(k)).count() as u64,
        }
    }

    /// Eventual periodicity `(transient, period)`: membership of `n` and
    /// `n + period` agree for every `n > transient`.
    fn periodic_profile(&self) -> Option<(u64, u64)> {
        match self {
            CountingSet::Finite(s) | CountingSet::Cofinite(s) => {
                Some((s.iter().next_back().copied().unwrap_or(0), 1))
            }
            CountingSet::Arithmetic { first, step } => Some((first.saturating_sub(1), *step)),
            CountingSet::Blocks(blocks) => {
                Some((blocks.iter().map(|&(_, hi)| hi).max().unwrap_or(1) - 1, 1))
            }
            CountingSet::GeometricBlocks { .. } => None,
            CountingSet::Union(a, b) | CountingSet::Intersect(a, b) => {
                let (ta, pa) = a.periodic_profile()?;
                let (tb, pb) = b.periodic_profile()?;
                let period = num_integer::lcm(pa, pb);
                (period <= PERIOD_CAP).then_some((ta.max(tb), period))
            }
            CountingSet::Complement(a) => a.periodic_profile(),
        }
    }
}

/// Exact natural density where the description admits one; liminf and
/// limsup otherwise, estimated over the default horizon when even those
/// lack structure.
pub fn natural_density(set: &CountingSet) -> Result<DensityValue, LimitError> {
    natural_density_with_horizon(set, DEFAULT_HORIZON)
}

pub fn natural_density_with_horizon(
    set: &CountingSet,
    horizon: u64,
) -> Result<DensityValue, LimitError> {
    set.validate()?;
    if let Some(value) = structural_density(set) {
        return Ok(value);
    }
    Ok(estimate_density(set, horizon.max(16)))
}

fn periodic_density(set: &CountingSet) -> Option<Rat> {
    let (transient, period) = set.periodic_profile()?;
    let members = (transient + 1..=transient + period)
        .filter(|&n| set.contains(n))
        .count() as u64;
    Some(Rat::new(BigInt::from(members), BigInt::from(period)))
}

/// Exact density resolution: periodic windows, geometric block limits,
/// and combinations with negligible (density zero) or conegligible
/// (density one) parts, which cannot move a limit superior or inferior.
fn structural_density(set: &CountingSet) -> Option<DensityValue> {
    if let Some(v) = periodic_density(set) {
        return Some(DensityValue::Exists(v));
    }
    match set {
        CountingSet::GeometricBlocks { ratio } => {
            let r = i64::try_from(*ratio).ok()?;
            Some(DensityValue::Divergent {
                liminf: Rat::new(BigInt::from(1), BigInt::from(r + 1)),
                limsup: Rat::new(BigInt::from(r), BigInt::from(r + 1)),
                exact: true,
            })
        }
        CountingSet::Complement(a) => Some(match structural_density(a)? {
            DensityValue::Exists(v) => DensityValue::Exists(rat_one() - v),
            DensityValue::Divergent { liminf, limsup, exact } => DensityValue::Divergent {
                liminf: rat_one() - limsup,
                limsup: rat_one() - liminf,
                exact,
            },
        }),
        CountingSet::Union(a, b) => {
            let da = structural_density(a);
            let db = structural_density(b);
            match (&da, &db) {
                (Some(x), Some(d)) if is_exactly(d, 0) => Some(x.clone()),
                (Some(d), Some(x)) if is_exactly(d, 0) => Some(x.clone()),
                (_, Some(d)) if is_exactly(d, 1) => Some(DensityValue::Exists(rat_one())),
                (Some(d), _) if is_exactly(d, 1) => Some(DensityValue::Exists(rat_one())),
                _ => None,
            }
        }
        CountingSet::Intersect(a, b) => {
            let da = structural_density(a);
            let db = structural_density(b);
            match (&da, &db) {
                (Some(x), Some(d)) if is_exactly(d, 1) => Some(x.clone()),
                (Some(d), Some(x)) if is_exactly(d, 1) => Some(x.clone()),
                (_, Some(d)) if is_exactly(d, 0) => Some(DensityValue::Exists(rat_zero())),
                (Some(d), _) if is_exactly(d, 0) => Some(DensityValue::Exists(rat_zero())),
                _ => None,
            }
        }
        _ => None,
    }
}

fn is_exactly(d: &DensityValue, value: i64) -> bool {
    matches!(d, DensityValue::Exists(v) if *v == rat_int(value))
}

/// One scan to `horizon`; extremes of the counting ratio are taken over
/// the second half so the transient does not pollute them.
fn estimate_density(set: &CountingSet, horizon: u64) -> DensityValue {
    let tail_from = horizon / 2;
    let mut count: u64 = 0;
    // ratios tracked as integer pairs, compared by cross-multiplication
    let mut lo: Option<(u64, u64)> = None;
    let mut hi: Option<(u64, u64)> = None;
    for n in 1..=horizon {
        if set.contains(n) {
            count += 1;
        }
        if n >= tail_from {
            let below = match lo {
                Some((c, d)) => u128::from(count) * u128::from(d) < u128::from(c) * u128::from(n),
                None => true,
            };
            if below {
                lo = Some((count, n));
            }
            let above = match hi {
                Some((c, d)) => u128::from(count) * u128::from(d) > u128::from(c) * u128::from(n),
                None => true,
            };
            if above {
                hi = Some((count, n));
            }
        }
    }
    let to_rat = |(c, d): (u64, u64)| Rat::new(BigInt::from(c), BigInt::from(d));
    DensityValue::Divergent {
        liminf: to_rat(lo.expect("horizon at least 16")),
        limsup: to_rat(hi.expect("horizon at least 16")),
        exact: false,
    }
}

/// The finitely additive law induced by natural density, defined only on
/// sets whose density exists.
#[derive(Debug, Clone, Default)]
pub struct GammaLaw;

impl GammaLaw {
    pub fn new() -> Self {
        GammaLaw
    }

    /// `γ(A)`, or the out-of-class error carrying the liminf and limsup
    /// information that prevented a verdict.
    pub fn value(&self, set: &CountingSet) -> Result<Rat, LimitError> {
        match natural_density(set)? {
            DensityValue::Exists(v) => Ok(v),
            DensityValue::Divergent { liminf, limsup, exact } => {
                Err(LimitError::OutsideDeterminableClass { liminf, limsup, exact })
            }
        }
    }

    /// `γ` of the whole index set.
    pub fn ground(&self) -> Rat {
        rat_one()
    }

    /// `γ` of a single index.
    pub fn singleton(&self, n: u64) -> Result<Rat, LimitError> {
        self.value(&CountingSet::finite([n]))
    }
}

/// How a component sequence is known to converge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvergenceWitness {
    /// The sequence takes one fixed value from index `from` onwards.
    EventuallyConstant { from: u64 },
    /// The sequence converges to `value`; sampled distances to it must
    /// not grow and must end below where they started (or at zero).
    ClosedFormLimit { value: Rat },
}

const CONSTANCY_PROBE: u64 = 32;
const AUTODETECT_CAP: u64 = 4096;
const AUTODETECT_RUN: u64 = 64;

/// Integral of a component sequence against the density law. The law
/// gives full mass to arbitrarily large indices, so the integral of a
/// convergent sequence is its limit; the witness says why the limit is
/// known, and is itself checked against sampled values.
pub fn gamma_mixture_eval(
    component: impl Fn(u64) -> Rat,
    witness: Option<&ConvergenceWitness>,
) -> Result<Rat, LimitError> {
    match witness {
        Some(ConvergenceWitness::EventuallyConstant { from }) => {
            let start = (*from).max(1);
            let value = component(start);
            for n in start + 1..=start + CONSTANCY_PROBE {
                if component(n) != value {
                    return Err(LimitError::WitnessRejected);
                }
            }
            Ok(value)
        }
        Some(ConvergenceWitness::ClosedFormLimit { value }) => {
            let mut gaps = Vec::new();
            let mut n = 16u64;
            while n <= 16_384 {
                gaps.push((component(n) - value).abs());
                n *= 2;
            }
            let ok_monotone = gaps.windows(2).all(|w| w[1] <= w[0]);
            let first = gaps.first().expect("probe schedule nonempty");
            let last = gaps.last().expect("probe schedule nonempty");
            if ok_monotone && (last.is_zero() || last < first) {
                Ok(value.clone())
            } else {
                Err(LimitError::WitnessRejected)
            }
        }
        None => {
            // look for a long constant run
            let mut run_value = component(1);
            let mut run_len = 1u64;
            for n in 2..=AUTODETECT_CAP {
                let v = component(n);
                if v == run_value {
                    run_len += 1;
                    if run_len >= AUTODETECT_RUN {
                        return Ok(run_value);
                    }
                } else {
                    run_value = v;
                    run_len = 1;
                }
            }
            Err(LimitError::ComponentNotConvergent)
        }
    }
}

/// Limit of a `[0,1]`-valued sequence: the witness settles it exactly,
/// otherwise the tail of a scan provides estimated bounds.
pub fn limit_of_probabilities(
    seq: impl Fn(u64) -> Rat,
    witness: Option<&ConvergenceWitness>,
    horizon: u64,
) -> Result<DensityValue, LimitError> {
    if let Some(w) = witness {
        return gamma_mixture_eval(&seq, Some(w)).map(DensityValue::Exists);
    }
    match gamma_mixture_eval(&seq, None) {
        Ok(v) => Ok(DensityValue::Exists(v)),
        Err(LimitError::ComponentNotConvergent) => {
            let horizon = horizon.max(256);
            let window = 128.min(horizon / 2);
            let mut liminf: Option<Rat> = None;
            let mut limsup: Option<Rat> = None;
            for n in horizon - window + 1..=horizon {
                let v = seq(n);
                if liminf.as_ref().is_none_or(|b| v < *b) {
                    liminf = Some(v.clone());
                }
                if limsup.as_ref().is_none_or(|b| v > *b) {
                    limsup = Some(v);
                }
            }
            Ok(DensityValue::Divergent {
                liminf: liminf.expect("window nonempty"),
                limsup: limsup.expect("window nonempty"),
                exact: false,
            })
        }
        Err(other) => Err(other),
    }
}

/// One cell of the reciprocal partition of `(0, 1]`, with its `γ`-value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellReport {
    pub index: u64,
    /// Open lower endpoint `1/(index+1)`.
    pub lower: Rat,
    /// Closed upper endpoint `1/index`.
    pub upper: Rat,
    /// The unique enumeration point `1/index` inside the cell.
    pub enumeration_point: Rat,
    pub gamma_value: Rat,
}

/// The reciprocal-partition picture: every cell `(1/(n+1), 1/n]` of
/// `(0, 1]` holds exactly one point of `{1, 1/2, 1/3, …}` and carries
/// `γ`-value zero, any finite batch of cells still carries zero, yet the
/// full union carries one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalPartitionReport {
    pub cells: Vec<CellReport>,
    pub finite_union_value: Rat,
    pub full_union_value: Rat,
}

pub fn interval_partition_report(
    cell_indices: &[u64],
) -> Result<IntervalPartitionReport, LimitError> {
    if cell_indices.contains(&0) {
        return Err(LimitError::InvalidDescriptor("cell indices start at 1".into()));
    }
    let gamma = GammaLaw::new();
    let mut cells = Vec::with_capacity(cell_indices.len());
    for &n in cell_indices {
        let lower = Rat::new(BigInt::from(1), BigInt::from(n) + 1);
        let upper = Rat::new(BigInt::from(1), BigInt::from(n));
        let point = upper.clone();
        // exactly one reciprocal falls in (1/(n+1), 1/n]
        debug_assert!(lower < point && point <= upper);
        let gamma_value = gamma.value(&CountingSet::finite([n]))?;
        cells.push(CellReport { index: n, lower, upper, enumeration_point: point, gamma_value });
    }
    let finite_union_value = gamma.value(&CountingSet::finite(cell_indices.iter().copied()))?;
    let full_union_value = gamma.value(&CountingSet::cofinite([]))?;
    Ok(IntervalPartitionReport { cells, finite_union_value, full_union_value })
}
