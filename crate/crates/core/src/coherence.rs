//! Coherence of finite price assessments.
//!
//! A price vector is coherent exactly when no finite system of stakes
//! produces a strictly negative supremum of gains over the atoms, which
//! for a finite space is the same as the prices lying in the convex hull
//! of the atoms' indicator columns. [`check_coherence`] decides the
//! question by exact linear programming and always hands back a
//! certificate: a convex-weight witness reproducing every price, or a
//! Dutch book whose guaranteed loss is a positive rational. Both
//! certificates re-verify by direct evaluation, with no reference to how
//! they were found. [`extension_bounds`] computes the exact closed
//! interval of prices at which one further event could be added without
//! creating a Dutch book.

use num_traits::{Signed, Zero};

use crate::event::{Assessment, Event};
use crate::rat::{rat_int, rat_zero, Rat};
use crate::simplex::{self, LpOutcome, StandardForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoherenceError {
    #[error("stake vector has {got} entries but the assessment prices {expected} events")]
    StakeLengthMismatch { got: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtensionError {
    #[error("the new event lives on a different atom space than the assessment")]
    SpaceMismatch,
    #[error("the base assessment is already incoherent")]
    IncoherentBase(DutchBook),
}

/// Stakes witnessing incoherence: the bettor locks in at least
/// `guaranteed_loss` against the assessor at every atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DutchBook {
    /// One stake per assessment entry, scaled so the largest magnitude is one.
    pub stakes: Vec<Rat>,
    pub guaranteed_loss: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoherenceVerdict {
    /// Nonnegative atom weights summing to one that reproduce every price.
    Coherent { weights: Vec<Rat> },
    Incoherent { dutch_book: DutchBook },
}

impl CoherenceVerdict {
    pub fn is_coherent(&self) -> bool {
        matches!(self, CoherenceVerdict::Coherent { .. })
    }
}

/// Closed interval of coherent prices for one additional event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionInterval {
    pub lower: Rat,
    pub upper: Rat,
}

/// The assessor's worst outcome `sup_ω Σᵢ cᵢ (pᵢ − 1_{Eᵢ}(ω))` for given
/// stakes, evaluated exactly over every atom.
pub fn sup_gain(assessment: &Assessment, stakes: &[Rat]) -> Result<Rat, CoherenceError> {
    let entries = assessment.entries();
    if stakes.len() != entries.len() {
        return Err(CoherenceError::StakeLengthMismatch {
            got: stakes.len(),
            expected: entries.len(),
        });
    }
    let m = assessment.space().atom_count();
    let mut best: Option<Rat> = None;
    for atom in 0..m {
        let mut gain = rat_zero();
        for ((event, price), stake) in entries.iter().zip(stakes) {
            if stake.is_zero() {
                continue;
            }
            gain += stake * &(price - event.indicator(atom));
        }
        if best.as_ref().is_none_or(|b| gain > *b) {
            best = Some(gain);
        }
    }
    // At least one atom exists, so the supremum is attained.
    Ok(best.expect("atom spaces are nonempty"))
}

/// Decides coherence and returns a self-contained certificate either way.
pub fn check_coherence(assessment: &Assessment) -> CoherenceVerdict {
    match solve_membership(assessment, None) {
        LpOutcome::Optimal { solution, .. } => CoherenceVerdict::Coherent { weights: solution },
        LpOutcome::Infeasible { farkas } => {
            let book = dutch_book_from_multipliers(assessment, &farkas);
            CoherenceVerdict::Incoherent { dutch_book: book }
        }
        LpOutcome::Unbounded => unreachable!("feasibility problems cannot be unbounded"),
    }
}

/// Exact price interval `[lower, upper]` over which `new_event` can join
/// the assessment coherently. Incoherent bases are rejected with their
/// Dutch book.
pub fn extension_bounds(
    assessment: &Assessment,
    new_event: &Event,
) -> Result<ExtensionInterval, ExtensionError> {
    if new_event.space() != assessment.space() {
        return Err(ExtensionError::SpaceMismatch);
    }
    let lower = match solve_membership(assessment, Some((new_event, false))) {
        LpOutcome::Optimal { objective, .. } => objective,
        LpOutcome::Infeasible { farkas } => {
            return Err(ExtensionError::IncoherentBase(dutch_book_from_multipliers(
                assessment, &farkas,
            )))
        }
        LpOutcome::Unbounded => unreachable!("objective is a probability, bounded in [0, 1]"),
    };
    let upper = match solve_membership(assessment, Some((new_event, true))) {
        LpOutcome::Optimal { objective, .. } => -objective,
        LpOutcome::Infeasible { farkas } => {
            return Err(ExtensionError::IncoherentBase(dutch_book_from_multipliers(
                assessment, &farkas,
            )))
        }
        LpOutcome::Unbounded => unreachable!("objective is a probability, bounded in [0, 1]"),
    };
    Ok(ExtensionInterval { lower, upper })
}

/// True when the weights are a convex combination of atoms reproducing
/// every assessed price.
pub fn verify_witness(assessment: &Assessment, weights: &[Rat]) -> bool {
    let m = assessment.space().atom_count();
    if weights.len() != m {
        return false;
    }
    if weights.iter().any(|w| w < &rat_zero()) {
        return false;
    }
    if weights.iter().sum::<Rat>() != rat_int(1) {
        return false;
    }
    assessment.entries().iter().all(|(event, price)| {
        let mass: Rat = event.atoms().map(|a| weights[a].clone()).sum();
        mass == *price
    })
}

/// True when the stakes lose at least `guaranteed_loss` at every atom.
pub fn verify_dutch_book(assessment: &Assessment, book: &DutchBook) -> bool {
    if book.guaranteed_loss <= rat_zero() {
        return false;
    }
    match sup_gain(assessment, &book.stakes) {
        Ok(sup) => sup <= -book.guaranteed_loss.clone(),
        Err(_) => false,
    }
}

/// A law of finitely additive probability broken by an assessment, with
/// the entries witnessing the break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiViolation {
    /// The sure event is priced away from one.
    Normalization { entry: usize, price: Rat },
    /// Some event has a negative price.
    Nonnegativity { entry: usize, price: Rat },
    /// Two disjoint assessed events have an assessed union priced off
    /// their sum.
    Additivity { lhs_entry: usize, rhs_entry: usize, union_entry: usize, gap: Rat },
}

/// Scans normalization, nonnegativity, and finite additivity over all
/// assessed instances. An empty report does not by itself imply coherence
/// on an arbitrary event family; on a full algebra it does.
pub fn verify_pi_laws(assessment: &Assessment) -> Vec<PiViolation> {
    let entries = assessment.entries();
    let mut violations = Vec::new();
    for (i, (event, price)) in entries.iter().enumerate() {
        if event.is_full() && *price != rat_int(1) {
            violations.push(PiViolation::Normalization { entry: i, price: price.clone() });
        }
        if price.is_negative() {
            violations.push(PiViolation::Nonnegativity { entry: i, price: price.clone() });
        }
    }
    for i in 0..entries.len() {
        for j in i..entries.len() {
            let (ref a, ref pa) = entries[i];
            let (ref b, ref pb) = entries[j];
            if !a.intersect(b).expect("one space per assessment").is_empty() {
                continue;
            }
            let union = a.union(b).expect("one space per assessment");
            if let Some((k, (_, pu))) =
                entries.iter().enumerate().find(|(_, (e, _))| *e == union)
            {
                let gap = pu - &(pa + pb);
                if !gap.is_zero() {
                    violations.push(PiViolation::Additivity {
                        lhs_entry: i,
                        rhs_entry: j,
                        union_entry: k,
                        gap,
                    });
                }
            }
        }
    }
    violations
}

/// Hull-membership program: weights over atoms reproducing the prices.
/// With an objective event the optimum is its least (or, negated,
/// greatest) coherent price.
fn solve_membership(
    assessment: &Assessment,
    objective_event: Option<(&Event, bool)>,
) -> LpOutcome {
    let m = assessment.space().atom_count();
    let entries = assessment.entries();
    let mut rows = Vec::with_capacity(entries.len() + 1);
    let mut rhs = Vec::with_capacity(entries.len() + 1);
    for (event, price) in entries {
        rows.push((0..m).map(|a| event.indicator(a)).collect());
        rhs.push(price.clone());
    }
    rows.push(vec![rat_int(1); m]);
    rhs.push(rat_int(1));

    let objective = match objective_event {
        None => vec![rat_zero(); m],
        Some((event, negate)) => (0..m)
            .map(|a| if negate { -event.indicator(a) } else { event.indicator(a) })
            .collect(),
    };
    simplex::solve(&StandardForm { rows, rhs, objective })
        .expect("membership program rows are rectangular by construction")
}

/// Converts infeasibility multipliers into normalized stakes with an
/// exactly recomputed guaranteed loss.
fn dutch_book_from_multipliers(assessment: &Assessment, farkas: &[Rat]) -> DutchBook {
    let n = assessment.entries().len();
    let mut stakes: Vec<Rat> = farkas[..n].iter().map(|y| -y.clone()).collect();
    let scale = stakes
        .iter()
        .map(|c| c.abs())
        .max()
        .expect("infeasibility requires at least one priced event");
    assert!(!scale.is_zero(), "separating multipliers cannot vanish on every event");
    for c in stakes.iter_mut() {
        *c /= &scale;
    }
    let sup = sup_gain(assessment, &stakes).expect("stakes built to match the assessment");
    debug_assert!(sup < rat_zero());
    DutchBook { guaranteed_loss: -sup, stakes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::AtomSpace;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn two_atom_split() -> (Assessment, Event) {
        let space = AtomSpace::new(2).unwrap();
        let e = space.event_from_atoms(&[0]).unwrap();
        let assessment = Assessment::new(
            space,
            vec![(e.clone(), rat(3, 5)), (e.complement(), rat(3, 5))],
        )
        .unwrap();
        (assessment, e)
    }

    #[test]
    fn overpriced_complementary_pair_is_a_dutch_book() {
        let (assessment, _) = two_atom_split();
        // Stakes of -1 on each side lose 1/5 whichever atom occurs.
        let sup = sup_gain(&assessment, &[rat(-1, 1), rat(-1, 1)]).unwrap();
        assert_eq!(sup, rat(-1, 5));

        let verdict = check_coherence(&assessment);
        let CoherenceVerdict::Incoherent { dutch_book } = verdict else {
            panic!("expected incoherent verdict");
        };
        assert!(verify_dutch_book(&assessment, &dutch_book));
        assert_eq!(dutch_book.stakes.iter().map(|c| c.abs()).max().unwrap(), rat(1, 1));
        assert_eq!(dutch_book.guaranteed_loss, rat(1, 5));
    }

    #[test]
    fn additive_triple_is_coherent_with_reproducing_weights() {
        let space = AtomSpace::new(3).unwrap();
        let e1 = space.event_from_atoms(&[0]).unwrap();
        let e2 = space.event_from_atoms(&[1]).unwrap();
        let union = e1.union(&e2).unwrap();
        let assessment = Assessment::new(
            space,
            vec![(e1, rat(3, 10)), (e2, rat(1, 2)), (union, rat(4, 5))],
        )
        .unwrap();
        let verdict = check_coherence(&assessment);
        let CoherenceVerdict::Coherent { weights } = verdict else {
            panic!("expected coherent verdict");
        };
        assert!(verify_witness(&assessment, &weights));
        assert_eq!(weights, vec![rat(3, 10), rat(1, 2), rat(1, 5)]);
    }

    #[test]
    fn prices_outside_the_unit_interval_are_incoherent() {
        let space = AtomSpace::new(2).unwrap();
        let e = space.event_from_atoms(&[0]).unwrap();
        for price in [rat(11, 10), rat(-1, 10)] {
            let assessment =
                Assessment::new(space.clone(), vec![(e.clone(), price)]).unwrap();
            let verdict = check_coherence(&assessment);
            let CoherenceVerdict::Incoherent { dutch_book } = verdict else {
                panic!("expected incoherent verdict");
            };
            assert!(verify_dutch_book(&assessment, &dutch_book));
        }
    }

    #[test]
    fn empty_and_sure_events_behave() {
        let space = AtomSpace::new(3).unwrap();
        let sure = space.full_event();
        let nothing = space.empty_event();
        let a = Assessment::new(
            space.clone(),
            vec![(sure, rat(1, 1)), (nothing, rat(0, 1))],
        )
        .unwrap();
        assert!(check_coherence(&a).is_coherent());
        assert!(check_coherence(&Assessment::empty(space)).is_coherent());
    }

    #[test]
    fn extension_bounds_match_hand_computations() {
        let space = AtomSpace::new(3).unwrap();
        let e = space.event_from_atoms(&[0]).unwrap();
        let disjoint = space.event_from_atoms(&[1]).unwrap();

        let pinned = Assessment::new(space.clone(), vec![(e.clone(), rat(4, 5))]).unwrap();
        let same = extension_bounds(&pinned, &e).unwrap();
        assert_eq!(same, ExtensionInterval { lower: rat(4, 5), upper: rat(4, 5) });

        let base = Assessment::new(space.clone(), vec![(e.clone(), rat(3, 10))]).unwrap();
        let free = extension_bounds(&base, &disjoint).unwrap();
        assert_eq!(free, ExtensionInterval { lower: rat(0, 1), upper: rat(7, 10) });

        let blank = Assessment::empty(space.clone());
        let sure = extension_bounds(&blank, &space.full_event()).unwrap();
        assert_eq!(sure, ExtensionInterval { lower: rat(1, 1), upper: rat(1, 1) });
    }

    #[test]
    fn incoherent_base_cannot_be_extended() {
        let (assessment, e) = two_atom_split();
        let err = extension_bounds(&assessment, &e).unwrap_err();
        let ExtensionError::IncoherentBase(book) = err else {
            panic!("expected incoherent-base error");
        };
        assert!(verify_dutch_book(&assessment, &book));
    }

    #[test]
    fn pi_law_scan_reports_each_family() {
        let space = AtomSpace::new(4).unwrap();
        let sure = space.full_event();
        let a = space.event_from_atoms(&[0]).unwrap();
        let b = space.event_from_atoms(&[1]).unwrap();
        let union = a.union(&b).unwrap();

        let bad_norm = Assessment::new(space.clone(), vec![(sure, rat(9, 10))]).unwrap();
        assert!(matches!(
            verify_pi_laws(&bad_norm).as_slice(),
            [PiViolation::Normalization { .. }]
        ));

        let bad_sign = Assessment::new(space.clone(), vec![(a.clone(), rat(-1, 10))]).unwrap();
        assert!(matches!(
            verify_pi_laws(&bad_sign).as_slice(),
            [PiViolation::Nonnegativity { .. }]
        ));

        let bad_add = Assessment::new(
            space.clone(),
            vec![(a, rat(1, 3)), (b, rat(1, 3)), (union, rat(3, 4))],
        )
        .unwrap();
        let report = verify_pi_laws(&bad_add);
        assert!(matches!(
            report.as_slice(),
            [PiViolation::Additivity { gap, .. }] if *gap == rat(1, 12)
        ));

        let empty_badly_priced =
            Assessment::new(space.clone(), vec![(space.empty_event(), rat(1, 5))]).unwrap();
        assert!(matches!(
            verify_pi_laws(&empty_badly_priced).as_slice(),
            [PiViolation::Additivity { .. }]
        ));
    }

    proptest! {
        // Positive scaling of stakes scales the worst outcome linearly.
        #[test]
        fn sup_gain_is_positively_homogeneous(
            c1 in -5i64..6, c2 in -5i64..6, lambda in 1i64..7,
        ) {
            let (assessment, _) = two_atom_split();
            let stakes = vec![rat(c1, 3), rat(c2, 3)];
            let scaled: Vec<Rat> = stakes.iter().map(|c| c * rat(lambda, 1)).collect();
            let base = sup_gain(&assessment, &stakes).unwrap();
            let grown = sup_gain(&assessment, &scaled).unwrap();
            prop_assert_eq!(grown, base * rat(lambda, 1));
        }

        // Verdicts are stable under relabeling atoms.
        #[test]
        fn coherence_is_invariant_under_atom_permutation(
            mask1 in 0u8..16, mask2 in 0u8..16,
            num1 in 0i64..7, num2 in 0i64..7,
            swap in any::<bool>(),
        ) {
            let perm: Vec<usize> = if swap { vec![3, 2, 1, 0] } else { vec![0, 1, 2, 3] };
            let build = |permute: bool| {
                let space = AtomSpace::new(4).unwrap();
                let atoms = |mask: u8| -> Vec<usize> {
                    (0..4usize)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| if permute { perm[i] } else { i })
                        .collect()
                };
                Assessment::new(
                    space.clone(),
                    vec![
                        (space.event_from_atoms(&atoms(mask1)).unwrap(), rat(num1, 6)),
                        (space.event_from_atoms(&atoms(mask2)).unwrap(), rat(num2, 6)),
                    ],
                )
            };
            let (Ok(plain), Ok(permuted)) = (build(false), build(true)) else {
                // identical events priced differently under either labeling
                return Ok(());
            };
            prop_assert_eq!(
                check_coherence(&plain).is_coherent(),
                check_coherence(&permuted).is_coherent()
            );
        }
    }
}
