//! Cylinder probabilities of the tail laws.

use num_bigint::BigUint;

use crate::limits::{gamma_mixture_eval, ConvergenceWitness};
use crate::rat::{rat_one, rat_pow, rat_zero, Rat};

use super::{Cylinder, TailLaw, TailVariant};

/// Bit `t` of the factorial oscillator, `t ≥ 1`: zero on the blocks
/// `[(2k-1)!, (2k)!)` and one on `[(2k)!, (2k+1)!)`.
pub fn y_factorial_bit(offset: u64) -> bool {
    y_factorial_bit_big(&BigUint::from(offset))
}

pub fn y_factorial_bit_big(offset: &BigUint) -> bool {
    assert!(*offset >= BigUint::from(1u32), "offsets start at 1");
    // find m with m! ≤ offset < (m+1)!; the block parity decides the bit
    let mut factorial = BigUint::from(1u32);
    let mut m: u64 = 1;
    loop {
        let next = &factorial * BigUint::from(m + 1);
        if &next > offset {
            return m % 2 == 0;
        }
        factorial = next;
        m += 1;
    }
}

/// Probability of a cylinder under the component with jump position
/// `component`: independent head before it, a pinned success at it, the
/// variant's tail after it.
pub fn component_prob(law: &TailLaw, component: u64, cylinder: &Cylinder) -> Rat {
    assert!(component >= 1, "component indices start at 1");
    let mut head_ones: u64 = 0;
    let mut head_zeros: u64 = 0;
    for &(index, bit) in cylinder.constraints() {
        if index == component {
            if !bit {
                return rat_zero();
            }
            continue;
        }
        let in_head = index < component;
        match &law.variant {
            TailVariant::ZeroTail { .. } if !in_head => {
                if bit {
                    return rat_zero();
                }
            }
            TailVariant::FactorialTail { .. } if !in_head => {
                if bit != y_factorial_bit(index - component) {
                    return rat_zero();
                }
            }
            // exchangeable draws continue past the jump, so every
            // unpinned coordinate contributes to the moment
            _ => {
                if bit {
                    head_ones += 1;
                } else {
                    head_zeros += 1;
                }
            }
        }
    }
    match &law.variant {
        TailVariant::ZeroTail { p } | TailVariant::FactorialTail { p } => {
            rat_pow(p, head_ones) * rat_pow(&(rat_one() - p), head_zeros)
        }
        TailVariant::ExchangeableTail { mixing } => mixing.moment(head_ones, head_zeros),
    }
}

/// Probability of a cylinder under the full mixture over jump
/// positions. Once the jump passes the last constrained coordinate the
/// component value stops moving, so the mixture is that stable value.
pub fn mixture_prob(law: &TailLaw, cylinder: &Cylinder) -> Rat {
    let stable_from = cylinder.max_index().unwrap_or(0) + 1;
    gamma_mixture_eval(
        |n| component_prob(law, n, cylinder),
        Some(&ConvergenceWitness::EventuallyConstant { from: stable_from }),
    )
    .expect("cylinder probabilities are constant once the jump clears the constraints")
}
