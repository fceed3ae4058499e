//! Exact probability that the running frequency stays near its chance
//! over a whole window of trial counts.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::rat::{rat_one, rat_pow, rat_zero, Rat};

use super::BernoulliError;

/// Largest window end for which the path count stays exact and cheap.
pub const CANTELLI_STATE_CAP: u64 = 64;

/// `P(|S_k/k - p| ≤ ε for every k in [n, n+m])` under independent
/// trials with success chance `p`, by exact path counting: paths are
/// grouped by success count, and any group leaving the band at a
/// checked `k` is discarded.
pub fn cantelli_probability(
    p: &Rat,
    eps: &Rat,
    n: u64,
    m: u64,
) -> Result<Rat, BernoulliError> {
    if *p < rat_zero() || *p > rat_one() {
        return Err(BernoulliError::InvalidParameter(format!("chance {p} outside [0, 1]")));
    }
    if *eps <= rat_zero() {
        return Err(BernoulliError::InvalidParameter("the band radius must be positive".into()));
    }
    if n == 0 {
        return Err(BernoulliError::InvalidParameter("the window must start at 1".into()));
    }
    let end = n + m;
    if end > CANTELLI_STATE_CAP {
        return Err(BernoulliError::WindowTooLarge { requested: end, cap: CANTELLI_STATE_CAP });
    }

    let in_band = |successes: u64, trials: u64| {
        let frequency = Rat::new(BigInt::from(successes), BigInt::from(trials));
        (frequency - p).abs() <= *eps
    };

    // counts[s] = number of surviving length-k paths with s successes
    let mut counts: Vec<BigUint> = vec![BigUint::from(1u32)];
    for k in 1..=end {
        let mut next = vec![BigUint::zero(); k as usize + 1];
        for (s, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next[s] += c;
            next[s + 1] += c;
        }
        if k >= n {
            for (s, c) in next.iter_mut().enumerate() {
                if !in_band(s as u64, k) {
                    *c = BigUint::zero();
                }
            }
        }
        counts = next;
    }

    let q = rat_one() - p;
    let mut total = rat_zero();
    for (s, c) in counts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let weight = rat_pow(p, s as u64) * rat_pow(&q, end - s as u64);
        total += Rat::from_integer(BigInt::from(c.clone())) * weight;
    }
    Ok(total)
}

/// Search record for the least window start making the escape
/// probability small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct N0Report {
    /// Least `n` with escape probability at most `delta` over the
    /// checked window, if one exists under the cap.
    pub threshold: Option<u64>,
    /// Window length each candidate was checked with.
    pub window: u64,
    /// `(n, escape probability)` for each candidate tried.
    pub table: Vec<(u64, Rat)>,
}

/// Scan window starts `n = 1, 2, …` while `n + window` stays under the
/// exact-count cap, recording the escape probability
/// `1 - P(frequency stays in the band on [n, n+window])` for each, and
/// report the first `n` that pushes it to `delta` or below. An honest
/// `None` threshold means no start under the cap suffices for this
/// window length.
pub fn find_n0(
    p: &Rat,
    eps: &Rat,
    delta: &Rat,
    window: u64,
) -> Result<N0Report, BernoulliError> {
    if *delta <= rat_zero() || *delta >= rat_one() {
        return Err(BernoulliError::InvalidParameter(format!(
            "escape budget {delta} outside (0, 1)"
        )));
    }
    let mut table = Vec::new();
    let mut threshold = None;
    let mut n = 1;
    while n + window <= CANTELLI_STATE_CAP {
        let escape = rat_one() - cantelli_probability(p, eps, n, window)?;
        table.push((n, escape.clone()));
        if threshold.is_none() && escape <= *delta {
            threshold = Some(n);
            break;
        }
        n += 1;
    }
    Ok(N0Report { threshold, window, table })
}
