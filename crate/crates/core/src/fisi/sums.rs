//! Characteristic functions of the time-averaged partial sums and
//! their limit.
//!
//! For a process with stationary independent increments observed at the
//! first `n` multiples of `t/n`, the time average `V_n` of the observed
//! values has, by summation by parts, the characteristic function
//!
//! `Ψ_n(ξ) = exp{ i c ξ t + (t/n) Σ_{h=1}^{n} log φ((n-h+1)(t/n) ξ) }`
//!
//! with `c` the deterministic drift and `log φ` the continuous
//! logarithm of the increment characteristic function. As `n` grows the
//! sum is a Riemann sum, and the limit is `exp` of an integral of
//! `log φ`.

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::rat::{rat_pow, Rat};

use super::quad::adaptive_simpson;
use super::{CharFn, FisiError};

/// Log of the characteristic function of `V_n` at `ξ`.
pub fn log_partial_sum_cf(
    phi: &dyn CharFn,
    drift: f64,
    t: f64,
    n: u64,
    xi: f64,
) -> Result<Complex64, FisiError> {
    if n == 0 {
        return Err(FisiError::InvalidParameter("need at least one summand".into()));
    }
    if !(t > 0.0) {
        return Err(FisiError::InvalidParameter("the time span must be positive".into()));
    }
    let step = t / n as f64;
    let mut acc = Complex64::new(0.0, drift * xi * t);
    for h in 1..=n {
        let weight = (n - h + 1) as f64;
        acc += step * phi.log_eval(weight * step * xi)?;
    }
    Ok(acc)
}

/// Characteristic function of `V_n` at `ξ`.
pub fn partial_sum_cf(
    phi: &dyn CharFn,
    drift: f64,
    t: f64,
    n: u64,
    xi: f64,
) -> Result<Complex64, FisiError> {
    Ok(log_partial_sum_cf(phi, drift, t, n, xi)?.exp())
}

/// Characteristic function of the limit of the `V_n`:
/// `exp{ i c ξ t + ξ^{-1} ∫_0^{ξ t} log φ(u) du }`, and 1 at `ξ = 0`.
pub fn limit_cf(
    phi: &dyn CharFn,
    drift: f64,
    t: f64,
    xi: f64,
    tol: f64,
) -> Result<Complex64, FisiError> {
    if !(t > 0.0) {
        return Err(FisiError::InvalidParameter("the time span must be positive".into()));
    }
    if xi == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut integrand = |u: f64| phi.log_eval(u);
    let integral = adaptive_simpson(&mut integrand, 0.0, xi * t, tol)?;
    let exponent = Complex64::new(0.0, drift * xi * t) + integral / xi;
    Ok(exponent.exp())
}

/// One grid point of the finite-`n` versus limit comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfComparisonRow {
    pub xi: f64,
    pub partial: Complex64,
    pub limit: Complex64,
    pub error: f64,
}

/// Evaluate the partial-sum and limit characteristic functions over a
/// grid and report the pointwise distances.
pub fn convergence_of_sums(
    phi: &dyn CharFn,
    drift: f64,
    t: f64,
    n: u64,
    grid: &[f64],
    tol: f64,
) -> Result<Vec<CfComparisonRow>, FisiError> {
    grid.iter()
        .map(|&xi| {
            let partial = partial_sum_cf(phi, drift, t, n, xi)?;
            let limit = limit_cf(phi, drift, t, xi, tol)?;
            Ok(CfComparisonRow { xi, partial, limit, error: (partial - limit).norm() })
        })
        .collect()
}

/// Exact variance of `V_n` for the standard Gaussian process:
/// `t³ (n+1)(2n+1) / (6 n²)`.
pub fn gaussian_partial_sum_variance(t: &Rat, n: u64) -> Rat {
    let n_int = BigInt::from(n);
    let numerator = (&n_int + 1u32) * (&n_int * 2u32 + 1u32);
    let denominator = &n_int * &n_int * 6u32;
    rat_pow(t, 3) * Rat::new(numerator, denominator)
}
