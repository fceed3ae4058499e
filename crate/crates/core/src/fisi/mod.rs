//! Finitely spaced sums of a process with stationary independent
//! increments, their characteristic functions, and the limit law.
//!
//! This is the one floating-point corner of the crate. The central
//! object is the continuous (branch-tracked) logarithm of a
//! characteristic function: partial-sum characteristic functions are
//! `exp` of weighted sums of it, and the limit law is `exp` of its
//! integral. Known families override the logarithm with closed forms;
//! arbitrary characteristic functions get the tracked default, which
//! follows the argument continuously from the origin instead of
//! trusting the principal branch, and reports an error when the
//! function vanishes on the way (where no continuous logarithm exists).

mod ks;
mod mc;
mod quad;
mod sums;

pub use ks::{cip_implies_cid_harness, two_sample_ks, CidReport, CouplingMode};
pub use mc::{monte_carlo_cf_check, sample_variance, simulate_partial_sums, EmpiricalCfRow, SamplerKind};
pub use quad::adaptive_simpson;
pub use sums::{
    convergence_of_sums, gaussian_partial_sum_variance, limit_cf, log_partial_sum_cf,
    partial_sum_cf, CfComparisonRow,
};

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FisiError {
    #[error("characteristic function vanishes near u = {near}; no continuous logarithm")]
    CharFnVanishes { near: f64 },
    #[error("branch tracking did not stabilize on [0, {target}]")]
    BranchTrackingFailed { target: f64 },
    #[error("quadrature did not reach the tolerance (estimated error {achieved:e})")]
    QuadratureDidNotConverge { achieved: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A characteristic function of an infinitely divisible law, normalized
/// to time one. `log_eval` must return the continuous logarithm along
/// `[0, u]` with value zero at the origin.
pub trait CharFn {
    fn eval(&self, u: f64) -> Complex64;

    fn log_eval(&self, u: f64) -> Result<Complex64, FisiError> {
        tracked_log(&|x| self.eval(x), u)
    }
}

const TRACK_MIN_STEPS: u32 = 8;
const TRACK_MAX_STEPS: u32 = 1 << 20;
const TRACK_PROBE_STEPS: u32 = 1 << 12;
const MODULUS_FLOOR: f64 = 1e-12;
const DIP_FLOOR: f64 = 1e-9;

/// Continuous logarithm of `phi` along the segment from 0 to `u`,
/// anchored at `log phi(0) = 0`. The path is subdivided until every
/// step turns the argument by less than a quarter circle; failure to
/// stabilize means the function gets too close to zero on the path.
pub fn tracked_log(phi: &dyn Fn(f64) -> Complex64, u: f64) -> Result<Complex64, FisiError> {
    if u == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut steps = TRACK_MIN_STEPS;
    'retry: while steps <= TRACK_MAX_STEPS {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut prev = Complex64::new(1.0, 0.0);
        for j in 1..=steps {
            let x = u * j as f64 / steps as f64;
            let cur = phi(x);
            if cur.norm() < MODULUS_FLOOR {
                return Err(FisiError::CharFnVanishes { near: x });
            }
            let delta = (cur / prev).ln();
            if delta.im.abs() >= std::f64::consts::FRAC_PI_2 {
                if steps >= TRACK_PROBE_STEPS {
                    let x_prev = u * (j - 1) as f64 / steps as f64;
                    if let Some(near) = modulus_dip(phi, x_prev.min(x), x_prev.max(x)) {
                        return Err(FisiError::CharFnVanishes { near });
                    }
                }
                steps *= 2;
                continue 'retry;
            }
            acc += delta;
            prev = cur;
        }
        return Ok(acc);
    }
    Err(FisiError::BranchTrackingFailed { target: u })
}

/// Ternary-search the modulus over a short interval where the argument
/// jumped; a near-zero minimum pins an actual zero of `phi`, as opposed
/// to winding that mere refinement would resolve. Assumes the modulus
/// has a single dip inside the interval, which refinement has already
/// made short by the time this runs.
fn modulus_dip(phi: &dyn Fn(f64) -> Complex64, mut lo: f64, mut hi: f64) -> Option<f64> {
    for _ in 0..120 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if phi(m1).norm() <= phi(m2).norm() {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let mid = (lo + hi) / 2.0;
    if phi(mid).norm() < DIP_FLOOR {
        Some(mid)
    } else {
        None
    }
}

/// Standard Gaussian process: `phi(u) = exp(-u²/2)`.
#[derive(Debug, Clone, Copy)]
pub struct GaussianCf;

impl CharFn for GaussianCf {
    fn eval(&self, u: f64) -> Complex64 {
        Complex64::new((-u * u / 2.0).exp(), 0.0)
    }

    fn log_eval(&self, u: f64) -> Result<Complex64, FisiError> {
        Ok(Complex64::new(-u * u / 2.0, 0.0))
    }
}

/// Unit-jump Poisson process: `phi(u) = exp(rate (e^{iu} - 1))`.
#[derive(Debug, Clone, Copy)]
pub struct PoissonCf {
    pub rate: f64,
}

impl CharFn for PoissonCf {
    fn eval(&self, u: f64) -> Complex64 {
        (self.rate * (Complex64::new(0.0, u).exp() - 1.0)).exp()
    }

    fn log_eval(&self, u: f64) -> Result<Complex64, FisiError> {
        Ok(self.rate * (Complex64::new(0.0, u).exp() - 1.0))
    }
}

/// Deterministic linear motion: `phi(u) = exp(i drift u)`.
#[derive(Debug, Clone, Copy)]
pub struct DegenerateCf {
    pub drift: f64,
}

impl CharFn for DegenerateCf {
    fn eval(&self, u: f64) -> Complex64 {
        Complex64::new(0.0, self.drift * u).exp()
    }

    fn log_eval(&self, u: f64) -> Result<Complex64, FisiError> {
        Ok(Complex64::new(0.0, self.drift * u))
    }
}

/// Compound Poisson with symmetric unit jumps:
/// `phi(u) = exp(rate (cos u - 1))`.
#[derive(Debug, Clone, Copy)]
pub struct CompoundPoissonCf {
    pub rate: f64,
}

impl CharFn for CompoundPoissonCf {
    fn eval(&self, u: f64) -> Complex64 {
        Complex64::new((self.rate * ((u).cos() - 1.0)).exp(), 0.0)
    }

    fn log_eval(&self, u: f64) -> Result<Complex64, FisiError> {
        Ok(Complex64::new(self.rate * (u.cos() - 1.0), 0.0))
    }
}

/// Black-box characteristic function; the logarithm is branch-tracked.
pub struct CustomCf<F: Fn(f64) -> Complex64> {
    pub f: F,
}

impl<F: Fn(f64) -> Complex64> CharFn for CustomCf<F> {
    fn eval(&self, u: f64) -> Complex64 {
        (self.f)(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn tracked_log_reproduces_closed_forms_for_black_boxes() {
        let gaussian = CustomCf { f: |u: f64| Complex64::new((-u * u / 2.0).exp(), 0.0) };
        for u in [-3.0, -0.5, 0.0, 0.7, 2.5] {
            let got = gaussian.log_eval(u).unwrap();
            assert!(close(got, Complex64::new(-u * u / 2.0, 0.0), 1e-9), "u = {u}");
        }
    }

    #[test]
    fn tracked_log_unwinds_past_the_principal_branch() {
        // with a large rate the imaginary part exceeds π, which the
        // principal branch would fold back
        let rate = 5.0;
        let black_box = CustomCf {
            f: move |u: f64| (rate * (Complex64::new(0.0, u).exp() - 1.0)).exp(),
        };
        let closed = PoissonCf { rate };
        for u in [0.5, 1.2, std::f64::consts::FRAC_PI_2, 2.9, -2.9] {
            let got = black_box.log_eval(u).unwrap();
            let want = closed.log_eval(u).unwrap();
            assert!(close(got, want, 1e-8), "u = {u}: {got} vs {want}");
        }
        // the match is meaningful: at u = π/2 the imaginary part is the
        // full rate, well past anything the principal branch can return
        let wound = closed.log_eval(std::f64::consts::FRAC_PI_2).unwrap();
        assert!(wound.im > std::f64::consts::PI);
    }

    #[test]
    fn vanishing_characteristic_functions_are_reported() {
        // cos u is the characteristic function of a fair ±1 coin and
        // vanishes at π/2; the tracked logarithm must refuse to cross
        let coin = CustomCf { f: |u: f64| Complex64::new(u.cos(), 0.0) };
        let err = coin.log_eval(2.0).unwrap_err();
        match err {
            FisiError::CharFnVanishes { near } => {
                assert!((near - std::f64::consts::FRAC_PI_2).abs() < 0.2, "near {near}");
            }
            other => panic!("unexpected error {other:?}"),
        }
        // short of the zero it still works
        assert!(coin.log_eval(1.0).is_ok());
    }

    #[test]
    fn closed_form_families_agree_with_their_tracked_defaults() {
        let pairs: Vec<(Box<dyn CharFn>, Box<dyn Fn(f64) -> Complex64>)> = vec![
            (Box::new(PoissonCf { rate: 0.8 }), {
                let rate = 0.8;
                Box::new(move |u: f64| (rate * (Complex64::new(0.0, u).exp() - 1.0)).exp())
            }),
            (Box::new(CompoundPoissonCf { rate: 1.3 }), {
                let rate = 1.3;
                Box::new(move |u: f64| Complex64::new((rate * (u.cos() - 1.0)).exp(), 0.0))
            }),
            (Box::new(DegenerateCf { drift: 0.6 }), {
                Box::new(move |u: f64| Complex64::new(0.0, 0.6 * u).exp())
            }),
        ];
        for (family, raw) in &pairs {
            for u in [-2.0, -0.3, 0.4, 1.9] {
                let closed = family.log_eval(u).unwrap();
                let tracked = tracked_log(&|x| raw(x), u).unwrap();
                assert!(close(closed, tracked, 1e-8), "u = {u}");
            }
        }
    }
}
