//! Adaptive Simpson quadrature for complex integrands.

use num_complex::Complex64;

use super::FisiError;

const MAX_EVALS: u64 = 1 << 20;

/// Integrate `f` over `[a, b]` to absolute tolerance `tol` by adaptive
/// Simpson subdivision with the usual one-fifteenth error estimate.
/// Integrand failures propagate; running past the evaluation budget
/// reports the tolerance that was actually achieved.
pub fn adaptive_simpson(
    f: &mut dyn FnMut(f64) -> Result<Complex64, FisiError>,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Complex64, FisiError> {
    if !(tol > 0.0) {
        return Err(FisiError::InvalidParameter("tolerance must be positive".into()));
    }
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut evals = 0u64;
    let mut eval = |x: f64, evals: &mut u64| -> Result<Complex64, FisiError> {
        *evals += 1;
        f(x)
    };
    let fa = eval(a, &mut evals)?;
    let fb = eval(b, &mut evals)?;
    let m = 0.5 * (a + b);
    let fm = eval(m, &mut evals)?;
    let whole = simpson(a, b, fa, fm, fb);

    struct Frame {
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        estimate: Complex64,
        tol: f64,
    }
    let mut stack = vec![Frame { a, b, fa, fm, fb, estimate: whole, tol }];
    let mut total = Complex64::new(0.0, 0.0);
    let mut worst = 0.0f64;
    while let Some(frame) = stack.pop() {
        if evals + 2 > MAX_EVALS {
            return Err(FisiError::QuadratureDidNotConverge { achieved: worst.max(frame.tol) });
        }
        let m = 0.5 * (frame.a + frame.b);
        let lm = 0.5 * (frame.a + m);
        let rm = 0.5 * (m + frame.b);
        let flm = eval(lm, &mut evals)?;
        let frm = eval(rm, &mut evals)?;
        let left = simpson(frame.a, m, frame.fa, flm, frame.fm);
        let right = simpson(m, frame.b, frame.fm, frm, frame.fb);
        let err = (left + right - frame.estimate).norm() / 15.0;
        if err <= frame.tol {
            total += left + right + (left + right - frame.estimate) / 15.0;
            worst = worst.max(err);
        } else {
            let half_tol = frame.tol / 2.0;
            stack.push(Frame {
                a: frame.a,
                b: m,
                fa: frame.fa,
                fm: flm,
                fb: frame.fm,
                estimate: left,
                tol: half_tol,
            });
            stack.push(Frame {
                a: m,
                b: frame.b,
                fa: frame.fm,
                fm: frm,
                fb: frame.fb,
                estimate: right,
                tol: half_tol,
            });
        }
    }
    Ok(total)
}

fn simpson(a: f64, b: f64, fa: Complex64, fm: Complex64, fb: Complex64) -> Complex64 {
    (fa + 4.0 * fm + fb) * ((b - a) / 6.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_integrate_to_machine_accuracy() {
        let mut cubic = |x: f64| Ok(Complex64::new(x * x * x - 2.0 * x, 1.0));
        let got = adaptive_simpson(&mut cubic, 0.0, 2.0, 1e-12).unwrap();
        // ∫ x³-2x = 0 over [0,2]; imaginary part integrates the constant
        assert!((got - Complex64::new(0.0, 2.0)).norm() < 1e-10);
    }

    #[test]
    fn oscillatory_integrands_meet_the_tolerance() {
        let mut wave = |x: f64| Ok(Complex64::new(0.0, x).exp());
        let got = adaptive_simpson(&mut wave, 0.0, 10.0, 1e-10).unwrap();
        let want = Complex64::new(10.0f64.sin(), 1.0 - 10.0f64.cos());
        assert!((got - want).norm() < 1e-9, "{got} vs {want}");
    }

    #[test]
    fn reversed_and_empty_intervals_behave() {
        let mut f = |x: f64| Ok(Complex64::new(x, 0.0));
        assert_eq!(adaptive_simpson(&mut f, 3.0, 3.0, 1e-10).unwrap(), Complex64::new(0.0, 0.0));
        let forward = adaptive_simpson(&mut f, 0.0, 1.0, 1e-12).unwrap();
        let backward = adaptive_simpson(&mut f, 1.0, 0.0, 1e-12).unwrap();
        assert!((forward + backward).norm() < 1e-12);
    }

    #[test]
    fn integrand_errors_propagate() {
        let mut broken = |x: f64| {
            if x > 0.5 {
                Err(FisiError::CharFnVanishes { near: x })
            } else {
                Ok(Complex64::new(1.0, 0.0))
            }
        };
        assert!(matches!(
            adaptive_simpson(&mut broken, 0.0, 1.0, 1e-10),
            Err(FisiError::CharFnVanishes { .. })
        ));
    }
}
