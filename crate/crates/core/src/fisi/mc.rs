//! Monte Carlo cross-checks of the partial-sum characteristic
//! functions.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Poisson};

use super::sums::partial_sum_cf;
use super::{CharFn, DegenerateCf, FisiError, GaussianCf, PoissonCf};

/// Increment distribution to simulate; each maps to the matching
/// characteristic function family.
#[derive(Debug, Clone, Copy)]
pub enum SamplerKind {
    Gaussian,
    Poisson { rate: f64 },
    Degenerate { drift: f64 },
}

impl SamplerKind {
    fn char_fn(&self) -> Box<dyn CharFn> {
        match self {
            SamplerKind::Gaussian => Box::new(GaussianCf),
            SamplerKind::Poisson { rate } => Box::new(PoissonCf { rate: *rate }),
            SamplerKind::Degenerate { drift } => Box::new(DegenerateCf { drift: *drift }),
        }
    }
}

/// Draw `samples` independent realizations of the time average `V_n`
/// through the summation-by-parts form: independent increments over
/// spans `t/n`, the `h`-th weighted by `n-h+1`.
pub fn simulate_partial_sums(
    kind: &SamplerKind,
    drift: f64,
    t: f64,
    n: u64,
    samples: u64,
    seed: u64,
) -> Result<Vec<f64>, FisiError> {
    if n == 0 || samples == 0 {
        return Err(FisiError::InvalidParameter("need positive counts".into()));
    }
    if !(t > 0.0) {
        return Err(FisiError::InvalidParameter("the time span must be positive".into()));
    }
    let step = t / n as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift = drift * t;
    let mut out = Vec::with_capacity(samples as usize);
    match kind {
        SamplerKind::Gaussian => {
            let increment = Normal::new(0.0, step.sqrt())
                .map_err(|e| FisiError::InvalidParameter(e.to_string()))?;
            for _ in 0..samples {
                let mut acc = 0.0;
                for h in 1..=n {
                    acc += (n - h + 1) as f64 * increment.sample(&mut rng);
                }
                out.push(shift + step * acc);
            }
        }
        SamplerKind::Poisson { rate } => {
            if !(rate > &0.0) {
                return Err(FisiError::InvalidParameter("the rate must be positive".into()));
            }
            let increment = Poisson::new(rate * step)
                .map_err(|e| FisiError::InvalidParameter(e.to_string()))?;
            for _ in 0..samples {
                let mut acc = 0.0;
                for h in 1..=n {
                    acc += (n - h + 1) as f64 * increment.sample(&mut rng);
                }
                out.push(shift + step * acc);
            }
        }
        SamplerKind::Degenerate { drift: slope } => {
            let value = shift + slope * t * t * (n as f64 + 1.0) / (2.0 * n as f64);
            out.resize(samples as usize, value);
        }
    }
    Ok(out)
}

/// Unbiased sample variance.
pub fn sample_variance(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)
}

/// One grid point of the empirical check: the averaged phase against
/// the analytic value, with standard errors for both parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalCfRow {
    pub xi: f64,
    pub empirical: Complex64,
    pub expected: Complex64,
    pub se_re: f64,
    pub se_im: f64,
    pub within_band: bool,
}

/// Empirical characteristic function of simulated time averages on a
/// grid, compared with the analytic partial-sum value; a point is
/// within band when both parts sit inside `sigmas` standard errors.
pub fn monte_carlo_cf_check(
    kind: &SamplerKind,
    drift: f64,
    t: f64,
    n: u64,
    grid: &[f64],
    samples: u64,
    seed: u64,
    sigmas: f64,
) -> Result<Vec<EmpiricalCfRow>, FisiError> {
    let values = simulate_partial_sums(kind, drift, t, n, samples, seed)?;
    let phi = kind.char_fn();
    let m = values.len() as f64;
    grid.iter()
        .map(|&xi| {
            let mut sum_re = 0.0;
            let mut sum_im = 0.0;
            let mut sum_re2 = 0.0;
            let mut sum_im2 = 0.0;
            for v in &values {
                let (s, c) = (xi * v).sin_cos();
                sum_re += c;
                sum_im += s;
                sum_re2 += c * c;
                sum_im2 += s * s;
            }
            let mean_re = sum_re / m;
            let mean_im = sum_im / m;
            let var_re = (sum_re2 / m - mean_re * mean_re).max(0.0);
            let var_im = (sum_im2 / m - mean_im * mean_im).max(0.0);
            let se_re = (var_re / m).sqrt();
            let se_im = (var_im / m).sqrt();
            let empirical = Complex64::new(mean_re, mean_im);
            let expected = partial_sum_cf(phi.as_ref(), drift, t, n, xi)?;
            // degenerate grids can have zero variance; give the band a floor
            let floor = 1.0 / m;
            let within_band = (empirical.re - expected.re).abs() <= sigmas * se_re.max(floor)
                && (empirical.im - expected.im).abs() <= sigmas * se_im.max(floor);
            Ok(EmpiricalCfRow { xi, empirical, expected, se_re, se_im, within_band })
        })
        .collect()
}
