//! Exact oracles the acceptance suite checks the library against.
//! Deliberately different algorithms: hull membership by subset
//! enumeration, price intervals by support enumeration. No pivoting.

use finadd_core::{Assessment, Rat};
use num_traits::{One, Signed, Zero};

/// Per-atom columns of the assessment: atom `i` maps to the vector of
/// event indicators evaluated at `i`.
pub fn atom_columns(assessment: &Assessment) -> Vec<Vec<Rat>> {
    (0..assessment.space().atom_count())
        .map(|atom| {
            assessment.entries().iter().map(|(event, _)| event.indicator(atom)).collect()
        })
        .collect()
}

pub fn price_vector(assessment: &Assessment) -> Vec<Rat> {
    assessment.entries().iter().map(|(_, p)| p.clone()).collect()
}

/// Unique solution of `sum c_i v_i = target`, `sum c_i = 1`, if there
/// is one. Gauss-Jordan over the rationals; coefficients may be
/// negative, the caller decides what to do with them.
pub fn affine_coefficients(points: &[&[Rat]], target: &[Rat]) -> Option<Vec<Rat>> {
    let dim = target.len();
    let cols = points.len();
    let rows = dim + 1;
    let mut m: Vec<Vec<Rat>> = Vec::with_capacity(rows);
    for d in 0..dim {
        let mut row: Vec<Rat> = points.iter().map(|p| p[d].clone()).collect();
        row.push(target[d].clone());
        m.push(row);
    }
    let mut affine_row: Vec<Rat> = vec![Rat::one(); cols];
    affine_row.push(Rat::one());
    m.push(affine_row);

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if pivot_cols.len() < cols {
        return None;
    }
    for row in m.iter().skip(r) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    let mut coeffs = vec![Rat::zero(); cols];
    for (k, &c) in pivot_cols.iter().enumerate() {
        coeffs[c] = m[k][cols].clone();
    }
    Some(coeffs)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Convex-hull membership by exhaustive search over small point
/// subsets: any hull member is carried by an affinely independent
/// subset of at most `dim + 1` points. Returns weights over the full
/// list on success.
pub fn hull_membership(points: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let dim = target.len();
    let mut reps: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if !reps.iter().any(|&j| points[j] == *p) {
            reps.push(i);
        }
    }
    for size in 1..=(dim + 1).min(reps.len()) {
        for idx in combinations(reps.len(), size) {
            let chosen: Vec<&[Rat]> =
                idx.iter().map(|&k| points[reps[k]].as_slice()).collect();
            let Some(coeffs) = affine_coefficients(&chosen, target) else { continue };
            if coeffs.iter().all(|c| !c.is_negative()) {
                let mut full = vec![Rat::zero(); points.len()];
                for (k, &ri) in idx.iter().enumerate() {
                    full[reps[ri]] = coeffs[k].clone();
                }
                return Some(full);
            }
        }
    }
    None
}

/// Every basic feasible solution of `c ≥ 0, sum c = 1,
/// sum c_i v_i = target`, found by support enumeration. Extreme points
/// have supports of at most `dim + 1` coordinates with an invertible
/// restricted system, so the list contains all of them.
pub fn feasible_vertices(points: &[Vec<Rat>], target: &[Rat]) -> Vec<Vec<Rat>> {
    let dim = target.len();
    let n = points.len();
    let mut out = Vec::new();
    for size in 1..=(dim + 1).min(n) {
        for idx in combinations(n, size) {
            let chosen: Vec<&[Rat]> = idx.iter().map(|&i| points[i].as_slice()).collect();
            let Some(coeffs) = affine_coefficients(&chosen, target) else { continue };
            if coeffs.iter().all(|c| !c.is_negative()) {
                let mut full = vec![Rat::zero(); n];
                for (k, &i) in idx.iter().enumerate() {
                    full[i] = coeffs[k].clone();
                }
                out.push(full);
            }
        }
    }
    out
}

/// Largest distance between the empirical distribution of the samples
/// and the uniform distribution on the unit interval.
pub fn ks_distance_to_uniform(samples: &[f64]) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut worst: f64 = 0.0;
    for (i, x) in sorted.iter().enumerate() {
        let u = x.clamp(0.0, 1.0);
        worst = worst.max((u - i as f64 / n).abs());
        worst = worst.max(((i + 1) as f64 / n - u).abs());
    }
    worst
}
