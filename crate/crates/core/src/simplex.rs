//! Exact primal simplex over arbitrary-precision rationals.
//!
//! Solves `min cᵀx` subject to `Ax = b`, `x ≥ 0` with a dense two-phase
//! tableau. Every pivot is exact, entering and leaving choices follow
//! Bland's rule (lowest eligible index, lowest basic index on ties), so
//! the method terminates without any cycling guard. Infeasibility is
//! reported with a separating multiplier vector `y` satisfying
//! `yᵀA ≤ 0` componentwise and `yᵀb > 0`, which callers can re-verify
//! independently of the pivoting that produced it.

use num_traits::Zero;

use crate::rat::{rat_int, rat_zero, Rat};

/// `min objective·x` over `rows·x = rhs`, `x ≥ 0`.
#[derive(Debug, Clone)]
pub struct StandardForm {
    pub rows: Vec<Vec<Rat>>,
    pub rhs: Vec<Rat>,
    pub objective: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { solution: Vec<Rat>, objective: Rat },
    /// `farkas` certifies that no feasible point exists.
    Infeasible { farkas: Vec<Rat> },
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("constraint matrix, right-hand side, and objective have inconsistent shapes")]
    ShapeMismatch,
}

pub fn solve(problem: &StandardForm) -> Result<LpOutcome, LpError> {
    let n_cols = problem.objective.len();
    if problem.rows.len() != problem.rhs.len()
        || problem.rows.iter().any(|r| r.len() != n_cols)
    {
        return Err(LpError::ShapeMismatch);
    }

    let mut t = Tableau::new(problem);
    match t.phase_one() {
        PhaseOne::Feasible => {}
        PhaseOne::Infeasible(farkas) => return Ok(LpOutcome::Infeasible { farkas }),
    }
    Ok(match t.phase_two() {
        PhaseTwo::Optimal => LpOutcome::Optimal {
            objective: dot(&problem.objective, &t.solution()),
            solution: t.solution(),
        },
        PhaseTwo::Unbounded => LpOutcome::Unbounded,
    })
}

/// Feasibility of `rows·x = rhs`, `x ≥ 0` alone, without an objective.
pub fn feasible_point(rows: &[Vec<Rat>], rhs: &[Rat]) -> Result<LpOutcome, LpError> {
    let n_cols = rows.first().map_or(0, |r| r.len());
    solve(&StandardForm {
        rows: rows.to_vec(),
        rhs: rhs.to_vec(),
        objective: vec![rat_zero(); n_cols],
    })
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

enum PhaseOne {
    Feasible,
    Infeasible(Vec<Rat>),
}

enum PhaseTwo {
    Optimal,
    Unbounded,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

struct Tableau {
    /// `rows × (n_structural + n_rows)` coefficients, then the rhs column.
    body: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    n_structural: usize,
    /// Sign applied to each input row to make the rhs nonnegative.
    row_signs: Vec<i8>,
    objective: Vec<Rat>,
}

impl Tableau {
    fn new(problem: &StandardForm) -> Self {
        let n_rows = problem.rows.len();
        let n_structural = problem.objective.len();
        let mut body = Vec::with_capacity(n_rows);
        let mut rhs = Vec::with_capacity(n_rows);
        let mut row_signs = Vec::with_capacity(n_rows);
        for (i, row) in problem.rows.iter().enumerate() {
            let flip = problem.rhs[i] < rat_zero();
            row_signs.push(if flip { -1 } else { 1 });
            let mut full: Vec<Rat> = row
                .iter()
                .map(|v| if flip { -v.clone() } else { v.clone() })
                .collect();
            full.extend((0..n_rows).map(|j| if j == i { rat_int(1) } else { rat_zero() }));
            body.push(full);
            rhs.push(if flip { -problem.rhs[i].clone() } else { problem.rhs[i].clone() });
        }
        let basis = (n_structural..n_structural + n_rows).collect();
        Tableau {
            body,
            rhs,
            basis,
            n_structural,
            row_signs,
            objective: problem.objective.clone(),
        }
    }

    fn n_rows(&self) -> usize {
        self.body.len()
    }

    fn cost(&self, phase1: bool, col: usize) -> Rat {
        if phase1 {
            if col >= self.n_structural {
                rat_int(1)
            } else {
                rat_zero()
            }
        } else if col < self.n_structural {
            self.objective[col].clone()
        } else {
            rat_zero()
        }
    }

    fn reduced_cost(&self, phase1: bool, col: usize) -> Rat {
        let mut rc = self.cost(phase1, col);
        for (i, &basic) in self.basis.iter().enumerate() {
            let cb = self.cost(phase1, basic);
            if !cb.is_zero() && !self.body[i][col].is_zero() {
                rc -= cb * &self.body[i][col];
            }
        }
        rc
    }

    /// One Bland step: entering column is the lowest eligible index with a
    /// negative reduced cost, the leaving row breaks ratio ties by the
    /// lowest basic index.
    fn step(&mut self, phase1: bool, allow_artificial_entering: bool) -> Step {
        let col_limit = if allow_artificial_entering {
            self.n_structural + self.n_rows()
        } else {
            self.n_structural
        };
        let entering = (0..col_limit)
            .filter(|c| !self.basis.contains(c))
            .find(|&c| self.reduced_cost(phase1, c) < rat_zero());
        let Some(col) = entering else {
            return Step::Optimal;
        };

        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..self.n_rows() {
            if self.body[i][col] > rat_zero() {
                let ratio = &self.rhs[i] / &self.body[i][col];
                let better = match &leave {
                    None => true,
                    Some((best_i, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*best_i])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            return Step::Unbounded;
        };
        self.pivot(row, col);
        Step::Pivoted
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.body[row][col].clone();
        for v in self.body[row].iter_mut() {
            *v /= &pivot;
        }
        self.rhs[row] /= &pivot;
        for i in 0..self.n_rows() {
            if i == row || self.body[i][col].is_zero() {
                continue;
            }
            let factor = self.body[i][col].clone();
            for j in 0..self.body[i].len() {
                let delta = &factor * &self.body[row][j];
                self.body[i][j] -= delta;
            }
            let delta = &factor * &self.rhs[row];
            self.rhs[i] -= delta;
        }
        self.basis[row] = col;
    }

    fn phase_one(&mut self) -> PhaseOne {
        loop {
            match self.step(true, true) {
                Step::Pivoted => continue,
                Step::Unbounded => unreachable!("phase-one objective is bounded below by zero"),
                Step::Optimal => break,
            }
        }
        let residual: Rat = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= self.n_structural)
            .map(|(i, _)| self.rhs[i].clone())
            .sum();
        if !residual.is_zero() {
            return PhaseOne::Infeasible(self.farkas());
        }
        self.evict_artificials();
        PhaseOne::Feasible
    }

    /// Multipliers in the caller's row orientation, from the phase-one
    /// prices `y = c_Bᵀ B⁻¹` read off the artificial block.
    fn farkas(&self) -> Vec<Rat> {
        let mut y = Vec::with_capacity(self.n_rows());
        for i in 0..self.n_rows() {
            let col = self.n_structural + i;
            let mut yi = rat_zero();
            for (k, &basic) in self.basis.iter().enumerate() {
                if basic >= self.n_structural {
                    yi += &self.body[k][col];
                }
            }
            if self.row_signs[i] < 0 {
                yi = -yi;
            }
            y.push(yi);
        }
        y
    }

    /// After a zero-residual phase one, pivot leftover artificials out of
    /// the basis; rows that admit no structural pivot are redundant and
    /// dropped.
    fn evict_artificials(&mut self) {
        let mut i = 0;
        while i < self.n_rows() {
            if self.basis[i] < self.n_structural {
                i += 1;
                continue;
            }
            let pivot_col = (0..self.n_structural).find(|&j| !self.body[i][j].is_zero());
            match pivot_col {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.body.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }

    fn phase_two(&mut self) -> PhaseTwo {
        loop {
            match self.step(false, false) {
                Step::Pivoted => continue,
                Step::Unbounded => return PhaseTwo::Unbounded,
                Step::Optimal => return PhaseTwo::Optimal,
            }
        }
    }

    fn solution(&self) -> Vec<Rat> {
        let mut x = vec![rat_zero(); self.n_structural];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_structural {
                x[b] = self.rhs[i].clone();
            }
        }
        x
    }
}
