//! Dense two-phase revised simplex for small equality-form programs
//!
//! ```text
//! min/max  cᵀx   subject to   A x = b,  x ≥ 0
//! ```
//!
//! with a handful of rows and up to ~10⁴ columns. The basis inverse is kept
//! explicitly (the row count is tiny) and rebuilt from scratch every
//! [`REFACTOR_EVERY`] pivots. Pricing is Dantzig's rule; after a run of
//! degenerate pivots the solver switches to Bland's rule until it makes
//! progress again, which rules out cycling.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Residual tolerance on `A x = b`.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Phase-one infeasibility above this means the program has no solution.
pub const INFEASIBILITY_TOL: f64 = 1e-9;

const REDUCED_COST_TOL: f64 = 1e-11;
const PIVOT_TOL: f64 = 1e-9;
const DEGENERATE_STEP: f64 = 1e-13;
const BLAND_AFTER: usize = 30;
const REFACTOR_EVERY: usize = 64;
const MAX_ITERATIONS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal objective; for infeasible programs the phase-one
    /// infeasibility `Σ artificials`.
    pub objective: f64,
    /// Primal point (empty unless optimal).
    pub primal: Vec<f64>,
    /// Row duals `y` at optimality, satisfying `Aᵀy ≤ c` (minimize) or
    /// `Aᵀy ≥ c` (maximize). For infeasible programs a Farkas ray with
    /// `Aᵀy ≤ 0` and `bᵀy > 0`.
    pub dual: Vec<f64>,
    pub iterations: usize,
}

/// `A` is stored column by column so columns can be appended cheaply.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    sense: Sense,
    rhs: Vec<f64>,
    objective: Vec<f64>,
    columns: Vec<f64>,
}

impl LpProblem {
    pub fn new(sense: Sense, rhs: Vec<f64>) -> Self {
        Self {
            sense,
            rhs,
            objective: Vec::new(),
            columns: Vec::new(),
        }
    }

    /// Appends a nonnegative variable; returns its index.
    pub fn add_column(&mut self, cost: f64, coefficients: &[f64]) -> usize {
        assert_eq!(coefficients.len(), self.rhs.len(), "column height must match row count");
        self.objective.push(cost);
        self.columns.extend_from_slice(coefficients);
        self.objective.len() - 1
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn num_cols(&self) -> usize {
        self.objective.len()
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn column(&self, j: usize) -> &[f64] {
        let m = self.num_rows();
        &self.columns[j * m..(j + 1) * m]
    }

    /// `max_i |(A x − b)_i|`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        let mut ax = vec![0.0; self.num_rows()];
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0.0 {
                for (acc, a) in ax.iter_mut().zip(self.column(j)) {
                    *acc += a * xj;
                }
            }
        }
        ax.iter()
            .zip(&self.rhs)
            .map(|(l, r)| (l - r).abs())
            .fold(0.0, f64::max)
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        x.iter().zip(&self.objective).map(|(a, b)| a * b).sum()
    }

    /// `bᵀ y`.
    pub fn dual_objective(&self, y: &[f64]) -> f64 {
        y.iter().zip(&self.rhs).map(|(a, b)| a * b).sum()
    }

    /// Human-readable summary attached to solver failures.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "LpProblem {{ sense: {:?}, rows: {}, cols: {} }}",
            self.sense,
            self.num_rows(),
            self.num_cols()
        );
        let _ = writeln!(s, "rhs: {:?}", self.rhs);
        for j in 0..self.num_cols().min(16) {
            let _ = writeln!(s, "col {j}: cost {:e}, {:?}", self.objective[j], self.column(j));
        }
        if self.num_cols() > 16 {
            let _ = writeln!(s, "... {} more columns", self.num_cols() - 16);
        }
        s
    }

    fn failure(&self, message: impl Into<String>) -> Error {
        Error::LpFailure {
            message: message.into(),
            dump: self.dump(),
        }
    }

    pub fn solve(&self) -> Result<LpSolution> {
        let m = self.num_rows();
        let n = self.num_cols();
        if self.rhs.iter().chain(&self.objective).chain(&self.columns).any(|v| !v.is_finite()) {
            return Err(self.failure("non-finite problem data"));
        }
        let signs: Vec<f64> = self.rhs.iter().map(|&b| if b < 0.0 { -1.0 } else { 1.0 }).collect();
        let mut state = Simplex::new(self, &signs);

        let phase_one: Vec<f64> = (0..n + m).map(|j| if j < n { 0.0 } else { 1.0 }).collect();
        match state.run(&phase_one, |_| true)? {
            Phase::Optimal => {}
            Phase::Unbounded => return Err(self.failure("phase one reported unbounded")),
            Phase::IterationLimit => return Err(self.failure("iteration limit in phase one")),
        }
        state.refactor()?;
        let infeasibility: f64 = (0..m)
            .filter(|&i| state.basis[i] >= n)
            .map(|i| state.xb[i])
            .sum();
        let scale = self.rhs.iter().fold(1.0_f64, |a, b| a.max(b.abs()));
        if infeasibility > INFEASIBILITY_TOL * scale {
            let y = state.duals(&phase_one);
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                objective: infeasibility,
                primal: Vec::new(),
                dual: y.iter().zip(&signs).map(|(y, s)| y * s).collect(),
                iterations: state.iterations,
            });
        }
        state.drive_out_artificials();

        let flip = match self.sense {
            Sense::Minimize => 1.0,
            Sense::Maximize => -1.0,
        };
        let phase_two: Vec<f64> = (0..n + m)
            .map(|j| if j < n { flip * self.objective[j] } else { 0.0 })
            .collect();
        match state.run(&phase_two, |j| j < n)? {
            Phase::Optimal => {}
            Phase::Unbounded => {
                return Ok(LpSolution {
                    status: LpStatus::Unbounded,
                    objective: flip * f64::NEG_INFINITY,
                    primal: Vec::new(),
                    dual: Vec::new(),
                    iterations: state.iterations,
                })
            }
            Phase::IterationLimit => return Err(self.failure("iteration limit in phase two")),
        }
        state.refactor()?;

        let mut primal = vec![0.0; n];
        for (i, &j) in state.basis.iter().enumerate() {
            if j < n {
                primal[j] = state.xb[i].max(0.0);
            }
        }
        let residual = self.residual(&primal);
        if residual > RESIDUAL_TOL {
            return Err(self.failure(format!("residual {residual:e} exceeds tolerance")));
        }
        let y = state.duals(&phase_two);
        let dual: Vec<f64> = y.iter().zip(&signs).map(|(y, s)| flip * y * s).collect();
        Ok(LpSolution {
            status: LpStatus::Optimal,
            objective: self.objective_value(&primal),
            primal,
            dual,
            iterations: state.iterations,
        })
    }
}

enum Phase {
    Optimal,
    Unbounded,
    IterationLimit,
}

/// Working state over the sign-normalized rows `diag(s) A`, with one
/// artificial unit column per row appended after the structural ones.
struct Simplex<'a> {
    problem: &'a LpProblem,
    signs: &'a [f64],
    m: usize,
    n: usize,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    /// Row-major `B⁻¹`.
    binv: Vec<f64>,
    xb: Vec<f64>,
    iterations: usize,
    since_refactor: usize,
}

// Row loops index `u`, `xb`, `binv` and `basis` together.
#[allow(clippy::needless_range_loop)]
impl<'a> Simplex<'a> {
    fn new(problem: &'a LpProblem, signs: &'a [f64]) -> Self {
        let m = problem.num_rows();
        let n = problem.num_cols();
        let mut binv = vec![0.0; m * m];
        for i in 0..m {
            binv[i * m + i] = 1.0;
        }
        let mut is_basic = vec![false; n + m];
        for flag in &mut is_basic[n..] {
            *flag = true;
        }
        Self {
            problem,
            signs,
            m,
            n,
            basis: (n..n + m).collect(),
            is_basic,
            binv,
            xb: problem.rhs.iter().map(|b| b.abs()).collect(),
            iterations: 0,
            since_refactor: 0,
        }
    }

    /// Entry `k` of the sign-normalized column `j`.
    fn entry(&self, j: usize, k: usize) -> f64 {
        if j < self.n {
            self.signs[k] * self.problem.columns[j * self.m + k]
        } else if j - self.n == k {
            1.0
        } else {
            0.0
        }
    }

    fn duals(&self, cost: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut y = vec![0.0; m];
        for (i, &j) in self.basis.iter().enumerate() {
            let c = cost[j];
            if c != 0.0 {
                for (yk, b) in y.iter_mut().zip(&self.binv[i * m..(i + 1) * m]) {
                    *yk += c * b;
                }
            }
        }
        y
    }

    fn reduced_cost(&self, j: usize, cost: &[f64], y: &[f64]) -> f64 {
        if j < self.n {
            let col = &self.problem.columns[j * self.m..(j + 1) * self.m];
            let dot: f64 = col.iter().zip(y).zip(self.signs).map(|((a, y), s)| a * y * s).sum();
            cost[j] - dot
        } else {
            cost[j] - y[j - self.n]
        }
    }

    /// `B⁻¹ a_j`.
    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let col: Vec<f64> = (0..m).map(|k| self.entry(j, k)).collect();
        (0..m)
            .map(|i| self.binv[i * m..(i + 1) * m].iter().zip(&col).map(|(b, a)| b * a).sum())
            .collect()
    }

    fn pivot(&mut self, row: usize, entering: usize, u: &[f64]) {
        let m = self.m;
        let leaving = self.basis[row];
        let piv = u[row];
        for k in 0..m {
            self.binv[row * m + k] /= piv;
        }
        self.xb[row] /= piv;
        for i in 0..m {
            if i != row && u[i] != 0.0 {
                let f = u[i];
                for k in 0..m {
                    self.binv[i * m + k] -= f * self.binv[row * m + k];
                }
                self.xb[i] -= f * self.xb[row];
                if self.xb[i] < 0.0 && self.xb[i] > -PIVOT_TOL {
                    self.xb[i] = 0.0;
                }
            }
        }
        self.basis[row] = entering;
        self.is_basic[leaving] = false;
        self.is_basic[entering] = true;
        self.iterations += 1;
        self.since_refactor += 1;
    }

    /// Rebuilds `B⁻¹` by Gauss–Jordan elimination and recomputes `x_B`.
    fn refactor(&mut self) -> Result<()> {
        let m = self.m;
        let mut b = vec![0.0; m * m];
        for (c, &j) in self.basis.iter().enumerate() {
            for k in 0..m {
                b[k * m + c] = self.entry(j, k);
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for col in 0..m {
            let p = (col..m)
                .max_by(|&a, &c| b[a * m + col].abs().total_cmp(&b[c * m + col].abs()))
                .expect("nonempty range");
            if b[p * m + col].abs() < 1e-14 {
                return Err(self.problem.failure("singular basis during refactorization"));
            }
            if p != col {
                for k in 0..m {
                    b.swap(p * m + k, col * m + k);
                    inv.swap(p * m + k, col * m + k);
                }
            }
            let d = b[col * m + col];
            for k in 0..m {
                b[col * m + k] /= d;
                inv[col * m + k] /= d;
            }
            for r in 0..m {
                if r != col {
                    let f = b[r * m + col];
                    if f != 0.0 {
                        for k in 0..m {
                            b[r * m + k] -= f * b[col * m + k];
                            inv[r * m + k] -= f * inv[col * m + k];
                        }
                    }
                }
            }
        }
        self.binv = inv;
        let rhs: Vec<f64> = self.problem.rhs.iter().map(|b| b.abs()).collect();
        self.xb = (0..m)
            .map(|i| {
                let v: f64 = self.binv[i * m..(i + 1) * m].iter().zip(&rhs).map(|(a, b)| a * b).sum();
                if v < 0.0 && v > -PIVOT_TOL {
                    0.0
                } else {
                    v
                }
            })
            .collect();
        self.since_refactor = 0;
        Ok(())
    }

    fn run(&mut self, cost: &[f64], allowed: impl Fn(usize) -> bool) -> Result<Phase> {
        let total = self.n + self.m;
        let mut degenerate_run = 0usize;
        loop {
            if self.iterations >= MAX_ITERATIONS {
                return Ok(Phase::IterationLimit);
            }
            if self.since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
            }
            let bland = degenerate_run >= BLAND_AFTER;
            let y = self.duals(cost);
            let mut entering = None;
            let mut best = -REDUCED_COST_TOL;
            for j in 0..total {
                if self.is_basic[j] || !allowed(j) {
                    continue;
                }
                let d = self.reduced_cost(j, cost, &y);
                if d < best {
                    entering = Some(j);
                    if bland {
                        break;
                    }
                    best = d;
                }
            }
            let Some(entering) = entering else {
                return Ok(Phase::Optimal);
            };

            let u = self.ftran(entering);
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                if u[i] > PIVOT_TOL {
                    let t = self.xb[i].max(0.0) / u[i];
                    leave = match leave {
                        None => Some((i, t)),
                        Some((r, best_t)) => {
                            if t < best_t - 1e-12 || (t <= best_t + 1e-12 && self.basis[i] < self.basis[r]) {
                                Some((i, t))
                            } else {
                                Some((r, best_t))
                            }
                        }
                    };
                }
            }
            let Some((row, step)) = leave else {
                return Ok(Phase::Unbounded);
            };
            if step <= DEGENERATE_STEP {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(row, entering, &u);
        }
    }

    /// Pivots zero-level artificials out of the basis where a structural
    /// column can replace them. Rows where none can are redundant.
    fn drive_out_artificials(&mut self) {
        for row in 0..self.m {
            if self.basis[row] < self.n {
                continue;
            }
            self.xb[row] = 0.0;
            let mut best: Option<(usize, f64)> = None;
            for j in 0..self.n {
                if self.is_basic[j] {
                    continue;
                }
                let v: f64 = (0..self.m).map(|k| self.binv[row * self.m + k] * self.entry(j, k)).sum();
                if v.abs() > 1e-7 && best.is_none_or(|(_, b)| v.abs() > b) {
                    best = Some((j, v.abs()));
                }
            }
            if let Some((j, _)) = best {
                let u = self.ftran(j);
                self.pivot(row, j, &u);
            }
        }
    }
}
