//! Dense two-phase simplex with Bland's pivoting rule.
//!
//! Problems are stated as `minimize c.x  s.t.  A x = b`, with each variable
//! either nonnegative or free. Free variables are split into a difference of
//! two nonnegative columns. Phase one minimizes the sum of artificial
//! variables; when it cannot reach zero, the phase-one duals form a Farkas
//! certificate `y` with `y.A <= 0` on nonnegative columns, `y.A = 0` on free
//! columns and `y.b > 0`.

use super::ToleranceConfig;
use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-9;
const COST_EPS: f64 = 1e-11;
/// Smallest pivot accepted when rebuilding the tableau from scratch.
const REINVERT_EPS: f64 = 1e-12;
/// Pivots between two reinversions.
const REINVERT_EVERY: usize = 50;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    /// `true` for variables constrained to be nonnegative.
    pub nonneg: Vec<bool>,
}

impl LinearProgram {
    /// A minimization problem with every variable nonnegative.
    pub fn new(objective: Vec<f64>, constraints: Vec<Vec<f64>>, rhs: Vec<f64>) -> Self {
        let nonneg = vec![true; objective.len()];
        LinearProgram {
            objective,
            constraints,
            rhs,
            nonneg,
        }
    }

    pub fn with_free(mut self, var: usize) -> Self {
        self.nonneg[var] = false;
        self
    }

    fn check(&self) -> Result<()> {
        let n = self.objective.len();
        if self.nonneg.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} sign flags for {n} variables",
                self.nonneg.len()
            )));
        }
        if self.constraints.len() != self.rhs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} constraint rows but {} right-hand sides",
                self.constraints.len(),
                self.rhs.len()
            )));
        }
        if let Some((i, row)) = self.constraints.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "constraint row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        let finite = self.objective.iter().all(|v| v.is_finite())
            && self.rhs.iter().all(|v| v.is_finite())
            && self.constraints.iter().flatten().all(|v| v.is_finite());
        if !finite {
            return Err(Error::Precondition("LP data contains non-finite entries".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: f64, solution: Vec<f64> },
    /// Farkas certificate over the constraint rows, scaled to max-abs one.
    Infeasible { certificate: Vec<f64> },
    Unbounded,
}

enum Step {
    Optimal,
    Unbounded,
}

struct Tableau {
    /// `m` rows of `ncols + 1` entries; the last entry is the right-hand side.
    rows: Vec<Vec<f64>>,
    /// Reduced costs; the last entry holds the negated objective value.
    costs: Vec<f64>,
    basis: Vec<usize>,
    ncols: usize,
    /// Starting tableau, kept for periodic reinversion.
    original: Vec<Vec<f64>>,
    /// Cost vector of the current phase.
    phase_costs: Vec<f64>,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.ncols]
    }

    fn set_costs(&mut self, c: &[f64]) {
        self.phase_costs = c.to_vec();
        let mut costs = c.to_vec();
        costs.push(0.0);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = c[b];
            if cb != 0.0 {
                for (cost, a) in costs.iter_mut().zip(&self.rows[i]) {
                    *cost -= cb * a;
                }
            }
        }
        self.costs = costs;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        self.rows[r].iter_mut().for_each(|v| *v /= p);
        self.rows[r][c] = 1.0;
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                row[c] = 0.0;
            }
        }
        let f = self.costs[c];
        if f != 0.0 {
            for (v, pv) in self.costs.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            self.costs[c] = 0.0;
        }
        self.basis[r] = c;
    }

    fn ratio_test(&self, enter: usize) -> Option<usize> {
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..self.rows.len() {
            let a = self.rows[i][enter];
            if a <= PIVOT_EPS {
                continue;
            }
            let ratio = self.rhs(i).max(0.0) / a;
            leave = match leave {
                None => Some((i, ratio)),
                Some((r, best)) => {
                    let tie = (ratio - best).abs() <= 1e-12 * (1.0 + best.abs());
                    if ratio < best && !tie || tie && self.basis[i] < self.basis[r] {
                        Some((i, ratio))
                    } else {
                        Some((r, best))
                    }
                }
            };
        }
        leave.map(|(r, _)| r)
    }

    /// Recomputes the tableau for the current basis from the original data
    /// by Gauss-Jordan elimination with partial pivoting, discarding the
    /// rounding error accumulated over many pivots. Leaves the tableau alone
    /// if the basis matrix is numerically singular.
    fn reinvert(&mut self) {
        let m = self.rows.len();
        let mut rows = self.original.clone();
        let mut basis = vec![usize::MAX; m];
        for &c in &self.basis {
            let pick = (0..m)
                .filter(|&r| basis[r] == usize::MAX)
                .map(|r| (r, rows[r][c].abs()))
                .max_by(|a, b| a.1.total_cmp(&b.1));
            let Some((r, a)) = pick else { return };
            if a < REINVERT_EPS {
                return;
            }
            let p = rows[r][c];
            rows[r].iter_mut().for_each(|v| *v /= p);
            rows[r][c] = 1.0;
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                let f = row[c];
                if i != r && f != 0.0 {
                    for (v, pv) in row.iter_mut().zip(&pivot_row) {
                        *v -= f * pv;
                    }
                    row[c] = 0.0;
                }
            }
            basis[r] = c;
        }
        self.rows = rows;
        self.basis = basis;
        let costs = std::mem::take(&mut self.phase_costs);
        self.set_costs(&costs);
    }

    /// Bland's rule: lowest-index improving column enters, ties in the ratio
    /// test leave by lowest basic index.
    ///
    /// An improving column whose positive entries are all below the pivot
    /// threshold cannot be pivoted on safely. It is a genuine ray only when
    /// it has no positive entry at all; otherwise it is skipped in favour of
    /// the next candidate.
    fn run(&mut self, enterable: usize, max_iter: usize) -> Result<Step> {
        let mut fresh = false;
        for iter in 0..max_iter {
            if iter > 0 && iter % REINVERT_EVERY == 0 {
                self.reinvert();
            }
            let mut pivot = None;
            let mut ray = false;
            for enter in (0..enterable).filter(|&j| self.costs[j] < -COST_EPS) {
                match self.ratio_test(enter) {
                    Some(r) => {
                        pivot = Some((r, enter));
                        break;
                    }
                    None if self.rows.iter().all(|row| row[enter] <= 0.0) => {
                        ray = true;
                        break;
                    }
                    None => {}
                }
            }
            match (pivot, ray) {
                (Some((r, c)), _) => {
                    self.pivot(r, c);
                    fresh = false;
                }
                // Reduced costs drift under repeated updates; only trust a
                // ray once they have been recomputed from the rows.
                (None, true) if !fresh => {
                    let costs = std::mem::take(&mut self.phase_costs);
                    self.set_costs(&costs);
                    fresh = true;
                }
                (None, true) => return Ok(Step::Unbounded),
                (None, false) => return Ok(Step::Optimal),
            }
        }
        Err(Error::Numerical(format!(
            "simplex did not terminate within {max_iter} pivots"
        )))
    }
}

/// Solves `lp` as a minimization problem.
pub fn solve_lp(lp: &LinearProgram, tol: &ToleranceConfig) -> Result<LpOutcome> {
    lp.check()?;
    tol.validate()?;
    let m = lp.rhs.len();
    let n = lp.objective.len();

    // Expanded structural columns: (original var, sign).
    let columns: Vec<(usize, f64)> = (0..n)
        .flat_map(|j| {
            if lp.nonneg[j] {
                vec![(j, 1.0)]
            } else {
                vec![(j, 1.0), (j, -1.0)]
            }
        })
        .collect();
    let ns = columns.len();
    let ncols = ns + m;
    let signs: Vec<f64> = lp.rhs.iter().map(|&b| if b < 0.0 { -1.0 } else { 1.0 }).collect();

    let rows = (0..m)
        .map(|i| {
            let mut row = vec![0.0; ncols + 1];
            for (k, &(j, s)) in columns.iter().enumerate() {
                row[k] = signs[i] * s * lp.constraints[i][j];
            }
            row[ns + i] = 1.0;
            row[ncols] = signs[i] * lp.rhs[i];
            row
        })
        .collect();
    let mut tab = Tableau {
        rows,
        costs: Vec::new(),
        basis: (ns..ncols).collect(),
        ncols,
        original: Vec::new(),
        phase_costs: Vec::new(),
    };
    tab.original = tab.rows.clone();
    let max_iter = 10_000 + 50 * (m + ncols);

    let mut phase1 = vec![0.0; ncols];
    phase1[ns..].iter_mut().for_each(|c| *c = 1.0);
    tab.set_costs(&phase1);
    if let Step::Unbounded = tab.run(ncols, max_iter)? {
        return Err(Error::Numerical("phase one reported unbounded".into()));
    }
    tab.reinvert();

    let infeasibility: f64 = (0..m)
        .filter(|&i| tab.basis[i] >= ns)
        .map(|i| tab.rhs(i).abs())
        .sum();
    if infeasibility > tol.feasibility_tol {
        let certificate = farkas_certificate(&tab, ns, &signs);
        verify_certificate(lp, &certificate, tol)?;
        return Ok(LpOutcome::Infeasible { certificate });
    }

    // Move remaining artificials out of the basis; rows with no usable
    // structural entry are redundant and keep their artificial at zero.
    for i in 0..m {
        if tab.basis[i] < ns {
            continue;
        }
        let best = (0..ns)
            .map(|j| (j, tab.rows[i][j].abs()))
            .filter(|&(_, a)| a > 1e-9)
            .max_by(|a, b| a.1.total_cmp(&b.1));
        if let Some((j, _)) = best {
            tab.pivot(i, j);
        }
    }

    let mut phase2 = vec![0.0; ncols];
    for (k, &(j, s)) in columns.iter().enumerate() {
        phase2[k] = s * lp.objective[j];
    }
    tab.set_costs(&phase2);
    if let Step::Unbounded = tab.run(ns, max_iter)? {
        return Ok(LpOutcome::Unbounded);
    }
    tab.reinvert();

    let mut expanded = vec![0.0; ns];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < ns {
            expanded[b] = tab.rhs(i).max(0.0);
        }
    }
    let mut solution = vec![0.0; n];
    for (k, &(j, s)) in columns.iter().enumerate() {
        solution[j] += s * expanded[k];
    }

    let scale = 1.0 + lp.rhs.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    for (i, row) in lp.constraints.iter().enumerate() {
        let lhs: f64 = row.iter().zip(&solution).map(|(a, x)| a * x).sum();
        let resid = (lhs - lp.rhs[i]).abs();
        if resid > tol.feasibility_tol * scale {
            return Err(Error::Numerical(format!(
                "constraint {i} violated by {resid:e} after phase two"
            )));
        }
    }
    let value = solution.iter().zip(&lp.objective).map(|(x, c)| x * c).sum();
    Ok(LpOutcome::Optimal { value, solution })
}

/// `y = c_B B^{-1}` for the phase-one costs; `B^{-1}` sits in the artificial
/// block because the starting basis was the identity there.
fn farkas_certificate(tab: &Tableau, ns: usize, signs: &[f64]) -> Vec<f64> {
    let m = signs.len();
    let mut y = vec![0.0; m];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b >= ns {
            for (k, yk) in y.iter_mut().enumerate() {
                *yk += tab.rows[i][ns + k];
            }
        }
    }
    for (yk, s) in y.iter_mut().zip(signs) {
        *yk *= s;
    }
    let scale = y.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if scale > 0.0 {
        y.iter_mut().for_each(|v| *v /= scale);
    }
    y
}

fn verify_certificate(lp: &LinearProgram, y: &[f64], tol: &ToleranceConfig) -> Result<()> {
    let amax = lp
        .constraints
        .iter()
        .flatten()
        .fold(0.0f64, |a, v| a.max(v.abs()));
    let slack = tol.certificate_tol * (1.0 + amax);
    for j in 0..lp.objective.len() {
        let ya: f64 = y.iter().zip(&lp.constraints).map(|(yi, row)| yi * row[j]).sum();
        let bad = if lp.nonneg[j] { ya > slack } else { ya.abs() > slack };
        if bad {
            return Err(Error::Numerical(format!(
                "Farkas certificate fails on column {j} (y.A = {ya:e})"
            )));
        }
    }
    let yb: f64 = y.iter().zip(&lp.rhs).map(|(a, b)| a * b).sum();
    if yb <= 0.0 {
        return Err(Error::Numerical(format!("Farkas certificate has y.b = {yb:e}")));
    }
    Ok(())
}
