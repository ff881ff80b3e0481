//! Dense semidefinite programming by an alternating-direction augmented
//! Lagrangian method on the dual (Wen, Goldfarb and Yin), over a block
//! diagonal variable. Blocks of order one act as non-negative scalars.
//!
//! Problems are stated as `maximize ⟨C,X⟩` subject to `⟨A_i,X⟩ = b_i` and
//! `X ⪰ 0`. Internally the solver works with the symmetric vectorization
//! `svec` (off-diagonal entries scaled by √2) of the negated objective.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Coefficient `value` on the entry `X_block[row][col]`. An off-diagonal
/// entry is counted once: the functional gains `value · X_rc`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Entry {
    pub block: usize,
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

impl Entry {
    pub fn new(block: usize, row: usize, col: usize, value: f64) -> Self {
        Entry { block, row, col, value }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SdpProblem {
    pub blocks: Vec<usize>,
    pub constraints: Vec<(Vec<Entry>, f64)>,
    /// Maximized; empty for a pure feasibility problem.
    pub objective: Vec<Entry>,
    /// Known upper bound on the total trace of feasible points, which turns
    /// the dual iterate into a rigorous bound on the optimum.
    pub trace_bound: Option<f64>,
}

impl SdpProblem {
    pub fn new(blocks: Vec<usize>) -> Self {
        SdpProblem { blocks, ..Default::default() }
    }

    pub fn constrain(&mut self, entries: Vec<Entry>, rhs: f64) {
        self.constraints.push((entries, rhs));
    }

    pub fn order(&self) -> usize {
        self.blocks.iter().sum()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SdpOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub dim_cap: usize,
}

impl Default for SdpOptions {
    fn default() -> Self {
        SdpOptions { tol: 1e-7, max_iter: 20_000, dim_cap: 400 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SdpStatus {
    Optimal,
    Feasible,
    Infeasible,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Residuals {
    pub primal_eq: f64,
    pub psd_min_eigenvalue: f64,
    pub duality_gap: f64,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub status: SdpStatus,
    pub value: f64,
    /// Upper bound on the optimum derived from the dual iterate, when a
    /// trace bound is known.
    pub dual_bound: Option<f64>,
    pub witness: Vec<DMatrix<f64>>,
    pub y: Vec<f64>,
    pub residuals: Residuals,
    pub dual_residual: f64,
    pub iterations: usize,
}

/// Seam for replacing the numeric kernel.
pub trait SdpBackend {
    fn solve(&self, problem: &SdpProblem, options: &SdpOptions) -> Result<SolveReport>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Admm;

impl SdpBackend for Admm {
    fn solve(&self, problem: &SdpProblem, options: &SdpOptions) -> Result<SolveReport> {
        admm_solve(problem, options)
    }
}

pub fn sdp_solve(problem: &SdpProblem, options: &SdpOptions) -> Result<SolveReport> {
    Admm.solve(problem, options)
}

struct Layout {
    blocks: Vec<usize>,
    offsets: Vec<usize>,
    dim: usize,
}

impl Layout {
    fn new(blocks: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut dim = 0;
        for &b in blocks {
            offsets.push(dim);
            dim += b * (b + 1) / 2;
        }
        Layout { blocks: blocks.to_vec(), offsets, dim }
    }

    fn coord(&self, block: usize, r: usize, c: usize) -> usize {
        let (i, j) = if r <= c { (r, c) } else { (c, r) };
        let n = self.blocks[block];
        self.offsets[block] + i * n - i * (i + 1) / 2 + j
    }

    fn sparse(&self, entries: &[Entry]) -> Vec<(usize, f64)> {
        let mut out: Vec<(usize, f64)> = entries
            .iter()
            .map(|e| {
                let k = self.coord(e.block, e.row, e.col);
                let v = if e.row == e.col { e.value } else { e.value / SQRT2 };
                (k, v)
            })
            .collect();
        out.sort_by_key(|t| t.0);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(out.len());
        for (k, v) in out {
            match merged.last_mut() {
                Some((lk, lv)) if *lk == k => *lv += v,
                _ => merged.push((k, v)),
            }
        }
        merged.retain(|t| t.1 != 0.0);
        merged
    }

    fn to_matrix(&self, x: &[f64], block: usize) -> DMatrix<f64> {
        let n = self.blocks[block];
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = x[self.coord(block, i, j)];
                if i == j {
                    m[(i, i)] = v;
                } else {
                    m[(i, j)] = v / SQRT2;
                    m[(j, i)] = v / SQRT2;
                }
            }
        }
        m
    }

    fn write_matrix(&self, m: &DMatrix<f64>, block: usize, x: &mut [f64]) {
        let n = self.blocks[block];
        for i in 0..n {
            for j in i..n {
                let k = self.coord(block, i, j);
                x[k] = if i == j { m[(i, i)] } else { m[(i, j)] * SQRT2 };
            }
        }
    }

    /// Splits `v` into its PSD part, returned in `plus`, and reports the
    /// smallest eigenvalue seen.
    fn project(&self, v: &[f64], plus: &mut [f64]) -> f64 {
        let mut min_eig = f64::INFINITY;
        for (b, &n) in self.blocks.iter().enumerate() {
            if n == 1 {
                let k = self.offsets[b];
                plus[k] = v[k].max(0.0);
                min_eig = min_eig.min(v[k]);
                continue;
            }
            let m = self.to_matrix(v, b);
            let eig = SymmetricEigen::new(m);
            let mut d = eig.eigenvalues.clone();
            for x in d.iter_mut() {
                min_eig = min_eig.min(*x);
                *x = x.max(0.0);
            }
            let p = &eig.eigenvectors * DMatrix::from_diagonal(&d) * eig.eigenvectors.transpose();
            self.write_matrix(&p, b, plus);
        }
        min_eig
    }

    fn min_eigenvalue(&self, v: &[f64]) -> f64 {
        let mut min_eig = f64::INFINITY;
        for (b, &n) in self.blocks.iter().enumerate() {
            if n == 1 {
                min_eig = min_eig.min(v[self.offsets[b]]);
            } else {
                let e = SymmetricEigen::new(self.to_matrix(v, b)).eigenvalues;
                min_eig = min_eig.min(e.min());
            }
        }
        min_eig
    }
}

/// Pseudo-inverse of `A Aᵀ`, factored per group of rows that share
/// coordinates (the Gram matrix is block diagonal along these groups).
struct GramSolver {
    groups: Vec<(Vec<usize>, DMatrix<f64>)>,
}

impl GramSolver {
    fn new(rows: &[Vec<(usize, f64)>], dim: usize) -> Self {
        let m = rows.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut owner = vec![usize::MAX; dim];
        for (i, r) in rows.iter().enumerate() {
            for &(k, _) in r {
                if owner[k] == usize::MAX {
                    owner[k] = i;
                } else {
                    let (a, b) = (find(&mut parent, owner[k]), find(&mut parent, i));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut members: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..m {
            let r = find(&mut parent, i);
            members.entry(r).or_default().push(i);
        }
        let mut dense = vec![0.0; dim];
        let groups = members
            .into_values()
            .map(|idx| {
                let g = idx.len();
                let mut gram = DMatrix::zeros(g, g);
                for (a, &i) in idx.iter().enumerate() {
                    for &(k, v) in &rows[i] {
                        dense[k] = v;
                    }
                    for (b, &j) in idx.iter().enumerate().skip(a) {
                        let s: f64 = rows[j].iter().map(|&(k, v)| v * dense[k]).sum();
                        gram[(a, b)] = s;
                        gram[(b, a)] = s;
                    }
                    for &(k, _) in &rows[i] {
                        dense[k] = 0.0;
                    }
                }
                (idx, pseudo_inverse(gram))
            })
            .collect();
        GramSolver { groups }
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; rhs.len()];
        for (idx, inv) in &self.groups {
            let r = DVector::from_iterator(idx.len(), idx.iter().map(|&i| rhs[i]));
            let s = inv * r;
            for (a, &i) in idx.iter().enumerate() {
                y[i] = s[a];
            }
        }
        y
    }
}

fn pseudo_inverse(m: DMatrix<f64>) -> DMatrix<f64> {
    if m.nrows() == 1 {
        let v = m[(0, 0)];
        return DMatrix::from_element(1, 1, if v.abs() > 1e-12 { 1.0 / v } else { 0.0 });
    }
    let eig = SymmetricEigen::new(m);
    let top = eig.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let d = eig.eigenvalues.map(|x| if x.abs() > 1e-10 * top.max(1.0) { 1.0 / x } else { 0.0 });
    &eig.eigenvectors * DMatrix::from_diagonal(&d) * eig.eigenvectors.transpose()
}

fn apply(rows: &[Vec<(usize, f64)>], x: &[f64]) -> Vec<f64> {
    rows.iter().map(|r| r.iter().map(|&(k, v)| v * x[k]).sum()).collect()
}

fn apply_t(rows: &[Vec<(usize, f64)>], y: &[f64], dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    for (r, &yi) in rows.iter().zip(y) {
        if yi != 0.0 {
            for &(k, v) in r {
                out[k] += v * yi;
            }
        }
    }
    out
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn admm_solve(problem: &SdpProblem, options: &SdpOptions) -> Result<SolveReport> {
    let order = problem.order();
    if order == 0 || problem.blocks.contains(&0) {
        return Err(Error::Invalid("semidefinite blocks must have positive order".into()));
    }
    if order > options.dim_cap {
        return Err(Error::DimensionCap { dim: order, cap: options.dim_cap });
    }
    for (entries, rhs) in &problem.constraints {
        if !rhs.is_finite() || entries.iter().any(|e| !e.value.is_finite()) {
            return Err(Error::Invalid("constraint data must be finite".into()));
        }
    }
    let lay = Layout::new(&problem.blocks);
    for e in problem.constraints.iter().flat_map(|c| c.0.iter()).chain(&problem.objective) {
        if e.block >= lay.blocks.len() || e.row >= lay.blocks[e.block] || e.col >= lay.blocks[e.block] {
            return Err(Error::Invalid("constraint entry outside its block".into()));
        }
    }
    let dim = lay.dim;
    let rows: Vec<Vec<(usize, f64)>> = problem.constraints.iter().map(|(e, _)| lay.sparse(e)).collect();
    let b: Vec<f64> = problem.constraints.iter().map(|c| c.1).collect();
    let mut c = vec![0.0; dim];
    for (k, v) in lay.sparse(&problem.objective) {
        c[k] = -v;
    }
    let gram = GramSolver::new(&rows, dim);
    let m = rows.len();

    let nb = 1.0 + norm(&b);
    let nc = 1.0 + norm(&c);
    let mut x = vec![0.0; dim];
    let mut s = vec![0.0; dim];
    let mut y = vec![0.0; m];
    let mut x_plus = vec![0.0; dim];
    let mut mu = 1.0f64;
    let rho = 1.6;
    let mut pinf = f64::INFINITY;
    let mut dinf = f64::INFINITY;
    let mut gap = f64::INFINITY;
    let mut iterations = 0;
    let mut ratio_log = 0.0f64;
    let mut v = vec![0.0; dim];
    for it in 0..options.max_iter {
        iterations = it + 1;
        let ax = apply(&rows, &x);
        let cs: Vec<f64> = c.iter().zip(&s).map(|(a, b)| a - b).collect();
        let acs = apply(&rows, &cs);
        let rhs: Vec<f64> = (0..m).map(|i| acs[i] - mu * (ax[i] - b[i])).collect();
        y = gram.solve(&rhs);
        let aty = apply_t(&rows, &y, dim);
        for k in 0..dim {
            v[k] = c[k] - aty[k] - mu * x[k];
        }
        lay.project(&v, &mut s);
        for k in 0..dim {
            x_plus[k] = (s[k] - v[k]) / mu;
            x[k] = (1.0 - rho) * x[k] + rho * x_plus[k];
        }

        if it % 10 == 9 || it + 1 == options.max_iter {
            let axp = apply(&rows, &x_plus);
            pinf = norm(&axp.iter().zip(&b).map(|(a, b)| a - b).collect::<Vec<_>>()) / nb;
            let dres: Vec<f64> = (0..dim).map(|k| c[k] - aty[k] - s[k]).collect();
            dinf = norm(&dres) / nc;
            let pobj = dot(&c, &x_plus);
            let dobj = dot(&b, &y);
            gap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
            if pinf < options.tol && dinf < options.tol && gap < options.tol {
                break;
            }
            // Balance primal and dual progress.
            let r = (pinf.max(1e-300) / dinf.max(1e-300)).ln();
            ratio_log = 0.7 * ratio_log + 0.3 * r;
            if it % 50 == 49 {
                if ratio_log > 1.5 {
                    mu = (mu * 1.6).min(1e6);
                } else if ratio_log < -1.5 {
                    mu = (mu / 1.6).max(1e-6);
                }
            }
        }
    }

    let axp = apply(&rows, &x_plus);
    let primal_eq = axp.iter().zip(&b).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let psd_min = lay.min_eigenvalue(&x_plus);
    let value = -dot(&c, &x_plus);
    let dual_bound = problem.trace_bound.map(|t| {
        let aty = apply_t(&rows, &y, dim);
        let sv: Vec<f64> = (0..dim).map(|k| c[k] - aty[k]).collect();
        let lmin = lay.min_eigenvalue(&sv);
        -(dot(&b, &y) + lmin.min(0.0) * t)
    });
    let duality_gap = match dual_bound {
        Some(db) => (db - value).max(0.0),
        None => gap,
    };
    let residuals = Residuals { primal_eq, psd_min_eigenvalue: psd_min, duality_gap };
    let worst = pinf.max(dinf).max(if problem.objective.is_empty() { 0.0 } else { gap });
    let status = if worst < options.tol {
        if problem.objective.is_empty() {
            SdpStatus::Feasible
        } else {
            SdpStatus::Optimal
        }
    } else if worst <= 1e3 * options.tol {
        SdpStatus::Inconclusive
    } else {
        SdpStatus::Infeasible
    };
    let witness = (0..lay.blocks.len()).map(|bk| lay.to_matrix(&x_plus, bk)).collect();
    Ok(SolveReport { status, value, dual_bound, witness, y, residuals, dual_residual: dinf, iterations })
}

/// Recomputes the equality residual and the smallest eigenvalue of a
/// report's witness from the problem data alone.
pub fn verify_witness(problem: &SdpProblem, witness: &[DMatrix<f64>]) -> (f64, f64) {
    let mut worst = 0.0f64;
    for (entries, rhs) in &problem.constraints {
        let lhs: f64 = entries.iter().map(|e| e.value * witness[e.block][(e.row, e.col)]).sum();
        worst = worst.max((lhs - rhs).abs());
    }
    let min_eig = witness
        .iter()
        .map(|m| if m.nrows() == 1 { m[(0, 0)] } else { SymmetricEigen::new(m.clone()).eigenvalues.min() })
        .fold(f64::INFINITY, f64::min);
    (worst, min_eig)
}
