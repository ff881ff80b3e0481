//! Exact rational linear programming with a dense two-phase tableau simplex
//! that falls back to Bland's rule when pivots stall. All variables are
//! non-negative.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective·x` (or pure feasibility) subject to the rows and
/// `x ≥ 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Option<Vec<Rational>>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpReport {
    pub status: LpStatus,
    /// Optimal objective value (zero for feasibility problems).
    pub value: Option<Rational>,
    /// Primal point when feasible.
    pub x: Option<Vec<Rational>>,
    /// Row multipliers proving infeasibility: non-negative on `≤` rows,
    /// non-positive on `≥` rows, with `yᵀA ≥ 0` and `yᵀb < 0`.
    pub farkas: Option<Vec<Rational>>,
    /// Optimal dual multipliers, one per row, when optimal.
    pub duals: Option<Vec<Rational>>,
    /// Direction of unbounded improvement.
    pub ray: Option<Vec<Rational>>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram { num_vars, objective: None, constraints: Vec::new() }
    }

    pub fn maximize(mut self, c: Vec<Rational>) -> Self {
        assert_eq!(c.len(), self.num_vars);
        self.objective = Some(c);
        self
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    /// Adds a row given as sparse `(variable, coefficient)` pairs.
    pub fn add_sparse(&mut self, terms: &[(usize, Rational)], relation: Relation, rhs: Rational) {
        let mut row = vec![Rational::zero(); self.num_vars];
        for (j, c) in terms {
            row[*j] += c;
        }
        self.add(row, relation, rhs);
    }

    pub fn solve(&self) -> LpReport {
        lp_solve(self)
    }
}

/// Checks a Farkas certificate in exact arithmetic.
pub fn verify_farkas(lp: &LinearProgram, y: &[Rational]) -> bool {
    if y.len() != lp.constraints.len() {
        return false;
    }
    for (yi, row) in y.iter().zip(&lp.constraints) {
        let ok = match row.relation {
            Relation::Le => !yi.is_negative(),
            Relation::Ge => !yi.is_positive(),
            Relation::Eq => true,
        };
        if !ok {
            return false;
        }
    }
    for j in 0..lp.num_vars {
        let s: Rational = y.iter().zip(&lp.constraints).map(|(yi, r)| yi * &r.coeffs[j]).sum();
        if s.is_negative() {
            return false;
        }
    }
    let rhs: Rational = y.iter().zip(&lp.constraints).map(|(yi, r)| yi * &r.rhs).sum();
    rhs.is_negative()
}

/// Checks that `x` satisfies every row and `x ≥ 0` exactly.
pub fn is_feasible_point(lp: &LinearProgram, x: &[Rational]) -> bool {
    if x.len() != lp.num_vars || x.iter().any(Signed::is_negative) {
        return false;
    }
    lp.constraints.iter().all(|r| {
        let lhs: Rational = r.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match r.relation {
            Relation::Le => lhs <= r.rhs,
            Relation::Eq => lhs == r.rhs,
            Relation::Ge => lhs >= r.rhs,
        }
    })
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        if !inv.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            self.rhs[r] *= &inv;
        }
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        let nz: Vec<usize> = (0..self.ncols).filter(|&j| !prow[j].is_zero()).collect();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for &j in &nz {
                let d = &f * &prow[j];
                self.rows[i][j] -= d;
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Reduced costs `c_B B⁻¹ A_j − c_j` for all columns.
    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut z: Vec<Rational> = cost.iter().map(|c| -c).collect();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in self.rows[i].iter().enumerate() {
                if !a.is_zero() {
                    z[j] += cb * a;
                }
            }
        }
        z
    }

    /// Runs the simplex loop maximizing `cost`; columns flagged in `blocked`
    /// never enter. Returns the unbounded entering column, if any.
    ///
    /// Entering columns follow Dantzig's rule until a run of degenerate
    /// pivots suggests stalling, after which Bland's rule takes over and
    /// guarantees termination.
    fn optimize(&mut self, cost: &[Rational], blocked: &[bool]) -> Option<usize> {
        const DEGENERATE_RUN: usize = 30;
        let mut z = self.reduced_costs(cost);
        let mut bland = false;
        let mut run = 0;
        loop {
            let candidates = (0..self.ncols).filter(|&j| !blocked[j] && z[j].is_negative());
            let entering = if bland {
                candidates.min()
            } else {
                candidates.min_by(|&a, &b| z[a].cmp(&z[b]).then(a.cmp(&b)))
            };
            let c = entering?;
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, ratio)) = best else { return Some(c) };
            if ratio.is_zero() {
                run += 1;
                if run > DEGENERATE_RUN {
                    bland = true;
                }
            } else {
                run = 0;
            }
            self.pivot(r, c);
            let f = z[c].clone();
            for (zj, a) in z.iter_mut().zip(&self.rows[r]) {
                if !a.is_zero() {
                    *zj -= &f * a;
                }
            }
        }
    }
}

pub fn lp_solve(lp: &LinearProgram) -> LpReport {
    let n = lp.num_vars;
    let m = lp.constraints.len();
    // Standardize to non-negative right-hand sides.
    let mut flipped = vec![false; m];
    let mut rels = Vec::with_capacity(m);
    let mut a_rows = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.rhs.is_negative() {
            flipped[i] = true;
            a_rows.push(c.coeffs.iter().map(|x| -x).collect::<Vec<_>>());
            b.push(-&c.rhs);
            rels.push(match c.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            });
        } else {
            a_rows.push(c.coeffs.clone());
            b.push(c.rhs.clone());
            rels.push(c.relation);
        }
    }
    // Column layout: structural | slack or surplus (one per inequality) | artificial.
    let mut slack_col = vec![None; m];
    let mut next = n;
    for i in 0..m {
        if rels[i] != Relation::Eq {
            slack_col[i] = Some(next);
            next += 1;
        }
    }
    let mut art_col = vec![None; m];
    for i in 0..m {
        if rels[i] != Relation::Le {
            art_col[i] = Some(next);
            next += 1;
        }
    }
    let ncols = next;
    let mut rows = vec![vec![Rational::zero(); ncols]; m];
    let mut basis = vec![0; m];
    let mut init_col = vec![0; m];
    for i in 0..m {
        rows[i][..n].clone_from_slice(&a_rows[i]);
        if let Some(s) = slack_col[i] {
            rows[i][s] = if rels[i] == Relation::Le { Rational::one() } else { -Rational::one() };
        }
        if let Some(a) = art_col[i] {
            rows[i][a] = Rational::one();
            basis[i] = a;
        } else {
            basis[i] = slack_col[i].expect("<= rows have a slack");
        }
        init_col[i] = basis[i];
    }
    let mut t = Tableau { rows, rhs: b, basis, ncols };
    let is_art: Vec<bool> = (0..ncols).map(|j| art_col.contains(&Some(j))).collect();

    // Phase 1.
    let cost1: Vec<Rational> =
        (0..ncols).map(|j| if is_art[j] { -Rational::one() } else { Rational::zero() }).collect();
    let no_block = vec![false; ncols];
    t.optimize(&cost1, &no_block);
    let infeas: Rational = (0..m).filter(|&i| is_art[t.basis[i]]).map(|i| t.rhs[i].clone()).sum();
    if infeas.is_positive() {
        let z = t.reduced_costs(&cost1);
        let farkas = (0..m)
            .map(|i| {
                let y = &z[init_col[i]] + &cost1[init_col[i]];
                if flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        return LpReport { status: LpStatus::Infeasible, value: None, x: None, farkas: Some(farkas), duals: None, ray: None };
    }
    // Drive zero-level artificials out of the basis where possible.
    for i in 0..m {
        if is_art[t.basis[i]] {
            if let Some(c) = (0..ncols).find(|&j| !is_art[j] && !t.rows[i][j].is_zero()) {
                t.pivot(i, c);
            }
        }
    }

    // Phase 2.
    let mut cost2 = vec![Rational::zero(); ncols];
    if let Some(c) = &lp.objective {
        cost2[..n].clone_from_slice(c);
    }
    if let Some(col) = t.optimize(&cost2, &is_art) {
        let mut ray = vec![Rational::zero(); n];
        if col < n {
            ray[col] = Rational::one();
        }
        for i in 0..m {
            if t.basis[i] < n {
                ray[t.basis[i]] = -&t.rows[i][col];
            }
        }
        return LpReport { status: LpStatus::Unbounded, value: None, x: None, farkas: None, duals: None, ray: Some(ray) };
    }
    let mut x = vec![Rational::zero(); n];
    for i in 0..m {
        if t.basis[i] < n {
            x[t.basis[i]] = t.rhs[i].clone();
        }
    }
    let value = lp.objective.as_ref().map_or_else(Rational::zero, |c| c.iter().zip(&x).map(|(a, b)| a * b).sum());
    let z = t.reduced_costs(&cost2);
    let duals = (0..m)
        .map(|i| {
            let pi = &z[init_col[i]] + &cost2[init_col[i]];
            if flipped[i] {
                -pi
            } else {
                pi
            }
        })
        .collect();
    LpReport { status: LpStatus::Optimal, value: Some(value), x: Some(x), farkas: None, duals: Some(duals), ray: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};

    #[test]
    fn one_dimensional_maximum() {
        let mut lp = LinearProgram::new(1).maximize(vec![int(1)]);
        lp.add(vec![int(1)], Relation::Le, frac(3, 2));
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.value.unwrap(), frac(3, 2));
    }

    #[test]
    fn triangle_normalization_has_unique_solution() {
        let mut lp = LinearProgram::new(3);
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            lp.add_sparse(&[(i, int(1)), (j, int(1))], Relation::Eq, int(1));
        }
        let r = lp.solve();
        assert_eq!(r.x.unwrap(), vec![frac(1, 2); 3]);
    }

    #[test]
    fn infeasible_system_yields_valid_farkas() {
        let mut lp = LinearProgram::new(2);
        lp.add(vec![int(1), int(1)], Relation::Ge, int(3));
        lp.add(vec![int(1), int(0)], Relation::Le, int(1));
        lp.add(vec![int(0), int(1)], Relation::Le, int(1));
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Infeasible);
        assert!(verify_farkas(&lp, r.farkas.as_ref().unwrap()));
    }

    #[test]
    fn negative_rhs_rows_are_handled() {
        let mut lp = LinearProgram::new(1).maximize(vec![int(-1)]);
        lp.add(vec![int(-1)], Relation::Le, int(-2));
        let r = lp.solve();
        assert_eq!(r.value.unwrap(), int(-2));
        let mut bad = LinearProgram::new(1);
        bad.add(vec![int(1)], Relation::Le, int(-1));
        let r = bad.solve();
        assert!(verify_farkas(&bad, r.farkas.as_ref().unwrap()));
    }

    #[test]
    fn unbounded_ray() {
        let mut lp = LinearProgram::new(2).maximize(vec![int(1), int(0)]);
        lp.add(vec![int(1), int(-1)], Relation::Le, int(1));
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Unbounded);
        let ray = r.ray.unwrap();
        assert!(ray[0].is_positive());
        assert!(&ray[0] - &ray[1] <= Rational::zero());
    }

    #[test]
    fn duals_certify_optimum() {
        let mut lp = LinearProgram::new(2).maximize(vec![int(3), int(2)]);
        lp.add(vec![int(1), int(1)], Relation::Le, int(4));
        lp.add(vec![int(1), int(3)], Relation::Le, int(6));
        let r = lp.solve();
        let y = r.duals.unwrap();
        let bound: Rational = y.iter().zip([int(4), int(6)]).map(|(a, b)| a * b).sum();
        assert_eq!(bound, r.value.unwrap());
    }
}
