//! The model polytope `G(H)` and the classical polytope `C(H)`: exact
//! feasibility, membership, affine dimension and extreme points.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::certificate::{Certificate, DecompositionTerm, EdgeMultiplier};
use crate::error::{budget, Error, Result};
use crate::exact::{self, Rational};
use crate::models::{self, ProbModel, DETERMINISTIC_NODE_CAP};
use crate::scenario::Scenario;
use crate::solvers::{LinearProgram, LpStatus, Relation};

/// Maximum number of distinct supports visited by [`extremal_models`].
pub const EXTREMAL_SUPPORT_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalModel {
    #[serde(skip)]
    pub model: ProbModel,
    pub support: Vec<usize>,
    pub is_deterministic: bool,
}

fn normalization_lp(s: &Scenario) -> LinearProgram {
    let mut lp = LinearProgram::new(s.num_vertices());
    for e in s.edges() {
        let terms: Vec<(usize, Rational)> = e.iter().map(|&v| (v, Rational::one())).collect();
        lp.add_sparse(&terms, Relation::Eq, Rational::one());
    }
    lp
}

/// Decides whether `s` admits any probabilistic model.
pub fn allows_general(s: &Scenario) -> (bool, Certificate) {
    let report = normalization_lp(s).solve();
    match report.status {
        LpStatus::Infeasible => {
            let y = report.farkas.expect("infeasible programs carry a Farkas vector");
            let multipliers = y
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| EdgeMultiplier { edge: s.edge_names(k), y: exact::format(v) })
                .collect();
            (false, Certificate::Farkas { multipliers })
        }
        _ => {
            let x = report.x.expect("feasible programs carry a point");
            let p = models::validate_vector(s, x).expect("LP solutions are models");
            (true, Certificate::model_of(&p))
        }
    }
}

/// Decides whether `s` has a deterministic model (an exact transversal).
pub fn allows_classical(s: &Scenario) -> Result<(bool, Certificate)> {
    let (found, nodes) = models::exact_transversals(s, DETERMINISTIC_NODE_CAP, 1)?;
    Ok(match found.into_iter().next() {
        Some(t) => (true, Certificate::Transversal { vertices: t.iter().map(|&v| s.vertices()[v].clone()).collect() }),
        None => (false, Certificate::ExhaustedSearch { search: "exact_transversal".into(), nodes, level: None }),
    })
}

/// Decides `p ∈ C(H)` with the decomposition LP over all deterministic
/// models. A negative answer carries the separating inequality read off the
/// LP's Farkas vector.
pub fn is_classical(s: &Scenario, p: &ProbModel) -> Result<(bool, Certificate)> {
    if !p.matches(s) {
        return Err(Error::ScenarioMismatch(s.name().to_string()));
    }
    let dets = models::enumerate_deterministic(s)?;
    let n = s.num_vertices();
    let mut lp = LinearProgram::new(dets.len());
    lp.add(vec![Rational::one(); dets.len()], Relation::Eq, Rational::one());
    for v in 0..n {
        let row = dets.iter().map(|d| d.weight(v).clone()).collect();
        lp.add(row, Relation::Eq, p.weight(v).clone());
    }
    let report = lp.solve();
    if report.status == LpStatus::Infeasible {
        let y = report.farkas.expect("infeasible programs carry a Farkas vector");
        let coefficients: BTreeMap<String, String> = s
            .vertices()
            .iter()
            .zip(&y[1..])
            .filter(|(_, c)| !c.is_zero())
            .map(|(id, c)| (id.clone(), exact::format(c)))
            .collect();
        let bound = exact::format(&-y[0].clone());
        return Ok((false, Certificate::SeparatingInequality { coefficients, bound }));
    }
    let lambda = report.x.expect("feasible programs carry a point");
    let terms = lambda
        .iter()
        .zip(&dets)
        .filter(|(l, _)| l.is_positive())
        .map(|(l, d)| DecompositionTerm {
            coefficient: exact::format(l),
            support: d.support().iter().map(|&v| s.vertices()[v].clone()).collect(),
        })
        .collect();
    Ok((true, Certificate::ConvexDecomposition { terms }))
}

/// The largest set of vertices that are simultaneously positive in some
/// model with `p(v) = 0` outside `allowed`, or `None` if no such model
/// exists.
///
/// Solved as one homogenized LP: write `x_u = z_u + r_u` with `z_u ≤ 1` and
/// maximize `Σ z_u` subject to `Σ_{u ∈ e} x_u = λ` on every edge. Scaling
/// makes every vertex that can be positive reach `z_u = 1`.
pub fn max_support(s: &Scenario, allowed: &[usize]) -> Option<Vec<usize>> {
    let n = s.num_vertices();
    let mut col = vec![usize::MAX; n];
    for (j, &v) in allowed.iter().enumerate() {
        col[v] = j;
    }
    if s.edges().iter().any(|e| e.iter().all(|&v| col[v] == usize::MAX)) {
        return None;
    }
    let k = allowed.len();
    let lam = 2 * k;
    let mut objective = vec![Rational::zero(); 2 * k + 1];
    for z in objective.iter_mut().take(k) {
        *z = Rational::one();
    }
    let mut lp = LinearProgram::new(2 * k + 1).maximize(objective);
    for e in s.edges() {
        let mut terms: Vec<(usize, Rational)> = Vec::new();
        for &v in e.iter().filter(|&&v| col[v] != usize::MAX) {
            terms.push((col[v], Rational::one()));
            terms.push((k + col[v], Rational::one()));
        }
        terms.push((lam, -Rational::one()));
        lp.add_sparse(&terms, Relation::Eq, Rational::zero());
    }
    for j in 0..k {
        lp.add_sparse(&[(j, Rational::one())], Relation::Le, Rational::one());
    }
    let report = lp.solve();
    let x = report.x?;
    let support: Vec<usize> = (0..k).filter(|&j| x[j].is_positive()).map(|j| allowed[j]).collect();
    (!support.is_empty()).then_some(support)
}

fn restricted_rows(s: &Scenario, support: &[usize]) -> Vec<Vec<Rational>> {
    let mut col = vec![usize::MAX; s.num_vertices()];
    for (j, &v) in support.iter().enumerate() {
        col[v] = j;
    }
    s.edges()
        .iter()
        .map(|e| {
            let mut row = vec![Rational::zero(); support.len()];
            for &v in e {
                if col[v] != usize::MAX {
                    row[col[v]] = Rational::one();
                }
            }
            row
        })
        .collect()
}

/// Affine dimension of the face of `G(s)` whose relative interior has the
/// given support.
pub fn face_dimension(s: &Scenario, support: &[usize]) -> usize {
    support.len() - exact::rank(&restricted_rows(s, support))
}

/// Affine dimension of `G(s)`.
pub fn g_dimension(s: &Scenario) -> Result<usize> {
    let all: Vec<usize> = (0..s.num_vertices()).collect();
    let w = max_support(s, &all).ok_or(Error::EmptyPolytope)?;
    Ok(face_dimension(s, &w))
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// All extreme points of `G(s)`.
///
/// Walks the face lattice downwards: a face is identified by its maximal
/// support, each child sets one more coordinate to zero, and a face of
/// dimension zero is an extreme point whose weights are the unique solution
/// of the restricted normalization system.
pub fn extremal_models(s: &Scenario) -> Result<Vec<ExtremalModel>> {
    extremal_models_with(s, EXTREMAL_SUPPORT_CAP)
}

pub fn extremal_models_with(s: &Scenario, support_cap: usize) -> Result<Vec<ExtremalModel>> {
    let all: Vec<usize> = (0..s.num_vertices()).collect();
    let top = max_support(s, &all).ok_or(Error::EmptyPolytope)?;
    let mut walk = Descent { s, cap: support_cap, faces: HashSet::new(), tried: HashSet::new(), out: Vec::new() };
    walk.visit(top)?;
    let mut out = walk.out;
    out.sort_by(|a, b| a.support.cmp(&b.support));
    out.dedup_by(|a, b| a.support == b.support);
    let n = s.num_vertices();
    assert!(
        BigUint::from(out.len()) <= binomial(n, n / 2),
        "extreme point count exceeds the Sperner bound"
    );
    Ok(out)
}

struct Descent<'a> {
    s: &'a Scenario,
    cap: usize,
    faces: HashSet<Vec<usize>>,
    tried: HashSet<Vec<usize>>,
    out: Vec<ExtremalModel>,
}

impl Descent<'_> {
    fn visit(&mut self, support: Vec<usize>) -> Result<()> {
        if !self.faces.insert(support.clone()) {
            return Ok(());
        }
        if self.faces.len() > self.cap {
            return Err(budget("extremal descent supports", self.cap as u64));
        }
        if face_dimension(self.s, &support) == 0 {
            self.out.push(self.leaf(&support));
            return Ok(());
        }
        for i in 0..support.len() {
            let mut allowed = support.clone();
            allowed.remove(i);
            if !self.tried.insert(allowed.clone()) {
                continue;
            }
            if let Some(child) = max_support(self.s, &allowed) {
                self.visit(child)?;
            }
        }
        Ok(())
    }

    fn leaf(&self, support: &[usize]) -> ExtremalModel {
        let rows = restricted_rows(self.s, support);
        let ones = vec![Rational::one(); rows.len()];
        let x = exact::solve(&rows, &ones).expect("a nonempty face has a point");
        let mut w = vec![Rational::zero(); self.s.num_vertices()];
        for (&v, val) in support.iter().zip(x) {
            w[v] = val;
        }
        let model = models::validate_vector(self.s, w).expect("leaf solutions are models");
        let is_deterministic = model.is_deterministic();
        ExtremalModel { model, support: support.to_vec(), is_deterministic }
    }
}

/// `max Σ c_v p(v)` over `G(s)`, exactly, with an optimal model.
pub fn optimize_general(s: &Scenario, c: &[Rational]) -> Result<(Rational, ProbModel)> {
    let mut lp = normalization_lp(s);
    lp.objective = Some(c.to_vec());
    let report = lp.solve();
    match report.status {
        LpStatus::Infeasible => Err(Error::EmptyPolytope),
        LpStatus::Unbounded => unreachable!("G(s) is bounded"),
        LpStatus::Optimal => {
            let p = models::validate_vector(s, report.x.expect("optimal point"))?;
            Ok((report.value.expect("optimal value"), p))
        }
    }
}

/// `max Σ c_v p(v)` over `C(s)`, attained at a deterministic model.
pub fn optimize_classical(s: &Scenario, c: &[Rational]) -> Result<(Rational, ProbModel)> {
    let dets = models::enumerate_deterministic(s)?;
    dets.into_iter()
        .map(|d| {
            let v: Rational = d.weights().iter().zip(c).map(|(a, b)| a * b).sum();
            (v, d)
        })
        .max_by(|a, b| a.0.cmp(&b.0))
        .ok_or(Error::EmptyPolytope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify;
    use crate::exact::frac;
    use crate::scenario::literal;

    fn triangle() -> Scenario {
        literal("triangle", &["v1", "v2", "v3"], &[&["v1", "v2"], &["v2", "v3"], &["v1", "v3"]])
    }

    #[test]
    fn triangle_has_a_unique_model_but_no_classical_one() {
        let s = triangle();
        let (ok, c) = allows_general(&s);
        assert!(ok && verify(&c, &s, None).unwrap());
        let (ok, c) = allows_classical(&s).unwrap();
        assert!(!ok && verify(&c, &s, None).unwrap());
        assert_eq!(g_dimension(&s).unwrap(), 0);
        let ext = extremal_models(&s).unwrap();
        assert_eq!(ext.len(), 1);
        assert_eq!(ext[0].model.weights(), &[frac(1, 2), frac(1, 2), frac(1, 2)][..]);
    }

    #[test]
    fn forced_zero_reduces_dimension() {
        // {a,b} and {a,b,c} force c = 0.
        let s = literal("z", &["a", "b", "c"], &[&["a", "b"], &["a", "b", "c"]]);
        assert_eq!(max_support(&s, &[0, 1, 2]), Some(vec![0, 1]));
        assert_eq!(g_dimension(&s).unwrap(), 1);
        assert_eq!(extremal_models(&s).unwrap().len(), 2);
    }

    #[test]
    fn empty_polytope() {
        let s = literal("e", &["a", "b"], &[&["a"], &["a", "b"], &["b"]]);
        let (ok, c) = allows_general(&s);
        assert!(!ok);
        assert_eq!(c.kind(), "farkas");
        assert!(verify(&c, &s, None).unwrap());
        assert!(matches!(g_dimension(&s), Err(Error::EmptyPolytope)));
    }

    #[test]
    fn classical_membership_certificates() {
        let s = literal("path", &["a", "b", "c"], &[&["a", "b"], &["b", "c"]]);
        let p = models::validate_vector(&s, vec![frac(1, 3), frac(2, 3), frac(1, 3)]).unwrap();
        let (ok, c) = is_classical(&s, &p).unwrap();
        assert!(ok);
        assert!(verify(&c, &s, Some(&p)).unwrap());
        let t = triangle();
        let q = models::uniform_model(&t).unwrap();
        let (ok, c) = is_classical(&t, &q).unwrap();
        assert!(!ok);
        assert!(verify(&c, &t, Some(&q)).unwrap());
    }

    #[test]
    fn optimization_matches_enumeration() {
        let s = literal("path", &["a", "b", "c"], &[&["a", "b"], &["b", "c"]]);
        let c = vec![Rational::one(), Rational::zero(), Rational::one()];
        assert_eq!(optimize_general(&s, &c).unwrap().0, exact::int(2));
        assert_eq!(optimize_classical(&s, &c).unwrap().0, exact::int(2));
    }
}

