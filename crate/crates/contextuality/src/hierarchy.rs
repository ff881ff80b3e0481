//! Semidefinite outer approximations `Q_n` of the quantum set, the ϑ test
//! for `Q_1`, consistent exclusivity `CE^n` and the perfection criterion.
//!
//! A level-`n` moment matrix is indexed by words of length at most `n`
//! over the vertices. Words are kept in a reduced form: adjacent repeated
//! letters are erased and a word with two adjacent orthogonal letters is the
//! zero index. At level one no word can be reduced, so `Q_1` is exactly the
//! set cut out by normalization, the edge sums, the orthogonality zeros and
//! the pinned probabilities. At higher levels identifying reduced words adds
//! constraints that every quantum realization satisfies.

use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::graphs::{self, AlphaOptions, WeightedGraph};
use crate::models::ProbModel;
use crate::polytope;
use crate::scenario::Scenario;
use crate::solvers::{sdp_solve, verify_witness, Entry, SdpOptions, SdpProblem, SdpStatus, SolveReport};

/// Membership tolerance used when callers do not pick one.
pub const DEFAULT_TOL: f64 = 1e-6;

/// A reduced index word, or the designated zero index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MomentIndex {
    Zero,
    Word(Vec<usize>),
}

impl MomentIndex {
    /// Erases adjacent repetitions, then maps words with adjacent orthogonal
    /// letters to [`MomentIndex::Zero`].
    pub fn canonical(s: &Scenario, word: &[usize]) -> MomentIndex {
        let mut w: Vec<usize> = word.to_vec();
        w.dedup();
        if w.windows(2).any(|p| s.orthogonal(p[0], p[1])) {
            MomentIndex::Zero
        } else {
            MomentIndex::Word(w)
        }
    }

    pub fn of(s: &Scenario, this: &MomentIndex) -> MomentIndex {
        match this {
            MomentIndex::Zero => MomentIndex::Zero,
            MomentIndex::Word(w) => MomentIndex::canonical(s, w),
        }
    }
}

/// A linear form `Σ coef·M[a][b]` over the upper triangle of `M`.
type Form = Vec<((usize, usize), f64)>;

#[derive(Clone, Debug)]
pub struct MomentProblem {
    pub level: usize,
    /// Reduced words, shortest first; index 0 is the empty word.
    pub indices: Vec<Vec<usize>>,
    /// The program in terms of `M` itself: one PSD block, Eqs. for
    /// normalization, edge sums, orthogonality and pinned probabilities.
    pub sdp: SdpProblem,
    /// Vectors that every feasible `M` annihilates.
    kernel: Vec<Vec<(usize, f64)>>,
    /// Constraints other than the edge sums, which the kernel captures.
    forms: Vec<(Form, f64)>,
    single: Vec<usize>,
}

impl MomentProblem {
    pub fn order(&self) -> usize {
        self.indices.len()
    }

    /// Position of the one-letter word `v`.
    pub fn vertex_row(&self, v: usize) -> usize {
        self.single[v]
    }
}

fn push(form: &mut HashMap<(usize, usize), f64>, a: usize, b: usize, c: f64) {
    *form.entry((a.min(b), a.max(b))).or_insert(0.0) += c;
}

fn to_form(m: HashMap<(usize, usize), f64>) -> Form {
    let mut f: Form = m.into_iter().filter(|(_, c)| c.abs() > 1e-15).collect();
    f.sort_by_key(|a| a.0);
    f
}

/// Builds the level-`n` moment problem; `p` pins the first row when given.
pub fn build_moment_problem(s: &Scenario, p: Option<&ProbModel>, n: usize) -> Result<MomentProblem> {
    if n == 0 {
        return Err(Error::Invalid("moment level must be at least 1".into()));
    }
    if let Some(p) = p {
        if !p.matches(s) {
            return Err(Error::ScenarioMismatch(s.name().to_string()));
        }
    }
    let nv = s.num_vertices();
    let cap = SdpOptions::default().dim_cap;
    let mut indices: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &frontier {
            for x in 0..nv {
                let last_ok = w.last().is_none_or(|&l| l != x && !s.orthogonal(l, x));
                if last_ok {
                    let mut v: Vec<usize> = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        if indices.len() + next.len() > cap {
            return Err(Error::DimensionCap { dim: indices.len() + next.len(), cap });
        }
        indices.extend(next.iter().cloned());
        frontier = next;
    }
    let pos: HashMap<Vec<usize>, usize> = indices.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let lookup = |w: &[usize]| -> Option<usize> {
        match MomentIndex::canonical(s, w) {
            MomentIndex::Zero => None,
            MomentIndex::Word(w) => pos.get(&w).copied(),
        }
    };
    let single: Vec<usize> = (0..nv).map(|v| pos[&vec![v]]).collect();
    let big_n = indices.len();

    let mut kernel = Vec::new();
    let mut edge_forms: Vec<(Form, f64)> = Vec::new();
    for (vi, v) in indices.iter().enumerate().filter(|(_, v)| v.len() < n) {
        for e in s.edges() {
            let mut k: HashMap<usize, f64> = HashMap::new();
            *k.entry(vi).or_insert(0.0) -= 1.0;
            for &x in e {
                let mut vx = v.clone();
                vx.push(x);
                if let Some(j) = lookup(&vx) {
                    *k.entry(j).or_insert(0.0) += 1.0;
                }
            }
            let mut k: Vec<(usize, f64)> = k.into_iter().filter(|(_, c)| *c != 0.0).collect();
            if k.is_empty() {
                continue;
            }
            k.sort_by_key(|t| t.0);
            for wi in 0..big_n {
                let mut f = HashMap::new();
                for &(j, c) in &k {
                    push(&mut f, j, wi, c);
                }
                edge_forms.push((to_form(f), 0.0));
            }
            kernel.push(k);
        }
    }

    let mut forms: Vec<(Form, f64)> = vec![(vec![((0, 0), 1.0)], 1.0)];
    for a in 1..big_n {
        for b in a..big_n {
            let (la, lb) = (*indices[a].last().unwrap(), *indices[b].last().unwrap());
            if s.orthogonal(la, lb) {
                forms.push((vec![((a, b), 1.0)], 0.0));
            }
        }
    }
    if let Some(p) = p {
        for v in 0..nv {
            let w = exact::to_f64(p.weight(v));
            forms.push((vec![((0, single[v]), 1.0)], w));
            if p.weight(v).is_zero() {
                // P_v ψ = 0, so every word acting with v first is a null row.
                for (i, word) in indices.iter().enumerate() {
                    if word.first() == Some(&v) {
                        kernel.push(vec![(i, 1.0)]);
                    }
                }
            }
        }
    }

    let mut sdp = SdpProblem::new(vec![big_n]);
    for (f, rhs) in forms.iter().chain(&edge_forms) {
        sdp.constrain(f.iter().map(|&((a, b), c)| Entry::new(0, a, b, c)).collect(), *rhs);
    }
    sdp.trace_bound = Some(big_n as f64);
    Ok(MomentProblem { level: n, indices, sdp, kernel, forms, single })
}

/// Orthonormal basis (as columns) of the complement of the kernel vectors.
fn range_basis(order: usize, kernel: &[Vec<(usize, f64)>]) -> DMatrix<f64> {
    let mut gram = DMatrix::<f64>::zeros(order, order);
    for k in kernel {
        let norm2: f64 = k.iter().map(|t| t.1 * t.1).sum();
        for &(i, a) in k {
            for &(j, b) in k {
                gram[(i, j)] += a * b / norm2;
            }
        }
    }
    let eig = SymmetricEigen::new(gram);
    let scale = eig.eigenvalues.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let cols: Vec<usize> = (0..order).filter(|&i| eig.eigenvalues[i].abs() <= 1e-9 * scale).collect();
    DMatrix::from_fn(order, cols.len(), |r, c| eig.eigenvectors[(r, cols[c])])
}

/// The problem rewritten on `Y` with `M = U Y Uᵀ`, plus a free shift
/// `t = s − 1` (block 1) so that `Y − tI ⪰ 0`. With `maximize_shift` the
/// objective is `s`; otherwise it is `objective` on `M` and `t` is pinned
/// to zero.
fn reduced(mp: &MomentProblem, u: &DMatrix<f64>, objective: Option<&Form>) -> SdpProblem {
    let r = u.ncols();
    let lift = |f: &Form| -> (Vec<Entry>, f64) {
        let mut y = vec![0.0; r * r];
        for &((a, b), c) in f {
            for i in 0..r {
                let uai = u[(a, i)];
                let ubi = u[(b, i)];
                if uai == 0.0 && ubi == 0.0 {
                    continue;
                }
                for j in i..r {
                    let v = if i == j { uai * ubi } else { uai * u[(b, j)] + u[(a, j)] * ubi };
                    y[i * r + j] += c * v;
                }
            }
        }
        let mut entries = Vec::new();
        let mut diag = 0.0;
        for i in 0..r {
            for j in i..r {
                let c = y[i * r + j];
                if c.abs() > 1e-13 {
                    entries.push(Entry::new(0, i, j, c));
                    if i == j {
                        diag += c;
                    }
                }
            }
        }
        (entries, diag)
    };
    let mut sdp = SdpProblem::new(vec![r.max(1), 1]);
    for (f, rhs) in &mp.forms {
        let (mut entries, diag) = lift(f);
        if entries.is_empty() {
            continue;
        }
        // Y = Z + (s − 1) I.
        entries.push(Entry::new(1, 0, 0, diag));
        sdp.constrain(entries, rhs + diag);
    }
    match objective {
        None => sdp.objective.push(Entry::new(1, 0, 0, 1.0)),
        Some(f) => {
            sdp.constrain(vec![Entry::new(1, 0, 0, 1.0)], 1.0);
            let (entries, _) = lift(f);
            sdp.objective = entries;
        }
    }
    sdp.trace_bound = Some((mp.order() + r + 2) as f64);
    sdp
}

fn lift_back(u: &DMatrix<f64>, report: &SolveReport) -> DMatrix<f64> {
    let r = u.ncols();
    let shift = report.witness.get(1).map_or(1.0, |b| b[(0, 0)]) - 1.0;
    let mut y = report.witness[0].clone();
    if y.nrows() == r {
        for i in 0..r {
            y[(i, i)] += shift;
        }
    }
    u * y * u.transpose()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    In,
    Out,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::In => "in",
            Verdict::Out => "out",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MembershipReport {
    pub verdict: Verdict,
    /// Largest shift `t` found with `Y − tI ⪰ 0`; non-negative means a PSD
    /// moment matrix exists.
    pub margin: f64,
    /// Upper bound on the best shift from the dual iterate.
    pub margin_upper: f64,
    /// Moment matrix rebuilt from the solver's point.
    pub moment_matrix: DMatrix<f64>,
    /// `(max equality residual, min eigenvalue)` of `moment_matrix` against
    /// the unreduced problem.
    pub check: (f64, f64),
    pub report: SolveReport,
}

impl MembershipReport {
    pub fn certificate(&self, tol: f64) -> Certificate {
        Certificate::SdpReport {
            status: self.verdict.as_str().into(),
            value: self.margin,
            primal_eq: self.check.0,
            psd_min_eigenvalue: self.check.1,
            duality_gap: self.report.residuals.duality_gap,
            tol,
        }
    }
}

fn solver_options(tol: f64) -> SdpOptions {
    SdpOptions { tol: (tol * 1e-2).max(1e-10), ..SdpOptions::default() }
}

/// Decides whether `p ∈ Q_n(s)` up to `tol`.
pub fn q_membership(s: &Scenario, p: &ProbModel, n: usize, tol: f64) -> Result<MembershipReport> {
    let mp = build_moment_problem(s, Some(p), n)?;
    let u = range_basis(mp.order(), &mp.kernel);
    if u.ncols() == 0 {
        return Err(Error::Invalid("moment problem has no admissible matrix".into()));
    }
    let sdp = reduced(&mp, &u, None);
    let report = sdp_solve(&sdp, &solver_options(tol))?;
    let margin = report.value - 1.0;
    let margin_upper = report.dual_bound.map_or(margin, |b| b - 1.0);
    let moment_matrix = lift_back(&u, &report);
    let check = verify_witness(&mp.sdp, std::slice::from_ref(&moment_matrix));
    let verdict = if report.status == SdpStatus::Infeasible || margin_upper < -tol {
        Verdict::Out
    } else if margin >= -tol && report.status != SdpStatus::Inconclusive {
        Verdict::In
    } else {
        Verdict::Inconclusive
    };
    Ok(MembershipReport { verdict, margin, margin_upper, moment_matrix, check, report })
}

#[derive(Clone, Debug)]
pub struct ThetaMembership {
    pub verdict: Verdict,
    pub theta: f64,
    pub theta_upper: f64,
    pub report: Option<SolveReport>,
}

/// Decides `p ∈ Q_1(s)` through `ϑ(NO(s), p) = 1`.
pub fn q1_membership_theta(s: &Scenario, p: &ProbModel, tol: f64) -> Result<ThetaMembership> {
    if !p.matches(s) {
        return Err(Error::ScenarioMismatch(s.name().to_string()));
    }
    let g = s.non_orthogonality_graph().with_weights(p.weights().to_vec())?;
    let t = graphs::lovasz_theta(&g, &solver_options(tol))?;
    assert!(t.upper >= 1.0 - 1e-4, "ϑ(NO, p) below one for a valid model: {}", t.upper);
    let verdict = if t.upper <= 1.0 + tol {
        Verdict::In
    } else if t.value > 1.0 + tol {
        Verdict::Out
    } else {
        Verdict::Inconclusive
    };
    Ok(ThetaMembership { verdict, theta: t.value, theta_upper: t.upper, report: t.report })
}

/// The extended consistent-exclusivity test, which coincides with the ϑ
/// test for `Q_1`.
pub fn ece_membership(s: &Scenario, p: &ProbModel, tol: f64) -> Result<ThetaMembership> {
    q1_membership_theta(s, p, tol)
}

#[derive(Clone, Debug)]
pub struct OptimizeReport {
    pub value: f64,
    pub upper: f64,
    pub report: SolveReport,
}

/// `max Σ c_v p(v)` over `p ∈ Q_1(s)`.
pub fn q1_optimize(s: &Scenario, c: &[Rational]) -> Result<OptimizeReport> {
    qn_optimize(s, c, 1)
}

/// `max Σ c_v p(v)` over `p ∈ Q_n(s)`.
pub fn qn_optimize(s: &Scenario, c: &[Rational], n: usize) -> Result<OptimizeReport> {
    if c.len() != s.num_vertices() {
        return Err(Error::Invalid("objective length differs from the vertex count".into()));
    }
    let mp = build_moment_problem(s, None, n)?;
    let u = range_basis(mp.order(), &mp.kernel);
    let objective: Form =
        (0..s.num_vertices()).map(|v| ((0, mp.vertex_row(v)), exact::to_f64(&c[v]))).filter(|t| t.1 != 0.0).collect();
    let sdp = reduced(&mp, &u, Some(&objective));
    let report = sdp_solve(&sdp, &SdpOptions { tol: 1e-8, ..SdpOptions::default() })?;
    if report.status == SdpStatus::Infeasible {
        return Err(Error::EmptyPolytope);
    }
    let upper = report.dual_bound.unwrap_or(report.value);
    Ok(OptimizeReport { value: report.value, upper, report })
}

fn weighted_no(s: &Scenario, p: &ProbModel) -> Result<WeightedGraph> {
    if !p.matches(s) {
        return Err(Error::ScenarioMismatch(s.name().to_string()));
    }
    s.non_orthogonality_graph().with_weights(p.weights().to_vec())
}

fn decode(index: usize, base: usize, n: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    let mut x = index;
    for d in digits.iter_mut().rev() {
        *d = x % base;
        x /= base;
    }
    digits
}

/// `p^{⊗n} ∈ CE^1(H^{⊗n})`, i.e. `α(NO(H)^{⊠n}, p^{⊗n}) ≤ 1`.
pub fn ce_level(s: &Scenario, p: &ProbModel, n: usize) -> Result<(bool, Certificate)> {
    let g = weighted_no(s, p)?;
    let power = graphs::strong_power(&g, n)?;
    let one = Rational::one();
    let r = graphs::alpha_with(&power, Some(&one), &AlphaOptions::default())?;
    if r.value > one {
        let tuples = r
            .witness
            .iter()
            .map(|&i| decode(i, s.num_vertices(), n).into_iter().map(|v| s.vertices()[v].clone()).collect())
            .collect();
        Ok((false, Certificate::IndependentSet { level: n, tuples, weight: exact::format(&r.value) }))
    } else {
        Ok((
            true,
            Certificate::ExhaustedSearch { search: "weighted_independent_set".into(), nodes: r.nodes, level: Some(n) },
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CeVerdict {
    In,
    Out,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct CeInfinityReport {
    pub verdict: CeVerdict,
    pub theta: f64,
    /// Best `α(NO^{⊠n}, p^{⊗n})^{1/n}` seen, a lower bound on `Θ(NO, p)`.
    pub alpha_root: f64,
    /// Highest power that was searched completely.
    pub powers_checked: usize,
    pub certificate: Option<Certificate>,
}

/// Three-valued test of `p ∈ CE^∞`: the ϑ bound proves membership, an
/// exact independent set of weight above one in some power disproves it.
pub fn ce_infinity(s: &Scenario, p: &ProbModel, max_power: usize, tol: f64) -> Result<CeInfinityReport> {
    let q1 = q1_membership_theta(s, p, tol)?;
    if q1.verdict == Verdict::In {
        let r = q1.report.as_ref();
        let cert = Certificate::SdpReport {
            status: "theta".into(),
            value: q1.theta_upper,
            primal_eq: r.map_or(0.0, |r| r.residuals.primal_eq),
            psd_min_eigenvalue: r.map_or(0.0, |r| r.residuals.psd_min_eigenvalue),
            duality_gap: r.map_or(0.0, |r| r.residuals.duality_gap),
            tol,
        };
        return Ok(CeInfinityReport {
            verdict: CeVerdict::In,
            theta: q1.theta,
            alpha_root: 0.0,
            powers_checked: 0,
            certificate: Some(cert),
        });
    }
    let mut best = 0.0f64;
    let mut checked = 0;
    for n in 1..=max_power {
        let result = ce_level(s, p, n);
        match result {
            Ok((true, _)) => {
                best = best.max(1.0);
                checked = n;
            }
            Ok((false, cert)) => {
                if let Certificate::IndependentSet { weight, .. } = &cert {
                    best = best.max(exact::to_f64(&exact::parse(weight)?).powf(1.0 / n as f64));
                }
                return Ok(CeInfinityReport {
                    verdict: CeVerdict::Out,
                    theta: q1.theta,
                    alpha_root: best,
                    powers_checked: n,
                    certificate: Some(cert),
                });
            }
            Err(Error::SizeCap { .. }) | Err(Error::BudgetExceeded { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(CeInfinityReport { verdict: CeVerdict::Unknown, theta: q1.theta, alpha_root: best, powers_checked: checked, certificate: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PerfectionVerdict {
    Perfect,
    NotPerfect { hole: Vec<String>, in_complement: bool },
    NoHoleUpToCap { cap: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct PerfectionReport {
    pub no_graph_perfect: PerfectionVerdict,
    pub implication: String,
    /// For perfect NO graphs: whether `is_classical` and `ce_level(·, 1)`
    /// agreed on the sampled extreme points.
    pub cross_check: Option<bool>,
}

pub const HOLE_SEARCH_NODE_CAP: u64 = 10_000_000;

/// Finds an induced cycle of odd length in `5..=cap`, if any.
pub fn find_odd_hole(g: &WeightedGraph, cap: usize) -> Result<Option<Vec<usize>>> {
    struct Search<'a> {
        g: &'a WeightedGraph,
        cap: usize,
        nodes: u64,
    }
    impl Search<'_> {
        fn extend(&mut self, path: &mut Vec<usize>) -> Result<Option<Vec<usize>>> {
            self.nodes += 1;
            if self.nodes > HOLE_SEARCH_NODE_CAP {
                return Err(crate::error::budget("odd hole search", HOLE_SEARCH_NODE_CAP));
            }
            let start = path[0];
            let last = *path.last().unwrap();
            for next in self.g.neighbors(last).ones() {
                if next <= start || path.contains(&next) {
                    continue;
                }
                // The new vertex may only touch its predecessor, and the start
                // when it closes the cycle.
                let inner = if path.len() > 2 { &path[1..path.len() - 1] } else { &[][..] };
                if inner.iter().any(|&x| self.g.adjacent(x, next)) {
                    continue;
                }
                let closes = path.len() >= 2 && self.g.adjacent(next, start);
                let len = path.len() + 1;
                if closes {
                    if len >= 5 && len % 2 == 1 && len <= self.cap {
                        let mut hole = path.clone();
                        hole.push(next);
                        return Ok(Some(hole));
                    }
                    continue;
                }
                if len < self.cap {
                    path.push(next);
                    let found = self.extend(path)?;
                    path.pop();
                    if found.is_some() {
                        return Ok(found);
                    }
                }
            }
            Ok(None)
        }
    }
    let mut search = Search { g, cap, nodes: 0 };
    for s in 0..g.num_vertices() {
        let mut path = vec![s];
        if let Some(h) = search.extend(&mut path)? {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Looks for odd holes in `NO(s)` and its complement. Without either the
/// graph is perfect and classical models coincide with `CE^1`.
pub fn perfection_report(s: &Scenario, cycle_cap: usize) -> Result<PerfectionReport> {
    let g = s.non_orthogonality_graph();
    let names = |h: Vec<usize>| -> Vec<String> { h.into_iter().map(|v| s.vertices()[v].clone()).collect() };
    if let Some(h) = find_odd_hole(&g, cycle_cap)? {
        return Ok(PerfectionReport {
            no_graph_perfect: PerfectionVerdict::NotPerfect { hole: names(h), in_complement: false },
            implication: "no conclusion about C versus CE^1".into(),
            cross_check: None,
        });
    }
    if let Some(h) = find_odd_hole(&g.complement(), cycle_cap)? {
        return Ok(PerfectionReport {
            no_graph_perfect: PerfectionVerdict::NotPerfect { hole: names(h), in_complement: true },
            implication: "no conclusion about C versus CE^1".into(),
            cross_check: None,
        });
    }
    if cycle_cap < s.num_vertices() {
        return Ok(PerfectionReport {
            no_graph_perfect: PerfectionVerdict::NoHoleUpToCap { cap: cycle_cap },
            implication: "no hole found up to the cap".into(),
            cross_check: None,
        });
    }
    let mut agree = true;
    if let Ok(ext) = polytope::extremal_models_with(s, 2_000) {
        for e in ext.iter().take(8) {
            let (classical, _) = polytope::is_classical(s, &e.model)?;
            let (ce1, _) = ce_level(s, &e.model, 1)?;
            agree &= classical == ce1;
        }
    }
    Ok(PerfectionReport {
        no_graph_perfect: PerfectionVerdict::Perfect,
        implication: "C = CE^1 for this scenario".into(),
        cross_check: Some(agree),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;
    use crate::models::{uniform_model, validate_vector};
    use crate::scenario::literal;

    fn triangle() -> Scenario {
        literal("triangle", &["v1", "v2", "v3"], &[&["v1", "v2"], &["v2", "v3"], &["v1", "v3"]])
    }

    #[test]
    fn canonicalisation_is_idempotent() {
        let s = literal("p", &["a", "b", "c"], &[&["a", "b"], &["c"]]);
        let w = MomentIndex::canonical(&s, &[2, 2, 0, 2]);
        assert_eq!(w, MomentIndex::Word(vec![2, 0, 2]));
        assert_eq!(MomentIndex::of(&s, &w), w);
        assert_eq!(MomentIndex::canonical(&s, &[2, 0, 1]), MomentIndex::Zero);
    }

    #[test]
    fn index_counts() {
        let s = triangle();
        assert_eq!(build_moment_problem(&s, None, 1).unwrap().order(), 4);
        // All three vertices are pairwise orthogonal, so no word of length two survives.
        assert_eq!(build_moment_problem(&s, None, 2).unwrap().order(), 4);
    }

    #[test]
    fn triangle_uniform_is_out_of_q1() {
        let s = triangle();
        let p = uniform_model(&s).unwrap();
        let r = q_membership(&s, &p, 1, DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Out, "margin {}", r.margin);
        let t = q1_membership_theta(&s, &p, DEFAULT_TOL).unwrap();
        assert_eq!(t.verdict, Verdict::Out);
        assert!((t.theta - 1.5).abs() < 1e-5);
    }

    #[test]
    fn path_models_are_in() {
        let s = literal("path", &["a", "b", "c"], &[&["a", "b"], &["b", "c"]]);
        for p in [vec![frac(1, 3), frac(2, 3), frac(1, 3)], vec![Rational::one(), Rational::zero(), Rational::one()]] {
            let p = validate_vector(&s, p).unwrap();
            let r = q_membership(&s, &p, 1, DEFAULT_TOL).unwrap();
            assert_eq!(r.verdict, Verdict::In, "margin {}", r.margin);
            assert!(r.check.0 < 1e-5 && r.check.1 > -1e-5, "{:?}", r.check);
            assert_eq!(q1_membership_theta(&s, &p, DEFAULT_TOL).unwrap().verdict, Verdict::In);
        }
    }

    #[test]
    fn single_edge_optimum() {
        let s = literal("edge", &["a", "b"], &[&["a", "b"]]);
        let r = q1_optimize(&s, &[Rational::one(), Rational::zero()]).unwrap();
        assert!((r.value - 1.0).abs() < 1e-5);
    }

    #[test]
    fn ce_of_triangle() {
        let s = triangle();
        let p = uniform_model(&s).unwrap();
        let (ok, c) = ce_level(&s, &p, 1).unwrap();
        assert!(!ok);
        assert!(crate::certificate::verify(&c, &s, Some(&p)).unwrap());
    }

    #[test]
    fn odd_holes() {
        assert!(find_odd_hole(&WeightedGraph::cycle(5), 5).unwrap().is_some());
        assert!(find_odd_hole(&WeightedGraph::cycle(6), 9).unwrap().is_none());
        assert!(find_odd_hole(&WeightedGraph::cycle(7), 5).unwrap().is_none());
        assert_eq!(find_odd_hole(&WeightedGraph::cycle(7), 7).unwrap().map(|h| h.len()), Some(7));
    }
}
