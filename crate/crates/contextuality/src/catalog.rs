//! Named scenarios, boxes and constructions used throughout the examples
//! and tests.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, frac, Rational};
use crate::graphs::WeightedGraph;
use crate::models::{self, ProbModel};
use crate::products::{bell_scenario, ProductKind};
use crate::scenario::Scenario;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: String,
    pub scenario: Scenario,
    pub models: Vec<(String, ProbModel)>,
    /// Short description of what the entry is and what is known about it.
    pub note: String,
}

impl CatalogEntry {
    fn new(key: &str, scenario: Scenario, note: &str) -> Self {
        CatalogEntry { key: key.into(), scenario, models: Vec::new(), note: note.into() }
    }

    fn with_model(mut self, name: &str, weights: Vec<Rational>) -> Self {
        let p = models::validate_vector(&self.scenario, weights).expect("catalog models validate");
        self.models.push((name.into(), p));
        self
    }

    fn with_prob(mut self, name: &str, p: ProbModel) -> Self {
        assert!(p.matches(&self.scenario), "catalog model {name} belongs to its scenario");
        self.models.push((name.into(), p));
        self
    }

    pub fn model(&self, name: &str) -> Option<&ProbModel> {
        self.models.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }
}

fn ids(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// The triangle scenario: three outcomes, every pair a measurement.
pub fn triangle() -> CatalogEntry {
    let s = Scenario::new("triangle", ["v1", "v2", "v3"], [["v1", "v2"], ["v2", "v3"], ["v1", "v3"]])
        .expect("static scenario");
    CatalogEntry::new("triangle", s, "three pairwise orthogonal outcomes; unique model 1/2, no classical model")
        .with_model("half", vec![frac(1, 2); 3])
}

/// `Δ_n`: vertices `v_i, w_i` and edges `{v_i, w_i, v_{i+1}}`. Odd `n`
/// bundles `p_x` (`v_i ↦ 1/2`, `w_i ↦ 0`).
pub fn circular(n: usize) -> Result<CatalogEntry> {
    if n < 3 {
        return Err(Error::Invalid("circular scenarios need n >= 3".into()));
    }
    let mut names = ids("v", n);
    names.extend(ids("w", n));
    let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, n + i, (i + 1) % n]).collect();
    let s = Scenario::from_indexed(format!("circular-{n}"), names, edges)?;
    let mut e = CatalogEntry::new(
        &format!("circular-{n}"),
        s.clone(),
        "n-circular hypergraph; dim G = n, and for odd n one extreme point p_x is not classical",
    );
    let det = models::enumerate_deterministic_with(&s, models::DETERMINISTIC_NODE_CAP, 1)?;
    if let Some(d) = det.into_iter().next() {
        e = e.with_prob("deterministic", d);
    }
    if n % 2 == 1 {
        let w = s.vertices().iter().map(|v| if v.starts_with('v') { frac(1, 2) } else { Rational::zero() }).collect();
        e = e.with_model("p_x", w);
    }
    Ok(e)
}

/// `AP_n`: the circular edges `{v_i, w_i, v_{i+1}}` together with
/// `{w_i, v_{i+1}, w_{i+1}}`.
pub fn antiprism(n: usize) -> Result<CatalogEntry> {
    if n < 3 {
        return Err(Error::Invalid("antiprism scenarios need n >= 3".into()));
    }
    let mut names = ids("v", n);
    names.extend(ids("w", n));
    let mut edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, n + i, (i + 1) % n]).collect();
    edges.extend((0..n).map(|i| vec![n + i, (i + 1) % n, n + (i + 1) % n]));
    let s = Scenario::from_indexed(format!("antiprism-{n}"), names, edges)?;
    let mut e = CatalogEntry::new(
        &format!("antiprism-{n}"),
        s.clone(),
        "n-antiprism; a unique non-classical model 1/3 unless 3 divides n, else C = G is a triangle",
    );
    if !n.is_multiple_of(3) {
        e = e.with_model("unique", vec![frac(1, 3); 2 * n]);
    } else {
        for (k, d) in models::enumerate_deterministic(&s)?.into_iter().enumerate() {
            e = e.with_prob(&format!("deterministic-{k}"), d);
        }
    }
    Ok(e)
}

/// The scenario whose vertices are the arcs of `g` and whose edges are the
/// sets of arcs meeting each node.
pub fn dual_scenario(g: &WeightedGraph, name: &str) -> Result<Scenario> {
    let arcs = g.edges();
    for v in 0..g.num_vertices() {
        if g.degree(v) == 0 {
            return Err(Error::IsolatedNode(g.names()[v].clone()));
        }
    }
    let names: Vec<String> = arcs.iter().map(|&(a, b)| format!("{}-{}", g.names()[a], g.names()[b])).collect();
    let edges: Vec<Vec<usize>> = (0..g.num_vertices())
        .map(|v| arcs.iter().enumerate().filter(|(_, &(a, b))| a == v || b == v).map(|(i, _)| i).collect())
        .collect();
    Scenario::from_indexed(name, names, edges)
}

fn complete_graph(m: usize) -> WeightedGraph {
    let names: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
    let edges: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
    WeightedGraph::from_edges(names, &edges, vec![Rational::one(); m]).expect("complete graph")
}

/// `Mat_m`, the dual of `K_m`: perfect matchings are its deterministic
/// models. Bundles the uniform model `1/(m-1)`.
pub fn matching(m: usize) -> Result<CatalogEntry> {
    if m < 3 {
        return Err(Error::Invalid("matching scenarios need m >= 3".into()));
    }
    let s = dual_scenario(&complete_graph(m), &format!("mat-{m}"))?;
    let n = s.num_vertices();
    Ok(CatalogEntry::new(
        &format!("mat-{m}"),
        s,
        "edges of K_m as outcomes, one measurement per node; classical models exist iff m is even",
    )
    .with_model("uniform", vec![frac(1, m as i64 - 1); n]))
}

/// The rook graph on `{1,2,3}²`: nodes adjacent iff they differ in exactly
/// one coordinate.
pub fn rook_graph() -> WeightedGraph {
    let names: Vec<String> = (1..=3).flat_map(|i| (1..=3).map(move |j| format!("{i}{j}"))).collect();
    let mut edges = Vec::new();
    for a in 0..9 {
        for b in a + 1..9 {
            let same_row = a / 3 == b / 3;
            let same_col = a % 3 == b % 3;
            if same_row != same_col {
                edges.push((a, b));
            }
        }
    }
    WeightedGraph::from_edges(names, &edges, vec![Rational::one(); 9]).expect("rook graph")
}

/// The 18-vertex, 9-edge Kochen–Specker scenario as the dual of the rook
/// graph. Every vertex lies in two edges, so a parity count rules out
/// exact transversals.
pub fn ks_18() -> CatalogEntry {
    let s = dual_scenario(&rook_graph(), "ks-18").expect("rook graph has no isolated nodes");
    assert_eq!(s.num_vertices(), 18);
    assert_eq!(s.num_edges(), 9);
    assert!((0..18).all(|v| s.edges_of(v).len() == 2));
    CatalogEntry::new("ks-18", s, "18 outcomes in 9 four-outcome measurements; no deterministic model")
        .with_model("uniform", vec![frac(1, 4); 18])
}

/// Rational stand-in for `√2` with the given denominator.
pub fn sqrt2_approx(denominator: i64) -> Rational {
    exact::from_f64(std::f64::consts::SQRT_2, denominator)
}

pub const TSIRELSON_DENOMINATOR: i64 = 1_000_000_000_000;

/// Models on the CHSH scenario: the PR box, the Tsirelson box and the 16
/// deterministic boxes `det-a0a1b0b1` (Alice outputs `a_x`, Bob `b_y`).
pub fn bell_boxes() -> Result<(Scenario, Vec<(String, ProbModel)>)> {
    bell_boxes_with(TSIRELSON_DENOMINATOR)
}

pub fn bell_boxes_with(denominator: i64) -> Result<(Scenario, Vec<(String, ProbModel)>)> {
    let s = bell_scenario(2, 2, 2, ProductKind::FrBinary)?;
    let event = |id: &str| -> (u8, u8, u8, u8) {
        let b = id.as_bytes();
        (b[0] - b'0', b[1] - b'0', b[3] - b'0', b[4] - b'0')
    };
    let table = |f: &dyn Fn(u8, u8, u8, u8) -> Rational| -> Vec<Rational> {
        s.vertices()
            .iter()
            .map(|id| {
                let (a, b, x, y) = event(id);
                f(a, b, x, y)
            })
            .collect()
    };
    let mut out = Vec::new();
    let pr = table(&|a, b, x, y| if (a ^ b) == (x & y) { frac(1, 2) } else { Rational::zero() });
    out.push(("pr-box".to_string(), models::validate_vector(&s, pr)?));
    let r = sqrt2_approx(denominator);
    let hi = (exact::int(2) + &r) / exact::int(8);
    let lo = (exact::int(2) - &r) / exact::int(8);
    let ts = table(&|a, b, x, y| if (a ^ b) == (x & y) { hi.clone() } else { lo.clone() });
    let tsirelson = models::validate_vector(&s, ts)?
        .with_metadata("approximate", "true")
        .with_metadata("sqrt2", exact::format(&r));
    out.push(("tsirelson-box".to_string(), tsirelson));
    for bits in 0..16u8 {
        let (a0, a1, b0, b1) = (bits >> 3 & 1, bits >> 2 & 1, bits >> 1 & 1, bits & 1);
        let w = table(&|a, b, x, y| {
            let ax = if x == 0 { a0 } else { a1 };
            let by = if y == 0 { b0 } else { b1 };
            if a == ax && b == by {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        out.push((format!("det-{a0}{a1}{b0}{b1}"), models::validate_vector(&s, w)?));
    }
    Ok((s, out))
}

pub fn chsh() -> Result<CatalogEntry> {
    let (s, boxes) = bell_boxes()?;
    let mut e = CatalogEntry::new("chsh", s.clone(), "two parties, two settings, two outcomes");
    e.models = boxes;
    Ok(e.with_prob("uniform", models::uniform_model(&s)?))
}

/// Adds one no-detection vertex to every edge.
pub fn csw_transfer(s: &Scenario) -> Result<Scenario> {
    let mut names: Vec<String> = s.vertices().to_vec();
    let mut edges = s.edges().to_vec();
    for (k, e) in edges.iter_mut().enumerate() {
        names.push(format!("w[{}]", s.edge_names(k).join(",")));
        e.push(s.num_vertices() + k);
    }
    Scenario::from_indexed(format!("csw({})", s.name()), names, edges)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Builds the scenario whose edges are `{u, u', w_e}` for the edges `e` of
/// `NO(s)`, together with the quantum model given by the labeling
/// `v ↦ φ_v` (orthogonal across `NO(s)` edges) and the state `ψ`.
/// Probabilities are rounded to the given denominator; the no-detection
/// weights are then completed exactly.
pub fn yan_extension(
    s: &Scenario,
    labeling: &[Vec<f64>],
    psi: &[f64],
    denominator: i64,
) -> Result<(Scenario, ProbModel)> {
    const EPS: f64 = 1e-9;
    if labeling.len() != s.num_vertices() {
        return Err(Error::Invalid("one labeling vector per vertex is required".into()));
    }
    let unit = |v: &[f64]| (dot(v, v) - 1.0).abs() <= EPS;
    if !unit(psi) || !labeling.iter().all(|v| unit(v)) {
        return Err(Error::Invalid("labeling and state must be unit vectors".into()));
    }
    let no = s.non_orthogonality_graph();
    let arcs = no.edges();
    let name = |v: usize| s.vertices()[v].clone();
    let overlap: Vec<Rational> = labeling
        .iter()
        .map(|phi| {
            let x = dot(psi, phi).powi(2).clamp(0.0, 1.0);
            exact::from_f64(x, denominator)
        })
        .collect();
    let mut names: Vec<String> = s.vertices().to_vec();
    let mut edges = Vec::new();
    let mut weights = overlap.clone();
    for &(u, v) in &arcs {
        if dot(&labeling[u], &labeling[v]).abs() > EPS {
            return Err(Error::LabelingNotOrthogonal(name(u), name(v)));
        }
        let rest = Rational::one() - &overlap[u] - &overlap[v];
        if rest.is_negative() {
            return Err(Error::SubnormalizationViolated(name(u), name(v)));
        }
        edges.push(vec![u, v, names.len()]);
        names.push(format!("w[{},{}]", name(u), name(v)));
        weights.push(rest);
    }
    let hb = Scenario::from_indexed(format!("yan({})", s.name()), names, edges)?;
    let q = models::validate_vector(&hb, weights)?.with_metadata("denominator", denominator.to_string());
    Ok((hb, q))
}

/// The five-cycle scenario: outcomes `0..4`, measurements `{i, i+1}`.
pub fn pentagon() -> CatalogEntry {
    let names: Vec<String> = (0..5).map(|i| format!("u{i}")).collect();
    let edges = (0..5).map(|i| vec![i, (i + 1) % 5]).collect();
    let s = Scenario::from_indexed("pentagon", names, edges).expect("static scenario");
    CatalogEntry::new("pentagon", s, "five two-outcome measurements in a cycle; NO graph is a five-cycle")
        .with_model("half", vec![frac(1, 2); 5])
}

/// An orthonormal labeling of the pentagon scenario's vertices (orthogonal
/// across NO edges) and the state along the symmetry axis, each overlap
/// being `1/√5`.
pub fn pentagon_umbrella() -> (Vec<Vec<f64>>, Vec<f64>) {
    let h2 = 1.0 / 5f64.sqrt();
    let (h, c) = (h2.sqrt(), (1.0 - h2).sqrt());
    // NO-neighbours are i ± 2; stepping the angle by 2·(4π/5) per index makes
    // them consecutive on the umbrella, where the overlap vanishes.
    let labels = (0..5)
        .map(|i| {
            let angle = 2.0 * std::f64::consts::PI * (2 * i * 2 % 5) as f64 / 5.0;
            vec![c * angle.cos(), c * angle.sin(), h]
        })
        .collect();
    (labels, vec![0.0, 0.0, 1.0])
}

fn literal_entry(key: &str, vertices: &[&str], edges: &[&[&str]], note: &str) -> CatalogEntry {
    let s = Scenario::new(key, vertices.iter().copied(), edges.iter().map(|e| e.iter().copied())).expect("static scenario");
    CatalogEntry::new(key, s, note)
}

fn with_deterministic(mut e: CatalogEntry, limit: usize) -> CatalogEntry {
    let dets = models::enumerate_deterministic_with(&e.scenario, models::DETERMINISTIC_NODE_CAP, limit)
        .expect("small catalog scenario");
    for (k, d) in dets.into_iter().enumerate() {
        e = e.with_prob(&format!("deterministic-{k}"), d);
    }
    e
}

/// Three triangles whose inner corners form a further measurement: no
/// probabilistic model at all.
pub fn h0_empty() -> CatalogEntry {
    let mut vertices = Vec::new();
    let mut edges: Vec<Vec<String>> = Vec::new();
    for t in 1..=3 {
        let tri: Vec<String> = (1..=3).map(|k| format!("t{t}{k}")).collect();
        edges.push(vec![tri[0].clone(), tri[1].clone()]);
        edges.push(vec![tri[1].clone(), tri[2].clone()]);
        edges.push(vec![tri[0].clone(), tri[2].clone()]);
        vertices.extend(tri);
    }
    edges.push(vec!["t11".into(), "t21".into(), "t31".into()]);
    let s = Scenario::new("h0-empty", vertices, edges).expect("static scenario");
    CatalogEntry::new("h0-empty", s, "three triangles joined by a measurement on one corner of each; G is empty")
}

/// `H_A, H_B, H_C` on which the binary product fails to be associative.
pub fn nonassoc_triple() -> [CatalogEntry; 3] {
    let a = literal_entry("nonassoc-a", &["a1", "a2"], &[&["a1", "a2"]], "single two-outcome measurement");
    let b = literal_entry("nonassoc-b", &["b1", "b2", "b3"], &[&["b1", "b2"], &["b2", "b3"]], "two overlapping measurements");
    let c = literal_entry("nonassoc-c", &["c1", "c2", "c3"], &[&["c1", "c2"], &["c2", "c3"]], "two overlapping measurements");
    [with_deterministic(a, 4), with_deterministic(b, 4), with_deterministic(c, 4)]
}

const GADGET_VERTICES: [&str; 10] = ["t", "t'", "r", "r'", "w'", "x", "y'", "w", "x'", "y"];
const GADGET_EDGES: [&[&str]; 7] = [
    &["t", "r"],
    &["r'", "t'"],
    &["t", "r'"],
    &["w'", "r", "t'"],
    &["x", "y'", "w'"],
    &["y'", "w", "x'"],
    &["w'", "x'", "y"],
];

/// The forcing gadget without (`gadget`) and with (`gadget-prime`) the edge
/// `{w', x', y'}`. Both have the same vertices and NO graph; only the
/// second forces `p(w) = 0`.
pub fn gadgets() -> (CatalogEntry, CatalogEntry) {
    let g = literal_entry("gadget", &GADGET_VERTICES, &GADGET_EDGES, "forcing gadget; w' vanishes, w is free");
    let mut edges: Vec<&[&str]> = GADGET_EDGES.to_vec();
    edges.push(&["w'", "x'", "y'"]);
    let gp = literal_entry("gadget-prime", &GADGET_VERTICES, &edges, "forcing gadget with the extra edge; w vanishes too");
    assert_eq!(g.scenario.vertices(), gp.scenario.vertices());
    assert!(g.scenario.non_orthogonality_graph().same_labeled(&gp.scenario.non_orthogonality_graph()));
    (with_deterministic(g, 4), with_deterministic(gp, 4))
}

/// Scenario (a): `{v1,v2,v3} ≃ {w1,w2}` although neither is an edge.
pub fn virtual_edge_scenario() -> CatalogEntry {
    let e = literal_entry(
        "virtual-a",
        &["v1", "v2", "v3", "a", "b", "w1", "w2"],
        &[&["v3", "a"], &["a", "b"], &["v1", "w1"], &["v1", "v2", "b"], &["v2", "v3", "w2"]],
        "two virtual edges {v1,v2,v3} and {w1,w2}",
    );
    with_deterministic(e, 4)
}

/// Scenario (b): the pentagon with outcomes `u0..u4`; `{u1, u4}` is
/// virtual.
pub fn equivalent_pentagon() -> CatalogEntry {
    let mut e = pentagon();
    e.key = "virtual-b".into();
    e.scenario = e.scenario.with_name("virtual-b");
    e.note = "pentagon; every singleton is equivalent to every other".into();
    e.models.clear();
    e.with_model("half", vec![frac(1, 2); 5])
}

/// A pentagon of edges `{v, u_k, u_{k+1}}` glued to a part forcing
/// `p(v) = 1`: NO is not perfect, yet `C = G`.
pub fn imperfect_classical() -> CatalogEntry {
    let mut edges: Vec<Vec<String>> =
        (0..5).map(|k| vec!["v".to_string(), format!("u{k}"), format!("u{}", (k + 1) % 5)]).collect();
    for e in [["v", "x"], ["b", "d"], ["a", "c"], ["c", "d"]] {
        edges.push(e.iter().map(|s| s.to_string()).collect());
    }
    edges.push(vec!["x".into(), "a".into(), "b".into()]);
    let mut vertices: Vec<String> = vec!["v".into()];
    vertices.extend((0..5).map(|k| format!("u{k}")));
    vertices.extend(["x", "a", "b", "c", "d"].map(String::from));
    let s = Scenario::new("imperfect-classical", vertices, edges).expect("static scenario");
    with_deterministic(CatalogEntry::new("imperfect-classical", s, "C = G although NO has an odd antihole"), 4)
}

/// The small hand-made scenarios: the empty one, the non-associativity
/// triple, both gadgets, the two virtual-edge scenarios and the imperfect
/// classical scenario.
pub fn special_scenarios() -> Vec<CatalogEntry> {
    let [a, b, c] = nonassoc_triple();
    let (g, gp) = gadgets();
    vec![h0_empty(), a, b, c, g, gp, virtual_edge_scenario(), equivalent_pentagon(), imperfect_classical()]
}

/// `J_n`: 3-subsets of `{1..n}` as outcomes, one measurement per partition
/// of `{1..n}` into 4-sets, containing the 3-subsets inside its blocks.
pub fn j_scenario(n: usize) -> Result<CatalogEntry> {
    if !n.is_multiple_of(4) || n < 12 {
        return Err(Error::Invalid("J_n needs n divisible by 4 and n >= 12".into()));
    }
    let triples: Vec<[usize; 3]> =
        (0..n).flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c]))).collect();
    let index = |t: [usize; 3]| triples.binary_search(&t).expect("sorted triple");
    let names = triples.iter().map(|t| format!("{}-{}-{}", t[0] + 1, t[1] + 1, t[2] + 1)).collect();
    let mut edges = Vec::new();
    let mut blocks: Vec<[usize; 4]> = Vec::new();
    fn partitions(left: &mut BTreeSet<usize>, blocks: &mut Vec<[usize; 4]>, out: &mut dyn FnMut(&[[usize; 4]])) {
        let Some(&first) = left.iter().next() else {
            out(blocks);
            return;
        };
        left.remove(&first);
        let rest: Vec<usize> = left.iter().copied().collect();
        for i in 0..rest.len() {
            for j in i + 1..rest.len() {
                for k in j + 1..rest.len() {
                    let block = [first, rest[i], rest[j], rest[k]];
                    for x in &block[1..] {
                        left.remove(x);
                    }
                    blocks.push(block);
                    partitions(left, blocks, out);
                    blocks.pop();
                    for x in &block[1..] {
                        left.insert(*x);
                    }
                }
            }
        }
        left.insert(first);
    }
    let mut left: BTreeSet<usize> = (0..n).collect();
    partitions(&mut left, &mut blocks, &mut |bs| {
        let mut e: Vec<usize> = Vec::with_capacity(n);
        for b in bs {
            for skip in 0..4 {
                let t: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| b[i]).collect();
                e.push(index([t[0], t[1], t[2]]));
            }
        }
        edges.push(e);
    });
    let s = Scenario::from_indexed(format!("j-{n}"), names, edges)?;
    let count = s.num_vertices();
    Ok(CatalogEntry::new(&format!("j-{n}"), s, "3-subsets as outcomes, measurements from partitions into 4-sets")
        .with_model("uniform", vec![frac(1, n as i64); count]))
}

/// Keys accepted by [`get`], with a one-line description each.
pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("triangle", "three pairwise orthogonal outcomes"),
        ("pentagon", "five-cycle of two-outcome measurements"),
        ("circular-N", "n-circular hypergraph, N >= 3 (N = 5 is the KCBS scenario)"),
        ("antiprism-N", "n-antiprism, N >= 3"),
        ("mat-M", "dual of the complete graph K_M"),
        ("ks-18", "18-vertex Kochen-Specker scenario"),
        ("chsh", "two-party Bell scenario with PR, Tsirelson and deterministic boxes"),
        ("h0-empty", "scenario without probabilistic models"),
        ("nonassoc-a", "first factor of the non-associativity triple"),
        ("nonassoc-b", "second factor of the non-associativity triple"),
        ("nonassoc-c", "third factor of the non-associativity triple"),
        ("gadget", "forcing gadget"),
        ("gadget-prime", "forcing gadget with the extra edge"),
        ("virtual-a", "scenario with virtual edges {v1,v2,v3} and {w1,w2}"),
        ("virtual-b", "pentagon whose singletons are all equivalent"),
        ("imperfect-classical", "C = G with an imperfect NO graph"),
        ("csw-pentagon", "no-detection transfer of the pentagon"),
        ("yan-pentagon", "Yan extension of the pentagon with its quantum model"),
        ("j-N", "3-subsets of {1..N}, N divisible by 4 and >= 12"),
    ]
}

fn parametric(key: &str, prefix: &str) -> Option<usize> {
    key.strip_prefix(prefix)?.parse().ok()
}

/// Looks up a catalog entry by key.
pub fn get(key: &str) -> Result<CatalogEntry> {
    if let Some(n) = parametric(key, "circular-") {
        return circular(n);
    }
    if let Some(n) = parametric(key, "antiprism-") {
        return antiprism(n);
    }
    if let Some(m) = parametric(key, "mat-") {
        return matching(m);
    }
    if let Some(n) = parametric(key, "j-") {
        return j_scenario(n);
    }
    let [a, b, c] = nonassoc_triple();
    let (g, gp) = gadgets();
    Ok(match key {
        "triangle" => triangle(),
        "pentagon" => pentagon(),
        "ks-18" => ks_18(),
        "chsh" => chsh()?,
        "h0-empty" => h0_empty(),
        "nonassoc-a" => a,
        "nonassoc-b" => b,
        "nonassoc-c" => c,
        "gadget" => g,
        "gadget-prime" => gp,
        "virtual-a" => virtual_edge_scenario(),
        "virtual-b" => equivalent_pentagon(),
        "imperfect-classical" => imperfect_classical(),
        "csw-pentagon" => {
            let s = csw_transfer(&pentagon().scenario)?.with_name("csw-pentagon");
            with_deterministic(CatalogEntry::new("csw-pentagon", s, "pentagon with a no-detection outcome per measurement"), 4)
        }
        "yan-pentagon" => {
            let (labels, psi) = pentagon_umbrella();
            let (s, q) = yan_extension(&pentagon().scenario, &labels, &psi, TSIRELSON_DENOMINATOR)?;
            let s = s.with_name("yan-pentagon");
            let q = models::validate_vector(&s, q.weights().to_vec())?.with_metadata("approximate", "true");
            CatalogEntry::new("yan-pentagon", s, "Yan extension of the pentagon; the bundled model is quantum").with_prob("quantum", q)
        }
        other => return Err(Error::Invalid(format!("unknown catalog key `{other}`"))),
    })
}

/// The entries used for batch checks: every fixed key plus small members of
/// the parametric families.
pub fn standard_entries() -> Result<Vec<CatalogEntry>> {
    let mut keys: Vec<String> = list()
        .into_iter()
        .map(|(k, _)| k.to_string())
        .filter(|k| !k.ends_with("-N") && !k.ends_with("-M"))
        .collect();
    keys.extend((3..=7).map(|n| format!("circular-{n}")));
    keys.extend((3..=7).map(|n| format!("antiprism-{n}")));
    keys.extend((3..=7).map(|m| format!("mat-{m}")));
    keys.iter().map(|k| get(k)).collect()
}
