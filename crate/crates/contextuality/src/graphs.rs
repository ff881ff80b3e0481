//! Vertex-weighted graphs and their invariants: the weighted independence
//! number α, the fractional packing number α*, the Lovász number ϑ and
//! bounds on the Shannon capacity Θ, together with the strong product,
//! disjoint union and blow-up constructions.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{budget, Error, Result};
use crate::exact::{self, Rational};
use crate::solvers::{sdp_solve, Entry, LinearProgram, Relation, SdpOptions, SdpProblem, SolveReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    names: Vec<String>,
    adj: Vec<FixedBitSet>,
    weights: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
    #[serde(default)]
    weights: Option<HashMap<String, String>>,
}

impl WeightedGraph {
    pub fn from_bitsets(names: Vec<String>, adj: Vec<FixedBitSet>, weights: Vec<Rational>) -> Result<Self> {
        let n = names.len();
        if adj.len() != n || weights.len() != n {
            return Err(Error::Invalid("adjacency and weights must have one entry per vertex".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &names {
            if !seen.insert(v) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut adj = adj;
        for row in adj.iter_mut() {
            row.grow(n);
        }
        for u in 0..n {
            if adj[u].contains(u) {
                return Err(Error::Invalid(format!("self-loop at `{}`", names[u])));
            }
            for v in adj[u].ones() {
                if v >= n || !adj[v].contains(u) {
                    return Err(Error::Invalid("adjacency is not symmetric".into()));
                }
            }
            if weights[u].is_negative() {
                return Err(Error::NegativeWeight(names[u].clone()));
            }
        }
        Ok(WeightedGraph { names, adj, weights })
    }

    pub fn from_edges(names: Vec<String>, edges: &[(usize, usize)], weights: Vec<Rational>) -> Result<Self> {
        let n = names.len();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Invalid(format!("bad edge ({u}, {v})")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Self::from_bitsets(names, adj, weights)
    }

    /// Unit-weight graph on vertices `0..n` named by their index.
    pub fn unit(n: usize, edges: &[(usize, usize)]) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_edges(names, edges, vec![Rational::one(); n]).expect("valid edge list")
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::unit(n, &edges)
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::unit(n, &edges)
    }

    pub fn edgeless(n: usize) -> Self {
        Self::unit(n, &[])
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|v| v == name)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    pub fn total_weight(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.num_vertices() {
            for v in self.adj[u].ones() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn with_weights(&self, weights: Vec<Rational>) -> Result<Self> {
        Self::from_bitsets(self.names.clone(), self.adj.clone(), weights)
    }

    pub fn with_unit_weights(&self) -> Self {
        self.with_weights(vec![Rational::one(); self.num_vertices()]).expect("unit weights are valid")
    }

    /// Weight assignment by vertex name; missing names are an error.
    pub fn with_named_weights(&self, w: &HashMap<String, Rational>) -> Result<Self> {
        let weights = self
            .names
            .iter()
            .map(|v| w.get(v).cloned().ok_or_else(|| Error::MissingWeight(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.with_weights(weights)
    }

    pub fn complement(&self) -> Self {
        let n = self.num_vertices();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for u in 0..n {
            for v in 0..n {
                if u != v && !self.adj[u].contains(v) {
                    adj[u].insert(v);
                }
            }
        }
        WeightedGraph { names: self.names.clone(), adj, weights: self.weights.clone() }
    }

    /// Induced subgraph on the listed vertices, in the given order.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let k = keep.len();
        let mut adj = vec![FixedBitSet::with_capacity(k); k];
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate() {
                if self.adj[u].contains(v) {
                    adj[a].insert(b);
                }
            }
        }
        WeightedGraph {
            names: keep.iter().map(|&v| self.names[v].clone()).collect(),
            adj,
            weights: keep.iter().map(|&v| self.weights[v].clone()).collect(),
        }
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.adj[u].contains(v)))
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| self.adj[u].contains(v)))
    }

    pub fn set_weight(&self, set: &[usize]) -> Rational {
        set.iter().map(|&v| self.weights[v].clone()).sum()
    }

    /// Same vertex names and, under the name correspondence, the same
    /// adjacency and weights.
    pub fn same_labeled(&self, other: &WeightedGraph) -> bool {
        if self.num_vertices() != other.num_vertices() {
            return false;
        }
        let pos: HashMap<&str, usize> = other.names.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let Some(map) = self.names.iter().map(|v| pos.get(v.as_str()).copied()).collect::<Option<Vec<_>>>() else {
            return false;
        };
        let n = self.num_vertices();
        (0..n).all(|u| {
            self.weights[u] == other.weights[map[u]]
                && (0..n).all(|v| self.adj[u].contains(v) == other.adj[map[u]].contains(map[v]))
        })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let j = GraphJson {
            vertices: self.names.clone(),
            edges: self.edges().into_iter().map(|(u, v)| [self.names[u].clone(), self.names[v].clone()]).collect(),
            weights: Some(self.names.iter().cloned().zip(self.weights.iter().map(exact::format)).collect()),
        };
        let mut v = serde_json::to_value(j).expect("plain data serializes");
        if let Some(w) = v.get_mut("weights") {
            // Emit weights in vertex order for deterministic output.
            let ordered: serde_json::Map<String, serde_json::Value> = self
                .names
                .iter()
                .zip(&self.weights)
                .map(|(n, q)| (n.clone(), serde_json::Value::String(exact::format(q))))
                .collect();
            *w = serde_json::Value::Object(ordered);
        }
        v
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let j: GraphJson = serde_json::from_value(v.clone())?;
        let pos: HashMap<&str, usize> = j.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut edges = Vec::with_capacity(j.edges.len());
        for [a, b] in &j.edges {
            let u = *pos.get(a.as_str()).ok_or_else(|| Error::UnknownVertex(a.clone()))?;
            let w = *pos.get(b.as_str()).ok_or_else(|| Error::UnknownVertex(b.clone()))?;
            edges.push((u, w));
        }
        let weights = match &j.weights {
            None => vec![Rational::one(); j.vertices.len()],
            Some(w) => j
                .vertices
                .iter()
                .map(|v| w.get(v).ok_or_else(|| Error::MissingWeight(v.clone())).and_then(|s| exact::parse(s)))
                .collect::<Result<Vec<_>>>()?,
        };
        Self::from_edges(j.vertices.clone(), &edges, weights)
    }
}

/// Default cap on the number of vertices a product construction may create.
pub const PRODUCT_SIZE_CAP: usize = 20_000;

/// Strong product: `(u,v) ~ (u',v')` iff the pairs differ and each
/// coordinate is equal or adjacent. Vertex names are joined with `⊗` and
/// weights multiply.
pub fn strong_product(g: &WeightedGraph, h: &WeightedGraph) -> Result<WeightedGraph> {
    let (n, m) = (g.num_vertices(), h.num_vertices());
    let size = n * m;
    if size > PRODUCT_SIZE_CAP {
        return Err(Error::SizeCap { size, cap: PRODUCT_SIZE_CAP });
    }
    let mut names = Vec::with_capacity(size);
    let mut weights = Vec::with_capacity(size);
    for u in 0..n {
        for v in 0..m {
            names.push(format!("{}⊗{}", g.names[u], h.names[v]));
            weights.push(&g.weights[u] * &h.weights[v]);
        }
    }
    let mut adj = vec![FixedBitSet::with_capacity(size); size];
    for u in 0..n {
        let mut gu = g.adj[u].clone();
        gu.insert(u);
        for v in 0..m {
            let mut hv = h.adj[v].clone();
            hv.insert(v);
            let row = &mut adj[u * m + v];
            for u2 in gu.ones() {
                for v2 in hv.ones() {
                    row.insert(u2 * m + v2);
                }
            }
            row.set(u * m + v, false);
        }
    }
    Ok(WeightedGraph { names, adj, weights })
}

pub fn strong_power(g: &WeightedGraph, n: usize) -> Result<WeightedGraph> {
    assert!(n >= 1, "strong power needs n >= 1");
    let mut out = g.clone();
    for _ in 1..n {
        out = strong_product(&out, g)?;
    }
    Ok(out)
}

/// Disjoint union with vertex names tagged `l:` and `r:`.
pub fn disjoint_union(g: &WeightedGraph, h: &WeightedGraph) -> WeightedGraph {
    let (n, m) = (g.num_vertices(), h.num_vertices());
    let mut adj = vec![FixedBitSet::with_capacity(n + m); n + m];
    for u in 0..n {
        for v in g.adj[u].ones() {
            adj[u].insert(v);
        }
    }
    for u in 0..m {
        for v in h.adj[u].ones() {
            adj[n + u].insert(n + v);
        }
    }
    let names = g.names.iter().map(|v| format!("l:{v}")).chain(h.names.iter().map(|v| format!("r:{v}"))).collect();
    let weights = g.weights.iter().chain(&h.weights).cloned().collect();
    WeightedGraph { names, adj, weights }
}

/// Blow-up of a graph with natural-number weights: each vertex `v` becomes
/// `p(v)` pairwise non-adjacent copies `v#1..v#p(v)`, adjacent to all copies
/// of the neighbours of `v`. Zero-weight vertices disappear.
pub fn blow_up(g: &WeightedGraph) -> Result<WeightedGraph> {
    let mut copies = Vec::with_capacity(g.num_vertices());
    for (v, w) in g.weights.iter().enumerate() {
        if !w.is_integer() {
            return Err(Error::NonIntegerWeight(g.names[v].clone()));
        }
        let k = w.to_integer().to_usize().ok_or_else(|| Error::NonIntegerWeight(g.names[v].clone()))?;
        copies.push(k);
    }
    let total: usize = copies.iter().sum();
    if total == 0 {
        return Err(Error::Invalid("blow-up of an all-zero weighting is empty".into()));
    }
    if total > PRODUCT_SIZE_CAP {
        return Err(Error::SizeCap { size: total, cap: PRODUCT_SIZE_CAP });
    }
    let mut owner = Vec::with_capacity(total);
    let mut names = Vec::with_capacity(total);
    for (v, &k) in copies.iter().enumerate() {
        for c in 1..=k {
            owner.push(v);
            names.push(format!("{}#{c}", g.names[v]));
        }
    }
    let mut adj = vec![FixedBitSet::with_capacity(total); total];
    for a in 0..total {
        for b in 0..total {
            if g.adj[owner[a]].contains(owner[b]) {
                adj[a].insert(b);
            }
        }
    }
    Ok(WeightedGraph { names, adj, weights: vec![Rational::one(); total] })
}

#[derive(Clone, Debug)]
pub struct AlphaResult {
    pub value: Rational,
    /// Independent set (vertex indices) attaining `value`.
    pub witness: Vec<usize>,
    /// Set when the search stopped early because `value` exceeded the
    /// requested target; `value` is then only a lower bound.
    pub stopped_early: bool,
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct AlphaOptions {
    pub max_vertices: usize,
    pub max_nodes: u64,
}

impl Default for AlphaOptions {
    fn default() -> Self {
        AlphaOptions { max_vertices: 400, max_nodes: 50_000_000 }
    }
}

struct Bnb<'a> {
    adj: Vec<FixedBitSet>,
    w: Vec<u128>,
    order: &'a [usize],
    best: u128,
    best_set: Vec<usize>,
    nodes: u64,
    cap: u64,
    target: Option<u128>,
}

impl Bnb<'_> {
    /// Greedy clique cover of `cand`; each clique contributes its heaviest
    /// member, which is its first since indices run by decreasing weight.
    fn bound(&self, cand: &FixedBitSet) -> u128 {
        let mut rest = cand.clone();
        let mut total = 0u128;
        while let Some(v) = rest.ones().next() {
            total += self.w[v];
            rest.set(v, false);
            let mut ext = rest.clone();
            ext.intersect_with(&self.adj[v]);
            while let Some(u) = ext.ones().next() {
                rest.set(u, false);
                ext.intersect_with(&self.adj[u]);
            }
        }
        total
    }

    fn done(&self) -> bool {
        self.target.is_some_and(|t| self.best > t)
    }

    fn expand(&mut self, cand: FixedBitSet, cur: &mut Vec<usize>, w: u128) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(budget("independence number branch and bound", self.cap));
        }
        if w > self.best {
            self.best = w;
            self.best_set = cur.iter().map(|&i| self.order[i]).collect();
        }
        if self.done() {
            return Ok(());
        }
        let Some(v) = cand.ones().next() else { return Ok(()) };
        if w + self.bound(&cand) <= self.best {
            return Ok(());
        }
        let mut with = cand.clone();
        with.difference_with(&self.adj[v]);
        with.set(v, false);
        cur.push(v);
        self.expand(with, cur, w + self.w[v])?;
        cur.pop();
        if self.done() {
            return Ok(());
        }
        let mut without = cand;
        without.set(v, false);
        self.expand(without, cur, w)
    }
}

fn integer_weights(weights: &[Rational]) -> Result<(Vec<u128>, BigInt)> {
    let d = exact::common_denominator(weights);
    let scaled = weights
        .iter()
        .map(|q| {
            (q * Rational::from_integer(d.clone()))
                .to_integer()
                .to_u128()
                .ok_or_else(|| Error::Invalid("weights too large for exact branch and bound".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let total: u128 = scaled.iter().fold(0u128, |a, b| a.saturating_add(*b));
    if total > u128::MAX / 4 {
        return Err(Error::Invalid("weights too large for exact branch and bound".into()));
    }
    Ok((scaled, d))
}

pub fn alpha(g: &WeightedGraph) -> Result<AlphaResult> {
    alpha_with(g, None, &AlphaOptions::default())
}

/// Weighted independence number by branch and bound. With a `target`, the
/// search stops as soon as an independent set heavier than it is found.
pub fn alpha_with(g: &WeightedGraph, target: Option<&Rational>, opts: &AlphaOptions) -> Result<AlphaResult> {
    let active: Vec<usize> = (0..g.num_vertices()).filter(|&v| g.weights[v].is_positive()).collect();
    if active.len() > opts.max_vertices {
        return Err(Error::SizeCap { size: active.len(), cap: opts.max_vertices });
    }
    if active.is_empty() {
        return Ok(AlphaResult { value: Rational::zero(), witness: vec![], stopped_early: false, nodes: 0 });
    }
    let (w_all, denom) = integer_weights(&g.weights)?;
    // Heavier vertices first, then fewer neighbours, then canonical order.
    let mut order = active.clone();
    order.sort_by(|&a, &b| {
        w_all[b]
            .cmp(&w_all[a])
            .then_with(|| g.degree(a).cmp(&g.degree(b)))
            .then_with(|| a.cmp(&b))
    });
    let k = order.len();
    let mut adj = vec![FixedBitSet::with_capacity(k); k];
    for i in 0..k {
        for j in 0..k {
            if g.adj[order[i]].contains(order[j]) {
                adj[i].insert(j);
            }
        }
    }
    let w: Vec<u128> = order.iter().map(|&v| w_all[v]).collect();
    let target_scaled = match target {
        None => None,
        Some(t) => {
            let s = t * Rational::from_integer(denom.clone());
            // best > t  ⇔  best > floor(t·d) for integer best.
            Some(s.floor().to_integer().to_u128().unwrap_or(u128::MAX / 2))
        }
    };
    let mut bnb = Bnb { adj, w, order: &order, best: 0, best_set: vec![], nodes: 0, cap: opts.max_nodes, target: target_scaled };
    let mut all = FixedBitSet::with_capacity(k);
    all.insert_range(..);
    bnb.expand(all, &mut Vec::new(), 0)?;
    let stopped_early = bnb.done();
    let mut witness = bnb.best_set.clone();
    witness.sort_unstable();
    let value = g.set_weight(&witness);
    debug_assert_eq!(value, Rational::new(BigInt::from(bnb.best), denom));
    Ok(AlphaResult { value, witness, stopped_early, nodes: bnb.nodes })
}

/// All maximal cliques by Bron–Kerbosch with Tomita pivoting.
pub fn maximal_cliques(g: &WeightedGraph, cap: usize) -> Result<Vec<Vec<usize>>> {
    fn rec(
        g: &WeightedGraph,
        r: &mut Vec<usize>,
        mut p: FixedBitSet,
        mut x: FixedBitSet,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if p.is_clear() && x.is_clear() {
            if out.len() >= cap {
                return Err(budget("maximal clique enumeration", cap as u64));
            }
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return Ok(());
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| p.intersection(&g.adj[u]).count())
            .expect("p or x is non-empty");
        let mut cand = p.clone();
        cand.difference_with(&g.adj[pivot]);
        for v in cand.ones().collect::<Vec<_>>() {
            let mut p2 = p.clone();
            p2.intersect_with(&g.adj[v]);
            let mut x2 = x.clone();
            x2.intersect_with(&g.adj[v]);
            r.push(v);
            rec(g, r, p2, x2, out, cap)?;
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
        Ok(())
    }
    let n = g.num_vertices();
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let mut out = Vec::new();
    rec(g, &mut Vec::new(), p, FixedBitSet::with_capacity(n), &mut out, cap)?;
    out.sort();
    Ok(out)
}

pub const CLIQUE_CAP: usize = 100_000;

#[derive(Clone, Debug)]
pub struct AlphaStarResult {
    pub value: Rational,
    /// Optimal fractional packing `q`.
    pub packing: Vec<Rational>,
    /// Optimal fractional clique cover: one multiplier per maximal clique.
    pub cover: Vec<(Vec<usize>, Rational)>,
}

/// Weighted fractional packing number: `max Σ p(v) q(v)` with `q ≥ 0` and
/// `q(C) ≤ 1` on every clique. Maximal cliques suffice.
pub fn alpha_star(g: &WeightedGraph) -> Result<AlphaStarResult> {
    let active: Vec<usize> = (0..g.num_vertices()).filter(|&v| g.weights[v].is_positive()).collect();
    let n = g.num_vertices();
    if active.is_empty() {
        return Ok(AlphaStarResult { value: Rational::zero(), packing: vec![Rational::zero(); n], cover: vec![] });
    }
    let sub = g.induced(&active);
    let cliques = maximal_cliques(&sub, CLIQUE_CAP)?;
    let k = active.len();
    let mut lp = LinearProgram::new(k).maximize(sub.weights.clone());
    for c in &cliques {
        let terms: Vec<(usize, Rational)> = c.iter().map(|&v| (v, Rational::one())).collect();
        lp.add_sparse(&terms, Relation::Le, Rational::one());
    }
    let r = lp.solve();
    let (Some(value), Some(x), Some(y)) = (r.value, r.x, r.duals) else {
        return Err(Error::Invalid("fractional packing LP did not reach an optimum".into()));
    };
    let mut packing = vec![Rational::zero(); n];
    for (i, &v) in active.iter().enumerate() {
        packing[v] = x[i].clone();
    }
    let cover = cliques
        .into_iter()
        .zip(y)
        .filter(|(_, m)| !m.is_zero())
        .map(|(c, m)| (c.into_iter().map(|i| active[i]).collect(), m))
        .collect();
    Ok(AlphaStarResult { value, packing, cover })
}

#[derive(Clone, Debug)]
pub struct ThetaReport {
    /// Primal objective of the returned near-optimal point.
    pub value: f64,
    /// Upper bound from the dual iterate (the quantity used for decisions).
    pub upper: f64,
    pub report: Option<SolveReport>,
}

/// The semidefinite program whose optimum is ϑ(G,p), on the positive-weight
/// vertices: maximize `Σ √(p_u p_v) X_uv` over `X ⪰ 0`, `tr X = 1`,
/// `X_uv = 0` for adjacent `u, v`.
pub fn theta_problem(g: &WeightedGraph) -> (SdpProblem, Vec<usize>) {
    let active: Vec<usize> = (0..g.num_vertices()).filter(|&v| g.weights[v].is_positive()).collect();
    let k = active.len();
    let sq: Vec<f64> = active.iter().map(|&v| exact::to_f64(&g.weights[v]).sqrt()).collect();
    let mut p = SdpProblem::new(vec![k.max(1)]);
    p.constrain((0..k).map(|i| Entry::new(0, i, i, 1.0)).collect(), 1.0);
    for i in 0..k {
        for j in i + 1..k {
            if g.adj[active[i]].contains(active[j]) {
                p.constrain(vec![Entry::new(0, i, j, 1.0)], 0.0);
            }
        }
    }
    for i in 0..k {
        for j in i..k {
            let c = if i == j { sq[i] * sq[i] } else { 2.0 * sq[i] * sq[j] };
            p.objective.push(Entry::new(0, i, j, c));
        }
    }
    p.trace_bound = Some(1.0);
    (p, active)
}

pub fn lovasz_theta(g: &WeightedGraph, opts: &SdpOptions) -> Result<ThetaReport> {
    let (problem, active) = theta_problem(g);
    if active.is_empty() {
        return Ok(ThetaReport { value: 0.0, upper: 0.0, report: None });
    }
    let r = sdp_solve(&problem, opts)?;
    let upper = r.dual_bound.unwrap_or(r.value);
    Ok(ThetaReport { value: r.value, upper, report: Some(r) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SingleShot {
    Confirmed,
    Refuted,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct CapacityBounds {
    /// `(n, α(G^⊠n, p^⊗n))` for every power tried.
    pub alphas: Vec<(usize, Rational)>,
    /// Power with the best lower bound `α_n^{1/n}`.
    pub best_power: usize,
    pub lower: f64,
    pub upper: f64,
    pub single_shot: SingleShot,
}

/// Compares `a^(1/m)` against `b^(1/n)` exactly, as `a^n` against `b^m`.
fn root_cmp(a: &Rational, m: usize, b: &Rational, n: usize) -> std::cmp::Ordering {
    let pa = num_traits::pow(a.clone(), n);
    let pb = num_traits::pow(b.clone(), m);
    pa.cmp(&pb)
}

pub fn capacity_bounds(g: &WeightedGraph, max_power: usize, opts: &SdpOptions) -> Result<CapacityBounds> {
    assert!(max_power >= 1, "max_power must be positive");
    let mut alphas = Vec::new();
    let mut power = g.clone();
    for n in 1..=max_power {
        if n > 1 {
            power = strong_product(&power, g)?;
        }
        alphas.push((n, alpha(&power)?.value));
    }
    let mut best = 0;
    for i in 1..alphas.len() {
        if root_cmp(&alphas[i].1, alphas[i].0, &alphas[best].1, alphas[best].0) == std::cmp::Ordering::Greater {
            best = i;
        }
    }
    let (bn, ba) = alphas[best].clone();
    let lower = exact::to_f64(&ba).powf(1.0 / bn as f64);
    let theta = lovasz_theta(g, opts)?;
    let a1 = exact::to_f64(&alphas[0].1);
    let single_shot = if best != 0 {
        SingleShot::Refuted
    } else if (theta.upper - a1).abs() <= 10.0 * opts.tol.max(1e-9) * (1.0 + a1) {
        SingleShot::Confirmed
    } else {
        SingleShot::Unknown
    };
    Ok(CapacityBounds { alphas, best_power: bn, lower, upper: theta.upper, single_shot })
}
