//! Contextuality scenarios: hypergraphs whose vertices are measurement
//! outcomes and whose edges are the complete measurements.
//!
//! Every [`Scenario`] is stored in canonical form. Vertex ids are sorted
//! lexicographically, each edge is a sorted list of vertex indices, and the
//! edge list itself is sorted and free of duplicates. Two scenarios are
//! equal when their canonical vertex and edge lists agree; the name is a
//! label only.

mod equivalence;

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::WeightedGraph;

pub use equivalence::{
    completion_check, saturate_equivalences, saturate_with_focus, CompletionVerdict,
    EquivClassTable, SaturationBudget,
};

pub type VertexId = String;

#[derive(Clone, Debug)]
pub struct Scenario {
    name: String,
    vertices: Vec<VertexId>,
    edges: Vec<Vec<usize>>,
    index: HashMap<VertexId, usize>,
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for Scenario {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Scenario {}

#[derive(Serialize, Deserialize)]
struct ScenarioJson {
    name: String,
    vertices: Vec<String>,
    edges: Vec<Vec<String>>,
}

impl Scenario {
    /// Builds and canonicalizes a scenario from vertex ids and edges given by
    /// vertex ids.
    pub fn new<S, E, T>(name: impl Into<String>, vertices: impl IntoIterator<Item = S>, edges: E) -> Result<Self>
    where
        S: Into<String>,
        E: IntoIterator<Item = T>,
        T: IntoIterator,
        T::Item: AsRef<str>,
    {
        let names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut pos = HashMap::with_capacity(names.len());
        for (i, v) in names.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::EmptyVertexId);
            }
            if pos.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut indexed = Vec::new();
        for (k, edge) in edges.into_iter().enumerate() {
            let mut e = Vec::new();
            for v in edge {
                let v = v.as_ref();
                match pos.get(v) {
                    Some(&i) => e.push(i),
                    None => {
                        return Err(Error::EdgeWithUnknownVertex { edge: k, vertex: v.to_string() })
                    }
                }
            }
            indexed.push(e);
        }
        Self::from_indexed(name, names, indexed)
    }

    /// Builds a scenario whose edges are given as indices into `names`.
    pub fn from_indexed(name: impl Into<String>, names: Vec<String>, edges: Vec<Vec<usize>>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        for v in &names {
            if v.is_empty() {
                return Err(Error::EmptyVertexId);
            }
        }
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        for w in order.windows(2) {
            if names[w[0]] == names[w[1]] {
                return Err(Error::DuplicateVertex(names[w[0]].clone()));
            }
        }
        let mut rank = vec![0; names.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let vertices: Vec<String> = order.iter().map(|&i| names[i].clone()).collect();
        let mut set = BTreeSet::new();
        for (k, e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(Error::EmptyEdge(k));
            }
            let mut c: Vec<usize> = Vec::with_capacity(e.len());
            for i in e {
                if i >= names.len() {
                    return Err(Error::EdgeWithUnknownVertex { edge: k, vertex: format!("#{i}") });
                }
                c.push(rank[i]);
            }
            c.sort_unstable();
            c.dedup();
            set.insert(c);
        }
        let edges: Vec<Vec<usize>> = set.into_iter().collect();
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (k, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(k);
            }
        }
        if let Some(v) = incidence.iter().position(Vec::is_empty) {
            return Err(Error::UncoveredVertex(vertices[v].clone()));
        }
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Ok(Scenario { name: name.into(), vertices, edges, index, incidence })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn vertex_indices<'a>(&self, ids: impl IntoIterator<Item = &'a str>) -> Result<Vec<usize>> {
        ids.into_iter()
            .map(|id| self.vertex_index(id).ok_or_else(|| Error::UnknownVertex(id.to_string())))
            .collect()
    }

    /// Edges containing vertex `v`.
    pub fn edges_of(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn edge_names(&self, k: usize) -> Vec<String> {
        self.edges[k].iter().map(|&v| self.vertices[v].clone()).collect()
    }

    pub fn has_edge(&self, ids: &[&str]) -> bool {
        match self.vertex_indices(ids.iter().copied()) {
            Ok(mut e) => {
                e.sort_unstable();
                e.dedup();
                self.edges.binary_search(&e).is_ok()
            }
            Err(_) => false,
        }
    }

    /// True when no edge is contained in a different edge.
    pub fn is_antichain(&self) -> bool {
        let n = self.num_vertices();
        let sets: Vec<FixedBitSet> = self.edges.iter().map(|e| bitset(n, e)).collect();
        let mut by_size: Vec<usize> = (0..self.edges.len()).collect();
        by_size.sort_by_key(|&k| self.edges[k].len());
        for (a, &i) in by_size.iter().enumerate() {
            for &j in &by_size[a + 1..] {
                if self.edges[j].len() > self.edges[i].len() && sets[i].is_subset(&sets[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Orthogonality relation as one bitset row per vertex: `u ⊥ v` iff the
    /// two distinct vertices share an edge.
    pub fn orthogonality(&self) -> Vec<FixedBitSet> {
        let n = self.num_vertices();
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for e in &self.edges {
            for &u in e {
                for &v in e {
                    if u != v {
                        rows[u].insert(v);
                    }
                }
            }
        }
        rows
    }

    pub fn orthogonal(&self, u: usize, v: usize) -> bool {
        u != v && self.incidence[u].iter().any(|k| self.edges[*k].binary_search(&v).is_ok())
    }

    /// The non-orthogonality graph: vertices of the scenario, adjacent iff
    /// no edge contains both. All weights are one.
    pub fn non_orthogonality_graph(&self) -> WeightedGraph {
        let n = self.num_vertices();
        let ortho = self.orthogonality();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for u in 0..n {
            for v in 0..n {
                if u != v && !ortho[u].contains(v) {
                    adj[u].insert(v);
                }
            }
        }
        WeightedGraph::from_bitsets(self.vertices.clone(), adj, vec![crate::exact::int(1); n])
            .expect("adjacency is symmetric and irreflexive by construction")
    }

    /// The subscenario induced by the vertex subset `w` (indices): vertices
    /// `w`, edges `e ∩ w`. Returns the scenario and, for each new vertex, its
    /// index in `self`.
    pub fn induced(&self, w: &[usize]) -> Result<(Scenario, Vec<usize>)> {
        let n = self.num_vertices();
        let keep = bitset(n, w);
        let mut kept: Vec<usize> = keep.ones().collect();
        kept.sort_unstable();
        if kept.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut new_index = vec![usize::MAX; n];
        for (i, &v) in kept.iter().enumerate() {
            new_index[v] = i;
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for (k, e) in self.edges.iter().enumerate() {
            let r: Vec<usize> = e.iter().filter(|v| keep.contains(**v)).map(|&v| new_index[v]).collect();
            if r.is_empty() {
                return Err(Error::EmptyInducedEdge(k));
            }
            edges.push(r);
        }
        let names = kept.iter().map(|&v| self.vertices[v].clone()).collect();
        let sub = Scenario::from_indexed(format!("{}|W", self.name), names, edges)?;
        Ok((sub, kept))
    }

    pub fn induced_by_ids(&self, ids: &[&str]) -> Result<(Scenario, Vec<usize>)> {
        let w = self.vertex_indices(ids.iter().copied())?;
        self.induced(&w)
    }

    /// Stable fingerprint of the vertex set, used to tie models to scenarios.
    pub fn vertex_set_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        for v in &self.vertices {
            h.update(v.as_bytes());
            h.update([0u8]);
        }
        hex::encode(h.finalize())[..16].to_string()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let j = ScenarioJson {
            name: self.name.clone(),
            vertices: self.vertices.clone(),
            edges: (0..self.edges.len()).map(|k| self.edge_names(k)).collect(),
        };
        serde_json::to_value(j).expect("plain data serializes")
    }

    /// Canonical pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data serializes")
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let j: ScenarioJson = serde_json::from_value(v.clone())?;
        Scenario::new(j.name, j.vertices, j.edges)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s)?;
        Self::from_json_value(&v)
    }
}

pub(crate) fn bitset(n: usize, members: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for &m in members {
        b.insert(m);
    }
    b
}

/// Convenience for tests and the catalog: builds a scenario from string
/// literals, panicking on invalid input.
pub fn literal(name: &str, vertices: &[&str], edges: &[&[&str]]) -> Scenario {
    Scenario::new(name, vertices.iter().copied(), edges.iter().map(|e| e.iter().copied()))
        .expect("literal scenario is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Scenario {
        literal("triangle", &["v1", "v2", "v3"], &[&["v1", "v2"], &["v2", "v3"], &["v1", "v3"]])
    }

    #[test]
    fn canonical_form_sorts_and_dedups() {
        let s = Scenario::new("t", ["b", "a", "c"], [vec!["c", "a"], vec!["a", "b"], vec!["b", "a"], vec!["c"]]).unwrap();
        assert_eq!(s.vertices(), ["a", "b", "c"]);
        assert_eq!(s.edges(), [vec![0, 1], vec![0, 2], vec![2]]);
        assert!(!s.is_antichain());
        assert!(triangle().is_antichain());
    }

    #[test]
    fn constructor_errors() {
        assert!(matches!(Scenario::new("x", Vec::<String>::new(), Vec::<Vec<&str>>::new()), Err(Error::EmptyVertexSet)));
        assert!(matches!(Scenario::new("x", ["a", "b"], [vec!["a"]]), Err(Error::UncoveredVertex(v)) if v == "b"));
        assert!(matches!(Scenario::new("x", ["a"], [vec!["z"]]), Err(Error::EdgeWithUnknownVertex { .. })));
        assert!(matches!(Scenario::new("x", ["a"], [Vec::<&str>::new()]), Err(Error::EmptyEdge(0))));
        assert!(Scenario::new("x", ["a"], [vec!["a"]]).is_ok());
    }

    #[test]
    fn triangle_no_graph_is_edgeless() {
        let g = triangle().non_orthogonality_graph();
        assert_eq!(g.num_edges(), 0);
        assert_eq!(g.num_vertices(), 3);
    }

    #[test]
    fn induced_subscenario_and_identity() {
        let s = triangle();
        let (same, map) = s.induced(&[0, 1, 2]).unwrap();
        assert_eq!(same, s);
        assert_eq!(map, vec![0, 1, 2]);
        let (sub, _) = s.induced_by_ids(&["v1", "v2"]).unwrap();
        assert_eq!(sub.num_edges(), 3);
        assert!(sub.has_edge(&["v1"]) && sub.has_edge(&["v2"]) && sub.has_edge(&["v1", "v2"]));
        let s2 = literal("p", &["a", "b", "c"], &[&["a", "b"], &["c"]]);
        assert!(matches!(s2.induced_by_ids(&["a", "b"]), Err(Error::EmptyInducedEdge(_))));
    }

    #[test]
    fn json_round_trip() {
        let s = triangle();
        let back = Scenario::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.name(), "triangle");
        assert!(Scenario::from_json(r#"{"name":"x","vertices":["a","b"],"edges":[["a"]]}"#).is_err());
    }
}
