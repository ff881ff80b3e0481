//! Probabilistic models: exact rational weights on the vertices of a
//! scenario that sum to one on every edge.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{budget, EdgeSumViolation, Error, Result};
use crate::exact::{self, Rational};
use crate::products::SEPARATOR;
use crate::scenario::Scenario;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbModel {
    scenario: String,
    vertex_hash: String,
    vertices: Vec<String>,
    weights: Vec<Rational>,
    /// Free-form annotations, e.g. the precision of a rational surrogate.
    pub metadata: BTreeMap<String, String>,
}

impl ProbModel {
    pub fn scenario_name(&self) -> &str {
        &self.scenario
    }

    pub fn vertex_hash(&self) -> &str {
        &self.vertex_hash
    }

    /// Weights in the scenario's canonical vertex order.
    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    pub fn weight_of(&self, id: &str) -> Option<&Rational> {
        self.vertices.iter().position(|v| v == id).map(|i| &self.weights[i])
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&v| self.weights[v].is_positive()).collect()
    }

    pub fn is_deterministic(&self) -> bool {
        self.weights.iter().all(|w| w.is_zero() || w.is_one())
    }

    pub fn matches(&self, s: &Scenario) -> bool {
        self.vertices == s.vertices()
    }

    pub fn with_metadata(mut self, key: &str, value: impl Into<String>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn weights_map(&self) -> HashMap<String, Rational> {
        self.vertices.iter().cloned().zip(self.weights.iter().cloned()).collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let weights: serde_json::Map<String, serde_json::Value> = self
            .vertices
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| (v.clone(), serde_json::Value::String(exact::format(w))))
            .collect();
        let mut obj = serde_json::Map::new();
        obj.insert("scenario".into(), serde_json::Value::String(self.scenario.clone()));
        obj.insert("weights".into(), serde_json::Value::Object(weights));
        if !self.metadata.is_empty() {
            obj.insert("metadata".into(), serde_json::to_value(&self.metadata).expect("strings serialize"));
        }
        serde_json::Value::Object(obj)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data serializes")
    }

    /// Parses model JSON and validates it against `s`.
    pub fn from_json_value(s: &Scenario, v: &serde_json::Value) -> Result<Self> {
        let w = v
            .get("weights")
            .and_then(|w| w.as_object())
            .ok_or_else(|| Error::Parse("model JSON needs a `weights` object".into()))?;
        let mut map = HashMap::new();
        for (k, val) in w {
            let q = val.as_str().ok_or_else(|| Error::Parse(format!("weight of `{k}` must be a \"num/den\" string")))?;
            map.insert(k.clone(), exact::parse(q)?);
        }
        let mut m = validate_model(s, &map)?;
        if let Some(meta) = v.get("metadata").and_then(|m| m.as_object()) {
            for (k, val) in meta {
                if let Some(t) = val.as_str() {
                    m.metadata.insert(k.clone(), t.to_string());
                }
            }
        }
        Ok(m)
    }

    pub fn from_json(s: &Scenario, text: &str) -> Result<Self> {
        Self::from_json_value(s, &serde_json::from_str(text)?)
    }
}

/// Validates weights given by vertex id.
pub fn validate_model(s: &Scenario, weights: &HashMap<String, Rational>) -> Result<ProbModel> {
    for k in weights.keys() {
        if s.vertex_index(k).is_none() {
            return Err(Error::UnknownVertex(k.clone()));
        }
    }
    let w = s
        .vertices()
        .iter()
        .map(|v| weights.get(v).cloned().ok_or_else(|| Error::MissingWeight(v.clone())))
        .collect::<Result<Vec<_>>>()?;
    validate_vector(s, w)
}

/// Validates weights given in the scenario's vertex order.
pub fn validate_vector(s: &Scenario, weights: Vec<Rational>) -> Result<ProbModel> {
    if weights.len() != s.num_vertices() {
        return Err(Error::ScenarioMismatch(format!(
            "{} weights for {} vertices",
            weights.len(),
            s.num_vertices()
        )));
    }
    if let Some(v) = weights.iter().position(Signed::is_negative) {
        return Err(Error::NegativeWeight(s.vertices()[v].clone()));
    }
    let violations = edge_violations(s, &weights);
    if !violations.is_empty() {
        return Err(Error::EdgeSumViolations(violations));
    }
    Ok(ProbModel {
        scenario: s.name().to_string(),
        vertex_hash: s.vertex_set_hash(),
        vertices: s.vertices().to_vec(),
        weights,
        metadata: BTreeMap::new(),
    })
}

pub fn edge_violations(s: &Scenario, weights: &[Rational]) -> Vec<EdgeSumViolation> {
    let mut out = Vec::new();
    for (k, e) in s.edges().iter().enumerate() {
        let sum: Rational = e.iter().map(|&v| weights[v].clone()).sum();
        if !sum.is_one() {
            out.push(EdgeSumViolation { edge: s.edge_names(k), sum });
        }
    }
    out
}

/// Bell-style id `a1a2|x1x2` for a tuple of single-party ids `a|x`.
fn bell_id(parts: &[&str]) -> Option<String> {
    let mut outs = Vec::new();
    let mut sets = Vec::new();
    for p in parts {
        let (a, x) = p.split_once('|')?;
        outs.push(a);
        sets.push(x);
    }
    let wide = outs.iter().chain(&sets).any(|t| t.len() > 1);
    let sep = if wide { "," } else { "" };
    Some(format!("{}|{}", outs.join(sep), sets.join(sep)))
}

/// Index in `s` of the product vertex made of the given factor ids, under
/// either the `⊗` join or the Bell naming.
pub(crate) fn tuple_index(s: &Scenario, parts: &[&str]) -> Option<usize> {
    s.vertex_index(&parts.join(SEPARATOR)).or_else(|| bell_id(parts).and_then(|id| s.vertex_index(&id)))
}

/// The product model `p ⊗ q` on a product scenario of the factors of `p`
/// and `q`.
pub fn tensor_models(p: &ProbModel, q: &ProbModel, product: &Scenario) -> Result<ProbModel> {
    tensor_models_n(&[p, q], product)
}

pub fn tensor_models_n(models: &[&ProbModel], product: &Scenario) -> Result<ProbModel> {
    let total: usize = models.iter().map(|m| m.vertices.len()).product();
    if total != product.num_vertices() {
        return Err(Error::ScenarioMismatch("product vertex count differs from the factor tuples".into()));
    }
    let mut weights = vec![Rational::zero(); total];
    let mut idx = vec![0usize; models.len()];
    loop {
        let parts: Vec<&str> = idx.iter().zip(models).map(|(&i, m)| m.vertices[i].as_str()).collect();
        let v = tuple_index(product, &parts)
            .ok_or_else(|| Error::ScenarioMismatch(format!("no product vertex for {}", parts.join(SEPARATOR))))?;
        weights[v] = idx.iter().zip(models).map(|(&i, m)| m.weights[i].clone()).product();
        let mut k = models.len();
        loop {
            if k == 0 {
                return validate_vector(product, weights);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < models[k].vertices.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignalingViolation {
    pub party: usize,
    /// Outcomes of the other parties, in party order.
    pub fixed: Vec<String>,
    pub edge: Vec<String>,
    pub other_edge: Vec<String>,
    #[serde(serialize_with = "ser_rational")]
    pub sum: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub other_sum: Rational,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&exact::format(q))
}

/// Checks the no-signaling equations: for every party `k` and every joint
/// outcome of the others, the marginal sum over an edge of `H_k` is the
/// same for all edges of `H_k`.
pub fn no_signaling_check(factors: &[&Scenario], p: &ProbModel, product: &Scenario) -> Result<Vec<SignalingViolation>> {
    if !p.matches(product) {
        return Err(Error::ScenarioMismatch("model does not belong to the product scenario".into()));
    }
    let n = factors.len();
    let mut out = Vec::new();
    for k in 0..n {
        let others: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        let mut idx = vec![0usize; others.len()];
        loop {
            let fixed: Vec<&str> =
                others.iter().zip(&idx).map(|(&i, &j)| factors[i].vertices()[j].as_str()).collect();
            let marginal = |e: &[usize]| -> Result<Rational> {
                let mut sum = Rational::zero();
                for &w in e {
                    let mut parts = fixed.clone();
                    parts.insert(k, factors[k].vertices()[w].as_str());
                    let v = tuple_index(product, &parts)
                        .ok_or_else(|| Error::ScenarioMismatch(format!("no product vertex for {}", parts.join(SEPARATOR))))?;
                    sum += &p.weights[v];
                }
                Ok(sum)
            };
            let edges = factors[k].edges();
            let base = marginal(&edges[0])?;
            for (j, e) in edges.iter().enumerate().skip(1) {
                let s = marginal(e)?;
                if s != base {
                    out.push(SignalingViolation {
                        party: k,
                        fixed: fixed.iter().map(|t| t.to_string()).collect(),
                        edge: factors[k].edge_names(0),
                        other_edge: factors[k].edge_names(j),
                        sum: base.clone(),
                        other_sum: s,
                    });
                }
            }
            let mut a = others.len();
            let mut advanced = false;
            while a > 0 {
                a -= 1;
                idx[a] += 1;
                if idx[a] < factors[others[a]].num_vertices() {
                    advanced = true;
                    break;
                }
                idx[a] = 0;
            }
            if !advanced {
                break;
            }
        }
    }
    Ok(out)
}

pub const DETERMINISTIC_NODE_CAP: u64 = 1_000_000;

/// All exact transversals of `s` as 0/1 models, by backtracking that always
/// branches on the uncovered edge with the fewest remaining candidates.
pub fn enumerate_deterministic(s: &Scenario) -> Result<Vec<ProbModel>> {
    enumerate_deterministic_with(s, DETERMINISTIC_NODE_CAP, usize::MAX)
}

/// Like [`enumerate_deterministic`] but stops after `limit` models.
pub fn enumerate_deterministic_with(s: &Scenario, node_cap: u64, limit: usize) -> Result<Vec<ProbModel>> {
    let (sets, _) = exact_transversals(s, node_cap, limit)?;
    Ok(sets
        .into_iter()
        .map(|t| {
            let mut w = vec![Rational::zero(); s.num_vertices()];
            for v in t {
                w[v] = Rational::one();
            }
            validate_vector(s, w).expect("exact transversals are models")
        })
        .collect())
}

/// Returns the transversals found together with the number of search nodes.
pub(crate) fn exact_transversals(s: &Scenario, node_cap: u64, limit: usize) -> Result<(Vec<Vec<usize>>, u64)> {
    let n = s.num_vertices();
    let ortho = s.orthogonality();
    let edge_sets: Vec<FixedBitSet> = s.edges().iter().map(|e| crate::scenario::bitset(n, e)).collect();
    struct Search<'a> {
        s: &'a Scenario,
        ortho: &'a [FixedBitSet],
        edges: &'a [FixedBitSet],
        nodes: u64,
        cap: u64,
        limit: usize,
        out: Vec<Vec<usize>>,
    }
    impl Search<'_> {
        fn go(&mut self, avail: FixedBitSet, chosen: &mut Vec<usize>, covered: &mut Vec<bool>) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(budget("exact transversal search", self.cap));
            }
            let mut best: Option<(usize, usize)> = None;
            for (k, e) in self.edges.iter().enumerate() {
                if covered[k] {
                    continue;
                }
                let c = e.intersection(&avail).count();
                if c == 0 {
                    return Ok(());
                }
                let better = match best {
                    None => true,
                    Some((bc, bk)) => c < bc || (c == bc && self.s.edges()[k].len() < self.s.edges()[bk].len()),
                };
                if better {
                    best = Some((c, k));
                }
            }
            let Some((_, k)) = best else {
                let mut t = chosen.clone();
                t.sort_unstable();
                self.out.push(t);
                return Ok(());
            };
            let cands: Vec<usize> = self.edges[k].intersection(&avail).collect();
            for v in cands {
                let mut next = avail.clone();
                next.difference_with(&self.ortho[v]);
                next.set(v, false);
                let newly: Vec<usize> =
                    self.s.edges_of(v).iter().copied().filter(|&j| !covered[j]).collect();
                for &j in &newly {
                    covered[j] = true;
                }
                chosen.push(v);
                self.go(next, chosen, covered)?;
                chosen.pop();
                for &j in &newly {
                    covered[j] = false;
                }
                if self.out.len() >= self.limit {
                    return Ok(());
                }
            }
            Ok(())
        }
    }
    let mut search = Search { s, ortho: &ortho, edges: &edge_sets, nodes: 0, cap: node_cap, limit, out: Vec::new() };
    let mut avail = FixedBitSet::with_capacity(n);
    avail.insert_range(..);
    search.go(avail, &mut Vec::new(), &mut vec![false; s.num_edges()])?;
    let nodes = search.nodes;
    let mut out = search.out;
    out.sort();
    Ok((out, nodes))
}

/// Uniform model `1/|e|` when all edges have the same size.
pub fn uniform_model(s: &Scenario) -> Result<ProbModel> {
    let k = s.edges()[0].len();
    if s.edges().iter().any(|e| e.len() != k) {
        return Err(Error::Invalid("edges have different sizes".into()));
    }
    validate_vector(s, vec![exact::frac(1, k as i64); s.num_vertices()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};
    use crate::products::{bell_scenario, direct_product, fr_product, ProductKind};
    use crate::scenario::literal;

    fn triangle() -> Scenario {
        literal("triangle", &["v1", "v2", "v3"], &[&["v1", "v2"], &["v2", "v3"], &["v1", "v3"]])
    }

    #[test]
    fn triangle_models() {
        let s = triangle();
        assert!(validate_vector(&s, vec![frac(1, 2); 3]).is_ok());
        match validate_vector(&s, vec![int(1), int(0), int(0)]) {
            Err(Error::EdgeSumViolations(v)) => {
                assert_eq!(v.len(), 1);
                assert_eq!(v[0].edge, vec!["v2", "v3"]);
                assert_eq!(v[0].sum, int(0));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(enumerate_deterministic(&s).unwrap().is_empty());
    }

    #[test]
    fn missing_and_negative_weights() {
        let s = triangle();
        let mut m = HashMap::new();
        m.insert("v1".to_string(), frac(1, 2));
        assert!(matches!(validate_model(&s, &m), Err(Error::MissingWeight(_))));
        assert!(matches!(validate_vector(&s, vec![int(-1), int(2), int(-1)]), Err(Error::NegativeWeight(_))));
    }

    #[test]
    fn sixteen_deterministic_boxes() {
        let b = bell_scenario(2, 2, 2, ProductKind::FrMin).unwrap();
        let d = enumerate_deterministic(&b).unwrap();
        assert_eq!(d.len(), 16);
        assert!(d.iter().all(ProbModel::is_deterministic));
    }

    #[test]
    fn signaling_model() {
        let h = literal("H", &["1", "2", "3"], &[&["1", "2"], &["2", "3"]]);
        let d = direct_product(&h, &h).unwrap();
        let mut w = HashMap::new();
        for v in d.vertices() {
            w.insert(v.clone(), int(0));
        }
        for v in ["1⊗3", "2⊗1", "3⊗3"] {
            w.insert(v.to_string(), int(1));
        }
        let p = validate_model(&d, &w).unwrap();
        let viol = no_signaling_check(&[&h, &h], &p, &d).unwrap();
        assert_eq!(viol.len(), 3);
        assert!(viol.iter().all(|x| x.party == 1));
        let alice2 = viol.iter().find(|x| x.fixed == vec!["2".to_string()]).unwrap();
        assert_eq!((alice2.sum.clone(), alice2.other_sum.clone()), (int(1), int(0)));
    }

    #[test]
    fn tensor_of_uniform_triangles() {
        let s = triangle();
        let u = validate_vector(&s, vec![frac(1, 2); 3]).unwrap();
        let prod = fr_product(&s, &s).unwrap();
        let t = tensor_models(&u, &u, &prod).unwrap();
        assert!(t.weights().iter().all(|w| *w == frac(1, 4)));
        assert!(no_signaling_check(&[&s, &s], &t, &prod).unwrap().is_empty());
    }

    #[test]
    fn json_round_trip() {
        let s = triangle();
        let u = validate_vector(&s, vec![frac(1, 2); 3]).unwrap().with_metadata("note", "uniform");
        let back = ProbModel::from_json(&s, &u.to_json()).unwrap();
        assert_eq!(back, u);
        assert!(ProbModel::from_json(&s, r#"{"weights":{"v1":"0.5","v2":"1/2","v3":"1/2"}}"#).is_err());
    }
}
