//! Machine-checkable witnesses returned by the decision procedures, with
//! independent checkers that only trust the payload and the inputs.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::graphs;
use crate::models::{self, ProbModel};
use crate::scenario::Scenario;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeMultiplier {
    pub edge: Vec<String>,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionTerm {
    pub coefficient: String,
    /// Support of a deterministic model, i.e. an exact transversal.
    pub support: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A probabilistic model, given by its weights.
    Model { weights: BTreeMap<String, String> },
    /// A vertex set meeting every edge exactly once.
    Transversal { vertices: Vec<String> },
    /// An exhaustive search found nothing; checked by repeating it.
    ExhaustedSearch {
        search: String,
        nodes: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        level: Option<usize>,
    },
    ConvexDecomposition { terms: Vec<DecompositionTerm> },
    /// Edge multipliers `y` with `Σ_{e∋v} y_e ≥ 0` for every vertex and
    /// `Σ_e y_e < 0`, so the normalization system has no solution `p ≥ 0`.
    Farkas { multipliers: Vec<EdgeMultiplier> },
    /// `Σ_v c_v q(v) ≥ bound` for every classical `q`, violated by the model.
    SeparatingInequality { coefficients: BTreeMap<String, String>, bound: String },
    /// Pairwise locally orthogonal tuples of vertices (one tuple per element
    /// of the `level`-th power) whose product weight exceeds one.
    IndependentSet { level: usize, tuples: Vec<Vec<String>>, weight: String },
    /// Tolerance-checked numeric report.
    SdpReport {
        status: String,
        value: f64,
        primal_eq: f64,
        psd_min_eigenvalue: f64,
        duality_gap: f64,
        tol: f64,
    },
    /// Several witnesses backing one verdict.
    Bundle { parts: Vec<Certificate> },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Model { .. } => "model",
            Certificate::Transversal { .. } => "transversal",
            Certificate::ExhaustedSearch { .. } => "exhausted_search",
            Certificate::ConvexDecomposition { .. } => "convex_decomposition",
            Certificate::Farkas { .. } => "farkas",
            Certificate::SeparatingInequality { .. } => "separating_inequality",
            Certificate::IndependentSet { .. } => "independent_set",
            Certificate::SdpReport { .. } => "sdp_report",
            Certificate::Bundle { .. } => "bundle",
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificates serialize")
    }

    pub fn model_of(p: &ProbModel) -> Self {
        Certificate::Model {
            weights: p.vertices().iter().cloned().zip(p.weights().iter().map(exact::format)).collect(),
        }
    }
}

fn parse_map(m: &BTreeMap<String, String>) -> Result<HashMap<String, Rational>> {
    m.iter().map(|(k, v)| Ok((k.clone(), exact::parse(v)?))).collect()
}

fn indices(s: &Scenario, ids: &[String]) -> Result<Vec<usize>> {
    s.vertex_indices(ids.iter().map(String::as_str))
}

pub fn is_exact_transversal(s: &Scenario, set: &[usize]) -> bool {
    let mut mark = vec![false; s.num_vertices()];
    for &v in set {
        if v >= mark.len() || mark[v] {
            return false;
        }
        mark[v] = true;
    }
    s.edges().iter().all(|e| e.iter().filter(|&&v| mark[v]).count() == 1)
}

/// Checks `cert` against the scenario (and model, where the claim concerns
/// one). Returns `Ok(true)` when the certificate proves what its kind
/// claims.
pub fn verify(cert: &Certificate, s: &Scenario, p: Option<&ProbModel>) -> Result<bool> {
    match cert {
        Certificate::Model { weights } => Ok(models::validate_model(s, &parse_map(weights)?).is_ok()),
        Certificate::Transversal { vertices } => Ok(is_exact_transversal(s, &indices(s, vertices)?)),
        Certificate::ExhaustedSearch { search, level, .. } => match search.as_str() {
            "exact_transversal" => Ok(models::enumerate_deterministic_with(s, u64::MAX, 1)?.is_empty()),
            "weighted_independent_set" => {
                let p = p.ok_or_else(|| Error::Invalid("independent set search needs the model".into()))?;
                let g = s.non_orthogonality_graph().with_weights(p.weights().to_vec())?;
                let power = graphs::strong_power(&g, level.unwrap_or(1))?;
                Ok(graphs::alpha(&power)?.value <= Rational::one())
            }
            other => Err(Error::Invalid(format!("unknown search `{other}`"))),
        },
        Certificate::ConvexDecomposition { terms } => {
            let p = p.ok_or_else(|| Error::Invalid("decomposition needs the model".into()))?;
            let mut total = Rational::zero();
            let mut sum = vec![Rational::zero(); s.num_vertices()];
            for t in terms {
                let c = exact::parse(&t.coefficient)?;
                if c.is_negative() {
                    return Ok(false);
                }
                let supp = indices(s, &t.support)?;
                if !is_exact_transversal(s, &supp) {
                    return Ok(false);
                }
                for v in supp {
                    sum[v] += &c;
                }
                total += c;
            }
            Ok(total.is_one() && sum.as_slice() == p.weights())
        }
        Certificate::Farkas { multipliers } => {
            let mut per_vertex = vec![Rational::zero(); s.num_vertices()];
            let mut total = Rational::zero();
            for m in multipliers {
                let mut e = indices(s, &m.edge)?;
                e.sort_unstable();
                if s.edges().binary_search(&e).is_err() {
                    return Ok(false);
                }
                let y = exact::parse(&m.y)?;
                for v in e {
                    per_vertex[v] += &y;
                }
                total += y;
            }
            Ok(per_vertex.iter().all(|x| !x.is_negative()) && total.is_negative())
        }
        Certificate::SeparatingInequality { coefficients, bound } => {
            let p = p.ok_or_else(|| Error::Invalid("separating inequality needs the model".into()))?;
            let c = parse_map(coefficients)?;
            let b = exact::parse(bound)?;
            let coef: Vec<Rational> = s.vertices().iter().map(|v| c.get(v).cloned().unwrap_or_default()).collect();
            let value = |w: &[Rational]| -> Rational { coef.iter().zip(w).map(|(a, b)| a * b).sum() };
            if value(p.weights()) >= b {
                return Ok(false);
            }
            let dets = models::enumerate_deterministic_with(s, u64::MAX, usize::MAX)?;
            Ok(dets.iter().all(|d| value(d.weights()) >= b))
        }
        Certificate::IndependentSet { level, tuples, weight } => {
            let p = p.ok_or_else(|| Error::Invalid("independent set needs the model".into()))?;
            let idx: Vec<Vec<usize>> = tuples.iter().map(|t| indices(s, t)).collect::<Result<_>>()?;
            if idx.iter().any(|t| t.len() != *level) {
                return Ok(false);
            }
            for (i, a) in idx.iter().enumerate() {
                for b in &idx[i + 1..] {
                    if a == b || !a.iter().zip(b).any(|(&x, &y)| s.orthogonal(x, y)) {
                        return Ok(false);
                    }
                }
            }
            let w: Rational =
                idx.iter().map(|t| t.iter().map(|&v| p.weight(v).clone()).product::<Rational>()).sum();
            Ok(w == exact::parse(weight)? && w > Rational::one())
        }
        Certificate::SdpReport { primal_eq, psd_min_eigenvalue, tol, .. } => {
            Ok(*primal_eq <= *tol && *psd_min_eigenvalue >= -*tol)
        }
        Certificate::Bundle { parts } => {
            for c in parts {
                if !verify(c, s, p)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}
