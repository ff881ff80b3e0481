use thiserror::Error;

use crate::exact::Rational;

/// One edge whose weights do not sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSumViolation {
    pub edge: Vec<String>,
    pub sum: Rational,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("scenario has no vertices")]
    EmptyVertexSet,
    #[error("vertex id must be a non-empty string")]
    EmptyVertexId,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("edge {edge} mentions unknown vertex `{vertex}`")]
    EdgeWithUnknownVertex { edge: usize, vertex: String },
    #[error("edge {0} is empty")]
    EmptyEdge(usize),
    #[error("vertex `{0}` lies in no edge")]
    UncoveredVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("restricting edge {0} to the chosen vertices leaves it empty")]
    EmptyInducedEdge(usize),
    #[error("{what}: budget of {cap} exceeded")]
    BudgetExceeded { what: String, cap: u64 },
    #[error("{what}: would generate more than {cap} items")]
    CombinatorialBlowup { what: String, cap: u64 },
    #[error("no weight given for vertex `{0}`")]
    MissingWeight(String),
    #[error("negative weight on vertex `{0}`")]
    NegativeWeight(String),
    #[error("{} edge(s) violate normalization, first: {:?} sums to {}", .0.len(), .0[0].edge, .0[0].sum)]
    EdgeSumViolations(Vec<EdgeSumViolation>),
    #[error("model or graph does not match the scenario: {0}")]
    ScenarioMismatch(String),
    #[error("vertex sets differ")]
    VertexSetMismatch,
    #[error("problem dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("weight of `{0}` is not a natural number")]
    NonIntegerWeight(String),
    #[error("node `{0}` has no incident arcs")]
    IsolatedNode(String),
    #[error("labeling vectors of `{0}` and `{1}` are not orthogonal")]
    LabelingNotOrthogonal(String, String),
    #[error("weights of `{0}` and `{1}` add up to more than one")]
    SubnormalizationViolated(String, String),
    #[error("the scenario has no probabilistic model")]
    EmptyPolytope,
    #[error("graph size {size} exceeds the cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn budget(what: impl Into<String>, cap: u64) -> Error {
    Error::BudgetExceeded { what: what.into(), cap }
}
