//! Contextuality scenarios as hypergraphs of measurement outcomes.
//!
//! A [`scenario::Scenario`] lists outcomes and the measurements (edges)
//! they belong to. Probabilistic models assign weights summing to one on
//! every edge. On top of that the crate offers products of scenarios
//! ([`products`]), exact linear programming over the model polytopes
//! ([`polytope`]), graph invariants of the non-orthogonality graph
//! ([`graphs`]), the moment hierarchy together with consistent exclusivity
//! ([`hierarchy`]) and a catalog of named constructions ([`catalog`]).
//! Every decision comes with a [`certificate::Certificate`] that can be
//! re-checked in exact arithmetic.
//!
//! ```
//! use contextuality::{catalog, polytope};
//!
//! let tri = catalog::triangle();
//! assert!(polytope::allows_general(&tri.scenario).0);
//! assert!(!polytope::allows_classical(&tri.scenario).unwrap().0);
//! ```

pub mod error;
pub mod exact;
pub mod graphs;
pub mod scenario;
pub mod solvers;
pub mod models;
pub mod products;
pub mod certificate;
pub mod polytope;
pub mod hierarchy;
pub mod catalog;
pub mod cli;
