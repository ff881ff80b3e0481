//! Numeric engines: an exact rational simplex for linear programs and a
//! first-order solver for dense semidefinite programs.

pub mod lp;
pub mod sdp;

pub use lp::{is_feasible_point, lp_solve, verify_farkas, LinearProgram, LpReport, LpStatus, Relation};
pub use sdp::{
    sdp_solve, verify_witness, Admm, Entry, Residuals, SdpBackend, SdpOptions, SdpProblem, SdpStatus, SolveReport,
};
