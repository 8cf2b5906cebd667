//! Exact integrality gap of the vertex cover LP relaxation.
//!
//! For a graph `G` with at least one edge the gap equals `2 - 2/chi_f(G)`,
//! where `chi_f` is the fractional chromatic number. This crate computes both
//! sides exactly over rationals and emits certificates that can be re-checked
//! without running any solver:
//!
//! - a worst-case cost vector (the optimal fractional-coloring dual) whose
//!   IP/LP ratio attains the gap, and
//! - a convex combination of vertex covers dominated by the scaled LP optimum,
//!   showing no cost vector does worse.

pub mod cert;
pub mod chromatic;
pub mod cli;
pub mod corpus;
pub mod error;
mod flow;
pub mod gap;
pub mod graph;
pub mod lp;
pub mod rational;
pub mod report;
pub mod vc;

pub use error::{Error, Result};
pub use graph::{Family, Graph, VertexSet};
pub use lp::{LpProblem, LpSolution, LpStatus};
pub use rational::Rat;
pub use report::Report;
