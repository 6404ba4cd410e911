//! Budget-constrained network upgrade optimization.
//!
//! Two problem families are covered:
//!
//! * **Improvable spanning trees.** Every edge of an undirected graph carries a
//!   ladder of `(length, cost)` levels; level 0 is free. Pick a spanning tree and
//!   a level per tree edge maximizing total length with total cost at most the
//!   budget. [`mst`] holds the uniform-cost half approximation, [`two_cost`] the
//!   Lagrangian `(1, 1+ε)` two-cost tree solver and [`imst`] the randomized
//!   budget-feasible solver built on top of it.
//! * **Weight-improvable paths in DAGs.** Every arc has a base length, an improved
//!   length and an improvement cost. [`dag_dp`] contains the exact dynamic programs
//!   for longest and shortest paths and the length-scaling FPTAS.
//!
//! [`oracle`] provides exhaustive solvers used as ground truth, and [`cli`] the
//! command-line front end.

pub mod cli;
pub mod dag_dp;
pub mod dsu;
pub mod epsilon;
pub mod error;
pub mod imst;
pub mod instance;
pub mod mst;
pub mod oracle;
pub mod report;
pub mod rng;
pub mod two_cost;

pub use epsilon::Epsilon;
pub use error::{Error, Result};
pub use instance::{
    DagEdge, DagInstance, ImprovementLevel, Instance, Multigraph, PathSolution, PathStep, Problem,
    Sense, TreeSolution, UpgradableEdge, UpgradableGraph, Violation,
};
