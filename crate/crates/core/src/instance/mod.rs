//! Problem instances, validation, multigraph expansion, generators and the
//! on-disk JSON format.

mod dag;
pub mod generate;
mod graph;
pub mod io;
mod multigraph;
pub mod reduction;

use std::fmt;

pub use dag::{validate_dag, DagEdge, DagInstance, PathSolution, PathStep};
pub use graph::{validate_graph, ImprovementLevel, TreeSolution, UpgradableEdge, UpgradableGraph};
pub use multigraph::{expand_to_multigraph, EdgeCopy, Multigraph};

/// Optimization direction. Determines the required ordering of ladder lengths:
/// improvements raise lengths when maximizing and lower them when minimizing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Sense {
    #[default]
    Maximize,
    Minimize,
}

/// A single broken invariant, with a JSON-path-like location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub location: String,
    pub message: String,
}

impl Violation {
    pub fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.location, self.message)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Problem {
    Imst(UpgradableGraph),
    Wildag(DagInstance),
}

/// A complete problem instance as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub problem: Problem,
    pub budget: i64,
    /// Optimum known by construction (knapsack reductions).
    pub known_optimum: Option<i64>,
}

impl Instance {
    pub fn imst(graph: UpgradableGraph, budget: i64) -> Self {
        Instance {
            problem: Problem::Imst(graph),
            budget,
            known_optimum: None,
        }
    }

    pub fn wildag(dag: DagInstance, budget: i64) -> Self {
        Instance {
            problem: Problem::Wildag(dag),
            budget,
            known_optimum: None,
        }
    }

    pub fn graph(&self) -> Option<&UpgradableGraph> {
        match &self.problem {
            Problem::Imst(g) => Some(g),
            Problem::Wildag(_) => None,
        }
    }

    pub fn dag(&self) -> Option<&DagInstance> {
        match &self.problem {
            Problem::Wildag(d) => Some(d),
            Problem::Imst(_) => None,
        }
    }

    /// 64-bit FNV-1a over the canonical serialization.
    pub fn hash(&self) -> u64 {
        fnv1a64(&io::serialize(self))
    }
}

/// Returns every invariant violation of `instance` under `sense`.
pub fn validate(instance: &Instance, sense: Sense) -> Vec<Violation> {
    let mut out = Vec::new();
    if instance.budget < 0 {
        out.push(Violation::new("budget", "budget must be nonnegative"));
    }
    match &instance.problem {
        Problem::Imst(g) => out.extend(validate_graph(g.vertex_count(), g.edges(), sense)),
        Problem::Wildag(d) => out.extend(validate_dag(
            d.vertex_count(),
            d.edges(),
            d.source(),
            d.sink(),
            sense,
        )),
    }
    out
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    bytes
        .iter()
        .fold(OFFSET, |h, &b| (h ^ b as u64).wrapping_mul(PRIME))
}
