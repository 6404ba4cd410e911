//! Dynamic programs for weight-improvable longest (and shortest) paths in DAGs.
//!
//! Tables are indexed by vertex and by a resource column: the number of
//! improvements left ([`DpTableQ`]) or the exact path length ([`DpTableW`]).
//! Rows are filled in reverse topological order and every state keeps the arc
//! it chose, so paths come back by walking parents from the source.

mod count;
mod scaled;
mod spend;

pub use count::{improvements_allowed, wildag_uniform, wisdag_uniform, DpTableQ};
pub use scaled::{fptas_factor, wildag_fptas, wisdag_fptas};
pub use spend::{wildag_budget_exact, wisdag_budget_exact, DpTableW, MAX_TABLE_CELLS};

use crate::instance::{DagInstance, PathSolution, PathStep};
use crate::Result;

/// Arc chosen by a table state: edge id plus whether it is improved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Parent {
    pub edge: usize,
    pub improved: bool,
}

/// Walks parent pointers from `start` until the sink. `next_column` maps the
/// current column and the chosen step to the successor's column.
pub(crate) fn walk(
    dag: &DagInstance,
    start: usize,
    parent: impl Fn(usize, usize) -> Option<Parent>,
    next_column: impl Fn(usize, Parent) -> usize,
) -> Result<PathSolution> {
    let mut steps = Vec::new();
    let (mut v, mut col) = (dag.source(), start);
    while v != dag.sink() {
        let p = parent(v, col).ok_or(crate::Error::NoPath)?;
        steps.push(PathStep {
            edge: p.edge,
            improved: p.improved,
        });
        col = next_column(col, p);
        v = dag.edge(p.edge).head;
    }
    PathSolution::new(dag, steps)
}

/// Shortest source–sink length under `len`, or `None` if the sink is unreachable.
pub(crate) fn shortest_length(
    dag: &DagInstance,
    len: impl Fn(&crate::DagEdge) -> i64,
) -> Option<i64> {
    let mut dist = vec![None::<i64>; dag.vertex_count()];
    dist[dag.source()] = Some(0);
    for &v in dag.topological_order() {
        let Some(d) = dist[v] else { continue };
        for &id in dag.out_edges(v) {
            let e = dag.edge(id);
            let cand = d + len(e);
            if dist[e.head].is_none_or(|x| cand < x) {
                dist[e.head] = Some(cand);
            }
        }
    }
    dist[dag.sink()]
}
