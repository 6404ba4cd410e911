use super::{shortest_length, walk, Parent};
use crate::error::{Error, Result};
use crate::instance::{DagInstance, PathSolution, Sense};

const INF: i64 = i64::MAX;
const NO_PARENT: u32 = u32::MAX;

/// Largest table (vertices × length columns) the exact solvers will allocate.
pub const MAX_TABLE_CELLS: usize = 16_000_000;

/// `L[v][w]`: least improvement spend for a `v → t` path of length exactly `w`.
#[derive(Clone, Debug)]
pub struct DpTableW {
    width: usize,
    value: Vec<i64>,
    parent: Vec<u32>,
}

impl DpTableW {
    /// Fills columns `0..=width`. Improvements costing more than `budget` are
    /// never taken, since no feasible path can afford them.
    pub fn build(dag: &DagInstance, budget: i64, width: usize) -> Result<Self> {
        let n = dag.vertex_count();
        let cols = width + 1;
        if n.saturating_mul(cols) > MAX_TABLE_CELLS {
            return Err(Error::Contract(format!(
                "length table of {n} x {cols} cells exceeds the limit of {MAX_TABLE_CELLS}"
            )));
        }
        let mut value = vec![INF; n * cols];
        let mut parent = vec![NO_PARENT; n * cols];
        value[dag.sink() * cols] = 0;

        for &v in dag.topological_order().iter().rev() {
            if v == dag.sink() {
                continue;
            }
            for &id in dag.out_edges(v) {
                let e = dag.edge(id);
                let h = e.head * cols;
                let options = [(false, e.base, 0), (true, e.improved, e.cost)];
                for (improved, len, cost) in options {
                    if improved && cost > budget {
                        continue;
                    }
                    let Ok(len) = usize::try_from(len) else {
                        continue;
                    };
                    for w in len..cols {
                        let sub = value[h + w - len];
                        if sub == INF {
                            continue;
                        }
                        let cand = sub + cost;
                        let cell = v * cols + w;
                        if cand < value[cell] {
                            value[cell] = cand;
                            parent[cell] = (id as u32) << 1 | improved as u32;
                        }
                    }
                }
            }
        }
        Ok(DpTableW {
            width,
            value,
            parent,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// `None` when no `v → t` path has length exactly `w`.
    pub fn value(&self, v: usize, w: usize) -> Option<i64> {
        let x = self.value[v * (self.width + 1) + w];
        (x != INF).then_some(x)
    }

    pub fn parent(&self, v: usize, w: usize) -> Option<Parent> {
        let p = self.parent[v * (self.width + 1) + w];
        (p != NO_PARENT).then_some(Parent {
            edge: (p >> 1) as usize,
            improved: p & 1 == 1,
        })
    }

    /// Best affordable length from the source: the largest (maximize) or
    /// smallest (minimize) `w` with `L[s][w] ≤ budget`.
    pub fn best_column(&self, dag: &DagInstance, budget: i64, sense: Sense) -> Option<usize> {
        let s = dag.source();
        let fits = |w: &usize| self.value(s, *w).is_some_and(|c| c <= budget);
        match sense {
            Sense::Maximize => (0..=self.width).rev().find(fits),
            Sense::Minimize => (0..=self.width).find(fits),
        }
    }

    /// Path from the source with length exactly `w` and spend `L[s][w]`.
    pub fn reconstruct(&self, dag: &DagInstance, w: usize) -> Result<PathSolution> {
        self.value(dag.source(), w).ok_or(Error::NoPath)?;
        walk(
            dag,
            w,
            |v, w| self.parent(v, w),
            |w, p| w - dag.edge(p.edge).length(p.improved) as usize,
        )
    }
}

/// Upper bound on the length of any budget-feasible path: `(n − 1)` arcs, each
/// no longer than the longest usable arc.
fn longest_width(dag: &DagInstance, budget: i64) -> usize {
    let arcs = dag.vertex_count().saturating_sub(1);
    arcs.saturating_mul(dag.effective_max_length(budget).max(0) as usize)
}

pub(crate) fn solve(dag: &DagInstance, budget: i64, sense: Sense) -> Result<PathSolution> {
    if budget < 0 {
        return Err(Error::Contract("budget must be nonnegative".into()));
    }
    let width = match sense {
        Sense::Maximize => longest_width(dag, budget),
        // The unimproved shortest path is always affordable.
        Sense::Minimize => shortest_length(dag, |e| e.base)
            .ok_or(Error::NoPath)?
            .max(0) as usize,
    };
    let table = DpTableW::build(dag, budget, width)?;
    let w = table.best_column(dag, budget, sense).ok_or(Error::NoPath)?;
    table.reconstruct(dag, w)
}

/// Exact longest path with total improvement spend at most `budget`.
pub fn wildag_budget_exact(dag: &DagInstance, budget: i64) -> Result<PathSolution> {
    solve(dag, budget, Sense::Maximize)
}

/// Exact shortest path with total improvement spend at most `budget`.
pub fn wisdag_budget_exact(dag: &DagInstance, budget: i64) -> Result<PathSolution> {
    solve(dag, budget, Sense::Minimize)
}
