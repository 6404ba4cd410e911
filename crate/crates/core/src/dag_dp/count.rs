use super::{walk, Parent};
use crate::error::{Error, Result};
use crate::instance::{DagInstance, PathSolution, Sense};

const NEG_INF: i64 = i64::MIN;
const INF: i64 = i64::MAX;

/// `L[v][q]`: best length of a `v → t` path using at most `q` improvements.
#[derive(Clone, Debug)]
pub struct DpTableQ {
    sense: Sense,
    b: usize,
    value: Vec<Vec<i64>>,
    parent: Vec<Vec<Option<Parent>>>,
}

impl DpTableQ {
    /// Fills the table for `q ∈ 0..=b`. `b` is capped at `n − 1`, the most
    /// arcs any path can have.
    pub fn build(dag: &DagInstance, b: usize, sense: Sense) -> Self {
        let n = dag.vertex_count();
        let b = b.min(n.saturating_sub(1));
        let unreachable = match sense {
            Sense::Maximize => NEG_INF,
            Sense::Minimize => INF,
        };
        let mut value = vec![vec![unreachable; b + 1]; n];
        let mut parent = vec![vec![None; b + 1]; n];
        value[dag.sink()].fill(0);

        for &v in dag.topological_order().iter().rev() {
            if v == dag.sink() {
                continue;
            }
            for q in 0..=b {
                let mut best = unreachable;
                let mut choice = None;
                for &id in dag.out_edges(v) {
                    let e = dag.edge(id);
                    let row = &value[e.head];
                    let mut consider = |sub: i64, improved: bool, len: i64| {
                        if sub == unreachable {
                            return;
                        }
                        let cand = sub + len;
                        let better = match sense {
                            Sense::Maximize => cand > best,
                            Sense::Minimize => cand < best,
                        };
                        if better {
                            best = cand;
                            choice = Some(Parent { edge: id, improved });
                        }
                    };
                    consider(row[q], false, e.base);
                    if q > 0 {
                        consider(row[q - 1], true, e.improved);
                    }
                }
                value[v][q] = best;
                parent[v][q] = choice;
            }
        }
        DpTableQ {
            sense,
            b,
            value,
            parent,
        }
    }

    /// Effective improvement cap after clamping to `n − 1`.
    pub fn b(&self) -> usize {
        self.b
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    /// `None` when no `v → t` path exists.
    pub fn value(&self, v: usize, q: usize) -> Option<i64> {
        let x = self.value[v][q];
        (x != NEG_INF && x != INF).then_some(x)
    }

    pub fn parent(&self, v: usize, q: usize) -> Option<Parent> {
        self.parent[v][q]
    }

    /// Path from the source realizing `L[s][q]`.
    pub fn reconstruct(&self, dag: &DagInstance, q: usize) -> Result<PathSolution> {
        self.value(dag.source(), q).ok_or(Error::NoPath)?;
        walk(
            dag,
            q.min(self.b),
            |v, q| self.parent[v][q],
            |q, p| if p.improved { q - 1 } else { q },
        )
    }
}

fn check_uniform(dag: &DagInstance) -> Result<()> {
    if dag.edges().len() > 1 && dag.uniform_cost().is_none() {
        return Err(Error::Contract("improvement costs are not uniform".into()));
    }
    Ok(())
}

/// Number of improvements a budget buys when every arc costs the same.
pub fn improvements_allowed(dag: &DagInstance, budget: i64) -> Result<usize> {
    check_uniform(dag)?;
    let cap = dag.vertex_count().saturating_sub(1);
    Ok(match dag.uniform_cost() {
        Some(q) if q > 0 => ((budget.max(0) / q) as usize).min(cap),
        _ => cap,
    })
}

/// Longest path with at most `b` improved arcs (uniform improvement costs).
pub fn wildag_uniform(dag: &DagInstance, b: usize) -> Result<PathSolution> {
    check_uniform(dag)?;
    let table = DpTableQ::build(dag, b, Sense::Maximize);
    table.reconstruct(dag, table.b())
}

/// Shortest path with at most `b` improved arcs (uniform improvement costs).
pub fn wisdag_uniform(dag: &DagInstance, b: usize) -> Result<PathSolution> {
    check_uniform(dag)?;
    let table = DpTableQ::build(dag, b, Sense::Minimize);
    table.reconstruct(dag, table.b())
}
