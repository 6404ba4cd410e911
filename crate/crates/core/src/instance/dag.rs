use std::collections::VecDeque;

use super::{Sense, Violation};
use crate::error::{Error, Result};

/// Directed arc with a base length, an improved length and the cost of
/// improving it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DagEdge {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    pub base: i64,
    pub improved: i64,
    pub cost: i64,
}

impl DagEdge {
    pub const fn new(
        id: usize,
        tail: usize,
        head: usize,
        base: i64,
        improved: i64,
        cost: i64,
    ) -> Self {
        DagEdge {
            id,
            tail,
            head,
            base,
            improved,
            cost,
        }
    }

    pub fn length(&self, improved: bool) -> i64 {
        if improved {
            self.improved
        } else {
            self.base
        }
    }
}

/// A weight-improvable DAG with designated source and sink.
///
/// Parallel arcs are permitted; edges are stored in id order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagInstance {
    n: usize,
    edges: Vec<DagEdge>,
    source: usize,
    sink: usize,
    topo: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl DagInstance {
    pub fn new(n: usize, edges: Vec<DagEdge>, source: usize, sink: usize) -> Result<Self> {
        Self::with_sense(n, edges, source, sink, Sense::Maximize)
    }

    pub fn with_sense(
        n: usize,
        mut edges: Vec<DagEdge>,
        source: usize,
        sink: usize,
        sense: Sense,
    ) -> Result<Self> {
        let violations = validate_dag(n, &edges, source, sink, sense);
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        edges.sort_by_key(|e| e.id);
        Ok(Self::assemble(n, edges, source, sink))
    }

    fn assemble(n: usize, edges: Vec<DagEdge>, source: usize, sink: usize) -> Self {
        let topo = topological_order(n, &edges).expect("validated DAG is acyclic");
        let mut out = vec![Vec::new(); n];
        for e in &edges {
            out[e.tail].push(e.id);
        }
        DagInstance {
            n,
            edges,
            source,
            sink,
            topo,
            out,
        }
    }

    /// Same topology with lengths rewritten by `f(edge) -> (base, improved)`.
    /// The caller must preserve the ladder direction.
    pub(crate) fn map_lengths(&self, mut f: impl FnMut(&DagEdge) -> (i64, i64)) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let (base, improved) = f(e);
                DagEdge {
                    base,
                    improved,
                    ..*e
                }
            })
            .collect();
        DagInstance {
            edges,
            ..self.clone()
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[DagEdge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &DagEdge {
        &self.edges[id]
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Marks the edges that lie on at least one source–sink path.
    pub fn on_source_sink_path(&self) -> Vec<bool> {
        let mut from_s = vec![false; self.n];
        from_s[self.source] = true;
        for &v in &self.topo {
            if from_s[v] {
                for &e in &self.out[v] {
                    from_s[self.edges[e].head] = true;
                }
            }
        }
        let mut to_t = vec![false; self.n];
        to_t[self.sink] = true;
        for &v in self.topo.iter().rev() {
            if self.out[v].iter().any(|&e| to_t[self.edges[e].head]) {
                to_t[v] = true;
            }
        }
        self.edges
            .iter()
            .map(|e| from_s[e.tail] && to_t[e.head])
            .collect()
    }

    /// Largest single-arc length usable by a budget-feasible source–sink path:
    /// the maximum over arcs on some such path of `max(base, improved if cost ≤
    /// budget)`. Every feasible optimum is at least this value.
    pub fn effective_max_length(&self, budget: i64) -> i64 {
        self.on_source_sink_path()
            .iter()
            .zip(&self.edges)
            .filter(|(on, _)| **on)
            .map(|(_, e)| {
                if e.cost <= budget {
                    e.base.max(e.improved)
                } else {
                    e.base
                }
            })
            .max()
            .unwrap_or(0)
    }

    /// The common improvement cost when all arcs share one.
    pub fn uniform_cost(&self) -> Option<i64> {
        let first = self.edges.first()?.cost;
        self.edges.iter().all(|e| e.cost == first).then_some(first)
    }
}

fn topological_order(n: usize, edges: &[DagEdge]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for e in edges {
        indeg[e.head] += 1;
        out[e.tail].push(e.head);
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Checks every invariant of a DAG instance.
pub fn validate_dag(
    n: usize,
    edges: &[DagEdge],
    source: usize,
    sink: usize,
    sense: Sense,
) -> Vec<Violation> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Violation::new("n", "vertex count must be positive"));
    }
    let m = edges.len();
    let mut seen = vec![false; m];
    let mut endpoints_ok = true;
    for (pos, e) in edges.iter().enumerate() {
        let at = format!("edges[{pos}]");
        if e.id >= m {
            out.push(Violation::new(
                &at,
                format!("edge id {} outside [0, {m})", e.id),
            ));
        } else if std::mem::replace(&mut seen[e.id], true) {
            out.push(Violation::new(&at, format!("duplicate edge id {}", e.id)));
        }
        if e.tail >= n || e.head >= n {
            out.push(Violation::new(&at, format!("endpoint outside [0, {n})")));
            endpoints_ok = false;
        }
        if e.base < 0 || e.improved < 0 || e.cost < 0 {
            out.push(Violation::new(&at, "lengths and costs must be nonnegative"));
        }
        match sense {
            Sense::Maximize if e.improved < e.base => out.push(Violation::new(
                format!("{at}.ladder[1]"),
                "improved length must be at least the base length",
            )),
            Sense::Minimize if e.improved > e.base => out.push(Violation::new(
                format!("{at}.ladder[1]"),
                "improved length must be at most the base length",
            )),
            _ => {}
        }
    }
    if source >= n || sink >= n {
        out.push(Violation::new("source", "source and sink must be vertices"));
        endpoints_ok = false;
    } else if source == sink {
        out.push(Violation::new("sink", "source and sink must differ"));
    }
    if !endpoints_ok {
        return out;
    }
    match topological_order(n, edges) {
        None => out.push(Violation::new("edges", "not acyclic")),
        Some(_) if source != sink => {
            let mut adj = vec![Vec::new(); n];
            for e in edges {
                adj[e.tail].push(e.head);
            }
            let mut seen = vec![false; n];
            let mut stack = vec![source];
            seen[source] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !std::mem::replace(&mut seen[w], true) {
                        stack.push(w);
                    }
                }
            }
            if !seen[sink] {
                out.push(Violation::new("sink", "sink is not reachable from source"));
            }
        }
        Some(_) => {}
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PathStep {
    pub edge: usize,
    pub improved: bool,
}

/// A source–sink path with per-arc improvement flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSolution {
    steps: Vec<PathStep>,
    total_length: i64,
    total_spend: i64,
}

impl PathSolution {
    /// Checks that `steps` walks from source to sink and computes totals.
    pub fn new(dag: &DagInstance, steps: Vec<PathStep>) -> Result<Self> {
        let mut at = dag.source();
        let (mut length, mut spend) = (0, 0);
        for step in &steps {
            let e = dag
                .edges()
                .get(step.edge)
                .ok_or_else(|| Error::Contract(format!("unknown edge id {}", step.edge)))?;
            if e.tail != at {
                return Err(Error::Contract(format!(
                    "edge {} does not leave vertex {at}",
                    e.id
                )));
            }
            at = e.head;
            length += e.length(step.improved);
            if step.improved {
                spend += e.cost;
            }
        }
        if at != dag.sink() {
            return Err(Error::Contract(format!(
                "path ends at {at}, not at the sink"
            )));
        }
        Ok(PathSolution {
            steps,
            total_length: length,
            total_spend: spend,
        })
    }

    pub fn steps(&self) -> &[PathStep] {
        &self.steps
    }

    pub fn total_length(&self) -> i64 {
        self.total_length
    }

    pub fn total_spend(&self) -> i64 {
        self.total_spend
    }

    pub fn improved_count(&self) -> usize {
        self.steps.iter().filter(|s| s.improved).count()
    }
}
