use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{Sense, Violation};
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

/// One rung of an edge's improvement ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ImprovementLevel {
    pub length: i64,
    pub cost: i64,
}

impl ImprovementLevel {
    pub const fn new(length: i64, cost: i64) -> Self {
        ImprovementLevel { length, cost }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpgradableEdge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub ladder: Vec<ImprovementLevel>,
}

impl UpgradableEdge {
    pub fn new(id: usize, u: usize, v: usize, ladder: Vec<ImprovementLevel>) -> Self {
        UpgradableEdge { id, u, v, ladder }
    }

    /// Edge with the classic two-level ladder `[(l, 0), (h, c)]`.
    pub fn two_level(id: usize, u: usize, v: usize, base: i64, improved: i64, cost: i64) -> Self {
        Self::new(
            id,
            u,
            v,
            vec![
                ImprovementLevel::new(base, 0),
                ImprovementLevel::new(improved, cost),
            ],
        )
    }

    pub fn base(&self) -> ImprovementLevel {
        self.ladder[0]
    }

    pub fn top(&self) -> ImprovementLevel {
        *self.ladder.last().expect("validated ladders are non-empty")
    }

    pub fn top_level(&self) -> usize {
        self.ladder.len() - 1
    }
}

/// Undirected graph whose edges carry improvement ladders.
///
/// Edges are stored in id order, so `edges()[i].id == i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpgradableGraph {
    n: usize,
    edges: Vec<UpgradableEdge>,
}

impl UpgradableGraph {
    pub fn new(n: usize, edges: Vec<UpgradableEdge>) -> Result<Self> {
        Self::with_sense(n, edges, Sense::Maximize)
    }

    pub fn with_sense(n: usize, mut edges: Vec<UpgradableEdge>, sense: Sense) -> Result<Self> {
        let violations = validate_graph(n, &edges, sense);
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        edges.sort_by_key(|e| e.id);
        Ok(UpgradableGraph { n, edges })
    }

    /// Builds a graph from edges already known to be valid (same topology as a
    /// validated graph, ladders transformed monotonically).
    pub(crate) fn from_parts_unchecked(n: usize, edges: Vec<UpgradableEdge>) -> Self {
        debug_assert!(edges.iter().enumerate().all(|(i, e)| e.id == i));
        UpgradableGraph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[UpgradableEdge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &UpgradableEdge {
        &self.edges[id]
    }

    pub fn endpoints(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    pub fn base_lengths(&self) -> Vec<i64> {
        self.edges.iter().map(|e| e.base().length).collect()
    }

    pub fn top_lengths(&self) -> Vec<i64> {
        self.edges.iter().map(|e| e.top().length).collect()
    }

    pub fn max_ladder_len(&self) -> usize {
        self.edges.iter().map(|e| e.ladder.len()).max().unwrap_or(1)
    }

    /// Largest length over all levels of all edges.
    pub fn max_length(&self) -> i64 {
        self.edges
            .iter()
            .flat_map(|e| e.ladder.iter().map(|l| l.length))
            .max()
            .unwrap_or(0)
    }

    /// Sum of the most expensive level's cost over all edges.
    pub fn total_top_cost(&self) -> i64 {
        self.edges.iter().map(|e| e.top().cost).sum()
    }

    /// Copy of this graph with every ladder rewritten by `f`. The caller must
    /// keep ladders valid.
    pub(crate) fn map_ladders(
        &self,
        mut f: impl FnMut(&UpgradableEdge) -> Vec<ImprovementLevel>,
    ) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| UpgradableEdge::new(e.id, e.u, e.v, f(e)))
            .collect();
        UpgradableGraph::from_parts_unchecked(self.n, edges)
    }
}

/// Checks every structural and ladder invariant of an undirected instance.
pub fn validate_graph(n: usize, edges: &[UpgradableEdge], sense: Sense) -> Vec<Violation> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Violation::new("n", "vertex count must be positive"));
    }
    let m = edges.len();
    let mut seen_ids = vec![false; m];
    let mut seen_pairs = HashSet::new();
    let mut endpoints_ok = true;
    for (pos, e) in edges.iter().enumerate() {
        let at = format!("edges[{pos}]");
        if e.id >= m {
            out.push(Violation::new(
                &at,
                format!("edge id {} outside [0, {m})", e.id),
            ));
        } else if std::mem::replace(&mut seen_ids[e.id], true) {
            out.push(Violation::new(&at, format!("duplicate edge id {}", e.id)));
        }
        if e.u >= n || e.v >= n {
            out.push(Violation::new(&at, format!("endpoint outside [0, {n})")));
            endpoints_ok = false;
        } else if e.u == e.v {
            out.push(Violation::new(&at, "endpoints must be distinct"));
        } else if !seen_pairs.insert((e.u.min(e.v), e.u.max(e.v))) {
            out.push(Violation::new(
                &at,
                "parallel edge between the same endpoints",
            ));
        }
        validate_ladder(&at, &e.ladder, sense, &mut out);
    }
    if endpoints_ok && n > 0 {
        let mut d = DisjointSets::new(n);
        for e in edges {
            d.union(e.u, e.v);
        }
        if d.components() > 1 {
            out.push(Violation::new("edges", "graph is not connected"));
        }
    }
    out
}

fn validate_ladder(at: &str, ladder: &[ImprovementLevel], sense: Sense, out: &mut Vec<Violation>) {
    if ladder.is_empty() {
        out.push(Violation::new(
            format!("{at}.ladder"),
            "ladder must have at least one level",
        ));
        return;
    }
    if ladder[0].cost != 0 {
        out.push(Violation::new(
            format!("{at}.ladder[0]"),
            "level 0 must cost 0",
        ));
    }
    for (j, lvl) in ladder.iter().enumerate() {
        if lvl.length < 0 || lvl.cost < 0 {
            out.push(Violation::new(
                format!("{at}.ladder[{j}]"),
                "lengths and costs must be nonnegative",
            ));
        }
        if j > 0 {
            let prev = ladder[j - 1];
            if lvl.cost < prev.cost {
                out.push(Violation::new(
                    format!("{at}.ladder[{j}]"),
                    "costs must be nondecreasing",
                ));
            }
            match sense {
                Sense::Maximize if lvl.length < prev.length => out.push(Violation::new(
                    format!("{at}.ladder[{j}]"),
                    "lengths must be nondecreasing",
                )),
                Sense::Minimize if lvl.length > prev.length => out.push(Violation::new(
                    format!("{at}.ladder[{j}]"),
                    "lengths must be nonincreasing",
                )),
                _ => {}
            }
        }
    }
}

/// A spanning tree with one chosen ladder level per tree edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeSolution {
    choices: BTreeMap<usize, usize>,
    total_length: i64,
    total_spend: i64,
}

impl TreeSolution {
    /// Validates that `choices` names a spanning tree of `graph` with existing
    /// levels and computes its totals.
    pub fn new(graph: &UpgradableGraph, choices: BTreeMap<usize, usize>) -> Result<Self> {
        let n = graph.vertex_count();
        if choices.len() + 1 != n {
            return Err(Error::Contract(format!(
                "a spanning tree on {n} vertices needs {} edges, got {}",
                n - 1,
                choices.len()
            )));
        }
        let mut d = DisjointSets::new(n);
        let (mut length, mut spend) = (0i64, 0i64);
        for (&id, &level) in &choices {
            let e = graph
                .edges()
                .get(id)
                .ok_or_else(|| Error::Contract(format!("unknown edge id {id}")))?;
            let lvl = e
                .ladder
                .get(level)
                .ok_or_else(|| Error::Contract(format!("edge {id} has no level {level}")))?;
            if !d.union(e.u, e.v) {
                return Err(Error::Contract(format!("edge {id} closes a cycle")));
            }
            length += lvl.length;
            spend += lvl.cost;
        }
        Ok(TreeSolution {
            choices,
            total_length: length,
            total_spend: spend,
        })
    }

    /// Tree made of `edges`, each at the level chosen by `level_of`.
    pub fn from_edges(
        graph: &UpgradableGraph,
        edges: &[usize],
        mut level_of: impl FnMut(usize) -> usize,
    ) -> Result<Self> {
        Self::new(graph, edges.iter().map(|&e| (e, level_of(e))).collect())
    }

    pub fn choices(&self) -> &BTreeMap<usize, usize> {
        &self.choices
    }

    pub fn total_length(&self) -> i64 {
        self.total_length
    }

    pub fn total_spend(&self) -> i64 {
        self.total_spend
    }

    /// Number of tree edges above level 0.
    pub fn improved_count(&self) -> usize {
        self.choices.values().filter(|&&l| l > 0).count()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.choices.keys().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Vec<UpgradableEdge> {
        vec![
            UpgradableEdge::two_level(0, 0, 1, 1, 10, 2),
            UpgradableEdge::two_level(1, 0, 2, 2, 3, 1),
            UpgradableEdge::two_level(2, 1, 2, 3, 4, 1),
        ]
    }

    #[test]
    fn well_formed_triangle_is_valid() {
        assert!(validate_graph(3, &triangle(), Sense::Maximize).is_empty());
        assert!(UpgradableGraph::new(3, triangle()).is_ok());
    }

    #[test]
    fn level_zero_must_be_free() {
        let mut edges = triangle();
        edges[1].ladder[0].cost = 1;
        let v = validate_graph(3, &edges, Sense::Maximize);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].message, "level 0 must cost 0");
        assert_eq!(v[0].location, "edges[1].ladder[0]");
    }

    #[test]
    fn reports_structural_problems() {
        let edges = vec![
            UpgradableEdge::two_level(0, 0, 0, 1, 2, 1),
            UpgradableEdge::two_level(0, 0, 5, 1, 2, 1),
            UpgradableEdge::new(7, 1, 2, vec![]),
        ];
        let v = validate_graph(3, &edges, Sense::Maximize);
        let msgs: Vec<_> = v.iter().map(|v| v.message.as_str()).collect();
        assert!(msgs.contains(&"endpoints must be distinct"));
        assert!(msgs.iter().any(|m| m.starts_with("duplicate edge id")));
        assert!(msgs.iter().any(|m| m.starts_with("endpoint outside")));
        assert!(msgs.iter().any(|m| m.starts_with("edge id 7")));
        assert!(msgs.contains(&"ladder must have at least one level"));
    }

    #[test]
    fn ladder_direction_depends_on_sense() {
        let e = vec![UpgradableEdge::two_level(0, 0, 1, 5, 2, 1)];
        assert!(!validate_graph(2, &e, Sense::Maximize).is_empty());
        assert!(validate_graph(2, &e, Sense::Minimize).is_empty());
    }

    #[test]
    fn disconnected_and_parallel() {
        let e = vec![UpgradableEdge::two_level(0, 0, 1, 1, 2, 1)];
        let v = validate_graph(3, &e, Sense::Maximize);
        assert_eq!(v[0].message, "graph is not connected");
        let e = vec![
            UpgradableEdge::two_level(0, 0, 1, 1, 2, 1),
            UpgradableEdge::two_level(1, 1, 0, 1, 2, 1),
        ];
        let v = validate_graph(2, &e, Sense::Maximize);
        assert_eq!(v[0].message, "parallel edge between the same endpoints");
    }

    #[test]
    fn tree_solution_totals_and_checks() {
        let g = UpgradableGraph::new(3, triangle()).unwrap();
        let t = TreeSolution::new(&g, [(0, 1), (2, 0)].into_iter().collect()).unwrap();
        assert_eq!(t.total_length(), 13);
        assert_eq!(t.total_spend(), 2);
        assert_eq!(t.improved_count(), 1);
        assert!(TreeSolution::new(&g, [(0, 0)].into_iter().collect()).is_err());
        assert!(TreeSolution::new(&g, [(0, 2), (1, 0)].into_iter().collect()).is_err());
    }
}
