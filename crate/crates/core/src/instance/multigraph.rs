use std::collections::BTreeMap;

use super::{TreeSolution, UpgradableGraph};
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

/// One parallel copy of an original edge, fixed at a single ladder level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeCopy {
    pub id: usize,
    /// Original edge id.
    pub edge: usize,
    /// Ladder level this copy stands for.
    pub level: usize,
    pub u: usize,
    pub v: usize,
    pub length: i64,
    pub cost: i64,
}

/// Parallel-edge expansion of an [`UpgradableGraph`]: one copy per level per
/// edge, ordered by `(edge, level)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    copies: Vec<EdgeCopy>,
}

impl Multigraph {
    /// Builds a multigraph from raw copies; ids must equal positions.
    pub fn new(n: usize, copies: Vec<EdgeCopy>) -> Result<Self> {
        for (i, c) in copies.iter().enumerate() {
            if c.id != i {
                return Err(Error::Contract(format!(
                    "copy at position {i} has id {}",
                    c.id
                )));
            }
            if c.u >= n || c.v >= n || c.u == c.v {
                return Err(Error::Contract(format!("copy {i} has bad endpoints")));
            }
            if c.length < 0 || c.cost < 0 {
                return Err(Error::Contract(format!("copy {i} has negative weight")));
            }
        }
        Ok(Multigraph { n, copies })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn copies(&self) -> &[EdgeCopy] {
        &self.copies
    }

    pub fn copy(&self, id: usize) -> &EdgeCopy {
        &self.copies[id]
    }

    /// `(length, cost)` of a copy set, without structural checks.
    pub fn totals(&self, ids: &[usize]) -> (i64, i64) {
        ids.iter().fold((0, 0), |(l, c), &i| {
            (l + self.copies[i].length, c + self.copies[i].cost)
        })
    }

    pub fn is_spanning_tree(&self, ids: &[usize]) -> bool {
        if ids.len() + 1 != self.n {
            return false;
        }
        let mut d = DisjointSets::new(self.n);
        ids.iter()
            .all(|&i| d.union(self.copies[i].u, self.copies[i].v))
    }

    /// Maps a spanning tree of copies back to per-edge level choices.
    pub fn to_tree_solution(&self, graph: &UpgradableGraph, ids: &[usize]) -> Result<TreeSolution> {
        let mut choices = BTreeMap::new();
        for &i in ids {
            let c = self
                .copies
                .get(i)
                .ok_or_else(|| Error::Contract(format!("unknown copy id {i}")))?;
            if choices.insert(c.edge, c.level).is_some() {
                return Err(Error::Contract(format!("edge {} used twice", c.edge)));
            }
        }
        TreeSolution::new(graph, choices)
    }
}

/// Expands every `k`-level ladder into `k` parallel copies between the same
/// endpoints. The level-0 copies are free and reproduce the original topology.
pub fn expand_to_multigraph(graph: &UpgradableGraph) -> Multigraph {
    let mut copies = Vec::new();
    for e in graph.edges() {
        for (level, lvl) in e.ladder.iter().enumerate() {
            copies.push(EdgeCopy {
                id: copies.len(),
                edge: e.id,
                level,
                u: e.u,
                v: e.v,
                length: lvl.length,
                cost: lvl.cost,
            });
        }
    }
    Multigraph {
        n: graph.vertex_count(),
        copies,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{ImprovementLevel, UpgradableEdge};

    #[test]
    fn two_level_edge_gives_two_copies() {
        let g = UpgradableGraph::new(2, vec![UpgradableEdge::two_level(0, 0, 1, 2, 5, 3)]).unwrap();
        let mg = expand_to_multigraph(&g);
        let got: Vec<_> = mg.copies().iter().map(|c| (c.length, c.cost)).collect();
        assert_eq!(got, vec![(2, 0), (5, 3)]);
    }

    #[test]
    fn three_levels_keep_order() {
        let ladder = vec![
            ImprovementLevel::new(1, 0),
            ImprovementLevel::new(4, 2),
            ImprovementLevel::new(9, 5),
        ];
        let g = UpgradableGraph::new(2, vec![UpgradableEdge::new(0, 0, 1, ladder)]).unwrap();
        let mg = expand_to_multigraph(&g);
        assert_eq!(mg.copies().len(), 3);
        for (j, c) in mg.copies().iter().enumerate() {
            assert_eq!((c.edge, c.level, c.u, c.v), (0, j, 0, 1));
        }
    }

    #[test]
    fn rejects_two_copies_of_one_edge() {
        let g = UpgradableGraph::new(2, vec![UpgradableEdge::two_level(0, 0, 1, 2, 5, 3)]).unwrap();
        let mg = expand_to_multigraph(&g);
        assert!(mg.to_tree_solution(&g, &[0, 1]).is_err());
        let t = mg.to_tree_solution(&g, &[1]).unwrap();
        assert_eq!((t.total_length(), t.total_spend()), (5, 3));
    }
}
