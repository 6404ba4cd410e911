//! Greedy spanning trees and the uniform-cost half approximation.
//!
//! All greedy passes scan edges by descending weight, ties by ascending edge id.

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::instance::{TreeSolution, UpgradableGraph};

fn greedy_order(weights: &[i64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    order
}

/// Kruskal maximum spanning tree. Returns edge ids in acceptance order.
pub fn max_spanning_tree(
    n: usize,
    endpoints: &[(usize, usize)],
    weights: &[i64],
) -> Result<Vec<usize>> {
    extend_forest_to_tree(n, endpoints, &[], weights)
}

/// Acyclic edge set built by a size-capped greedy pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CappedForest {
    pub edges: Vec<usize>,
    pub cap: usize,
}

/// Greedy maximum-weight forest that stops after `k` accepted edges.
pub fn max_forest_capped(
    n: usize,
    endpoints: &[(usize, usize)],
    weights: &[i64],
    k: usize,
) -> CappedForest {
    let mut sets = DisjointSets::new(n);
    let mut edges = Vec::new();
    for e in greedy_order(weights) {
        if edges.len() >= k {
            break;
        }
        let (u, v) = endpoints[e];
        if sets.union(u, v) {
            edges.push(e);
        }
    }
    CappedForest { edges, cap: k }
}

/// Completes `forest` to a spanning tree by greedily adding edges on
/// `weights`. Forest edges are kept and come first in the result.
pub fn extend_forest_to_tree(
    n: usize,
    endpoints: &[(usize, usize)],
    forest: &[usize],
    weights: &[i64],
) -> Result<Vec<usize>> {
    let mut sets = DisjointSets::new(n);
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    for &e in forest {
        let (u, v) = endpoints[e];
        if !sets.union(u, v) {
            return Err(Error::Contract(format!("forest edge {e} closes a cycle")));
        }
        tree.push(e);
    }
    for e in greedy_order(weights) {
        if tree.len() + 1 >= n {
            break;
        }
        let (u, v) = endpoints[e];
        if sets.union(u, v) {
            tree.push(e);
        }
    }
    if tree.len() + 1 != n {
        return Err(Error::Disconnected);
    }
    Ok(tree)
}

/// Both candidate trees of the half approximation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UimstCandidates {
    /// Maximum spanning tree on base lengths, nothing improved.
    pub base_tree: TreeSolution,
    /// Capped greedy forest on improved lengths, completed with base edges.
    pub improved_tree: TreeSolution,
}

impl UimstCandidates {
    /// The longer tree; the improved one on ties.
    pub fn best(self) -> TreeSolution {
        if self.base_tree.total_length() > self.improved_tree.total_length() {
            self.base_tree
        } else {
            self.improved_tree
        }
    }
}

pub fn uimst_candidates(graph: &UpgradableGraph, k: usize) -> Result<UimstCandidates> {
    if graph.max_ladder_len() > 2 {
        return Err(Error::Contract(
            "uniform improvement needs ladders of at most two levels".into(),
        ));
    }
    let n = graph.vertex_count();
    let endpoints = graph.endpoints();
    let base = graph.base_lengths();
    let improved = graph.top_lengths();

    let t1 = max_spanning_tree(n, &endpoints, &base)?;
    let base_tree = TreeSolution::from_edges(graph, &t1, |_| 0)?;

    let forest = max_forest_capped(n, &endpoints, &improved, k);
    let t2 = extend_forest_to_tree(n, &endpoints, &forest.edges, &base)?;
    let improved_tree = TreeSolution::from_edges(graph, &t2, |e| {
        if forest.edges.contains(&e) {
            graph.edge(e).top_level()
        } else {
            0
        }
    })?;
    Ok(UimstCandidates {
        base_tree,
        improved_tree,
    })
}

/// Half approximation for the uniform-cost problem with at most `k` improved
/// edges: the better of the base-length maximum tree and the capped improved
/// forest extended to a tree.
pub fn uimst_half_approx(graph: &UpgradableGraph, k: usize) -> Result<TreeSolution> {
    Ok(uimst_candidates(graph, k)?.best())
}
