//! Knapsack reductions, used as instance generators with a known optimum.

use super::{DagEdge, DagInstance, Instance, UpgradableEdge, UpgradableGraph};
use crate::error::{Error, Result};
use crate::oracle::knapsack_exact;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionTarget {
    Imst,
    Wildag,
}

/// Encodes the 0/1 knapsack `max Σ p·x  s.t. Σ c·x ≤ budget` as an instance.
///
/// * `Imst`: a path on `items + 1` vertices; item `i` is the edge `(i, i+1)`
///   with ladder `[(0, 0), (p_i, c_i)]`. The only spanning tree is the path, so
///   choosing levels is choosing items.
/// * `Wildag`: a chain `0 → 1 → … → items`; each link carries two parallel arcs,
///   one `(0, 0)` and one improvable from 0 to `p_i` at cost `c_i`.
///
/// The known optimum always comes from the exact knapsack dynamic program.
pub fn gen_knapsack_reduction(
    profits: &[i64],
    costs: &[i64],
    budget: i64,
    target: ReductionTarget,
) -> Result<Instance> {
    if profits.len() != costs.len() {
        return Err(Error::Generator(
            "profits and costs differ in length".into(),
        ));
    }
    if profits.iter().chain(costs).any(|&x| x < 0) || budget < 0 {
        return Err(Error::Generator("knapsack data must be nonnegative".into()));
    }
    let optimum = knapsack_exact(profits, costs, budget)?.value;
    let k = profits.len();
    let problem = match target {
        ReductionTarget::Imst => {
            let edges = (0..k)
                .map(|i| UpgradableEdge::two_level(i, i, i + 1, 0, profits[i], costs[i]))
                .collect();
            super::Problem::Imst(UpgradableGraph::new(k + 1, edges)?)
        }
        ReductionTarget::Wildag => {
            if k == 0 {
                return Err(Error::Generator(
                    "a DAG reduction needs at least one item".into(),
                ));
            }
            let edges = (0..k)
                .flat_map(|i| {
                    [
                        DagEdge::new(2 * i, i, i + 1, 0, 0, 0),
                        DagEdge::new(2 * i + 1, i, i + 1, 0, profits[i], costs[i]),
                    ]
                })
                .collect();
            super::Problem::Wildag(DagInstance::new(k + 1, edges, 0, k)?)
        }
    };
    Ok(Instance {
        problem,
        budget,
        known_optimum: Some(optimum),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_optima() {
        let i = gen_knapsack_reduction(&[3, 4], &[1, 2], 2, ReductionTarget::Imst).unwrap();
        assert_eq!(i.known_optimum, Some(4));
        let i = gen_knapsack_reduction(&[5], &[10], 0, ReductionTarget::Wildag).unwrap();
        assert_eq!(i.known_optimum, Some(0));
        let i = gen_knapsack_reduction(&[1, 1, 1], &[1, 1, 1], 3, ReductionTarget::Imst).unwrap();
        assert_eq!(i.known_optimum, Some(3));
    }

    #[test]
    fn shapes() {
        let i = gen_knapsack_reduction(&[3, 4], &[1, 2], 2, ReductionTarget::Imst).unwrap();
        let g = i.graph().unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        let i = gen_knapsack_reduction(&[3, 4], &[1, 2], 2, ReductionTarget::Wildag).unwrap();
        let d = i.dag().unwrap();
        assert_eq!(
            (d.vertex_count(), d.edges().len(), d.source(), d.sink()),
            (3, 4, 0, 2)
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(gen_knapsack_reduction(&[1], &[1, 2], 2, ReductionTarget::Imst).is_err());
        assert!(gen_knapsack_reduction(&[], &[], 2, ReductionTarget::Wildag).is_err());
        assert!(gen_knapsack_reduction(&[], &[], 2, ReductionTarget::Imst).is_ok());
    }
}
