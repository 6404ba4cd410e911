//! Exhaustive exact solvers. Slow by construction; they are the ground truth the
//! approximation algorithms are checked against.

use crate::error::{Error, Result};
use crate::instance::{
    DagInstance, Multigraph, PathSolution, PathStep, Sense, TreeSolution, UpgradableGraph,
};

/// Size limits past which the oracles refuse to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_tree_vertices: usize,
    pub max_tree_edges: usize,
    pub max_dag_vertices: usize,
    pub max_dag_edges: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_tree_vertices: 8,
            max_tree_edges: 40,
            max_dag_vertices: 12,
            max_dag_edges: 66,
        }
    }
}

impl OracleBudget {
    fn check_tree(&self, n: usize, m: usize) -> Result<()> {
        if n > self.max_tree_vertices || m > self.max_tree_edges {
            return Err(Error::TooLarge(format!(
                "{n} vertices / {m} edges exceeds {} / {}",
                self.max_tree_vertices, self.max_tree_edges
            )));
        }
        Ok(())
    }

    fn check_dag(&self, n: usize, m: usize) -> Result<()> {
        if n > self.max_dag_vertices || m > self.max_dag_edges {
            return Err(Error::TooLarge(format!(
                "{n} vertices / {m} arcs exceeds {} / {}",
                self.max_dag_vertices, self.max_dag_edges
            )));
        }
        Ok(())
    }
}

/// Union-find without path compression so unions can be undone.
struct RollbackSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl RollbackSets {
    fn new(n: usize) -> Self {
        RollbackSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        Some(rb)
    }

    fn undo(&mut self, child: usize) {
        let root = self.parent[child];
        self.size[root] -= self.size[child];
        self.parent[child] = child;
    }
}

/// Calls `visit` with the index set of every spanning tree of the multigraph
/// given by `endpoints`, by recursive inclusion/exclusion with cycle pruning.
pub fn for_each_spanning_tree(
    n: usize,
    endpoints: &[(usize, usize)],
    mut visit: impl FnMut(&[usize]),
) {
    fn rec(
        i: usize,
        need: usize,
        endpoints: &[(usize, usize)],
        sets: &mut RollbackSets,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if chosen.len() == need {
            visit(chosen);
            return;
        }
        if endpoints.len() - i < need - chosen.len() {
            return;
        }
        let (u, v) = endpoints[i];
        if let Some(child) = sets.union(u, v) {
            chosen.push(i);
            rec(i + 1, need, endpoints, sets, chosen, visit);
            chosen.pop();
            sets.undo(child);
        }
        rec(i + 1, need, endpoints, sets, chosen, visit);
    }
    if n == 0 {
        return;
    }
    let mut sets = RollbackSets::new(n);
    rec(0, n - 1, endpoints, &mut sets, &mut Vec::new(), &mut visit);
}

fn better(sense: Sense, candidate: i64, incumbent: i64) -> bool {
    match sense {
        Sense::Maximize => candidate > incumbent,
        Sense::Minimize => candidate < incumbent,
    }
}

/// Optimal value with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optimum<W> {
    pub value: i64,
    pub witness: W,
}

/// Best spanning tree and level assignment with total cost at most `budget`.
pub fn exact_imst(graph: &UpgradableGraph, budget: i64) -> Result<Optimum<TreeSolution>> {
    exact_imst_with(graph, budget, Sense::Maximize, &OracleBudget::default())
}

/// [`exact_imst`] for either direction and custom bounds.
pub fn exact_imst_with(
    graph: &UpgradableGraph,
    budget: i64,
    sense: Sense,
    bounds: &OracleBudget,
) -> Result<Optimum<TreeSolution>> {
    let n = graph.vertex_count();
    bounds.check_tree(n, graph.edge_count())?;
    let endpoints = graph.endpoints();
    let mut best: Option<(i64, Vec<(usize, usize)>)> = None;
    let mut levels = Vec::with_capacity(n);
    for_each_spanning_tree(n, &endpoints, |tree| {
        assign_levels(graph, tree, 0, budget, 0, sense, &mut levels, &mut best);
    });
    let (value, choice) = best.ok_or(Error::Disconnected)?;
    let witness = TreeSolution::new(graph, choice.into_iter().collect())?;
    Ok(Optimum { value, witness })
}

#[allow(clippy::too_many_arguments)]
fn assign_levels(
    graph: &UpgradableGraph,
    tree: &[usize],
    length: i64,
    budget_left: i64,
    i: usize,
    sense: Sense,
    levels: &mut Vec<(usize, usize)>,
    best: &mut Option<(i64, Vec<(usize, usize)>)>,
) {
    if i == tree.len() {
        if best.as_ref().is_none_or(|(v, _)| better(sense, length, *v)) {
            *best = Some((length, levels.clone()));
        }
        return;
    }
    let e = graph.edge(tree[i]);
    for (j, lvl) in e.ladder.iter().enumerate() {
        if lvl.cost > budget_left {
            continue;
        }
        levels.push((e.id, j));
        assign_levels(
            graph,
            tree,
            length + lvl.length,
            budget_left - lvl.cost,
            i + 1,
            sense,
            levels,
            best,
        );
        levels.pop();
    }
}

/// Best spanning tree when at most `k` edges may sit above level 0, costs
/// ignored (the uniform-cost special case).
pub fn exact_uimst(graph: &UpgradableGraph, k: usize) -> Result<Optimum<TreeSolution>> {
    let n = graph.vertex_count();
    OracleBudget::default().check_tree(n, graph.edge_count())?;
    let endpoints = graph.endpoints();
    let mut best: Option<(i64, Vec<usize>, Vec<usize>)> = None;
    for_each_spanning_tree(n, &endpoints, |tree| {
        let base: i64 = tree.iter().map(|&e| graph.edge(e).base().length).sum();
        let mut gains: Vec<(i64, usize)> = tree
            .iter()
            .map(|&e| (graph.edge(e).top().length - graph.edge(e).base().length, e))
            .collect();
        gains.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let picked: Vec<usize> = gains
            .iter()
            .take(k)
            .filter(|g| g.0 > 0)
            .map(|g| g.1)
            .collect();
        let value = base
            + gains
                .iter()
                .take(k)
                .filter(|g| g.0 > 0)
                .map(|g| g.0)
                .sum::<i64>();
        if best.as_ref().is_none_or(|b| value > b.0) {
            best = Some((value, tree.to_vec(), picked));
        }
    });
    let (value, tree, picked) = best.ok_or(Error::Disconnected)?;
    let witness = TreeSolution::from_edges(graph, &tree, |e| {
        if picked.contains(&e) {
            graph.edge(e).top_level()
        } else {
            0
        }
    })?;
    Ok(Optimum { value, witness })
}

/// Best spanning tree of parallel copies with total cost at most `budget`.
/// The witness lists copy ids.
pub fn exact_two_cost(mg: &Multigraph, budget: i64) -> Result<Optimum<Vec<usize>>> {
    let n = mg.vertex_count();
    OracleBudget::default().check_tree(n, mg.copies().len() / 2)?;
    let endpoints: Vec<(usize, usize)> = mg.copies().iter().map(|c| (c.u, c.v)).collect();
    let mut best: Option<(i64, Vec<usize>)> = None;
    for_each_spanning_tree(n, &endpoints, |tree| {
        let (length, cost) = mg.totals(tree);
        if cost <= budget && best.as_ref().is_none_or(|b| length > b.0) {
            best = Some((length, tree.to_vec()));
        }
    });
    let (value, witness) = best.ok_or(Error::Infeasible)?;
    Ok(Optimum { value, witness })
}

/// Limit on improvements along a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathLimit {
    /// Total improvement cost at most this.
    Budget(i64),
    /// At most this many improved arcs, costs ignored.
    Count(usize),
}

/// Longest source–sink path with total improvement cost at most `budget`.
pub fn exact_wildag(dag: &DagInstance, budget: i64) -> Result<Optimum<PathSolution>> {
    exact_path(
        dag,
        Sense::Maximize,
        PathLimit::Budget(budget),
        &OracleBudget::default(),
    )
}

/// Shortest source–sink path with total improvement cost at most `budget`.
pub fn exact_wisdag(dag: &DagInstance, budget: i64) -> Result<Optimum<PathSolution>> {
    exact_path(
        dag,
        Sense::Minimize,
        PathLimit::Budget(budget),
        &OracleBudget::default(),
    )
}

/// Enumerates every simple source–sink path and every improvement subset of
/// its arcs.
pub fn exact_path(
    dag: &DagInstance,
    sense: Sense,
    limit: PathLimit,
    bounds: &OracleBudget,
) -> Result<Optimum<PathSolution>> {
    bounds.check_dag(dag.vertex_count(), dag.edges().len())?;
    let mut best: Option<(i64, Vec<PathStep>)> = None;
    let mut path = Vec::new();
    walk(dag, dag.source(), &mut path, &mut |arcs| {
        let mut steps = Vec::with_capacity(arcs.len());
        choose_improvements(dag, arcs, 0, 0, limit, sense, &mut steps, &mut best);
    });
    let (value, steps) = best.ok_or(Error::NoPath)?;
    let witness = PathSolution::new(dag, steps)?;
    debug_assert_eq!(witness.total_length(), value);
    Ok(Optimum { value, witness })
}

fn walk(dag: &DagInstance, at: usize, path: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if at == dag.sink() {
        visit(path);
        return;
    }
    for &e in dag.out_edges(at) {
        path.push(e);
        walk(dag, dag.edge(e).head, path, visit);
        path.pop();
    }
}

#[allow(clippy::too_many_arguments)]
fn choose_improvements(
    dag: &DagInstance,
    arcs: &[usize],
    i: usize,
    length: i64,
    limit: PathLimit,
    sense: Sense,
    steps: &mut Vec<PathStep>,
    best: &mut Option<(i64, Vec<PathStep>)>,
) {
    if i == arcs.len() {
        if best.as_ref().is_none_or(|b| better(sense, length, b.0)) {
            *best = Some((length, steps.clone()));
        }
        return;
    }
    let e = dag.edge(arcs[i]);
    steps.push(PathStep {
        edge: e.id,
        improved: false,
    });
    choose_improvements(dag, arcs, i + 1, length + e.base, limit, sense, steps, best);
    steps.pop();
    let rest = match limit {
        PathLimit::Budget(b) if e.cost <= b => Some(PathLimit::Budget(b - e.cost)),
        PathLimit::Count(c) if c > 0 => Some(PathLimit::Count(c - 1)),
        _ => None,
    };
    if let Some(rest) = rest {
        steps.push(PathStep {
            edge: e.id,
            improved: true,
        });
        choose_improvements(
            dag,
            arcs,
            i + 1,
            length + e.improved,
            rest,
            sense,
            steps,
            best,
        );
        steps.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackOptimum {
    pub value: i64,
    /// Indices of the chosen items, ascending.
    pub items: Vec<usize>,
}

const KNAPSACK_TABLE_LIMIT: usize = 50_000_000;

/// Exact 0/1 knapsack by the value-per-capacity table.
pub fn knapsack_exact(profits: &[i64], costs: &[i64], budget: i64) -> Result<KnapsackOptimum> {
    if profits.len() != costs.len() {
        return Err(Error::Contract("profits and costs differ in length".into()));
    }
    if budget < 0 || profits.iter().chain(costs).any(|&x| x < 0) {
        return Err(Error::Contract("knapsack data must be nonnegative".into()));
    }
    let k = profits.len();
    let cap = budget as usize;
    if (k + 1).saturating_mul(cap + 1) > KNAPSACK_TABLE_LIMIT {
        return Err(Error::TooLarge(format!(
            "knapsack table {} x {}",
            k + 1,
            cap + 1
        )));
    }
    let width = cap + 1;
    let mut table = vec![0i64; (k + 1) * width];
    for i in 1..=k {
        let (p, c) = (profits[i - 1], costs[i - 1] as usize);
        for b in 0..width {
            let skip = table[(i - 1) * width + b];
            let take = if c <= b {
                table[(i - 1) * width + b - c] + p
            } else {
                i64::MIN
            };
            table[i * width + b] = skip.max(take);
        }
    }
    let mut items = Vec::new();
    let mut b = cap;
    for i in (1..=k).rev() {
        if table[i * width + b] != table[(i - 1) * width + b] {
            items.push(i - 1);
            b -= costs[i - 1] as usize;
        }
    }
    items.reverse();
    Ok(KnapsackOptimum {
        value: table[k * width + cap],
        items,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{expand_to_multigraph, DagEdge, UpgradableEdge};

    fn triangle() -> UpgradableGraph {
        UpgradableGraph::new(
            3,
            vec![
                UpgradableEdge::two_level(0, 0, 1, 1, 10, 2),
                UpgradableEdge::two_level(1, 0, 2, 2, 3, 1),
                UpgradableEdge::two_level(2, 1, 2, 3, 4, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn counts_spanning_trees() {
        // Cayley: K4 has 16 spanning trees; a triangle with one doubled edge has 5.
        let k4: Vec<_> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
            .collect();
        let mut count = 0;
        for_each_spanning_tree(4, &k4, |_| count += 1);
        assert_eq!(count, 16);
        let mut count = 0;
        for_each_spanning_tree(3, &[(0, 1), (0, 1), (1, 2), (0, 2)], |_| count += 1);
        assert_eq!(count, 5);
    }

    #[test]
    fn imst_budget_extremes() {
        let g = triangle();
        assert_eq!(exact_imst(&g, 0).unwrap().value, 5);
        assert_eq!(exact_imst(&g, 100).unwrap().value, 14);
        let w = exact_imst(&g, 2).unwrap();
        assert_eq!(w.value, 13);
        assert_eq!(w.witness.total_length(), 13);
        assert!(w.witness.total_spend() <= 2);
    }

    #[test]
    fn uimst_oracle() {
        let g = triangle();
        assert_eq!(exact_uimst(&g, 0).unwrap().value, 5);
        assert_eq!(exact_uimst(&g, 1).unwrap().value, 13);
        assert_eq!(exact_uimst(&g, 2).unwrap().value, 14);
    }

    #[test]
    fn two_cost_matches_imst() {
        let g = triangle();
        let mg = expand_to_multigraph(&g);
        for b in 0..=5 {
            assert_eq!(
                exact_two_cost(&mg, b).unwrap().value,
                exact_imst(&g, b).unwrap().value
            );
        }
    }

    #[test]
    fn single_edge_dag() {
        let d = DagInstance::new(2, vec![DagEdge::new(0, 0, 1, 2, 7, 3)], 0, 1).unwrap();
        assert_eq!(exact_wildag(&d, 3).unwrap().value, 7);
        assert_eq!(exact_wildag(&d, 2).unwrap().value, 2);
    }

    #[test]
    fn diamond_dag() {
        let d = DagInstance::new(
            4,
            vec![
                DagEdge::new(0, 0, 1, 1, 4, 2),
                DagEdge::new(1, 1, 3, 2, 3, 1),
                DagEdge::new(2, 0, 2, 3, 5, 3),
                DagEdge::new(3, 2, 3, 1, 6, 2),
            ],
            0,
            3,
        )
        .unwrap();
        let o = exact_wildag(&d, 3).unwrap();
        assert_eq!(o.value, 9);
        assert_eq!(o.witness.total_spend(), 2);
        assert_eq!(exact_wildag(&d, 5).unwrap().value, 11);
    }

    #[test]
    fn knapsack() {
        assert_eq!(knapsack_exact(&[3, 4], &[1, 2], 2).unwrap().value, 4);
        assert_eq!(knapsack_exact(&[3, 4], &[1, 2], 2).unwrap().items, vec![1]);
        assert_eq!(knapsack_exact(&[3, 4], &[1, 2], 0).unwrap().value, 0);
        assert_eq!(knapsack_exact(&[3, 4, 5], &[0, 0, 0], 0).unwrap().value, 12);
    }

    #[test]
    fn knapsack_matches_subset_enumeration() {
        let p = [6, 10, 12, 7, 3];
        let c = [1, 2, 3, 2, 1];
        for b in 0..=9 {
            let brute = (0u32..32)
                .filter(|s| {
                    (0..5)
                        .filter(|i| s >> i & 1 == 1)
                        .map(|i| c[i])
                        .sum::<i64>()
                        <= b
                })
                .map(|s| {
                    (0..5)
                        .filter(|i| s >> i & 1 == 1)
                        .map(|i| p[i])
                        .sum::<i64>()
                })
                .max()
                .unwrap();
            let got = knapsack_exact(&p, &c, b).unwrap();
            assert_eq!(got.value, brute);
            assert_eq!(got.items.iter().map(|&i| p[i]).sum::<i64>(), brute);
        }
    }

    #[test]
    fn refuses_large_instances() {
        let edges = (0..9)
            .map(|i| UpgradableEdge::two_level(i, i, i + 1, 1, 2, 1))
            .collect();
        let g = UpgradableGraph::new(10, edges).unwrap();
        assert!(matches!(exact_imst(&g, 1), Err(Error::TooLarge(_))));
    }
}
