//! Two-cost spanning tree: maximize length subject to a cost budget, returning
//! a tree at least as long as the budget-feasible optimum whose cost exceeds the
//! budget by at most a factor `1 + ε`.
//!
//! The solver relaxes the budget with a multiplier `λ` and searches the finite
//! set of breakpoints of the parametric maximum spanning tree `max l − λ·c`.
//! At the breakpoint `λ*` where the optimal tree's cost crosses the budget it
//! walks from the cheap optimal tree to the costly one by single exchanges,
//! each of which preserves the combined weight, and stops at the first tree
//! over budget. Copies whose cost exceeds `ε·B` are handled by enumerating the
//! few of them a feasible tree can contain and contracting them, so every step
//! of the walk raises the cost by at most `ε·B`.

use std::collections::HashMap;

use num_rational::Ratio;

use crate::dsu::DisjointSets;
use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::instance::Multigraph;

/// Exact rational Lagrange multiplier.
pub type Lambda = Ratio<i128>;

/// Secondary order among copies of equal combined weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    /// Lower cost first: the optimal tree just above `λ`.
    CheapFirst,
    /// Higher cost first: the optimal tree just below `λ`.
    CostlyFirst,
}

#[derive(Clone, Copy, Debug)]
struct Item {
    u: usize,
    v: usize,
    length: i64,
    cost: i64,
}

fn key(item: &Item, lambda: &Lambda) -> i128 {
    item.length as i128 * lambda.denom() - lambda.numer() * item.cost as i128
}

/// Maximum spanning tree under `length − λ·cost`; ties by `tie`, then by index.
/// Returns sorted item indices, or `None` when disconnected.
fn parametric_tree(n: usize, items: &[Item], lambda: &Lambda, tie: TieBreak) -> Option<Vec<usize>> {
    let keys: Vec<i128> = items.iter().map(|it| key(it, lambda)).collect();
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| {
        keys[b]
            .cmp(&keys[a])
            .then_with(|| match tie {
                TieBreak::CheapFirst => items[a].cost.cmp(&items[b].cost),
                TieBreak::CostlyFirst => items[b].cost.cmp(&items[a].cost),
            })
            .then(a.cmp(&b))
    });
    let mut sets = DisjointSets::new(n);
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    for i in order {
        if tree.len() + 1 >= n {
            break;
        }
        if sets.union(items[i].u, items[i].v) {
            tree.push(i);
        }
    }
    (tree.len() + 1 == n || n == 0).then(|| {
        tree.sort_unstable();
        tree
    })
}

fn tree_cost(items: &[Item], tree: &[usize]) -> i64 {
    tree.iter().map(|&i| items[i].cost).sum()
}

fn tree_length(items: &[Item], tree: &[usize]) -> i64 {
    tree.iter().map(|&i| items[i].length).sum()
}

fn tree_key(items: &[Item], tree: &[usize], lambda: &Lambda) -> i128 {
    tree.iter().map(|&i| key(&items[i], lambda)).sum()
}

/// Every `λ ≥ 0` at which two items swap places in the combined-weight order,
/// plus `0`, sorted ascending.
fn breakpoints(items: &[Item]) -> Vec<Lambda> {
    let mut out = vec![Lambda::from_integer(0)];
    for a in items {
        for b in items {
            if a.cost < b.cost && a.length < b.length {
                out.push(Lambda::new(
                    (b.length - a.length) as i128,
                    (b.cost - a.cost) as i128,
                ));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

enum Search {
    Exact(Vec<usize>),
    Bracket {
        lambda: Lambda,
        under: Vec<usize>,
        over: Vec<usize>,
    },
}

fn search(n: usize, items: &[Item], budget: i64) -> Result<Search> {
    let cands = breakpoints(items);
    let cheap =
        |l: &Lambda| parametric_tree(n, items, l, TieBreak::CheapFirst).ok_or(Error::Disconnected);

    let first = cheap(&cands[0])?;
    if tree_cost(items, &first) <= budget {
        return Ok(Search::Exact(first));
    }
    let last = cheap(cands.last().expect("zero is always a candidate"))?;
    if tree_cost(items, &last) > budget {
        return Err(Error::Infeasible);
    }
    // Smallest breakpoint whose cheap optimal tree fits the budget; tree cost
    // is nonincreasing in λ.
    let (mut lo, mut hi) = (0usize, cands.len() - 1);
    let mut under = last;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let t = cheap(&cands[mid])?;
        if tree_cost(items, &t) <= budget {
            hi = mid;
            under = t;
        } else {
            lo = mid;
        }
    }
    let lambda = cands[hi];
    if tree_cost(items, &under) == budget {
        return Ok(Search::Exact(under));
    }
    let over =
        parametric_tree(n, items, &lambda, TieBreak::CostlyFirst).ok_or(Error::Disconnected)?;
    if tree_cost(items, &over) <= budget {
        return Err(Error::Contract(format!(
            "no bracketing pair at breakpoint {lambda}"
        )));
    }
    Ok(Search::Bracket {
        lambda,
        under,
        over,
    })
}

/// Exchange walk from `under` to `over`. Each returned tree differs from its
/// predecessor by one insertion and one deletion of equal combined weight.
fn swap_walk(
    n: usize,
    items: &[Item],
    under: &[usize],
    over: &[usize],
    lambda: &Lambda,
) -> Result<Vec<Vec<usize>>> {
    let mut in_tree = vec![false; items.len()];
    for &i in under {
        in_tree[i] = true;
    }
    let mut in_over = vec![false; items.len()];
    for &i in over {
        in_over[i] = true;
    }
    let mut chain = Vec::new();
    while let Some(f) = (0..items.len()).find(|&i| in_over[i] && !in_tree[i]) {
        let path = tree_path(n, items, &in_tree, items[f].u, items[f].v);
        let mut cut = DisjointSets::new(n);
        for (i, it) in items.iter().enumerate() {
            if in_over[i] && i != f {
                cut.union(it.u, it.v);
            }
        }
        let e = path
            .into_iter()
            .filter(|&e| !cut.same(items[e].u, items[e].v))
            .min()
            .ok_or_else(|| Error::Contract("no exchange edge on the fundamental cycle".into()))?;
        if key(&items[e], lambda) != key(&items[f], lambda) {
            return Err(Error::Contract(format!(
                "trees are not both optimal at λ = {lambda}"
            )));
        }
        in_tree[e] = false;
        in_tree[f] = true;
        chain.push((0..items.len()).filter(|&i| in_tree[i]).collect());
    }
    Ok(chain)
}

/// Item indices on the tree path between `a` and `b`.
fn tree_path(n: usize, items: &[Item], in_tree: &[bool], a: usize, b: usize) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for (i, it) in items.iter().enumerate() {
        if in_tree[i] {
            adj[it.u].push((it.v, i));
            adj[it.v].push((it.u, i));
        }
    }
    let mut via = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack = vec![a];
    seen[a] = true;
    while let Some(x) = stack.pop() {
        if x == b {
            break;
        }
        for &(y, i) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                via[y] = Some((x, i));
                stack.push(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut x = b;
    while let Some((p, i)) = via[x] {
        path.push(i);
        x = p;
    }
    path
}

fn items_of(mg: &Multigraph) -> Vec<Item> {
    mg.copies()
        .iter()
        .map(|c| Item {
            u: c.u,
            v: c.v,
            length: c.length,
            cost: c.cost,
        })
        .collect()
}

/// A spanning tree optimal for the relaxed objective at multiplier `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianPoint {
    pub lambda: Lambda,
    /// Copy ids, ascending.
    pub tree: Vec<usize>,
    pub length: i64,
    pub cost: i64,
    /// `length − λ·(cost − budget)`.
    pub value: Ratio<i128>,
}

impl LagrangianPoint {
    fn new(items: &[Item], tree: Vec<usize>, lambda: Lambda, budget: i64) -> Self {
        let length = tree_length(items, &tree);
        let cost = tree_cost(items, &tree);
        let value = Ratio::from_integer(length as i128)
            - lambda * Ratio::from_integer((cost - budget) as i128);
        LagrangianPoint {
            lambda,
            tree,
            length,
            cost,
            value,
        }
    }
}

/// Maximum spanning tree of the copies under `length − λ·cost`.
pub fn lagrangian_tree(
    mg: &Multigraph,
    lambda: Lambda,
    budget: i64,
    tie: TieBreak,
) -> Result<LagrangianPoint> {
    if lambda < Lambda::from_integer(0) {
        return Err(Error::Contract("λ must be nonnegative".into()));
    }
    let items = items_of(mg);
    let tree =
        parametric_tree(mg.vertex_count(), &items, &lambda, tie).ok_or(Error::Disconnected)?;
    Ok(LagrangianPoint::new(&items, tree, lambda, budget))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaSearch {
    /// A Lagrangian-optimal tree that fits the budget and is at least as long
    /// as every feasible tree.
    ExactHit(LagrangianPoint),
    /// Two trees optimal at the same `λ*`, one within budget and one over.
    Bracket {
        lambda: Lambda,
        under: LagrangianPoint,
        over: LagrangianPoint,
    },
}

/// Breakpoint search for the multiplier at which the optimal tree's cost
/// crosses `budget`.
pub fn lambda_search(mg: &Multigraph, budget: i64) -> Result<LambdaSearch> {
    let items = items_of(mg);
    Ok(match search(mg.vertex_count(), &items, budget)? {
        Search::Exact(t) => {
            let lambda = Lambda::from_integer(0);
            LambdaSearch::ExactHit(LagrangianPoint::new(&items, t, lambda, budget))
        }
        Search::Bracket {
            lambda,
            under,
            over,
        } => LambdaSearch::Bracket {
            lambda,
            under: LagrangianPoint::new(&items, under, lambda, budget),
            over: LagrangianPoint::new(&items, over, lambda, budget),
        },
    })
}

/// Exchange walk between two trees optimal at the same multiplier. The result
/// excludes `under` and ends with `over`; it is empty when they coincide.
pub fn swap_chain(
    mg: &Multigraph,
    under: &LagrangianPoint,
    over: &LagrangianPoint,
) -> Result<Vec<Vec<usize>>> {
    if under.lambda != over.lambda {
        return Err(Error::Contract(
            "trees come from different multipliers".into(),
        ));
    }
    let lambda = under.lambda;
    let items = items_of(mg);
    let n = mg.vertex_count();
    let best =
        parametric_tree(n, &items, &lambda, TieBreak::CheapFirst).ok_or(Error::Disconnected)?;
    let best_key = tree_key(&items, &best, &lambda);
    for t in [&under.tree, &over.tree] {
        if !mg.is_spanning_tree(t) || tree_key(&items, t, &lambda) != best_key {
            return Err(Error::Contract(format!(
                "tree is not optimal at λ = {lambda}"
            )));
        }
    }
    swap_walk(n, &items, &under.tree, &over.tree, &lambda)
}

/// The first tree of `chain` whose cost exceeds `budget`, with its predecessor.
pub fn first_over_budget<'a>(
    mg: &Multigraph,
    under: &'a [usize],
    chain: &'a [Vec<usize>],
    budget: i64,
) -> Option<(&'a [usize], &'a [usize])> {
    let mut prev = under;
    for t in chain {
        if mg.totals(t).1 > budget {
            return Some((prev, t));
        }
        prev = t;
    }
    None
}

/// Output of [`two_cost_mst`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCostTree {
    /// Copy ids, ascending.
    pub copies: Vec<usize>,
    pub length: i64,
    pub cost: i64,
}

/// `(1, 1+ε)` two-cost spanning tree: length at least the best tree of cost at
/// most `budget`, cost at most `(1+ε)·budget`.
pub fn two_cost_mst(mg: &Multigraph, budget: i64, epsilon: Epsilon) -> Result<TwoCostTree> {
    if budget < 0 {
        return Err(Error::Contract("budget must be nonnegative".into()));
    }
    let n = mg.vertex_count();
    let heavy: Vec<usize> = mg
        .copies()
        .iter()
        .filter(|c| epsilon.exceeds_fraction_of(c.cost, budget))
        .map(|c| c.id)
        .collect();
    let max_heavy = epsilon.inverse_ceil() as usize;

    let mut best: Option<TwoCostTree> = None;
    let mut chosen = Vec::new();
    let mut sets = DisjointSets::new(n);
    enumerate_heavy(
        mg,
        &heavy,
        0,
        max_heavy,
        budget,
        &mut chosen,
        &mut sets,
        &mut |fixed, sets| {
            let Some(tree) = solve_residual(mg, fixed, sets, budget, epsilon)? else {
                return Ok(());
            };
            let better = match &best {
                None => true,
                Some(b) => {
                    tree.length > b.length || tree.length == b.length && tree.copies < b.copies
                }
            };
            if better {
                best = Some(tree);
            }
            Ok(())
        },
    )?;
    best.ok_or(Error::Infeasible)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_heavy(
    mg: &Multigraph,
    heavy: &[usize],
    start: usize,
    max_heavy: usize,
    budget_left: i64,
    chosen: &mut Vec<usize>,
    sets: &mut DisjointSets,
    visit: &mut dyn FnMut(&[usize], &DisjointSets) -> Result<()>,
) -> Result<()> {
    visit(chosen, sets)?;
    if chosen.len() == max_heavy {
        return Ok(());
    }
    for i in start..heavy.len() {
        let c = mg.copy(heavy[i]);
        if c.cost > budget_left || sets.same(c.u, c.v) {
            continue;
        }
        let mut next = sets.clone();
        next.union(c.u, c.v);
        chosen.push(heavy[i]);
        enumerate_heavy(
            mg,
            heavy,
            i + 1,
            max_heavy,
            budget_left - c.cost,
            chosen,
            &mut next,
            visit,
        )?;
        chosen.pop();
    }
    Ok(())
}

/// Solves the instance with `fixed` heavy copies contracted and every other
/// heavy copy removed. `None` when the residual budget cannot be met.
fn solve_residual(
    mg: &Multigraph,
    fixed: &[usize],
    sets: &DisjointSets,
    budget: i64,
    epsilon: Epsilon,
) -> Result<Option<TwoCostTree>> {
    let mut sets = sets.clone();
    let n = mg.vertex_count();
    let mut index = HashMap::new();
    for v in 0..n {
        let r = sets.find(v);
        let next = index.len();
        index.entry(r).or_insert(next);
    }
    let mut items = Vec::new();
    let mut ids = Vec::new();
    for c in mg.copies() {
        if epsilon.exceeds_fraction_of(c.cost, budget) {
            continue;
        }
        let (a, b) = (index[&sets.find(c.u)], index[&sets.find(c.v)]);
        if a != b {
            items.push(Item {
                u: a,
                v: b,
                length: c.length,
                cost: c.cost,
            });
            ids.push(c.id);
        }
    }
    let fixed_cost: i64 = fixed.iter().map(|&i| mg.copy(i).cost).sum();
    let residual_budget = budget - fixed_cost;
    let picked = match search(index.len(), &items, residual_budget) {
        Ok(Search::Exact(t)) => t,
        Ok(Search::Bracket {
            lambda,
            under,
            over,
        }) => {
            let chain = swap_walk(index.len(), &items, &under, &over, &lambda)?;
            chain
                .into_iter()
                .find(|t| tree_cost(&items, t) > residual_budget)
                .ok_or_else(|| Error::Contract("exchange walk never left the budget".into()))?
        }
        Err(Error::Infeasible) | Err(Error::Disconnected) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut copies: Vec<usize> = fixed
        .iter()
        .copied()
        .chain(picked.iter().map(|&i| ids[i]))
        .collect();
    copies.sort_unstable();
    let (length, cost) = mg.totals(&copies);
    debug_assert!(mg.is_spanning_tree(&copies));
    Ok(Some(TwoCostTree {
        copies,
        length,
        cost,
    }))
}
