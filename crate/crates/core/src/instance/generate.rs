//! Seeded random instance generators.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{DagEdge, DagInstance, ImprovementLevel, Sense, UpgradableEdge, UpgradableGraph};
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphParams {
    pub n: usize,
    pub m: usize,
    pub max_len: i64,
    pub max_cost: i64,
    /// Ladder size per edge (1 = no improvement possible).
    pub levels: usize,
    pub sense: Sense,
}

impl GraphParams {
    pub fn new(n: usize, m: usize) -> Self {
        GraphParams {
            n,
            m,
            max_len: 20,
            max_cost: 10,
            levels: 2,
            sense: Sense::Maximize,
        }
    }
}

/// Random connected simple graph: a random spanning tree first, then distinct
/// extra pairs until `m` edges. Edge ids are shuffled so tree edges do not
/// always come first.
pub fn gen_random_graph(p: GraphParams, seed: u64) -> Result<UpgradableGraph> {
    if p.n == 0 || p.levels == 0 || p.max_len < 0 || p.max_cost < 1 {
        return Err(Error::Generator(
            "n and levels must be positive, max_len nonnegative, max_cost at least 1".into(),
        ));
    }
    let max_m = p.n * (p.n - 1) / 2;
    if p.m + 1 < p.n || p.m > max_m {
        return Err(Error::Generator(format!(
            "m = {} must lie in [{}, {max_m}] for a connected simple graph on {} vertices",
            p.m,
            p.n - 1,
            p.n
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut perm: Vec<usize> = (0..p.n).collect();
    perm.shuffle(&mut rng);
    let mut pairs = Vec::with_capacity(p.m);
    let mut seen = HashSet::new();
    for i in 1..p.n {
        let j = rng.gen_range(0..i);
        let (a, b) = (perm[i], perm[j]);
        seen.insert((a.min(b), a.max(b)));
        pairs.push((a, b));
    }
    if p.m > pairs.len() {
        let mut rest: Vec<(usize, usize)> = (0..p.n)
            .flat_map(|a| (a + 1..p.n).map(move |b| (a, b)))
            .filter(|pr| !seen.contains(pr))
            .collect();
        rest.shuffle(&mut rng);
        pairs.extend(rest.into_iter().take(p.m - pairs.len()));
    }
    pairs.shuffle(&mut rng);
    let edges = pairs
        .into_iter()
        .enumerate()
        .map(|(id, (u, v))| UpgradableEdge::new(id, u, v, random_ladder(&mut rng, &p)))
        .collect();
    UpgradableGraph::with_sense(p.n, edges, p.sense)
}

fn random_ladder(rng: &mut impl Rng, p: &GraphParams) -> Vec<ImprovementLevel> {
    let mut lengths: Vec<i64> = (0..p.levels)
        .map(|_| rng.gen_range(0..=p.max_len))
        .collect();
    lengths.sort_unstable();
    if p.sense == Sense::Minimize {
        lengths.reverse();
    }
    let mut costs: Vec<i64> = std::iter::once(0)
        .chain((1..p.levels).map(|_| rng.gen_range(1..=p.max_cost)))
        .collect();
    costs.sort_unstable();
    lengths
        .into_iter()
        .zip(costs)
        .map(|(length, cost)| ImprovementLevel::new(length, cost))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DagParams {
    pub n: usize,
    pub m: usize,
    pub max_len: i64,
    pub max_cost: i64,
    /// Every arc gets cost `max_cost` when set.
    pub uniform_cost: bool,
    pub sense: Sense,
}

impl DagParams {
    pub fn new(n: usize, m: usize) -> Self {
        DagParams {
            n,
            m,
            max_len: 20,
            max_cost: 10,
            uniform_cost: false,
            sense: Sense::Maximize,
        }
    }
}

/// Random DAG over a hidden random topological order. The source is first and
/// the sink last in that order; a random chain between them guarantees
/// reachability and the remaining arcs are distinct forward pairs.
pub fn gen_random_dag(p: DagParams, seed: u64) -> Result<DagInstance> {
    if p.n < 2 || p.max_len < 0 || p.max_cost < 1 {
        return Err(Error::Generator(
            "n must be at least 2, max_len nonnegative, max_cost at least 1".into(),
        ));
    }
    let max_m = p.n * (p.n - 1) / 2;
    if p.m == 0 || p.m > max_m {
        return Err(Error::Generator(format!(
            "m = {} must lie in [1, {max_m}] for a simple DAG on {} vertices",
            p.m, p.n
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut order: Vec<usize> = (0..p.n).collect();
    order.shuffle(&mut rng);

    let mut chain = vec![0usize];
    chain.extend((1..p.n - 1).filter(|_| rng.gen_bool(0.5)));
    chain.push(p.n - 1);
    while chain.len() - 1 > p.m {
        chain.remove(1);
    }
    let mut seen = HashSet::new();
    let mut pairs: Vec<(usize, usize)> = chain.windows(2).map(|w| (w[0], w[1])).collect();
    seen.extend(pairs.iter().copied());
    if p.m > pairs.len() {
        let mut rest: Vec<(usize, usize)> = (0..p.n)
            .flat_map(|a| (a + 1..p.n).map(move |b| (a, b)))
            .filter(|pr| !seen.contains(pr))
            .collect();
        rest.shuffle(&mut rng);
        let need = p.m - pairs.len();
        pairs.extend(rest.into_iter().take(need));
    }
    pairs.shuffle(&mut rng);
    let edges = pairs
        .into_iter()
        .enumerate()
        .map(|(id, (a, b))| {
            let base = rng.gen_range(0..=p.max_len);
            let improved = match p.sense {
                Sense::Maximize => rng.gen_range(base..=p.max_len),
                Sense::Minimize => rng.gen_range(0..=base),
            };
            let cost = if p.uniform_cost {
                p.max_cost
            } else {
                rng.gen_range(1..=p.max_cost)
            };
            DagEdge::new(id, order[a], order[b], base, improved, cost)
        })
        .collect();
    DagInstance::with_sense(p.n, edges, order[0], order[p.n - 1], p.sense)
}

/// A budget in `[0, total]` drawn from `seed`, where `total` is the cost of
/// improving everything to the top level.
pub fn random_budget(total: i64, seed: u64) -> i64 {
    let mut rng = rng_from_seed(seed ^ 0xB0D6_E7B0_D6E7_B0D6);
    rng.gen_range(0..=total.max(0))
}
