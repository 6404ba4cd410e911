//! Randomized budget-feasible solver for improvable maximum spanning trees.
//!
//! One pass: shift every length by a constant, solve the two-cost relaxation
//! with `ε' = ε/2` on the parallel-copy multigraph, then keep each improved tree
//! edge independently with probability `1/(1+ε')²` and revert the rest to level
//! 0. Repeating the sampling `t` times and keeping the longest budget-feasible
//! result drives the failure probability below `δ`.

use rand::Rng;
use serde::Serialize;

use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::instance::{
    expand_to_multigraph, validate_graph, Multigraph, Sense, TreeSolution, UpgradableGraph,
};
use crate::mst::max_spanning_tree;
use crate::rng::{derive_seed, rng_from_seed};
use crate::two_cost::two_cost_mst;

/// Per-trial failure bound used to size the number of trials (`c₁ + c₂ < 2/e`).
pub const FAILURE_PER_TRIAL: f64 = 2.0 / std::f64::consts::E;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomizedConfig {
    pub epsilon: Epsilon,
    pub delta: f64,
    pub trials: usize,
    pub master_seed: u64,
}

impl RandomizedConfig {
    /// Config with the trial count sized from `delta`.
    pub fn new(epsilon: Epsilon, delta: f64, master_seed: u64) -> Result<Self> {
        if epsilon.numer() >= epsilon.denom() {
            return Err(Error::Contract(format!(
                "epsilon {epsilon} must lie in (0, 1)"
            )));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::Contract(format!("delta {delta} must lie in (0, 1)")));
        }
        Ok(RandomizedConfig {
            epsilon,
            delta,
            trials: Self::trials_for(delta),
            master_seed,
        })
    }

    /// Config for failure probability `1/n`.
    pub fn for_vertices(epsilon: Epsilon, n: usize, master_seed: u64) -> Result<Self> {
        Self::new(epsilon, 1.0 / n.max(2) as f64, master_seed)
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials.max(1);
        self
    }

    /// `⌈ln(1/δ) / ln(1/c)⌉` for the per-trial failure bound `c`.
    pub fn trials_for(delta: f64) -> usize {
        ((1.0 / delta).ln() / (1.0 / FAILURE_PER_TRIAL).ln())
            .ceil()
            .max(1.0) as usize
    }

    pub fn epsilon_prime(&self) -> Epsilon {
        self.epsilon.half()
    }

    /// `s = 3(1+ε')²/ε'⁴`.
    pub fn scale_threshold(&self) -> f64 {
        let e = self.epsilon_prime().as_f64();
        3.0 * (1.0 + e).powi(2) / e.powi(4)
    }

    /// `1/(1+ε')²`.
    pub fn keep_probability(&self) -> f64 {
        keep_probability(self.epsilon_prime())
    }
}

pub fn keep_probability(epsilon_prime: Epsilon) -> f64 {
    let (n, d) = (epsilon_prime.numer() as f64, epsilon_prime.denom() as f64);
    (d / (d + n)).powi(2)
}

/// Lengths `x` rewritten as `x·scale + offset`, which is `x + s/n` in units of
/// `1/scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedGraph {
    pub graph: UpgradableGraph,
    pub scale: i64,
    pub offset: i64,
}

impl ShiftedGraph {
    /// Maps a shifted tree length back to original units.
    pub fn unshift_tree_length(&self, shifted: i64, tree_edges: usize) -> i64 {
        (shifted - self.offset * tree_edges as i64) / self.scale
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Adds `s/n` to every level length of every edge. Lengths are multiplied by
/// `n/gcd(s, n)` first so the shift stays integral; `s = 0` is the identity.
pub fn shift_lengths(graph: &UpgradableGraph, s: i64) -> ShiftedGraph {
    let n = graph.vertex_count() as i64;
    let g = gcd(s, n).max(1);
    let scale = n / g;
    let offset = s / g;
    let graph = graph.map_ladders(|e| {
        e.ladder
            .iter()
            .map(|l| crate::ImprovementLevel::new(l.length * scale + offset, l.cost))
            .collect()
    });
    ShiftedGraph {
        graph,
        scale,
        offset,
    }
}

/// Factor that lifts the budget to at least `3/ε'²`.
pub fn cost_scale_factor(epsilon_prime: Epsilon, budget: i64) -> i64 {
    let e = epsilon_prime.as_f64();
    let target = 3.0 / (e * e);
    ((target / budget.max(1) as f64).ceil() as i64).max(1)
}

/// Multiplies every cost and the budget by `factor`.
pub fn scale_costs(graph: &UpgradableGraph, budget: i64, factor: i64) -> (UpgradableGraph, i64) {
    let g = graph.map_ladders(|e| {
        e.ladder
            .iter()
            .map(|l| crate::ImprovementLevel::new(l.length, l.cost * factor))
            .collect()
    });
    (g, budget * factor)
}

/// Keeps each improved tree edge with probability `keep` and reverts the rest
/// to level 0. The tree's edge set never changes.
pub fn sample_improved_forest(
    graph: &UpgradableGraph,
    tree: &TreeSolution,
    keep: f64,
    rng: &mut impl Rng,
) -> Result<TreeSolution> {
    let choices = tree
        .choices()
        .iter()
        .map(|(&e, &level)| {
            let level = if level > 0 && !rng.gen_bool(keep) {
                0
            } else {
                level
            };
            (e, level)
        })
        .collect();
    TreeSolution::new(graph, choices)
}

/// Multistage ladders need no special handling: each level becomes a parallel
/// copy and the same pipeline applies.
pub fn expand_multistage(graph: &UpgradableGraph) -> Multigraph {
    expand_to_multigraph(graph)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialSummary {
    pub index: usize,
    pub seed: u64,
    pub length: i64,
    pub spend: i64,
    pub feasible: bool,
    /// False when the relaxed tree already fit the budget and was kept whole.
    pub sampled: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImstOutcome {
    pub solution: TreeSolution,
    /// Two-cost tree before sampling, in original units.
    pub relaxed: TreeSolution,
    pub trials: Vec<TrialSummary>,
    pub fallback_used: bool,
    pub shift: ShiftedGraph,
    pub cost_scale: i64,
}

/// Randomized `(1−ε, 1)` solver. The returned tree always satisfies the
/// budget; its length is at least `(1−ε)·OPT` with probability `≥ 1−δ`.
pub fn imst_solve(
    graph: &UpgradableGraph,
    budget: i64,
    config: &RandomizedConfig,
) -> Result<ImstOutcome> {
    imst_solve_with_shift(
        graph,
        budget,
        config,
        config.scale_threshold().ceil() as i64,
    )
}

/// [`imst_solve`] with an explicit additive shift `s` (lengths move by `s/n`).
pub fn imst_solve_with_shift(
    graph: &UpgradableGraph,
    budget: i64,
    config: &RandomizedConfig,
    s: i64,
) -> Result<ImstOutcome> {
    if budget < 0 {
        return Err(Error::Contract("budget must be nonnegative".into()));
    }
    let eps_p = config.epsilon_prime();
    let shift = shift_lengths(graph, s);
    let cost_scale = cost_scale_factor(eps_p, budget);
    let (work, work_budget) = scale_costs(&shift.graph, budget, cost_scale);

    let mg = expand_multistage(&work);
    let relaxed_tree = two_cost_mst(&mg, work_budget, eps_p)?;
    let relaxed = mg.to_tree_solution(graph, &relaxed_tree.copies)?;

    let keep = config.keep_probability();
    let mut trials = Vec::with_capacity(config.trials);
    let mut best: Option<(usize, TreeSolution)> = None;
    for index in 0..config.trials.max(1) {
        let seed = derive_seed(config.master_seed, index as u64);
        let sampled = relaxed.total_spend() > budget;
        let candidate = if sampled {
            sample_improved_forest(graph, &relaxed, keep, &mut rng_from_seed(seed))?
        } else {
            relaxed.clone()
        };
        let feasible = candidate.total_spend() <= budget;
        trials.push(TrialSummary {
            index,
            seed,
            length: candidate.total_length(),
            spend: candidate.total_spend(),
            feasible,
            sampled,
        });
        if feasible
            && best
                .as_ref()
                .is_none_or(|(_, b)| candidate.total_length() > b.total_length())
        {
            best = Some((index, candidate));
        }
    }
    let (solution, fallback_used) = match best {
        Some((_, t)) => (t, false),
        None => (level_zero_tree(graph)?, true),
    };
    Ok(ImstOutcome {
        solution,
        relaxed,
        trials,
        fallback_used,
        shift,
        cost_scale,
    })
}

/// Maximum spanning tree on level-0 lengths; always within any budget.
pub fn level_zero_tree(graph: &UpgradableGraph) -> Result<TreeSolution> {
    let tree = max_spanning_tree(
        graph.vertex_count(),
        &graph.endpoints(),
        &graph.base_lengths(),
    )?;
    TreeSolution::from_edges(graph, &tree, |_| 0)
}

/// Replaces every length `x` by `ceiling − x`. Applying it twice with the same
/// ceiling restores the original lengths.
pub fn reflect_lengths(graph: &UpgradableGraph, ceiling: i64) -> UpgradableGraph {
    graph.map_ladders(|e| {
        e.ladder
            .iter()
            .map(|l| crate::ImprovementLevel::new(ceiling - l.length, l.cost))
            .collect()
    })
}

/// Turns a minimization instance (level 0 longest and free, improvements
/// shorter and costlier) into an equivalent maximization instance. Returns the
/// transformed graph and the reflection ceiling.
pub fn minimize_transform(graph: &UpgradableGraph) -> Result<(UpgradableGraph, i64)> {
    let violations = validate_graph(graph.vertex_count(), graph.edges(), Sense::Minimize);
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    let ceiling = graph.max_length();
    Ok((reflect_lengths(graph, ceiling), ceiling))
}

/// Randomized solver for the minimization version: the returned tree's length
/// is at most `(1+ε)`-ish of optimum in the reflected sense, always within budget.
pub fn imst_solve_min(
    graph: &UpgradableGraph,
    budget: i64,
    config: &RandomizedConfig,
) -> Result<ImstOutcome> {
    let (max_graph, _) = minimize_transform(graph)?;
    let out = imst_solve(&max_graph, budget, config)?;
    let back = |t: &TreeSolution| TreeSolution::new(graph, t.choices().clone());
    let solution = if out.fallback_used {
        min_level_zero_tree(graph)?
    } else {
        back(&out.solution)?
    };
    let trials = out
        .trials
        .iter()
        .map(|t| TrialSummary {
            length: (graph.vertex_count() as i64 - 1) * graph.max_length() - t.length,
            ..t.clone()
        })
        .collect();
    Ok(ImstOutcome {
        solution,
        relaxed: back(&out.relaxed)?,
        trials,
        ..out
    })
}

fn min_level_zero_tree(graph: &UpgradableGraph) -> Result<TreeSolution> {
    let neg: Vec<i64> = graph.base_lengths().iter().map(|&l| -l).collect();
    let tree = max_spanning_tree(graph.vertex_count(), &graph.endpoints(), &neg)?;
    TreeSolution::from_edges(graph, &tree, |_| 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{ImprovementLevel, UpgradableEdge};

    fn square() -> UpgradableGraph {
        UpgradableGraph::new(
            4,
            [
                (0, 1, 1, 9, 4),
                (1, 2, 2, 7, 3),
                (2, 3, 1, 8, 5),
                (3, 0, 3, 4, 1),
                (0, 2, 2, 6, 2),
            ]
            .iter()
            .enumerate()
            .map(|(i, &(u, v, l, h, c))| UpgradableEdge::two_level(i, u, v, l, h, c))
            .collect(),
        )
        .unwrap()
    }

    fn config() -> RandomizedConfig {
        RandomizedConfig::new(Epsilon::new(3, 10).unwrap(), 0.2, 11).unwrap()
    }

    #[test]
    fn config_derivations() {
        let c = config();
        assert_eq!(c.epsilon_prime(), Epsilon::new(3, 20).unwrap());
        // ln 5 / ln(e/2) = 5.24
        assert_eq!(c.trials, 6);
        let e: f64 = 0.15;
        assert!((c.scale_threshold() - 3.0 * 1.15f64.powi(2) / e.powi(4)).abs() < 1e-6);
        assert!((c.keep_probability() - 1.0 / 1.15f64.powi(2)).abs() < 1e-12);
        // (1 − ε/2)² ≥ 1 − ε
        assert!((1.0 - 0.15f64).powi(2) >= 0.7);
        assert!(RandomizedConfig::new(Epsilon::new(1, 1).unwrap(), 0.2, 0).is_err());
        assert!(RandomizedConfig::new(Epsilon::new(1, 2).unwrap(), 1.0, 0).is_err());
    }

    #[test]
    fn zero_shift_is_identity() {
        let g = square();
        let s = shift_lengths(&g, 0);
        assert_eq!(s.graph, g);
        assert_eq!((s.scale, s.offset), (1, 0));
    }

    #[test]
    fn shift_adds_s_over_n() {
        let g = square();
        let s = shift_lengths(&g, 6);
        // 6/4 = 3/2: lengths doubled plus 3
        assert_eq!((s.scale, s.offset), (2, 3));
        assert_eq!(s.graph.edge(0).ladder[1].length, 21);
        assert_eq!(s.unshift_tree_length(21 + 9 + 5, 3), 9 + 3 + 1);
    }

    #[test]
    fn certain_keep_leaves_tree_unchanged() {
        let g = square();
        let t = TreeSolution::new(&g, [(0, 1), (1, 1), (2, 0)].into_iter().collect()).unwrap();
        let s = sample_improved_forest(&g, &t, 1.0, &mut rng_from_seed(3)).unwrap();
        assert_eq!(s, t);
        let plain = TreeSolution::new(&g, [(0, 0), (1, 0), (2, 0)].into_iter().collect()).unwrap();
        let s = sample_improved_forest(&g, &plain, 0.5, &mut rng_from_seed(3)).unwrap();
        assert_eq!(s, plain);
        assert_eq!(s.total_spend(), 0);
    }

    #[test]
    fn slack_budget_returns_improved_mst() {
        let g = square();
        let out = imst_solve(&g, 100, &config()).unwrap();
        assert_eq!(out.solution.total_length(), 24);
        assert!(out.trials.iter().all(|t| !t.sampled));
    }

    #[test]
    fn zero_budget_gives_base_mst() {
        let g = square();
        let out = imst_solve(&g, 0, &config()).unwrap();
        assert_eq!(out.solution.total_spend(), 0);
        assert_eq!(out.solution.total_length(), 3 + 2 + 2);
    }

    #[test]
    fn seed_determinism() {
        let g = square();
        let a = imst_solve(&g, 5, &config()).unwrap();
        let b = imst_solve(&g, 5, &config()).unwrap();
        assert_eq!(a, b);
        assert!(a.solution.total_spend() <= 5);
    }

    #[test]
    fn reflection_is_an_involution() {
        let g = square();
        assert_eq!(reflect_lengths(&reflect_lengths(&g, 50), 50), g);
    }

    #[test]
    fn min_transform_rejects_max_ladders() {
        assert!(minimize_transform(&square()).is_err());
    }

    #[test]
    fn min_zero_budget_is_plain_mst() {
        let g = UpgradableGraph::with_sense(
            3,
            vec![
                UpgradableEdge::new(
                    0,
                    0,
                    1,
                    vec![ImprovementLevel::new(5, 0), ImprovementLevel::new(1, 2)],
                ),
                UpgradableEdge::new(
                    1,
                    1,
                    2,
                    vec![ImprovementLevel::new(2, 0), ImprovementLevel::new(1, 2)],
                ),
                UpgradableEdge::new(
                    2,
                    0,
                    2,
                    vec![ImprovementLevel::new(4, 0), ImprovementLevel::new(0, 1)],
                ),
            ],
            Sense::Minimize,
        )
        .unwrap();
        let out = imst_solve_min(&g, 0, &config()).unwrap();
        assert_eq!(out.solution.total_length(), 6);
        assert_eq!(out.solution.total_spend(), 0);
        let out = imst_solve_min(&g, 1, &config()).unwrap();
        assert_eq!(out.solution.total_length(), 2);
    }
}
