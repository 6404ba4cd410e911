use super::shortest_length;
use super::spend::solve;
use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::instance::{DagInstance, PathSolution, Sense};

/// Length divisor `K = max(1, ⌊ε·W/n⌋)` where `W` is a lower bound on the
/// optimum: the longest usable arc (maximize) or the all-improved shortest
/// path (minimize).
pub fn fptas_factor(dag: &DagInstance, budget: i64, epsilon: Epsilon, sense: Sense) -> i64 {
    let n = dag.vertex_count() as i64;
    let lower = match sense {
        Sense::Maximize => dag.effective_max_length(budget),
        Sense::Minimize => shortest_length(dag, |e| e.improved.min(e.base)).unwrap_or(0),
    };
    epsilon.floor_fraction(lower.max(0), n).max(1)
}

fn check(epsilon: Epsilon, budget: i64) -> Result<()> {
    if epsilon.numer() >= epsilon.denom() {
        return Err(Error::Contract(format!(
            "epsilon {epsilon} must lie in (0, 1)"
        )));
    }
    if budget < 0 {
        return Err(Error::Contract("budget must be nonnegative".into()));
    }
    Ok(())
}

/// Solves the instance with every length divided by `K`, then re-reads the
/// chosen path on the original lengths. Costs are untouched, so the budget is
/// met exactly.
fn scaled(dag: &DagInstance, budget: i64, epsilon: Epsilon, sense: Sense) -> Result<PathSolution> {
    check(epsilon, budget)?;
    let k = fptas_factor(dag, budget, epsilon, sense);
    let path = if k == 1 {
        solve(dag, budget, sense)?
    } else {
        let shrink = |x: i64| match sense {
            Sense::Maximize => x.div_euclid(k),
            Sense::Minimize => (x + k - 1).div_euclid(k),
        };
        let small = dag.map_lengths(|e| (shrink(e.base), shrink(e.improved)));
        solve(&small, budget, sense)?
    };
    PathSolution::new(dag, path.steps().to_vec())
}

/// Longest path with spend ≤ `budget` and length ≥ `(1−ε)·OPT`.
pub fn wildag_fptas(dag: &DagInstance, budget: i64, epsilon: Epsilon) -> Result<PathSolution> {
    scaled(dag, budget, epsilon, Sense::Maximize)
}

/// Shortest path with spend ≤ `budget` and length ≤ `(1+ε)·OPT`.
pub fn wisdag_fptas(dag: &DagInstance, budget: i64, epsilon: Epsilon) -> Result<PathSolution> {
    scaled(dag, budget, epsilon, Sense::Minimize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag_dp::wildag_budget_exact;
    use crate::instance::DagEdge;

    fn diamond() -> DagInstance {
        DagInstance::new(
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
        .unwrap()
    }

    #[test]
    fn small_lengths_are_not_scaled() {
        let dag = diamond();
        let eps = Epsilon::new(1, 2).unwrap();
        assert_eq!(fptas_factor(&dag, 3, eps, Sense::Maximize), 1);
        assert_eq!(
            wildag_fptas(&dag, 3, eps).unwrap(),
            wildag_budget_exact(&dag, 3).unwrap()
        );
        assert!(wildag_fptas(&dag, 3, eps).unwrap().total_length() >= 5);
    }

    #[test]
    fn scaled_run_keeps_guarantee() {
        let big = diamond().map_lengths(|e| (e.base * 1000 + 7, e.improved * 1000 + 7));
        let eps = Epsilon::new(1, 10).unwrap();
        assert!(fptas_factor(&big, 3, eps, Sense::Maximize) > 1);
        let exact = wildag_budget_exact(&big, 3).unwrap().total_length();
        let p = wildag_fptas(&big, 3, eps).unwrap();
        assert!(p.total_spend() <= 3);
        assert!(10 * p.total_length() >= 9 * exact);
    }

    #[test]
    fn rejects_epsilon_one() {
        assert!(wildag_fptas(&diamond(), 3, Epsilon::new(1, 1).unwrap()).is_err());
    }
}
