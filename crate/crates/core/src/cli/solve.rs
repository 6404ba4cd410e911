//! Algorithm dispatch shared by `solve`, `verify` and `bench`.

use clap::ValueEnum;
use serde::Serialize;

use crate::dag_dp::{
    improvements_allowed, wildag_budget_exact, wildag_fptas, wildag_uniform, wisdag_budget_exact,
    wisdag_fptas, wisdag_uniform,
};
use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::imst::{imst_solve, imst_solve_min, RandomizedConfig, TrialSummary};
use crate::instance::{expand_to_multigraph, Instance, PathSolution, Sense, TreeSolution};
use crate::mst::uimst_half_approx;
use crate::oracle::{exact_imst_with, exact_path, exact_two_cost, OracleBudget, PathLimit};
use crate::two_cost::two_cost_mst;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Algorithm {
    Uimst,
    Twocost,
    Imst,
    WildagUniform,
    WildagExact,
    WildagFptas,
    WisdagUniform,
    WisdagExact,
    WisdagFptas,
    ExactImst,
    ExactTwocost,
    ExactWildag,
    ExactWisdag,
}

impl Algorithm {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }

    /// Works on spanning-tree instances (otherwise on DAGs).
    pub fn on_trees(self) -> bool {
        use Algorithm::*;
        matches!(self, Uimst | Twocost | Imst | ExactImst | ExactTwocost)
    }

    pub fn uses_epsilon(self) -> bool {
        use Algorithm::*;
        matches!(self, Twocost | Imst | WildagFptas | WisdagFptas)
    }

    pub fn uniform_costs(self) -> bool {
        matches!(self, Algorithm::WildagUniform | Algorithm::WisdagUniform)
    }

    /// Direction the instance file's ladders must follow.
    pub fn sense(self, minimize: bool) -> Result<Sense> {
        use Algorithm::*;
        match self {
            WisdagUniform | WisdagExact | WisdagFptas | ExactWisdag => Ok(Sense::Minimize),
            Imst | ExactImst if minimize => Ok(Sense::Minimize),
            _ if minimize => Err(Error::Contract(format!(
                "{} has no minimization variant",
                self.name()
            ))),
            _ => Ok(Sense::Maximize),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveParams {
    pub budget: i64,
    pub epsilon: Epsilon,
    pub delta: f64,
    pub seed: u64,
    /// Improvement count for `uimst` and the uniform DAG solvers.
    pub k: Option<usize>,
    pub trials: Option<usize>,
    pub minimize: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeChoice {
    pub id: usize,
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solved {
    pub objective: i64,
    pub spend: i64,
    pub improved: usize,
    pub edges: Vec<EdgeChoice>,
    pub k: Option<usize>,
    pub trials: Option<Vec<TrialSummary>>,
    pub fallback: Option<bool>,
}

impl Solved {
    fn tree(t: &TreeSolution) -> Self {
        Solved {
            objective: t.total_length(),
            spend: t.total_spend(),
            improved: t.improved_count(),
            edges: t
                .choices()
                .iter()
                .map(|(&id, &level)| EdgeChoice { id, level })
                .collect(),
            k: None,
            trials: None,
            fallback: None,
        }
    }

    fn path(p: &PathSolution) -> Self {
        Solved {
            objective: p.total_length(),
            spend: p.total_spend(),
            improved: p.improved_count(),
            edges: p
                .steps()
                .iter()
                .map(|s| EdgeChoice {
                    id: s.edge,
                    level: s.improved as usize,
                })
                .collect(),
            k: None,
            trials: None,
            fallback: None,
        }
    }
}

/// Runs `algo` on `instance` with the budget in `params` (not the file's).
pub fn run_algorithm(instance: &Instance, algo: Algorithm, params: &SolveParams) -> Result<Solved> {
    use Algorithm::*;
    let budget = params.budget;
    if budget < 0 {
        return Err(Error::Contract("budget must be nonnegative".into()));
    }
    let sense = algo.sense(params.minimize)?;
    if algo.on_trees() {
        let graph = instance.graph().ok_or_else(|| {
            Error::Contract(format!("{} needs a spanning-tree instance", algo.name()))
        })?;
        return Ok(match algo {
            Uimst => {
                let k = params.k.unwrap_or(budget as usize);
                Solved {
                    k: Some(k),
                    ..Solved::tree(&uimst_half_approx(graph, k)?)
                }
            }
            Twocost => {
                let mg = expand_to_multigraph(graph);
                let t = two_cost_mst(&mg, budget, params.epsilon)?;
                Solved::tree(&mg.to_tree_solution(graph, &t.copies)?)
            }
            Imst => {
                let mut config = RandomizedConfig::new(params.epsilon, params.delta, params.seed)?;
                if let Some(t) = params.trials {
                    config = config.with_trials(t);
                }
                let out = match sense {
                    Sense::Maximize => imst_solve(graph, budget, &config)?,
                    Sense::Minimize => imst_solve_min(graph, budget, &config)?,
                };
                Solved {
                    trials: Some(out.trials),
                    fallback: Some(out.fallback_used),
                    ..Solved::tree(&out.solution)
                }
            }
            ExactImst => Solved::tree(
                &exact_imst_with(graph, budget, sense, &OracleBudget::default())?.witness,
            ),
            ExactTwocost => {
                let mg = expand_to_multigraph(graph);
                let opt = exact_two_cost(&mg, budget)?;
                Solved::tree(&mg.to_tree_solution(graph, &opt.witness)?)
            }
            _ => unreachable!(),
        });
    }
    let dag = instance
        .dag()
        .ok_or_else(|| Error::Contract(format!("{} needs a DAG instance", algo.name())))?;
    let b = || -> Result<usize> {
        match params.k {
            Some(k) => Ok(k),
            None => improvements_allowed(dag, budget),
        }
    };
    Ok(match algo {
        WildagUniform | WisdagUniform => {
            let b = b()?;
            let p = if algo == WildagUniform {
                wildag_uniform(dag, b)?
            } else {
                wisdag_uniform(dag, b)?
            };
            Solved {
                k: Some(b),
                ..Solved::path(&p)
            }
        }
        WildagExact => Solved::path(&wildag_budget_exact(dag, budget)?),
        WisdagExact => Solved::path(&wisdag_budget_exact(dag, budget)?),
        WildagFptas => Solved::path(&wildag_fptas(dag, budget, params.epsilon)?),
        WisdagFptas => Solved::path(&wisdag_fptas(dag, budget, params.epsilon)?),
        ExactWildag | ExactWisdag => Solved::path(
            &exact_path(
                dag,
                sense,
                PathLimit::Budget(budget),
                &OracleBudget::default(),
            )?
            .witness,
        ),
        _ => unreachable!(),
    })
}

/// Whether a result meets the budget side of `algo`'s guarantee.
pub fn within_budget(algo: Algorithm, solved: &Solved, params: &SolveParams) -> bool {
    match algo {
        Algorithm::Uimst | Algorithm::WildagUniform | Algorithm::WisdagUniform => {
            solved.k.is_none_or(|k| solved.improved <= k)
        }
        Algorithm::Twocost => params.epsilon.within_one_plus(solved.spend, params.budget),
        _ => solved.spend <= params.budget,
    }
}

#[derive(Serialize)]
pub(crate) struct SolveReport<'a> {
    pub algorithm: String,
    pub objective: i64,
    pub spend: i64,
    pub budget: i64,
    pub feasible: bool,
    pub edges: &'a [EdgeChoice],
    pub seed: u64,
    pub wall_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_trial: Option<&'a [TrialSummary]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback: Option<bool>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_kebab_case() {
        assert_eq!(Algorithm::WildagFptas.name(), "wildag-fptas");
        assert_eq!(Algorithm::ExactTwocost.name(), "exact-twocost");
    }

    #[test]
    fn minimize_only_where_supported() {
        assert_eq!(Algorithm::Imst.sense(true).unwrap(), Sense::Minimize);
        assert_eq!(
            Algorithm::WisdagExact.sense(false).unwrap(),
            Sense::Minimize
        );
        assert!(Algorithm::Twocost.sense(true).is_err());
    }
}
