//! Batch verification against the exact oracles.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use super::solve::{run_algorithm, within_budget, Algorithm, SolveParams};
use super::{default_edge_count, Failure, VerifyArgs};
use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::instance::generate::{
    gen_random_dag, gen_random_graph, random_budget, DagParams, GraphParams,
};
use crate::instance::{expand_to_multigraph, Instance, Sense};
use crate::oracle::{exact_imst, exact_path, exact_two_cost, exact_uimst, OracleBudget, PathLimit};
use crate::report::{hash_hex, write_csv, RunRecord};
use crate::rng::derive_seed;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifySpec {
    pub algo: Algorithm,
    pub count: usize,
    pub size: usize,
    pub trials: usize,
    pub epsilon: Epsilon,
    pub delta: f64,
    pub seed: u64,
    pub k: Option<usize>,
    pub levels: usize,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceSummary {
    pub instance: usize,
    pub hash: String,
    pub n: usize,
    pub m: usize,
    pub budget: i64,
    pub opt: i64,
    pub runs: usize,
    pub successes: usize,
    pub success_fraction: f64,
    pub min_ratio: f64,
    pub target: f64,
    pub band_lower: f64,
    pub pass: bool,
}

impl VerifySpec {
    fn check_size(&self) -> Result<()> {
        let b = OracleBudget::default();
        let (limit, what) = if self.algo.on_trees() {
            (b.max_tree_vertices, "spanning-tree")
        } else {
            (b.max_dag_vertices, "DAG")
        };
        if self.size > limit {
            return Err(Error::TooLarge(format!(
                "{what} oracle handles at most {limit} vertices, got {}",
                self.size
            )));
        }
        if self.size < 2 {
            return Err(Error::Generator("size must be at least 2".into()));
        }
        Ok(())
    }

    fn uimst_k(&self) -> usize {
        self.k.unwrap_or(self.size / 2)
    }

    fn instance(&self, seed: u64) -> Result<Instance> {
        let n = self.size;
        if self.algo.on_trees() {
            let uimst = self.algo == Algorithm::Uimst;
            let g = gen_random_graph(
                GraphParams {
                    n,
                    m: default_edge_count(n),
                    max_len: 20,
                    // Unit costs so the budget counts improvements.
                    max_cost: if uimst { 1 } else { 10 },
                    levels: if uimst { 2 } else { self.levels },
                    sense: Sense::Maximize,
                },
                seed,
            )?;
            let budget = if uimst {
                self.uimst_k() as i64
            } else {
                random_budget(g.total_top_cost(), seed)
            };
            Ok(Instance::imst(g, budget))
        } else {
            let d = gen_random_dag(
                DagParams {
                    n,
                    m: (2 * n).min(n * (n - 1) / 2),
                    max_len: 20,
                    max_cost: if self.algo.uniform_costs() { 2 } else { 10 },
                    uniform_cost: self.algo.uniform_costs(),
                    sense: self.algo.sense(false)?,
                },
                seed,
            )?;
            let total = d.edges().iter().map(|e| e.cost).sum();
            Ok(Instance::wildag(d, random_budget(total, seed)))
        }
    }

    fn optimum(&self, instance: &Instance) -> Result<i64> {
        use Algorithm::*;
        let budget = instance.budget;
        if let Some(g) = instance.graph() {
            return Ok(match self.algo {
                Uimst => exact_uimst(g, self.uimst_k())?.value,
                Twocost | ExactTwocost => exact_two_cost(&expand_to_multigraph(g), budget)?.value,
                _ => exact_imst(g, budget)?.value,
            });
        }
        let dag = instance.dag().expect("tree instances handled above");
        let sense = self.algo.sense(false)?;
        Ok(exact_path(
            dag,
            sense,
            PathLimit::Budget(budget),
            &OracleBudget::default(),
        )?
        .value)
    }

    fn objective_ok(&self, objective: i64, opt: i64) -> bool {
        use Algorithm::*;
        match self.algo {
            Uimst => 2 * objective >= opt,
            Twocost => objective >= opt,
            Imst | WildagFptas => self.epsilon.at_least_one_minus(objective, opt),
            WisdagFptas => self.epsilon.within_one_plus(objective, opt),
            _ => objective == opt,
        }
    }

    /// Required success fraction: `1 − δ` for the randomized solver, 1 otherwise.
    pub fn target(&self) -> f64 {
        if self.algo == Algorithm::Imst {
            1.0 - self.delta
        } else {
            1.0
        }
    }
}

/// `target − 3·sqrt(target·(1 − target)/runs)`.
pub fn band_lower(target: f64, runs: usize) -> f64 {
    target - 3.0 * (target * (1.0 - target) / runs.max(1) as f64).sqrt()
}

fn verify_one(spec: &VerifySpec, index: usize) -> Result<(InstanceSummary, Vec<RunRecord>)> {
    let inst_seed = derive_seed(spec.seed, index as u64);
    let instance = spec.instance(inst_seed)?;
    let opt = spec.optimum(&instance)?;
    let hash = hash_hex(instance.hash());
    let (n, m) = match (instance.graph(), instance.dag()) {
        (Some(g), _) => (g.vertex_count(), g.edge_count()),
        (_, Some(d)) => (d.vertex_count(), d.edges().len()),
        _ => unreachable!(),
    };
    let mut records = Vec::with_capacity(spec.trials);
    for trial in 0..spec.trials {
        let seed = derive_seed(inst_seed, trial as u64);
        let params = SolveParams {
            budget: instance.budget,
            epsilon: spec.epsilon,
            delta: spec.delta,
            seed,
            k: (spec.algo == Algorithm::Uimst).then(|| spec.uimst_k()),
            trials: None,
            minimize: false,
        };
        let start = Instant::now();
        let solved = run_algorithm(&instance, spec.algo, &params)?;
        let wall_ms = spec.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
        records.push(RunRecord {
            instance: index,
            hash: hash.clone(),
            algorithm: spec.algo.name(),
            trial,
            seed,
            budget: instance.budget,
            epsilon: spec.algo.uses_epsilon().then(|| spec.epsilon.to_string()),
            delta: (spec.algo == Algorithm::Imst).then_some(spec.delta),
            k: (spec.algo == Algorithm::Uimst).then(|| spec.uimst_k()),
            b: solved.k.filter(|_| spec.algo.uniform_costs()),
            objective: solved.objective,
            spend: solved.spend,
            wall_ms,
            optimum: Some(opt),
            objective_ok: Some(spec.objective_ok(solved.objective, opt)),
            budget_ok: Some(within_budget(spec.algo, &solved, &params)),
        });
    }
    let successes = records.iter().filter(|r| r.success() == Some(true)).count();
    let runs = records.len();
    let fraction = successes as f64 / runs.max(1) as f64;
    let min_ratio = records
        .iter()
        .map(|r| match (r.objective, opt) {
            (a, b) if a == b => 1.0,
            (a, b) => a as f64 / b as f64,
        })
        .fold(f64::INFINITY, f64::min);
    let target = spec.target();
    let lower = band_lower(target, runs);
    Ok((
        InstanceSummary {
            instance: index,
            hash,
            n,
            m,
            budget: instance.budget,
            opt,
            runs,
            successes,
            success_fraction: fraction,
            min_ratio,
            target,
            band_lower: lower,
            pass: fraction >= lower - 1e-12,
        },
        records,
    ))
}

/// Verifies `spec.count` instances on all available cores. Results are in
/// instance order regardless of scheduling.
pub fn verify_batch(spec: &VerifySpec) -> Result<Vec<(InstanceSummary, Vec<RunRecord>)>> {
    spec.check_size()?;
    let slots: Vec<Mutex<Option<Result<_>>>> = (0..spec.count).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(spec.count.max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= spec.count {
                    break;
                }
                *slots[i].lock().unwrap() = Some(verify_one(spec, i));
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every slot filled"))
        .collect()
}

pub(super) fn cmd_verify(
    a: &VerifyArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let spec = VerifySpec {
        algo: a.algo,
        count: a.count,
        size: a.size,
        trials: a.trials.max(1),
        epsilon: a.epsilon,
        delta: a.delta,
        seed: a.seed,
        k: a.k,
        levels: a.levels,
        timing: !a.no_timing,
    };
    let results = verify_batch(&spec)?;
    let mut w = csv::Writer::from_writer(&mut *out);
    for (summary, _) in &results {
        w.serialize(summary)?;
    }
    w.flush()?;
    drop(w);
    if let Some(path) = &a.runs {
        let records: Vec<RunRecord> = results
            .iter()
            .flat_map(|(_, r)| r.iter().cloned())
            .collect();
        write_csv(std::fs::File::create(path)?, &records)?;
    }
    let passed = results.iter().filter(|(s, _)| s.pass).count();
    writeln!(err, "{passed}/{} instances pass", results.len())?;
    Ok(if passed == results.len() { 0 } else { 1 })
}
