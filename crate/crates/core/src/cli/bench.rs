//! Timing sweeps, emitted as plot-ready CSV.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use super::solve::{run_algorithm, Algorithm, SolveParams};
use super::{parse_list, BenchArgs, Failure};
use crate::epsilon::Epsilon;
use crate::error::Result;
use crate::instance::generate::{gen_random_dag, gen_random_graph, DagParams, GraphParams};
use crate::instance::Instance;
use crate::rng::derive_seed;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchSpec {
    pub algo: Algorithm,
    pub sizes: Vec<usize>,
    pub epsilons: Vec<Epsilon>,
    pub max_len: i64,
    pub repeat: usize,
    pub seed: u64,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub algo: String,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "W")]
    pub w: i64,
    pub epsilon: Option<String>,
    pub wall_ms: Option<f64>,
    pub objective: i64,
}

/// Dense instance for timing: a complete DAG (or a graph with `3n` edges) with
/// uniform costs for the uniform solvers and a budget of a quarter of the
/// total cost otherwise (`n` improvements for the uniform solvers).
fn bench_instance(spec: &BenchSpec, n: usize) -> Result<Instance> {
    let seed = derive_seed(spec.seed, n as u64);
    if spec.algo.on_trees() {
        let g = gen_random_graph(
            GraphParams {
                n,
                m: (3 * n).min(n * n.saturating_sub(1) / 2),
                max_len: spec.max_len,
                max_cost: 10,
                levels: 2,
                sense: spec.algo.sense(false)?,
            },
            seed,
        )?;
        let budget = if spec.algo == Algorithm::Uimst {
            (n / 2) as i64
        } else {
            g.total_top_cost() / 4
        };
        return Ok(Instance::imst(g, budget));
    }
    let uniform = spec.algo.uniform_costs();
    let d = gen_random_dag(
        DagParams {
            n,
            m: n * n.saturating_sub(1) / 2,
            max_len: spec.max_len,
            max_cost: if uniform { 1 } else { 10 },
            uniform_cost: uniform,
            sense: spec.algo.sense(false)?,
        },
        seed,
    )?;
    let budget = if uniform {
        n as i64
    } else {
        d.edges().iter().map(|e| e.cost).sum::<i64>() / 4
    };
    Ok(Instance::wildag(d, budget))
}

/// One row per size (and per epsilon for algorithms that take one).
pub fn bench_rows(spec: &BenchSpec) -> Result<Vec<BenchRow>> {
    let eps: Vec<Option<Epsilon>> = if spec.algo.uses_epsilon() {
        spec.epsilons.iter().copied().map(Some).collect()
    } else {
        vec![None]
    };
    let mut rows = Vec::new();
    for &n in &spec.sizes {
        let instance = bench_instance(spec, n)?;
        let (m, w) = match (instance.graph(), instance.dag()) {
            (Some(g), _) => (g.edge_count(), g.max_length()),
            (_, Some(d)) => (
                d.edges().len(),
                d.edges()
                    .iter()
                    .map(|e| e.base.max(e.improved))
                    .max()
                    .unwrap_or(0),
            ),
            _ => unreachable!(),
        };
        for &e in &eps {
            let params = SolveParams {
                budget: instance.budget,
                epsilon: e.unwrap_or(Epsilon::new(1, 2).expect("valid")),
                delta: 0.2,
                seed: spec.seed,
                k: None,
                trials: None,
                minimize: false,
            };
            let mut best = f64::INFINITY;
            let mut objective = 0;
            for _ in 0..spec.repeat.max(1) {
                let start = Instant::now();
                objective = run_algorithm(&instance, spec.algo, &params)?.objective;
                best = best.min(start.elapsed().as_secs_f64() * 1e3);
            }
            rows.push(BenchRow {
                algo: spec.algo.name(),
                n,
                m,
                w,
                epsilon: e.map(|e| e.to_string()),
                wall_ms: spec.timing.then_some(best),
                objective,
            });
        }
    }
    Ok(rows)
}

pub(super) fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let spec = BenchSpec {
        algo: a.algo,
        sizes: parse_list(&a.sizes, "size")?,
        epsilons: parse_list(&a.epsilons, "epsilon")?,
        max_len: a.max_len,
        repeat: a.repeat,
        seed: a.seed,
        timing: !a.no_timing,
    };
    let rows = bench_rows(&spec)?;
    let mut w = csv::Writer::from_writer(&mut *out);
    if rows.is_empty() {
        w.write_record(["algo", "n", "m", "W", "epsilon", "wall_ms", "objective"])?;
    }
    for r in &rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(0)
}
