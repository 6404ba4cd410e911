//! Command-line front end: `gen`, `solve`, `verify`, `bench`.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 success, 1 a
//! verification failed or an I/O error, 2 usage or invalid instance, 3 no
//! feasible solution or no path, 4 instance too large for an oracle.

mod bench;
mod solve;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use bench::{bench_rows, BenchRow, BenchSpec};
pub use solve::{run_algorithm, within_budget, Algorithm, EdgeChoice, SolveParams, Solved};
pub use verify::{verify_batch, InstanceSummary, VerifySpec};

use crate::epsilon::Epsilon;
use crate::error::Error;
use crate::instance::generate::{
    gen_random_dag, gen_random_graph, random_budget, DagParams, GraphParams,
};
use crate::instance::io::{parse, serialize};
use crate::instance::reduction::{gen_knapsack_reduction, ReductionTarget};
use crate::instance::{Instance, Sense};
use crate::report::hash_hex;

#[derive(Debug, Parser)]
#[command(
    name = "netupgrade",
    version,
    about = "Budget-constrained network upgrade solvers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random or knapsack-derived instance
    Gen(GenArgs),
    /// Run one solver on an instance file and print a JSON result
    Solve(SolveArgs),
    /// Check a solver against the exact oracles on seeded random instances
    Verify(VerifyArgs),
    /// Time solvers over size and epsilon sweeps
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Imst,
    Wildag,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    /// Edge (or arc) count; defaults to 2n-2 capped at the simple-graph maximum
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub levels: usize,
    #[arg(long, default_value_t = 20)]
    pub max_len: i64,
    #[arg(long, default_value_t = 10)]
    pub max_cost: i64,
    /// Give every DAG arc the same improvement cost
    #[arg(long)]
    pub uniform_cost: bool,
    /// Generate ladders for the minimization variant
    #[arg(long)]
    pub minimize: bool,
    /// Budget; drawn at random from the seed when omitted
    #[arg(long)]
    pub budget: Option<i64>,
    #[arg(long, env = "NETUPGRADE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Knapsack profits and costs as two comma-separated lists
    #[arg(long, num_args = 2, value_names = ["PROFITS", "COSTS"])]
    pub knapsack: Option<Vec<String>>,
    /// Write the instance here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub algo: Algorithm,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Overrides the budget stored in the instance
    #[arg(long)]
    pub budget: Option<i64>,
    #[arg(long, default_value = "0.3")]
    pub epsilon: Epsilon,
    #[arg(long, default_value_t = 0.2)]
    pub delta: f64,
    #[arg(long, env = "NETUPGRADE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Number of improvements (uimst, *-uniform); defaults from the budget
    #[arg(long)]
    pub k: Option<usize>,
    /// Override the number of randomized trials
    #[arg(long)]
    pub trials: Option<usize>,
    /// Solve the minimization variant (imst, exact-imst)
    #[arg(long)]
    pub minimize: bool,
    /// Report wall_ms as null so output is reproducible
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub algo: Algorithm,
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    /// Vertices per generated instance
    #[arg(long, default_value_t = 6)]
    pub size: usize,
    /// Runs per instance
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, default_value = "0.3")]
    pub epsilon: Epsilon,
    #[arg(long, default_value_t = 0.2)]
    pub delta: f64,
    #[arg(long, env = "NETUPGRADE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Improvements allowed for uimst; defaults to n/2
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub levels: usize,
    /// Also write every run as a CSV record to this file
    #[arg(long)]
    pub runs: Option<PathBuf>,
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub algo: Algorithm,
    /// Comma-separated vertex counts; empty for no rows
    #[arg(long, default_value = "50,100,200")]
    pub sizes: String,
    /// Comma-separated epsilons, used by algorithms that take one
    #[arg(long, default_value = "0.5,0.25,0.125")]
    pub epsilons: String,
    #[arg(long, default_value_t = 100)]
    pub max_len: i64,
    /// Timed repetitions per point; the minimum is reported
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
    #[arg(long, env = "NETUPGRADE_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub no_timing: bool,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible | Error::NoPath | Error::Disconnected => 3,
            Error::TooLarge(_) => 4,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(1, e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::new(1, e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a, out, err),
        Command::Solve(a) => cmd_solve(&a, out),
        Command::Verify(a) => verify::cmd_verify(&a, out, err),
        Command::Bench(a) => bench::cmd_bench(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Failure::new(2, format!("bad {what} value {s:?}")))
        })
        .collect()
}

/// Default edge count for generated graphs: `2n − 2`, within simple-graph limits.
pub fn default_edge_count(n: usize) -> usize {
    (2 * n)
        .saturating_sub(2)
        .min(n * n.saturating_sub(1) / 2)
        .max(1)
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let sense = if a.minimize {
        Sense::Minimize
    } else {
        Sense::Maximize
    };
    let instance = if let Some(lists) = &a.knapsack {
        let profits: Vec<i64> = parse_list(&lists[0], "profit")?;
        let costs: Vec<i64> = parse_list(&lists[1], "cost")?;
        let budget = a
            .budget
            .ok_or_else(|| Failure::new(2, "--knapsack requires --budget"))?;
        let target = match a.kind {
            Kind::Imst => ReductionTarget::Imst,
            Kind::Wildag => ReductionTarget::Wildag,
        };
        gen_knapsack_reduction(&profits, &costs, budget, target)?
    } else {
        let m = a.m.unwrap_or_else(|| default_edge_count(a.n));
        match a.kind {
            Kind::Imst => {
                let g = gen_random_graph(
                    GraphParams {
                        n: a.n,
                        m,
                        max_len: a.max_len,
                        max_cost: a.max_cost,
                        levels: a.levels,
                        sense,
                    },
                    a.seed,
                )?;
                let budget = a
                    .budget
                    .unwrap_or_else(|| random_budget(g.total_top_cost(), a.seed));
                Instance::imst(g, budget)
            }
            Kind::Wildag => {
                let d = gen_random_dag(
                    DagParams {
                        n: a.n,
                        m,
                        max_len: a.max_len,
                        max_cost: a.max_cost,
                        uniform_cost: a.uniform_cost,
                        sense,
                    },
                    a.seed,
                )?;
                let total = d.edges().iter().map(|e| e.cost).sum();
                let budget = a.budget.unwrap_or_else(|| random_budget(total, a.seed));
                Instance::wildag(d, budget)
            }
        }
    };
    let bytes = serialize(&instance);
    let hash = hash_hex(instance.hash());
    match &a.out {
        Some(path) => {
            std::fs::write(path, &bytes)?;
            writeln!(out, "{hash}")?;
        }
        None => {
            out.write_all(&bytes)?;
            writeln!(err, "{hash}")?;
        }
    }
    Ok(0)
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let sense = a.algo.sense(a.minimize)?;
    let bytes = std::fs::read(&a.input)
        .map_err(|e| Failure::new(2, format!("{}: {e}", a.input.display())))?;
    let instance = parse(&bytes, sense).map_err(Error::from)?;
    let params = SolveParams {
        budget: a.budget.unwrap_or(instance.budget),
        epsilon: a.epsilon,
        delta: a.delta,
        seed: a.seed,
        k: a.k,
        trials: a.trials,
        minimize: a.minimize,
    };
    let start = Instant::now();
    let solved = run_algorithm(&instance, a.algo, &params)?;
    let wall_ms = (!a.no_timing).then(|| start.elapsed().as_secs_f64() * 1e3);
    let report = solve::SolveReport {
        algorithm: a.algo.name(),
        objective: solved.objective,
        spend: solved.spend,
        budget: params.budget,
        feasible: match a.algo {
            Algorithm::Twocost => solved.spend <= params.budget,
            _ => within_budget(a.algo, &solved, &params),
        },
        edges: &solved.edges,
        seed: a.seed,
        wall_ms,
        k: solved.k,
        trials: solved.trials.as_ref().map(Vec::len),
        per_trial: solved.trials.as_deref(),
        fallback: solved.fallback,
    };
    serde_json::to_writer_pretty(&mut *out, &report).map_err(|e| Failure::new(1, e.to_string()))?;
    writeln!(out)?;
    Ok(if within_budget(a.algo, &solved, &params) {
        0
    } else {
        3
    })
}
