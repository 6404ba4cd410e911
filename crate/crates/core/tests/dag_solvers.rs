//! DAG dynamic programs checked against path enumeration.

use netupgrade::dag_dp::{
    improvements_allowed, wildag_budget_exact, wildag_fptas, wildag_uniform, wisdag_budget_exact,
    wisdag_fptas, wisdag_uniform, DpTableQ, DpTableW,
};
use netupgrade::instance::generate::{gen_random_dag, random_budget, DagParams};
use netupgrade::instance::reduction::{gen_knapsack_reduction, ReductionTarget};
use netupgrade::oracle::{
    exact_imst_with, exact_path, exact_wildag, exact_wisdag, knapsack_exact, OracleBudget,
    PathLimit,
};
use netupgrade::rng::rng_from_seed;
use netupgrade::{DagEdge, DagInstance, Epsilon, Sense};
use rand::Rng;

fn random_dag(seed: u64, sense: Sense, uniform: bool, max_len: i64) -> DagInstance {
    let n = 3 + (seed % 10) as usize;
    let max_m = n * (n - 1) / 2;
    let m = (n - 1 + (seed as usize * 7) % n * 2).min(max_m);
    gen_random_dag(
        DagParams {
            max_len,
            uniform_cost: uniform,
            sense,
            ..DagParams::new(n, m)
        },
        seed,
    )
    .unwrap()
}

fn total_cost(dag: &DagInstance) -> i64 {
    dag.edges().iter().map(|e| e.cost).sum()
}

#[test]
fn budget_dp_matches_enumeration() {
    for seed in 0..300 {
        let dag = random_dag(seed, Sense::Maximize, false, 20);
        let budget = random_budget(total_cost(&dag), seed);
        let opt = exact_wildag(&dag, budget).unwrap().value;
        let p = wildag_budget_exact(&dag, budget).unwrap();
        assert_eq!(p.total_length(), opt, "seed {seed}");
        assert!(p.total_spend() <= budget);
    }
}

#[test]
fn uniform_dp_matches_enumeration() {
    for seed in 0..300 {
        let dag = random_dag(seed, Sense::Maximize, true, 20);
        for b in 0..dag.vertex_count() {
            let opt = exact_path(
                &dag,
                Sense::Maximize,
                PathLimit::Count(b),
                &OracleBudget::default(),
            )
            .unwrap()
            .value;
            let p = wildag_uniform(&dag, b).unwrap();
            assert_eq!(p.total_length(), opt, "seed {seed} b {b}");
            assert!(p.improved_count() <= b);
        }
    }
}

#[test]
fn unit_costs_make_both_tables_agree() {
    for seed in 0..100 {
        let dag = random_dag(seed, Sense::Maximize, false, 20);
        let unit = DagInstance::new(
            dag.vertex_count(),
            dag.edges()
                .iter()
                .map(|e| DagEdge { cost: 1, ..*e })
                .collect(),
            dag.source(),
            dag.sink(),
        )
        .unwrap();
        for b in 0..dag.vertex_count() {
            assert_eq!(
                improvements_allowed(&unit, b as i64).unwrap(),
                b.min(dag.vertex_count() - 1)
            );
            assert_eq!(
                wildag_uniform(&unit, b).unwrap().total_length(),
                wildag_budget_exact(&unit, b as i64).unwrap().total_length()
            );
        }
    }
}

#[test]
fn fptas_bound_holds() {
    for seed in 0..200 {
        // Long arcs so the scaling factor is well above 1.
        let dag = random_dag(seed, Sense::Maximize, false, 5000);
        let budget = random_budget(total_cost(&dag), seed);
        let opt = exact_wildag(&dag, budget).unwrap().value;
        for eps in [Epsilon::new(1, 10), Epsilon::new(3, 10), Epsilon::new(1, 2)] {
            let eps = eps.unwrap();
            let p = wildag_fptas(&dag, budget, eps).unwrap();
            assert!(p.total_spend() <= budget);
            assert!(
                eps.at_least_one_minus(p.total_length(), opt),
                "seed {seed} eps {eps}"
            );
        }
    }
}

#[test]
fn shortest_variants_match_enumeration() {
    for seed in 0..200 {
        let dag = random_dag(seed, Sense::Minimize, false, 5000);
        let budget = random_budget(total_cost(&dag), seed);
        let opt = exact_wisdag(&dag, budget).unwrap().value;
        let p = wisdag_budget_exact(&dag, budget).unwrap();
        assert_eq!(p.total_length(), opt, "seed {seed}");
        assert!(p.total_spend() <= budget);
        for eps in [Epsilon::new(1, 10), Epsilon::new(1, 2)] {
            let eps = eps.unwrap();
            let p = wisdag_fptas(&dag, budget, eps).unwrap();
            assert!(p.total_spend() <= budget);
            assert!(
                eps.within_one_plus(p.total_length(), opt),
                "seed {seed} eps {eps}"
            );
        }

        let uni = random_dag(seed, Sense::Minimize, true, 20);
        for b in 0..uni.vertex_count() {
            let opt = exact_path(
                &uni,
                Sense::Minimize,
                PathLimit::Count(b),
                &OracleBudget::default(),
            )
            .unwrap()
            .value;
            assert_eq!(wisdag_uniform(&uni, b).unwrap().total_length(), opt);
        }
    }
}

#[test]
fn no_op_improvements_leave_plain_shortest_path() {
    for seed in 0..50 {
        let dag = random_dag(seed, Sense::Minimize, false, 20);
        let flat = dag_with(&dag, |e| (e.base, e.base));
        let plain = wisdag_budget_exact(&flat, 0).unwrap().total_length();
        assert_eq!(
            wisdag_budget_exact(&flat, total_cost(&flat))
                .unwrap()
                .total_length(),
            plain
        );
    }
}

fn dag_with(dag: &DagInstance, f: impl Fn(&DagEdge) -> (i64, i64)) -> DagInstance {
    let edges = dag
        .edges()
        .iter()
        .map(|e| {
            let (base, improved) = f(e);
            DagEdge {
                base,
                improved,
                ..*e
            }
        })
        .collect();
    DagInstance::with_sense(
        dag.vertex_count(),
        edges,
        dag.source(),
        dag.sink(),
        Sense::Minimize,
    )
    .unwrap()
}

#[test]
fn count_table_is_monotone_and_reconstructs() {
    for seed in 0..100 {
        let dag = random_dag(seed, Sense::Maximize, true, 20);
        let t = DpTableQ::build(&dag, dag.vertex_count(), Sense::Maximize);
        for v in 0..dag.vertex_count() {
            for q in 0..t.b() {
                assert!(t.value(v, q + 1) >= t.value(v, q));
            }
        }
        for q in 0..=t.b() {
            let value = t.value(dag.source(), q).unwrap();
            let p = t.reconstruct(&dag, q).unwrap();
            assert_eq!(p.total_length(), value);
            assert!(p.improved_count() <= q);
        }
    }
}

#[test]
fn length_table_reconstructs_every_state() {
    for seed in 0..100 {
        let dag = random_dag(seed, Sense::Maximize, false, 15);
        let budget = random_budget(total_cost(&dag), seed);
        let width = (dag.vertex_count() - 1) * 15;
        let t = DpTableW::build(&dag, budget, width).unwrap();
        for w in 0..=width {
            if let Some(spend) = t.value(dag.source(), w) {
                let p = t.reconstruct(&dag, w).unwrap();
                assert_eq!((p.total_length(), p.total_spend()), (w as i64, spend));
            }
        }
    }
}

#[test]
fn knapsack_reductions_reproduce_the_dp() {
    // Reductions are a path or a chain, so the oracles stay cheap past their
    // default vertex bounds.
    let wide = OracleBudget {
        max_tree_vertices: 13,
        max_dag_vertices: 13,
        ..OracleBudget::default()
    };
    let mut rng = rng_from_seed(99);
    for _ in 0..100 {
        let items = rng.gen_range(1..=12);
        let p: Vec<i64> = (0..items).map(|_| rng.gen_range(0..30)).collect();
        let c: Vec<i64> = (0..items).map(|_| rng.gen_range(1..15)).collect();
        let budget = rng.gen_range(0..c.iter().sum::<i64>() + 1);
        let opt = knapsack_exact(&p, &c, budget).unwrap().value;

        let inst = gen_knapsack_reduction(&p, &c, budget, ReductionTarget::Wildag).unwrap();
        assert_eq!(inst.known_optimum, Some(opt));
        let dag = inst.dag().unwrap();
        assert_eq!(
            wildag_budget_exact(dag, budget).unwrap().total_length(),
            opt
        );
        assert_eq!(
            exact_path(dag, Sense::Maximize, PathLimit::Budget(budget), &wide)
                .unwrap()
                .value,
            opt
        );

        let inst = gen_knapsack_reduction(&p, &c, budget, ReductionTarget::Imst).unwrap();
        assert_eq!(
            exact_imst_with(inst.graph().unwrap(), budget, Sense::Maximize, &wide)
                .unwrap()
                .value,
            opt
        );
    }
}
