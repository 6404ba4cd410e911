//! Tree solvers checked against the exhaustive oracles on small random graphs.

use netupgrade::instance::expand_to_multigraph;
use netupgrade::instance::generate::{gen_random_graph, random_budget, GraphParams};
use netupgrade::mst::{max_spanning_tree, uimst_candidates, uimst_half_approx};
use netupgrade::oracle::{exact_imst, exact_two_cost, exact_uimst, for_each_spanning_tree};
use netupgrade::two_cost::{
    lagrangian_tree, lambda_search, swap_chain, two_cost_mst, Lambda, LambdaSearch, TieBreak,
};
use netupgrade::{Epsilon, UpgradableGraph};

fn random_graph(n: usize, seed: u64) -> UpgradableGraph {
    let max_m = (n * (n - 1) / 2).min(n + 4);
    let m = n - 1 + (seed as usize % (max_m - n + 2));
    gen_random_graph(GraphParams::new(n, m.min(max_m)), seed).unwrap()
}

#[test]
fn max_spanning_tree_matches_enumeration() {
    for seed in 0..100 {
        let g = random_graph(7, seed);
        let ends = g.endpoints();
        let w = g.base_lengths();
        let tree = max_spanning_tree(7, &ends, &w).unwrap();
        let got: i64 = tree.iter().map(|&e| w[e]).sum();
        let mut best = i64::MIN;
        for_each_spanning_tree(7, &ends, |t| best = best.max(t.iter().map(|&e| w[e]).sum()));
        assert_eq!(got, best, "seed {seed}");
    }
}

#[test]
fn uimst_is_half_approximate() {
    for seed in 0..500 {
        let g = random_graph(6, seed);
        for k in 0..=5 {
            let opt = exact_uimst(&g, k).unwrap().value;
            let c = uimst_candidates(&g, k).unwrap();
            assert!(c.base_tree.total_length() + c.improved_tree.total_length() >= opt);
            let t = uimst_half_approx(&g, k).unwrap();
            assert!(2 * t.total_length() >= opt, "seed {seed} k {k}");
            assert!(t.improved_count() <= k);
        }
    }
}

#[test]
fn uimst_triangle_example() {
    let g = UpgradableGraph::new(
        3,
        vec![
            netupgrade::UpgradableEdge::two_level(0, 0, 1, 1, 10, 1),
            netupgrade::UpgradableEdge::two_level(1, 0, 2, 2, 3, 1),
            netupgrade::UpgradableEdge::two_level(2, 1, 2, 3, 4, 1),
        ],
    )
    .unwrap();
    assert_eq!(exact_uimst(&g, 1).unwrap().value, 13);
    assert_eq!(uimst_half_approx(&g, 1).unwrap().total_length(), 13);
}

#[test]
fn lagrangian_value_matches_enumeration() {
    for seed in 0..40 {
        let g = random_graph(6, seed);
        let mg = expand_to_multigraph(&g);
        let b = random_budget(g.total_top_cost(), seed);
        let ends: Vec<_> = mg.copies().iter().map(|c| (c.u, c.v)).collect();
        for lambda in [
            Lambda::from_integer(0),
            Lambda::new(1, 2),
            Lambda::from_integer(1),
            Lambda::from_integer(3),
        ] {
            let p = lagrangian_tree(&mg, lambda, b, TieBreak::CheapFirst).unwrap();
            let mut best: Option<Lambda> = None;
            for_each_spanning_tree(6, &ends, |t| {
                let (l, c) = mg.totals(t);
                let v = Lambda::from_integer(l as i128)
                    - lambda * Lambda::from_integer((c - b) as i128);
                if best.is_none_or(|x| v > x) {
                    best = Some(v);
                }
            });
            assert_eq!(Some(p.value), best, "seed {seed} λ {lambda}");
        }
    }
}

#[test]
fn bracket_trees_and_chain_are_lagrangian_optimal() {
    let mut brackets = 0;
    for seed in 0..150 {
        let g = random_graph(6, seed);
        let mg = expand_to_multigraph(&g);
        let b = random_budget(g.total_top_cost(), seed);
        let opt = exact_two_cost(&mg, b).unwrap().value;
        let ends: Vec<_> = mg.copies().iter().map(|c| (c.u, c.v)).collect();
        match lambda_search(&mg, b).unwrap() {
            LambdaSearch::ExactHit(p) => {
                assert!(p.cost <= b);
                assert_eq!(p.length, opt, "seed {seed}");
            }
            LambdaSearch::Bracket {
                lambda,
                under,
                over,
            } => {
                brackets += 1;
                assert!(under.cost <= b && over.cost > b);
                // weak duality
                assert!(under.value >= Lambda::from_integer(opt as i128));
                let weight = |t: &[usize]| {
                    let (l, c) = mg.totals(t);
                    Lambda::from_integer(l as i128) - lambda * Lambda::from_integer(c as i128)
                };
                let mut best = None;
                for_each_spanning_tree(6, &ends, |t| {
                    let w = weight(t);
                    if best.is_none_or(|x| w > x) {
                        best = Some(w);
                    }
                });
                let best = best.unwrap();
                assert_eq!(weight(&under.tree), best);
                assert_eq!(weight(&over.tree), best);
                let max_cost = mg.copies().iter().map(|c| c.cost).max().unwrap();
                let mut prev = mg.totals(&under.tree).1;
                for t in swap_chain(&mg, &under, &over).unwrap() {
                    assert_eq!(weight(&t), best, "seed {seed}");
                    let c = mg.totals(&t).1;
                    assert!((c - prev).abs() <= max_cost);
                    prev = c;
                }
            }
        }
    }
    assert!(brackets > 20, "only {brackets} bracketing cases exercised");
}

#[test]
fn two_cost_bicriteria_guarantee() {
    let eps = [
        Epsilon::new(1, 1).unwrap(),
        Epsilon::new(1, 2).unwrap(),
        Epsilon::new(1, 3).unwrap(),
    ];
    for seed in 0..300 {
        let g = random_graph(6, seed);
        let mg = expand_to_multigraph(&g);
        let b = random_budget(g.total_top_cost(), seed);
        let opt = exact_two_cost(&mg, b).unwrap().value;
        for e in eps {
            let t = two_cost_mst(&mg, b, e).unwrap();
            assert!(mg.is_spanning_tree(&t.copies));
            assert!(t.length >= opt, "seed {seed} ε {e}: {} < {opt}", t.length);
            assert!(
                e.within_one_plus(t.cost, b),
                "seed {seed} ε {e}: cost {} budget {b}",
                t.cost
            );
        }
    }
}

#[test]
fn oracles_agree_under_expansion() {
    for seed in 0..200 {
        let g = random_graph(5, seed);
        let b = random_budget(g.total_top_cost(), seed);
        let a = exact_imst(&g, b).unwrap().value;
        let c = exact_two_cost(&expand_to_multigraph(&g), b).unwrap().value;
        assert_eq!(a, c, "seed {seed}");
    }
}

#[test]
fn imst_oracle_budget_extremes() {
    for seed in 0..30 {
        let g = random_graph(6, seed);
        let ends = g.endpoints();
        let base: i64 = {
            let w = g.base_lengths();
            max_spanning_tree(6, &ends, &w)
                .unwrap()
                .iter()
                .map(|&e| w[e])
                .sum()
        };
        let top: i64 = {
            let w = g.top_lengths();
            max_spanning_tree(6, &ends, &w)
                .unwrap()
                .iter()
                .map(|&e| w[e])
                .sum()
        };
        assert_eq!(exact_imst(&g, 0).unwrap().value, base);
        assert_eq!(exact_imst(&g, g.total_top_cost()).unwrap().value, top);
    }
}
