mod common;

use std::collections::BTreeSet;

use cpbp::bp::{
    count_factor_message, cycle_factor_message, run_bp, vertex_factor_message, ExtInt, Message,
};
use cpbp::cutting_plane::{cp_bp, cp_lp, default_max_rounds};
use cpbp::graph::is_bipartite;
use cpbp::lp::{build_clp, build_clp_prime, solve};
use cpbp::oracle::{brute_force_map_transformed, brute_force_mwm};
use cpbp::{
    build_transform, find_odd_cycle, generate_instance, lift_x_to_y, project_y_to_x, Ternary,
    TernaryAssignment,
};
use common::{all_matchings, random_cycles, reweight, rng, small_graph, spoke_config_valid};
use proptest::prelude::*;

fn ext(v: Option<i64>) -> ExtInt {
    v.map_or(ExtInt::NEG_INF, |v| ExtInt::finite(v as i128))
}

fn message() -> impl Strategy<Value = Message> {
    let entry = prop_oneof![9 => (-60i64..60).prop_map(Some), 1 => Just(None)];
    (entry.clone(), entry).prop_map(|(a, b)| [ext(a), ext(b)])
}

fn brute_cycle(incoming: &[Message], target: usize) -> Message {
    let k = incoming.len();
    let mut out = [ExtInt::NEG_INF; 2];
    for bits in 0u32..1 << k {
        let y: Vec<usize> = (0..k).map(|p| (bits >> p & 1) as usize).collect();
        if !spoke_config_valid(&y) {
            continue;
        }
        let score = (0..k)
            .filter(|&p| p != target)
            .fold(ExtInt::ZERO, |acc, p| acc + incoming[p][y[p]]);
        out[y[target]] = out[y[target]].max(score);
    }
    out
}

fn brute_limited(others: &[Message], limit_for: impl Fn(usize) -> usize) -> Message {
    let d = others.len();
    let mut out = [ExtInt::NEG_INF; 2];
    for b in 0..2 {
        for bits in 0u32..1 << d {
            if (bits.count_ones() as usize) > limit_for(b) {
                continue;
            }
            let score = (0..d).fold(ExtInt::ZERO, |acc, j| acc + others[j][(bits >> j & 1) as usize]);
            out[b] = out[b].max(score);
        }
    }
    out
}

proptest! {
    #[test]
    fn cycle_dp_matches_enumeration(
        k in prop::sample::select(vec![3usize, 5, 7, 9]),
        msgs in prop::collection::vec(message(), 9),
        target in 0usize..9,
    ) {
        let incoming = &msgs[..k];
        let target = target % k;
        prop_assert_eq!(cycle_factor_message(incoming, target), brute_cycle(incoming, target));
    }

    #[test]
    fn vertex_message_matches_enumeration(others in prop::collection::vec(message(), 0..7)) {
        // y_target = 1 leaves no room; y_target = 0 allows one more.
        let expect = brute_limited(&others, |b| 1 - b);
        prop_assert_eq!(vertex_factor_message(&others), expect);
    }

    #[test]
    fn count_message_matches_enumeration(
        others in prop::collection::vec(message(), 1..7),
        limit in 1usize..5,
    ) {
        let expect = brute_limited(&others, |b| limit - b);
        prop_assert_eq!(count_factor_message(&others, limit), expect);
    }

    #[test]
    fn generator_is_deterministic(n in 1usize..15, p in 0.0f64..1.0, seed: u64) {
        prop_assert_eq!(generate_instance(n, p, 1 << 20, seed), generate_instance(n, p, 1 << 20, seed));
    }
}

/// Valid spoke configurations are exactly the lifts of matchings on the cycle.
#[test]
fn valid_spoke_set_is_lifted_cycle_matchings() {
    for k in [3usize, 5, 7, 9, 11] {
        let defined: BTreeSet<Vec<usize>> = (0u32..1 << k)
            .map(|bits| (0..k).map(|p| (bits >> p & 1) as usize).collect::<Vec<_>>())
            .filter(|y| spoke_config_valid(y))
            .collect();
        let lifted: BTreeSet<Vec<usize>> = (0u32..1 << k)
            .filter(|x| (0..k).all(|a| !(x >> a & 1 == 1 && x >> ((a + 1) % k) & 1 == 1)))
            .map(|x| (0..k).map(|p| ((x >> p & 1) + (x >> ((p + k - 1) % k) & 1)) as usize).collect())
            .collect();
        assert_eq!(defined, lifted, "k = {k}");
    }
}

#[test]
fn lift_preserves_weight_and_telescopes() {
    let mut r = rng(7);
    for _ in 0..150 {
        let g = small_graph(&mut r, 3, 8, 20, 50);
        let cycles = random_cycles(&g, &mut r, 3);
        let model = build_transform(&g, &cycles).unwrap();
        for m in all_matchings(&g) {
            let x = TernaryAssignment::from_matching(&g, &m);
            let y = lift_x_to_y(&model, &x).unwrap();
            let w: i64 = m.edge_ids.iter().map(|&e| g.weight(e)).sum();
            assert_eq!(y.weight4(&model), 4 * w as i128);
            for (ci, t) in model.tables().iter().enumerate() {
                let c = &cycles.cycles()[ci];
                for a in 0..c.len() {
                    let s: i64 = (0..c.len()).map(|p| t.sign[p][a] * y.values[t.spokes[p]].doubled()).sum();
                    assert_eq!(s, 2 * x.values[c.edge_ids()[a]].doubled());
                }
            }
            assert_eq!(project_y_to_x(&model, &y).x, Some(x));
        }
    }
}

#[test]
fn map_on_contracted_model_matches_mwm() {
    let mut r = rng(11);
    let mut checked = 0;
    while checked < 200 {
        let g = small_graph(&mut r, 3, 9, 22, 30);
        let cycles = random_cycles(&g, &mut r, 3);
        let model = build_transform(&g, &cycles).unwrap();
        let Ok(map) = brute_force_map_transformed(&model) else { continue };
        let mwm = brute_force_mwm(&g).unwrap();
        assert_eq!(map.objective, 2 * mwm.objective);
        assert_eq!(map.is_unique, mwm.is_unique);
        if mwm.is_unique {
            let x = TernaryAssignment::from_matching(&g, &mwm.matching());
            let lifted: Vec<bool> = lift_x_to_y(&model, &x)
                .unwrap()
                .values
                .iter()
                .map(|&v| v == Ternary::One)
                .collect();
            assert_eq!(map.best, lifted);
        }
        checked += 1;
    }
}

#[test]
fn bipartite_iff_no_odd_cycle() {
    let mut r = rng(3);
    for _ in 0..300 {
        let g = small_graph(&mut r, 2, 10, 40, 5);
        let all: BTreeSet<usize> = (0..g.edge_count()).collect();
        let cycle = find_odd_cycle(&g, &all, &BTreeSet::new());
        assert_eq!(is_bipartite(&g, &all), cycle.is_none());
        if let Some(c) = cycle {
            assert_eq!(c.len() % 2, 1);
            assert!(c.edge_ids().iter().all(|e| all.contains(e)));
        }
    }
}

#[test]
fn clp_and_clp_prime_agree() {
    let mut r = rng(19);
    for _ in 0..80 {
        let g = small_graph(&mut r, 3, 9, 24, 40);
        let g = reweight(&g, &mut r, -10, 40);
        let cycles = random_cycles(&g, &mut r, 3);
        let base = solve(&build_clp(&g, &cycles));
        let prime = solve(&build_clp_prime(&build_transform(&g, &cycles).unwrap()));
        assert_eq!(prime.objective, &base.objective * cpbp::lp::Rational::from_integer(2.into()));
        assert!(base.is_half_integral);
    }
}

#[test]
fn cutting_plane_soundness_and_dominance() {
    let mut r = rng(23);
    for _ in 0..150 {
        let g = small_graph(&mut r, 3, 10, 26, 1 << 20);
        let exact = brute_force_mwm(&g).unwrap();
        let rounds = default_max_rounds(&g);
        let bp = cp_bp(&g, 1000, rounds);
        let lp = cp_lp(&g, rounds);
        if exact.is_unique && bp.is_matching() {
            assert_eq!(bp.matching, Some(exact.matching()));
        }
        if lp.is_matching() {
            assert_eq!(lp.weight, Some(exact.objective));
        }
        if bp.is_matching() {
            assert!(lp.is_matching());
            assert_eq!(bp.weight, lp.weight);
        }
        // One cycle per non-final round, each with at least three fresh edges.
        let added = bp.log.iter().filter(|l| l.added_cycle.is_some()).count();
        assert_eq!(added, bp.cycles.len());
        assert!(bp.log[..bp.rounds() - 1].iter().all(|l| l.added_cycle.is_some()));
        assert!(3 * bp.cycles.len() <= g.edge_count());
        assert_eq!(cp_bp(&g, 1000, rounds), bp);
    }
}

#[test]
fn bp_agrees_with_oracle_on_transformed_models() {
    let mut r = rng(29);
    for _ in 0..100 {
        let g = small_graph(&mut r, 3, 8, 18, 1 << 20);
        let cycles = random_cycles(&g, &mut r, 2);
        let model = build_transform(&g, &cycles).unwrap();
        let Ok(map) = brute_force_map_transformed(&model) else { continue };
        let out = run_bp(&model, 1000);
        // BP that settles on an integral answer must not beat the MAP value.
        if out.converged && out.y.values.iter().all(|&v| v != Ternary::Half) {
            let chosen: Vec<bool> = out.y.values.iter().map(|&v| v == Ternary::One).collect();
            let value: i64 = chosen
                .iter()
                .zip(model.edges())
                .filter(|(c, _)| **c)
                .map(|(_, e)| e.w2)
                .sum();
            assert!(value <= map.objective);
        }
    }
}
