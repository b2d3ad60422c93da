#![allow(dead_code)]

use std::collections::BTreeSet;

use cpbp::transform::cycle_distance;
use cpbp::{find_odd_cycle, generate_instance, Matching, OddCycleSet, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph with `min_n..=max_n` vertices and at most `max_edges` edges.
pub fn small_graph(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize, max_edges: usize, w_max: i64) -> WeightedGraph {
    loop {
        let n = rng.gen_range(min_n..=max_n);
        let p = rng.gen_range(0.2..0.8);
        let g = generate_instance(n, p, w_max, rng.gen());
        if g.edge_count() <= max_edges {
            return g;
        }
    }
}

/// Copy of `graph` with weights drawn from `lo..=hi`.
pub fn reweight(graph: &WeightedGraph, rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> WeightedGraph {
    let edges: Vec<_> = graph
        .edges()
        .iter()
        .map(|e| (e.u, e.v, rng.gen_range(lo..=hi)))
        .collect();
    WeightedGraph::from_edges(graph.vertex_count(), edges).unwrap()
}

/// Edge-disjoint odd cycles found in random edge subsets.
pub fn random_cycles(graph: &WeightedGraph, rng: &mut ChaCha8Rng, attempts: usize) -> OddCycleSet {
    let mut set = OddCycleSet::new();
    for _ in 0..attempts {
        let keep = rng.gen_range(0.3..1.0);
        let allowed: BTreeSet<usize> = (0..graph.edge_count()).filter(|_| rng.gen_bool(keep)).collect();
        if let Some(c) = find_odd_cycle(graph, &allowed, &set.used_edges()) {
            set.push(c).unwrap();
        }
    }
    set
}

pub fn all_matchings(graph: &WeightedGraph) -> Vec<Matching> {
    fn walk(g: &WeightedGraph, e: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Matching>) {
        if e == g.edge_count() {
            out.push(Matching::new(cur.iter().copied()));
            return;
        }
        walk(g, e + 1, used, cur, out);
        let edge = *g.edge(e);
        if !used[edge.u] && !used[edge.v] {
            used[edge.u] = true;
            used[edge.v] = true;
            cur.push(e);
            walk(g, e + 1, used, cur, out);
            cur.pop();
            used[edge.u] = false;
            used[edge.v] = false;
        }
    }
    let mut out = Vec::new();
    walk(graph, 0, &mut vec![false; graph.vertex_count()], &mut Vec::new(), &mut out);
    out
}

/// Spoke-factor indicator from its definition on a k-cycle.
pub fn spoke_config_valid(y: &[usize]) -> bool {
    let k = y.len();
    if y.iter().sum::<usize>() > k - 1 {
        return false;
    }
    (0..k).all(|a| {
        let s: i64 = (0..k)
            .map(|p| {
                let sign = if cycle_distance(p, a, k) % 2 == 0 { 1 } else { -1 };
                sign * y[p] as i64
            })
            .sum();
        s == 0 || s == 2
    })
}
