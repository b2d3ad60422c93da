//! Random-instance benchmark: CP-BP success, base-LP tightness and CP-LP
//! success per (n, p) configuration.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bp::{bp_round, build_factor_graph, BPState};
use crate::cutting_plane::{classify_instance, default_max_rounds, CPStatus, InstanceClass, Method};
use crate::graph::{generate_instance, Weight};
use crate::transform::TransformedModel;

pub const DEFAULT_W_MAX: Weight = 1 << 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchConfig {
    pub n: usize,
    pub p: f64,
    pub count: usize,
    pub seed: u64,
    pub iterations: usize,
    pub w_max: Weight,
    /// Per-instance round cap; `None` means |E|.
    pub max_rounds: Option<usize>,
}

impl BenchConfig {
    pub fn new(n: usize, p: f64, count: usize, seed: u64) -> Self {
        BenchConfig {
            n,
            p,
            count,
            seed,
            iterations: 1000,
            w_max: DEFAULT_W_MAX,
            max_rounds: None,
        }
    }

    /// Instance `i` is generated from `seed + i`.
    pub fn instance_seed(&self, i: usize) -> u64 {
        self.seed.wrapping_add(i as u64)
    }
}

/// One benchmarked instance. Contains no timings, so rows are reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceRow {
    pub n: usize,
    pub p: String,
    pub index: usize,
    pub seed: u64,
    pub edges: usize,
    pub base_tight: bool,
    pub base_unique: bool,
    pub optimum: Option<Weight>,
    pub cp_bp_status: CPStatus,
    pub cp_bp_rounds: usize,
    pub cp_bp_weight: Option<Weight>,
    pub cp_bp_class: InstanceClass,
    pub cp_bp_solved: bool,
    pub cp_lp_status: CPStatus,
    pub cp_lp_rounds: usize,
    pub cp_lp_weight: Option<Weight>,
    pub cp_lp_class: InstanceClass,
    pub cp_lp_solved: bool,
    /// Base optimum not unique, optimum not certified, or a MATCHING below it.
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigSummary {
    pub n: usize,
    pub p: f64,
    pub count: usize,
    pub mean_edges: f64,
    pub cp_bp_pct: f64,
    pub base_tight_pct: f64,
    pub cp_lp_pct: f64,
    pub flagged: usize,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub configs: Vec<ConfigSummary>,
    pub rows: Vec<InstanceRow>,
}

fn pct(hits: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * hits as f64 / total as f64
    }
}

pub fn run_instance(cfg: &BenchConfig, index: usize) -> InstanceRow {
    let seed = cfg.instance_seed(index);
    let g = generate_instance(cfg.n, cfg.p, cfg.w_max, seed);
    let rounds = cfg.max_rounds.unwrap_or_else(|| default_max_rounds(&g));
    let c = classify_instance(&g, cfg.iterations, rounds);
    let flagged = !c.base_unique
        || c.optimum.is_none()
        || c.suboptimal(Method::CpBp)
        || c.suboptimal(Method::CpLp);
    InstanceRow {
        n: cfg.n,
        p: cfg.p.to_string(),
        index,
        seed,
        edges: g.edge_count(),
        base_tight: c.base_tight,
        base_unique: c.base_unique,
        optimum: c.optimum,
        cp_bp_status: c.cp_bp.status,
        cp_bp_rounds: c.cp_bp.rounds(),
        cp_bp_weight: c.cp_bp.weight,
        cp_bp_class: c.class(Method::CpBp),
        cp_bp_solved: c.solved(Method::CpBp),
        cp_lp_status: c.cp_lp.status,
        cp_lp_rounds: c.cp_lp.rounds(),
        cp_lp_weight: c.cp_lp.weight,
        cp_lp_class: c.class(Method::CpLp),
        cp_lp_solved: c.solved(Method::CpLp),
        flagged,
    }
}

pub fn summarize(cfg: &BenchConfig, rows: &[InstanceRow], wall_seconds: f64) -> ConfigSummary {
    let count = rows.len();
    let hits = |f: fn(&InstanceRow) -> bool| rows.iter().filter(|r| f(r)).count();
    ConfigSummary {
        n: cfg.n,
        p: cfg.p,
        count,
        mean_edges: if count == 0 {
            0.0
        } else {
            rows.iter().map(|r| r.edges).sum::<usize>() as f64 / count as f64
        },
        cp_bp_pct: pct(hits(|r| r.cp_bp_solved), count),
        base_tight_pct: pct(hits(|r| r.base_tight), count),
        cp_lp_pct: pct(hits(|r| r.cp_lp_solved), count),
        flagged: hits(|r| r.flagged),
        wall_seconds,
    }
}

/// Runs every configuration, spreading instances over `workers` threads.
/// Rows come back in (configuration, index) order regardless of scheduling.
pub fn run_bench(configs: &[BenchConfig], workers: usize) -> BenchReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    let mut report = BenchReport {
        configs: Vec::new(),
        rows: Vec::new(),
    };
    for cfg in configs {
        let start = Instant::now();
        let rows: Vec<InstanceRow> =
            pool.install(|| (0..cfg.count).into_par_iter().map(|i| run_instance(cfg, i)).collect());
        report
            .configs
            .push(summarize(cfg, &rows, start.elapsed().as_secs_f64()));
        report.rows.extend(rows);
    }
    report
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn status_name(s: CPStatus) -> String {
    serde_json::to_value(s)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn class_name(c: InstanceClass) -> String {
    serde_json::to_value(c)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

impl BenchReport {
    pub fn summary_csv(&self) -> String {
        let mut s = String::from(
            "n,p,count,mean_edges,cp_bp_pct,base_tight_pct,cp_lp_pct,flagged,wall_seconds\n",
        );
        for c in &self.configs {
            let _ = writeln!(
                s,
                "{},{},{},{:.1},{:.1},{:.1},{:.1},{},{:.3}",
                c.n,
                c.p,
                c.count,
                c.mean_edges,
                c.cp_bp_pct,
                c.base_tight_pct,
                c.cp_lp_pct,
                c.flagged,
                c.wall_seconds
            );
        }
        s
    }

    pub fn rows_csv(&self) -> String {
        let mut s = String::from(
            "n,p,index,seed,edges,base_tight,base_unique,optimum,\
             cp_bp_status,cp_bp_rounds,cp_bp_weight,cp_bp_class,cp_bp_solved,\
             cp_lp_status,cp_lp_rounds,cp_lp_weight,cp_lp_class,cp_lp_solved,flagged\n",
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.p,
                r.index,
                r.seed,
                r.edges,
                r.base_tight,
                r.base_unique,
                opt(&r.optimum),
                status_name(r.cp_bp_status),
                r.cp_bp_rounds,
                opt(&r.cp_bp_weight),
                class_name(r.cp_bp_class),
                r.cp_bp_solved,
                status_name(r.cp_lp_status),
                r.cp_lp_rounds,
                opt(&r.cp_lp_weight),
                class_name(r.cp_lp_class),
                r.cp_lp_solved,
                r.flagged
            );
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Elementary operations spent by one BP round on `model`, measured on the
/// first round from the standard initialization.
pub fn round_operation_count(model: &TransformedModel) -> u64 {
    let fg = build_factor_graph(model);
    bp_round(&fg, &BPState::initial(&fg)).last_round_ops
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::OddCycleSet;
    use crate::transform::build_transform;

    #[test]
    fn k4_is_solved() {
        let cfg = BenchConfig::new(4, 0.0, 1, 0);
        let r = run_bench(&[cfg], 1);
        let c = &r.configs[0];
        assert_eq!(c.mean_edges, 6.0);
        assert_eq!((c.cp_bp_pct, c.cp_lp_pct), (100.0, 100.0));
        assert_eq!(r.rows.len(), 1);
    }

    #[test]
    fn rows_do_not_depend_on_workers() {
        let cfg = BenchConfig::new(8, 0.3, 6, 11);
        let a = run_bench(std::slice::from_ref(&cfg), 1);
        let b = run_bench(&[cfg], 3);
        assert_eq!(a.rows, b.rows);
        assert_eq!(a.rows_csv(), b.rows_csv());
    }

    #[test]
    fn csv_shapes() {
        let r = run_bench(&[BenchConfig::new(5, 0.2, 2, 3)], 1);
        assert_eq!(r.summary_csv().lines().count(), 2);
        let rows = r.rows_csv();
        let header_fields = rows.lines().next().unwrap().split(',').count();
        assert!(rows.lines().all(|l| l.split(',').count() == header_fields));
        assert!(r.to_json().contains("\"cp_bp_status\""));
    }

    #[test]
    fn op_count_positive() {
        let g = generate_instance(6, 0.0, 10, 1);
        let m = build_transform(&g, &OddCycleSet::new()).unwrap();
        assert!(round_operation_count(&m) > 0);
    }
}
