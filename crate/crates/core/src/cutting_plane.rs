//! Cutting-plane loops that grow an odd-cycle set from half-integral edges,
//! using either BP on the contracted model or the exact LP to produce x.

use serde::Serialize;

use crate::bp::run_bp;
use crate::graph::{
    find_odd_cycle, validate_matching, Matching, OddCycleSet, Ternary, TernaryAssignment, Weight,
    WeightedGraph,
};
use crate::lp::{build_clp, check_tight_unique, solve, Rational};
use crate::transform::{build_transform, project_y_to_x};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CPStatus {
    Matching,
    NonHalfIntegralTermination,
    NoOddCycleFound,
    BudgetExhausted,
    /// x is 0/1 but two selected edges share a vertex.
    NotAMatching,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundLog {
    pub round: usize,
    pub cycles: usize,
    pub zeros: usize,
    pub halves: usize,
    pub ones: usize,
    /// Entries outside {0, ½, 1} (BP projections only).
    pub other: usize,
    /// BP rounds used, and whether BP converged (CP-BP only).
    pub bp_rounds: Option<usize>,
    pub bp_converged: Option<bool>,
    pub added_cycle: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPOutcome {
    pub status: CPStatus,
    pub matching: Option<Matching>,
    pub weight: Option<Weight>,
    /// Last x in {0, ½, 1}; `None` when the final projection left that set.
    pub x: Option<TernaryAssignment>,
    pub cycles: OddCycleSet,
    pub log: Vec<RoundLog>,
}

impl CPOutcome {
    pub fn rounds(&self) -> usize {
        self.log.len()
    }

    pub fn is_matching(&self) -> bool {
        self.status == CPStatus::Matching
    }
}

/// x for the current cycle set, plus BP diagnostics when BP produced it.
struct Estimate {
    x: Option<TernaryAssignment>,
    quarters: Vec<i64>,
    bp_rounds: Option<usize>,
    bp_converged: Option<bool>,
}

fn run_loop(
    graph: &WeightedGraph,
    max_rounds: usize,
    mut estimate: impl FnMut(&OddCycleSet) -> Estimate,
) -> CPOutcome {
    assert!(max_rounds >= 1, "max_rounds must be positive");
    let mut cycles = OddCycleSet::new();
    let mut log = Vec::new();
    let mut last_x = None;
    for round in 1..=max_rounds {
        let est = estimate(&cycles);
        let count = |q: i64| est.quarters.iter().filter(|&&v| v == q).count();
        let mut entry = RoundLog {
            round,
            cycles: cycles.len(),
            zeros: count(0),
            halves: count(2),
            ones: count(4),
            other: est.quarters.iter().filter(|&&v| !matches!(v, 0 | 2 | 4)).count(),
            bp_rounds: est.bp_rounds,
            bp_converged: est.bp_converged,
            added_cycle: None,
        };
        let done = |status, x: Option<TernaryAssignment>, matching: Option<Matching>, log: Vec<RoundLog>, cycles| {
            let weight = matching
                .as_ref()
                .map(|m| validate_matching(graph, m).total_weight);
            CPOutcome {
                status,
                matching,
                weight,
                x,
                cycles,
                log,
            }
        };
        let Some(x) = est.x else {
            log.push(entry);
            return done(CPStatus::NonHalfIntegralTermination, None, None, log, cycles);
        };
        if let Some(m) = x.to_matching() {
            log.push(entry);
            let status = if validate_matching(graph, &m).ok {
                CPStatus::Matching
            } else {
                CPStatus::NotAMatching
            };
            let matching = (status == CPStatus::Matching).then_some(m);
            return done(status, Some(x), matching, log, cycles);
        }
        let halves = x.ids_with(Ternary::Half);
        match find_odd_cycle(graph, &halves, &cycles.used_edges()) {
            None => {
                log.push(entry);
                return done(CPStatus::NoOddCycleFound, Some(x), None, log, cycles);
            }
            Some(c) => {
                entry.added_cycle = Some(c.vertices().to_vec());
                cycles.push(c).expect("cycle avoids every used edge");
                log.push(entry);
            }
        }
        last_x = Some(x);
    }
    CPOutcome {
        status: CPStatus::BudgetExhausted,
        matching: None,
        weight: None,
        x: last_x,
        cycles,
        log,
    }
}

/// CP-BP: BP on the contracted model for `iterations` rounds, two-round
/// decode, projection back to x, and a new odd cycle among the ½ edges until
/// x is a matching or no progress is possible.
pub fn cp_bp(graph: &WeightedGraph, iterations: usize, max_rounds: usize) -> CPOutcome {
    run_loop(graph, max_rounds, |cycles| {
        let model = build_transform(graph, cycles).expect("loop maintains a valid cycle set");
        let out = run_bp(&model, iterations);
        let p = project_y_to_x(&model, &out.y);
        Estimate {
            x: p.x,
            quarters: p.quarters,
            bp_rounds: Some(out.rounds_used),
            bp_converged: Some(out.converged),
        }
    })
}

fn lp_to_ternary(x: &[Rational]) -> (Option<TernaryAssignment>, Vec<i64>) {
    let four = Rational::from_integer(4.into());
    let quarters: Vec<i64> = x
        .iter()
        .map(|v| {
            let q = v * &four;
            assert!(q.is_integer(), "LP vertex outside the quarter lattice: {v}");
            i64::try_from(q.to_integer()).expect("small integer")
        })
        .collect();
    let values = quarters
        .iter()
        .map(|q| match q {
            0 => Some(Ternary::Zero),
            2 => Some(Ternary::Half),
            4 => Some(Ternary::One),
            _ => None,
        })
        .collect::<Option<Vec<_>>>();
    (values.map(|values| TernaryAssignment { values }), quarters)
}

/// CP-LP: the same loop with x taken from an exact vertex optimum of the
/// relaxation with the current cuts.
pub fn cp_lp(graph: &WeightedGraph, max_rounds: usize) -> CPOutcome {
    run_loop(graph, max_rounds, |cycles| {
        let sol = solve(&build_clp(graph, cycles));
        assert!(sol.is_half_integral, "relaxation vertices are half-integral");
        let (x, quarters) = lp_to_ternary(&sol.x);
        Estimate {
            x,
            quarters,
            bp_rounds: None,
            bp_converged: None,
        }
    })
}

/// Default round cap: every round adds a cycle with at least three fresh
/// edges, so |E| rounds always suffice.
pub fn default_max_rounds(graph: &WeightedGraph) -> usize {
    graph.edge_count().max(1)
}


#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InstanceClass {
    BaseTight,
    SolvedWithCuts,
    Unsolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    CpBp,
    CpLp,
}

/// Both cutting-plane runs on one instance, plus the base relaxation and the
/// best optimum certificate available without enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// The base relaxation has a unique optimum and it is integral.
    pub base_tight: bool,
    /// The base relaxation has a single optimal vertex.
    pub base_unique: bool,
    /// MWM weight, when some relaxation certifies it.
    pub optimum: Option<Weight>,
    pub cp_bp: CPOutcome,
    pub cp_lp: CPOutcome,
}

impl Classification {
    pub fn outcome(&self, method: Method) -> &CPOutcome {
        match method {
            Method::CpBp => &self.cp_bp,
            Method::CpLp => &self.cp_lp,
        }
    }

    /// MATCHING whose weight equals the certified optimum.
    pub fn solved(&self, method: Method) -> bool {
        let out = self.outcome(method);
        out.is_matching() && self.optimum.is_some() && out.weight == self.optimum
    }

    /// MATCHING strictly below the certified optimum.
    pub fn suboptimal(&self, method: Method) -> bool {
        let out = self.outcome(method);
        matches!((out.weight, self.optimum), (Some(w), Some(o)) if out.is_matching() && w < o)
    }

    pub fn class(&self, method: Method) -> InstanceClass {
        if self.base_tight {
            InstanceClass::BaseTight
        } else if self.solved(method) {
            InstanceClass::SolvedWithCuts
        } else {
            InstanceClass::Unsolved
        }
    }
}

fn weight_rational(w: Weight) -> Rational {
    Rational::from_integer(w.into())
}

/// Runs the base relaxation, CP-BP and CP-LP on `graph`.
///
/// The optimum is certified by any integral relaxation optimum: the base LP
/// when its vertex is integral, CP-LP's final LP when it returns a matching,
/// or the relaxation with CP-BP's final cycle set when its value equals
/// CP-BP's weight.
pub fn classify_instance(graph: &WeightedGraph, iterations: usize, max_rounds: usize) -> Classification {
    let base = check_tight_unique(graph, &OddCycleSet::new());
    let cp_bp = cp_bp(graph, iterations, max_rounds);
    let cp_lp = cp_lp(graph, max_rounds);
    let base_value = base
        .solution
        .is_integral
        .then(|| base.solution.objective.to_integer())
        .map(|v| i64::try_from(v).expect("weight fits in i64"));
    let optimum = base_value
        .or(if cp_lp.is_matching() { cp_lp.weight } else { None })
        .or_else(|| {
            let w = cp_bp.weight.filter(|_| cp_bp.is_matching())?;
            let bound = solve(&build_clp(graph, &cp_bp.cycles)).objective;
            (bound == weight_rational(w)).then_some(w)
        });
    Classification {
        base_tight: base.tight && base.unique,
        base_unique: base.unique,
        optimum,
        cp_bp,
        cp_lp,
    }
}
