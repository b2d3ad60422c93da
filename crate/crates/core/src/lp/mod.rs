//! Exact rational LP for the matching relaxation with cycle cuts, and for its
//! image on the contracted graph.
//!
//! Every LP built here has the origin as a feasible point, so the primal
//! simplex starts from the all-slack basis without a phase one. Arithmetic
//! first runs on `i128` rationals with overflow checks and falls back to
//! arbitrary precision when a value no longer fits.

mod simplex;

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::graph::{OddCycleSet, WeightedGraph};
use crate::transform::{build_transform, TransformedModel};

pub type Rational = BigRational;

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowTag {
    Vertex(usize),
    Cycle(usize),
    Box(usize),
    /// Alternating sum of cycle `cycle` for its edge at `edge` (a position in
    /// E(C)); `upper` marks the `≤ 2` half of the interval.
    AltSum { cycle: usize, edge: usize, upper: bool },
    Degree(usize),
    /// Objective-level row added internally.
    Objective,
}

impl fmt::Display for RowTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowTag::Vertex(i) => write!(f, "vertex_{i}"),
            RowTag::Cycle(c) => write!(f, "cycle_{c}"),
            RowTag::Box(e) => write!(f, "box_{e}"),
            RowTag::AltSum { cycle, edge, upper } => {
                write!(f, "alt_{cycle}_{edge}_{}", if *upper { "hi" } else { "lo" })
            }
            RowTag::Degree(c) => write!(f, "degree_{c}"),
            RowTag::Objective => write!(f, "objective"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    /// Sparse coefficients `(variable, value)`.
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
    pub tag: RowTag,
}

impl Row {
    fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, (j, a)| acc + a * &x[*j])
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

/// `max c·x` subject to `rows`, `0 ≤ x ≤ upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalLP {
    pub objective: Vec<Rational>,
    pub rows: Vec<Row>,
    pub upper: Vec<Option<Rational>>,
}

impl RationalLP {
    pub fn new(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        RationalLP {
            objective,
            rows: Vec::new(),
            upper: vec![None; n],
        }
    }

    pub fn var_count(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, i64)>, relation: Relation, rhs: i64, tag: RowTag) {
        self.rows.push(Row {
            coeffs: coeffs.into_iter().map(|(j, a)| (j, int(a))).collect(),
            relation,
            rhs: int(rhs),
            tag,
        });
    }

    pub fn count_rows(&self, pred: impl Fn(&RowTag) -> bool) -> usize {
        self.rows.iter().filter(|r| pred(&r.tag)).count()
    }

    /// Checks every row and bound exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.var_count()
            && x.iter().all(|v| !v.is_negative())
            && x.iter()
                .zip(&self.upper)
                .all(|(v, u)| u.as_ref().is_none_or(|u| v <= u))
            && self.rows.iter().all(|r| r.is_satisfied(x))
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        self.objective
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (c, v)| acc + c * v)
    }

    /// CPLEX-style LP text, for cross-checking with external solvers.
    pub fn to_lp_format(&self) -> String {
        fn term(out: &mut String, a: &Rational, j: usize, first: bool) {
            let sign = if a.is_negative() { " -" } else if first { "" } else { " +" };
            let mag = a.abs();
            if mag.is_one() {
                let _ = write!(out, "{sign} x{j}");
            } else {
                let _ = write!(out, "{sign} {mag} x{j}");
            }
        }
        let mut out = String::from("Maximize\n obj:");
        for (j, c) in self.objective.iter().enumerate() {
            term(&mut out, c, j, j == 0);
        }
        out.push_str("\nSubject To\n");
        for (i, r) in self.rows.iter().enumerate() {
            let _ = write!(out, " r{i}_{}:", r.tag);
            for (k, (j, a)) in r.coeffs.iter().enumerate() {
                term(&mut out, a, *j, k == 0);
            }
            let op = if r.relation == Relation::Le { "<=" } else { ">=" };
            let _ = writeln!(out, " {op} {}", r.rhs);
        }
        out.push_str("Bounds\n");
        for (j, u) in self.upper.iter().enumerate() {
            match u {
                Some(u) => {
                    let _ = writeln!(out, " 0 <= x{j} <= {u}");
                }
                None => {
                    let _ = writeln!(out, " x{j} >= 0");
                }
            }
        }
        out.push_str("End\n");
        out
    }
}

/// The matching relaxation with one cut per cycle:
/// vertex rows `Σ_{δ(i)} x ≤ 1`, cycle rows `Σ_{E(C)} x ≤ (|C|−1)/2`,
/// and `x ∈ [0, 1]`.
pub fn build_clp(graph: &WeightedGraph, cycles: &OddCycleSet) -> RationalLP {
    let mut lp = RationalLP::new(graph.edges().iter().map(|e| int(e.w)).collect());
    for i in 0..graph.vertex_count() {
        let inc = graph.incident(i);
        if !inc.is_empty() {
            lp.add_row(inc.iter().map(|&e| (e, 1)).collect(), Relation::Le, 1, RowTag::Vertex(i));
        }
    }
    for (ci, c) in cycles.cycles().iter().enumerate() {
        lp.add_row(
            c.edge_ids().iter().map(|&e| (e, 1)).collect(),
            Relation::Le,
            ((c.len() - 1) / 2) as i64,
            RowTag::Cycle(ci),
        );
    }
    lp.upper = vec![Some(Rational::one()); graph.edge_count()];
    lp
}

/// The same relaxation written on the contracted graph, with objective `w′`
/// at the doubled scale. Each alternating-sum interval `[0, 2]` becomes a
/// `≥ 0` and a `≤ 2` row.
pub fn build_clp_prime(model: &TransformedModel) -> RationalLP {
    let mut lp = RationalLP::new(model.edges().iter().map(|e| int(e.w2)).collect());
    for i in 0..model.base().vertex_count() {
        let inc = model.incident(i);
        if !inc.is_empty() {
            lp.add_row(inc.iter().map(|&e| (e, 1)).collect(), Relation::Le, 1, RowTag::Vertex(i));
        }
    }
    for (ci, t) in model.tables().iter().enumerate() {
        let k = t.spokes.len();
        lp.add_row(
            t.spokes.iter().map(|&s| (s, 1)).collect(),
            Relation::Le,
            (k - 1) as i64,
            RowTag::Degree(ci),
        );
        for a in 0..k {
            let coeffs: Vec<(usize, i64)> = (0..k).map(|p| (t.spokes[p], t.sign[p][a])).collect();
            lp.add_row(coeffs.clone(), Relation::Ge, 0, RowTag::AltSum { cycle: ci, edge: a, upper: false });
            lp.add_row(coeffs, Relation::Le, 2, RowTag::AltSum { cycle: ci, edge: a, upper: true });
        }
    }
    lp.upper = vec![Some(Rational::one()); model.edge_count()];
    lp
}

#[derive(Debug, Clone, PartialEq)]
pub struct LPSolution {
    pub x: Vec<Rational>,
    pub objective: Rational,
    /// Indices of basic columns (structural `0..n`, slack `n..`), ascending.
    pub basis: Vec<usize>,
    pub optimal: bool,
    pub is_integral: bool,
    pub is_half_integral: bool,
    pub pivots: usize,
}

impl LPSolution {
    pub(crate) fn new(x: Vec<Rational>, objective: Rational, mut basis: Vec<usize>, pivots: usize) -> Self {
        basis.sort_unstable();
        let is_integral = x.iter().all(|v| v.is_integer());
        let two = int(2);
        let is_half_integral = x.iter().all(|v| (v * &two).is_integer());
        LPSolution {
            x,
            objective,
            basis,
            optimal: true,
            is_integral,
            is_half_integral,
            pivots,
        }
    }
}

/// Outcome of the optimality-face analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniqueness {
    Unique,
    /// Another optimal vertex was found.
    Alternative,
    /// Zero reduced costs at a degenerate, fractional vertex: undecided.
    Ambiguous,
}

pub(crate) struct Prepared {
    pub(crate) a: Vec<Vec<(usize, Rational)>>,
    pub(crate) b: Vec<Rational>,
    pub(crate) c: Vec<Rational>,
}

/// Brings the LP to `max c·x, Ax ≤ b, x ≥ 0` with `b ≥ 0`. Upper bounds that
/// some all-nonnegative row already implies are dropped; the rest become
/// explicit rows.
fn prepare(lp: &RationalLP) -> Prepared {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for r in &lp.rows {
        let (coeffs, rhs) = match r.relation {
            Relation::Le => (r.coeffs.clone(), r.rhs.clone()),
            Relation::Ge => (r.coeffs.iter().map(|(j, v)| (*j, -v)).collect(), -&r.rhs),
        };
        assert!(!rhs.is_negative(), "row {} excludes the origin; phase one is not supported", r.tag);
        a.push(coeffs);
        b.push(rhs);
    }
    for (j, u) in lp.upper.iter().enumerate() {
        let Some(u) = u else { continue };
        let implied = a.iter().zip(&b).any(|(coeffs, rhs)| {
            coeffs.iter().all(|(_, v)| !v.is_negative())
                && coeffs
                    .iter()
                    .any(|(k, v)| *k == j && v.is_positive() && &(rhs / v) <= u)
        });
        if !implied {
            a.push(vec![(j, Rational::one())]);
            b.push(u.clone());
        }
    }
    Prepared {
        a,
        b,
        c: lp.objective.clone(),
    }
}

/// Exact vertex optimum of a feasible, bounded LP whose rows all admit the
/// origin.
pub fn solve(lp: &RationalLP) -> LPSolution {
    simplex::solve_prepared(&prepare(lp), false).0
}

/// Solves and classifies the optimal face.
pub fn solve_with_uniqueness(lp: &RationalLP) -> (LPSolution, Uniqueness) {
    let (sol, u) = simplex::solve_prepared(&prepare(lp), true);
    (sol, u.expect("uniqueness requested"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TightnessReport {
    pub tight: bool,
    pub unique: bool,
    pub uniqueness: Uniqueness,
    pub solution: LPSolution,
}

/// Solves the relaxation and reports integrality of the returned vertex and
/// whether it is the only optimum. Ambiguous cases count as not unique.
pub fn check_tight_unique(graph: &WeightedGraph, cycles: &OddCycleSet) -> TightnessReport {
    let (solution, uniqueness) = solve_with_uniqueness(&build_clp(graph, cycles));
    TightnessReport {
        tight: solution.is_integral,
        unique: uniqueness == Uniqueness::Unique,
        uniqueness,
        solution,
    }
}

/// C-LP′ of `(graph, cycles)`; convenience wrapper around the transform.
pub fn build_clp_prime_for(graph: &WeightedGraph, cycles: &OddCycleSet) -> RationalLP {
    build_clp_prime(&build_transform(graph, cycles).expect("cycle set must be valid for the graph"))
}
