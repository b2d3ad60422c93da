//! Max-product belief propagation in the log domain.
//!
//! Factor values are `e^{w′·y}` and 0/1 indicators, so every log-message is an
//! integer (at the doubled weight scale) or −∞. Messages are kept exactly and
//! normalized so that the larger of the two entries is 0.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Add;

use serde::Serialize;

use crate::graph::{OddCycleSet, Ternary, WeightedGraph};
use crate::transform::{Provenance, TransformedModel, YAssignment};

/// An integer or −∞. Finite overflow is a fatal error.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtInt(i128);

impl ExtInt {
    pub const NEG_INF: ExtInt = ExtInt(i128::MIN);
    pub const ZERO: ExtInt = ExtInt(0);

    pub fn finite(v: i128) -> Self {
        assert!(v != i128::MIN, "value collides with the −∞ sentinel");
        ExtInt(v)
    }

    pub fn is_finite(self) -> bool {
        self.0 != i128::MIN
    }

    pub fn value(self) -> Option<i128> {
        self.is_finite().then_some(self.0)
    }

    /// `self − other` for finite `other`.
    pub fn minus(self, other: ExtInt) -> ExtInt {
        assert!(other.is_finite(), "cannot subtract −∞");
        if !self.is_finite() {
            return self;
        }
        ExtInt::finite(self.0.checked_sub(other.0).expect("BP message overflow"))
    }
}

impl Add for ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: ExtInt) -> ExtInt {
        if !self.is_finite() || !rhs.is_finite() {
            return ExtInt::NEG_INF;
        }
        ExtInt::finite(self.0.checked_add(rhs.0).expect("BP message overflow"))
    }
}

impl fmt::Debug for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("-inf"),
        }
    }
}

impl From<i128> for ExtInt {
    fn from(v: i128) -> Self {
        ExtInt::finite(v)
    }
}

/// Log-values of a message at `y = 0` and `y = 1`.
pub type Message = [ExtInt; 2];

pub const UNIT: Message = [ExtInt::ZERO, ExtInt::ZERO];

pub fn msg(m0: i128, m1: i128) -> Message {
    [ExtInt::finite(m0), ExtInt::finite(m1)]
}

/// Shifts a message so that its larger entry is 0.
pub fn normalize(m: Message) -> Message {
    let top = m[0].max(m[1]);
    if !top.is_finite() {
        return m;
    }
    [m[0].minus(top), m[1].minus(top)]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorKind {
    /// ψ_i: at most one variable in scope equals 1.
    Vertex,
    /// ψ_C over the spokes of a contracted cycle, scope in cycle order.
    CycleSpokes,
    /// ψ_C attached directly to a cycle's edge variables: at most `limit` ones.
    CycleCount { limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub kind: FactorKind,
    pub scope: Vec<usize>,
    /// Index of the first socket of this factor; socket `offset + s` links
    /// the factor to `scope[s]`.
    pub offset: usize,
}

/// Variables with their log-weights and the factors over them.
#[derive(Debug, Clone)]
pub struct FactorGraph {
    weights: Vec<i128>,
    factors: Vec<Factor>,
    var_sockets: Vec<Vec<usize>>,
    socket_var: Vec<usize>,
}

impl FactorGraph {
    fn new(weights: Vec<i128>) -> Self {
        let n = weights.len();
        FactorGraph {
            weights,
            factors: Vec::new(),
            var_sockets: vec![Vec::new(); n],
            socket_var: Vec::new(),
        }
    }

    fn add_factor(&mut self, kind: FactorKind, scope: Vec<usize>) {
        let offset = self.socket_var.len();
        for &v in &scope {
            self.var_sockets[v].push(self.socket_var.len());
            self.socket_var.push(v);
        }
        self.factors.push(Factor { kind, scope, offset });
    }

    pub fn variable_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i128] {
        &self.weights
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn socket_count(&self) -> usize {
        self.socket_var.len()
    }

    /// Number of factors each variable belongs to.
    pub fn variable_degrees(&self) -> Vec<usize> {
        self.var_sockets.iter().map(Vec::len).collect()
    }

    pub fn satisfies_degree_two(&self) -> bool {
        self.var_sockets.iter().all(|s| s.len() <= 2)
    }
}

/// Factor graph of the transformed model: one variable per edge′, a vertex
/// factor for every original vertex with a non-empty δ(i) in G′, and one
/// spoke factor per contracted cycle.
pub fn build_factor_graph(model: &TransformedModel) -> FactorGraph {
    let weights = model.edges().iter().map(|e| e.w2 as i128).collect();
    let mut fg = FactorGraph::new(weights);
    for i in 0..model.base().vertex_count() {
        let scope = model.incident(i).to_vec();
        if !scope.is_empty() {
            fg.add_factor(FactorKind::Vertex, scope);
        }
    }
    for t in model.tables() {
        fg.add_factor(FactorKind::CycleSpokes, t.spokes.clone());
    }
    debug_assert!(model
        .edges()
        .iter()
        .all(|e| !matches!(e.provenance, Provenance::Spoke { .. }) || e.u >= model.base().vertex_count()));
    fg
}

/// Factor graph of the original matching model with cycle constraints
/// attached directly to edge variables. Edge variables on a cycle sit in
/// three factors, so the degree-two condition fails whenever `cycles` is
/// non-empty. Weights use the same doubled scale as the transformed model.
pub fn build_bare_factor_graph(graph: &WeightedGraph, cycles: &OddCycleSet) -> FactorGraph {
    let weights = graph.edges().iter().map(|e| 2 * e.w as i128).collect();
    let mut fg = FactorGraph::new(weights);
    for i in 0..graph.vertex_count() {
        let scope = graph.incident(i).to_vec();
        if !scope.is_empty() {
            fg.add_factor(FactorKind::Vertex, scope);
        }
    }
    for c in cycles.cycles() {
        fg.add_factor(
            FactorKind::CycleCount {
                limit: (c.len() - 1) / 2,
            },
            c.edge_ids().to_vec(),
        );
    }
    fg
}

/// Vertex-factor message to a target from the messages of the *other*
/// variables in scope: `out[b]` maximizes over assignments of the others
/// with at most `1 − b` of them set to 1.
pub fn vertex_factor_message(others: &[Message]) -> Message {
    let mut ops = 0;
    vertex_message_counted(others, &mut ops)
}

fn vertex_message_counted(others: &[Message], ops: &mut u64) -> Message {
    *ops += others.len() as u64 + 1;
    let mut all_zero = ExtInt::ZERO;
    for m in others {
        all_zero = all_zero + m[0];
    }
    let mut best_one = ExtInt::NEG_INF;
    for j in 0..others.len() {
        let mut s = others[j][1];
        for (i, m) in others.iter().enumerate() {
            if i != j {
                s = s + m[0];
            }
        }
        best_one = best_one.max(s);
    }
    *ops += (others.len() * others.len()) as u64;
    [all_zero.max(best_one), all_zero]
}

/// All outgoing messages of a vertex factor in O(d), given every incoming
/// message in scope order.
fn vertex_factor_all(incoming: &[Message], out: &mut [Message], ops: &mut u64) {
    let d = incoming.len();
    if incoming.iter().any(|m| !m[0].is_finite()) {
        let mut others = Vec::with_capacity(d);
        for t in 0..d {
            others.clear();
            others.extend((0..d).filter(|&j| j != t).map(|j| incoming[j]));
            out[t] = vertex_message_counted(&others, ops);
        }
        return;
    }
    // With every m[0] finite: out_t[0] = S_t + max(0, best gain among j ≠ t),
    // out_t[1] = S_t, where S_t = Σ_{j≠t} m_j[0] and gain_j = m_j[1] − m_j[0].
    let total = incoming.iter().fold(ExtInt::ZERO, |acc, m| acc + m[0]);
    let mut first = (ExtInt::NEG_INF, usize::MAX);
    let mut second = ExtInt::NEG_INF;
    for (j, m) in incoming.iter().enumerate() {
        let gain = m[1].minus(m[0]);
        if gain > first.0 {
            second = first.0;
            first = (gain, j);
        } else if gain > second {
            second = gain;
        }
    }
    for (t, m) in incoming.iter().enumerate() {
        let rest = total.minus(m[0]);
        let gain = if t == first.1 { second } else { first.0 };
        let best = if gain > ExtInt::ZERO { gain } else { ExtInt::ZERO };
        out[t] = [rest + best, rest];
    }
    *ops += 3 * d as u64;
}

/// Spoke-factor message to the spoke at `target` (a cycle position).
///
/// Valid spoke configurations are exactly the lifts `y_j = x_{e_{j−1}} + x_{e_j}`
/// of matchings `x` on the cycle's edges, so `out[b]` is found by a linear
/// pass over the cycle conditioned on the edge that closes it. The entry of
/// `incoming` at `target` is ignored.
pub fn cycle_factor_message(incoming: &[Message], target: usize) -> Message {
    let mut ops = 0;
    cycle_message_counted(incoming, target, &mut ops)
}

fn cycle_message_counted(incoming: &[Message], target: usize, ops: &mut u64) -> Message {
    let k = incoming.len();
    assert!(k >= 3 && k % 2 == 1, "spoke factors need an odd cycle");
    let mut out = [ExtInt::NEG_INF; 2];
    for (b, slot) in out.iter_mut().enumerate() {
        let value = |pos: usize, y: usize| -> ExtInt {
            if pos == target {
                if y == b {
                    ExtInt::ZERO
                } else {
                    ExtInt::NEG_INF
                }
            } else {
                incoming[pos][y]
            }
        };
        for closing in 0..2usize {
            // best[x]: best score so far with the previous edge's value x.
            let mut best = [ExtInt::NEG_INF; 2];
            best[closing] = ExtInt::ZERO;
            for pos in 0..k - 1 {
                let mut next = [ExtInt::NEG_INF; 2];
                for (prev, &score) in best.iter().enumerate() {
                    if !score.is_finite() {
                        continue;
                    }
                    for x in 0..2 {
                        if prev + x <= 1 {
                            next[x] = next[x].max(score + value(pos, prev + x));
                        }
                    }
                }
                best = next;
            }
            for (prev, &score) in best.iter().enumerate() {
                if prev + closing <= 1 {
                    *slot = (*slot).max(score + value(k - 1, prev + closing));
                }
            }
        }
    }
    *ops += 4 * k as u64;
    out
}

/// Message of a count-limited factor (at most `limit` ones among the scope).
pub fn count_factor_message(others: &[Message], limit: usize) -> Message {
    let mut ops = 0;
    count_message_counted(others, limit, &mut ops)
}

fn count_message_counted(others: &[Message], limit: usize, ops: &mut u64) -> Message {
    *ops += others.len() as u64;
    let mut out = [ExtInt::NEG_INF; 2];
    for (b, slot) in out.iter_mut().enumerate() {
        if limit < b {
            continue;
        }
        let budget = limit - b;
        // Exact DP over the number of ones, robust to −∞ entries.
        let mut best = vec![ExtInt::NEG_INF; budget + 1];
        best[0] = ExtInt::ZERO;
        for m in others {
            for c in (0..=budget).rev() {
                let keep = best[c] + m[0];
                let take = if c > 0 { best[c - 1] + m[1] } else { ExtInt::NEG_INF };
                best[c] = keep.max(take);
            }
            *ops += budget as u64 + 1;
        }
        *slot = best.into_iter().max().unwrap_or(ExtInt::NEG_INF);
    }
    out
}

/// Message tables of one BP round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPState {
    /// Variable → factor messages, indexed by socket.
    pub to_factor: Vec<Message>,
    /// Factor → variable messages, indexed by socket.
    pub to_variable: Vec<Message>,
    pub t: usize,
    /// Elementary operations spent in the most recent round.
    pub last_round_ops: u64,
}

impl BPState {
    pub fn initial(fg: &FactorGraph) -> Self {
        BPState {
            to_factor: vec![UNIT; fg.socket_count()],
            to_variable: vec![UNIT; fg.socket_count()],
            t: 0,
            last_round_ops: 0,
        }
    }

    fn same_tables(&self, other: &BPState) -> bool {
        self.to_factor == other.to_factor && self.to_variable == other.to_variable
    }
}

/// One flooding round: every variable→factor message is recomputed from the
/// previous factor→variable table, then every factor→variable message from
/// the fresh variable→factor table. All messages are normalized.
pub fn bp_round(fg: &FactorGraph, state: &BPState) -> BPState {
    let mut ops = 0u64;
    let mut to_factor = vec![UNIT; fg.socket_count()];
    for (v, sockets) in fg.var_sockets.iter().enumerate() {
        let w = ExtInt::finite(fg.weights[v]);
        let mut total = [ExtInt::ZERO, w];
        for &s in sockets {
            let m = state.to_variable[s];
            total = [total[0] + m[0], total[1] + m[1]];
        }
        for &s in sockets {
            let own = state.to_variable[s];
            // Excluding one message by subtraction is exact unless it is −∞.
            let m = if own[0].is_finite() && own[1].is_finite() {
                [total[0].minus(own[0]), total[1].minus(own[1])]
            } else {
                let mut acc = [ExtInt::ZERO, w];
                for &o in sockets.iter().filter(|&&o| o != s) {
                    let m = state.to_variable[o];
                    acc = [acc[0] + m[0], acc[1] + m[1]];
                }
                acc
            };
            to_factor[s] = normalize(m);
        }
        ops += 2 * sockets.len() as u64 + 1;
    }

    let mut to_variable = vec![UNIT; fg.socket_count()];
    let mut others: Vec<Message> = Vec::new();
    for f in &fg.factors {
        let d = f.scope.len();
        let incoming = &to_factor[f.offset..f.offset + d];
        let out = &mut to_variable[f.offset..f.offset + d];
        match f.kind {
            FactorKind::Vertex => vertex_factor_all(incoming, out, &mut ops),
            FactorKind::CycleSpokes => {
                for (t, slot) in out.iter_mut().enumerate() {
                    *slot = cycle_message_counted(incoming, t, &mut ops);
                }
            }
            FactorKind::CycleCount { limit } => {
                for (t, slot) in out.iter_mut().enumerate() {
                    others.clear();
                    others.extend((0..d).filter(|&j| j != t).map(|j| incoming[j]));
                    *slot = count_message_counted(&others, limit, &mut ops);
                }
            }
        }
        for m in out.iter_mut() {
            *m = normalize(*m);
        }
    }

    BPState {
        to_factor,
        to_variable,
        t: state.t + 1,
        last_round_ops: ops,
    }
}

/// Max-marginal beliefs `n_e = (0, w_e) + Σ incoming factor messages`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefTable {
    pub beliefs: Vec<Message>,
}

impl BeliefTable {
    pub fn decision(&self, v: usize) -> Ternary {
        let [n0, n1] = self.beliefs[v];
        match n1.cmp(&n0) {
            std::cmp::Ordering::Greater => Ternary::One,
            std::cmp::Ordering::Less => Ternary::Zero,
            std::cmp::Ordering::Equal => Ternary::Half,
        }
    }

    pub fn decisions(&self) -> Vec<Ternary> {
        (0..self.beliefs.len()).map(|v| self.decision(v)).collect()
    }
}

pub fn beliefs(fg: &FactorGraph, state: &BPState) -> BeliefTable {
    let beliefs = fg
        .var_sockets
        .iter()
        .enumerate()
        .map(|(v, sockets)| {
            let mut n = [ExtInt::ZERO, ExtInt::finite(fg.weights[v])];
            for &s in sockets {
                let m = state.to_variable[s];
                n = [n[0] + m[0], n[1] + m[1]];
            }
            n
        })
        .collect();
    BeliefTable { beliefs }
}

/// Decode over a whole periodic orbit: 1 (resp. 0) only if every state on
/// it strictly prefers that value. For periods 1 and 2 this is the two-round
/// rule at any round of the orbit.
pub fn decode_orbit(orbit: &[&Vec<Ternary>]) -> YAssignment {
    let len = orbit.first().map_or(0, |d| d.len());
    let values = (0..len)
        .map(|v| {
            let first = orbit[0][v];
            if first != Ternary::Half && orbit.iter().all(|d| d[v] == first) {
                first
            } else {
                Ternary::Half
            }
        })
        .collect();
    YAssignment { values }
}

/// Two-round decode: 1 (resp. 0) only if both rounds strictly prefer it.
pub fn decode(previous: &BeliefTable, current: &BeliefTable) -> YAssignment {
    let values = (0..current.beliefs.len())
        .map(|v| match (previous.decision(v), current.decision(v)) {
            (Ternary::One, Ternary::One) => Ternary::One,
            (Ternary::Zero, Ternary::Zero) => Ternary::Zero,
            _ => Ternary::Half,
        })
        .collect();
    YAssignment { values }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceRow {
    pub round: usize,
    pub half_decisions: usize,
    pub repeated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPOutcome {
    pub y: YAssignment,
    /// The message dynamics reached an exact fixed point, or an exactly
    /// periodic orbit on which every belief decision is constant.
    pub converged: bool,
    pub rounds_used: usize,
    /// Length of the detected orbit (1 for a fixed point).
    pub period: Option<usize>,
    pub trace: Vec<TraceRow>,
}

/// Orbits longer than this are not detected.
const MAX_PERIOD: usize = 64;

/// Runs BP from all-zero messages for at most `iterations` rounds.
///
/// Stops early once the message tables repeat a state seen within the last
/// `MAX_PERIOD` rounds; from then on the dynamics are periodic, so the
/// decisions can be read off the orbit.
pub fn run_factor_graph(fg: &FactorGraph, iterations: usize, trace: bool) -> BPOutcome {
    assert!(iterations >= 2, "need at least two rounds to decode");
    let mut history: VecDeque<(BPState, Vec<Ternary>)> = VecDeque::new();
    let mut state = BPState::initial(fg);
    let mut current = beliefs(fg, &state);
    let mut before = current.clone();
    let mut rows = Vec::new();
    while state.t < iterations {
        let next = bp_round(fg, &state);
        let b = beliefs(fg, &next);
        let decisions = b.decisions();
        let repeat_at = history
            .iter()
            .rev()
            .position(|(s, _)| s.same_tables(&next))
            .map(|back| back + 1);
        if trace {
            rows.push(TraceRow {
                round: next.t,
                half_decisions: decisions.iter().filter(|&&d| d == Ternary::Half).count(),
                repeated: repeat_at == Some(1),
            });
        }
        if let Some(p) = repeat_at {
            // The orbit is the last p states in history.
            let orbit: Vec<&Vec<Ternary>> = history.iter().rev().take(p).map(|(_, d)| d).collect();
            let stable = orbit.iter().all(|d| **d == decisions);
            return BPOutcome {
                y: decode_orbit(&orbit),
                converged: stable,
                rounds_used: next.t,
                period: Some(p),
                trace: rows,
            };
        }
        history.push_back((next.clone(), decisions));
        if history.len() > MAX_PERIOD {
            history.pop_front();
        }
        before = std::mem::replace(&mut current, b);
        state = next;
    }
    BPOutcome {
        y: decode(&before, &current),
        converged: false,
        rounds_used: state.t,
        period: None,
        trace: rows,
    }
}

/// BP on the transformed model.
pub fn run_bp(model: &TransformedModel, iterations: usize) -> BPOutcome {
    run_factor_graph(&build_factor_graph(model), iterations, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, OddCycle};
    use crate::transform::build_transform;

    fn triangle() -> WeightedGraph {
        parse_graph("3 3\n0 1 2\n1 2 1\n2 0 1").unwrap()
    }

    fn triangle_cycles(g: &WeightedGraph) -> OddCycleSet {
        OddCycleSet::from_cycles(vec![OddCycle::from_vertices(g, vec![0, 1, 2]).unwrap()]).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize(msg(3, 5)), msg(-2, 0));
        assert_eq!(normalize(msg(-1, -4)), msg(0, -3));
        assert_eq!(normalize([ExtInt::NEG_INF, ExtInt::finite(7)]), [ExtInt::NEG_INF, ExtInt::ZERO]);
    }

    #[test]
    fn vertex_messages() {
        assert_eq!(vertex_factor_message(&[msg(0, -3), msg(0, -5)]), msg(0, 0));
        assert_eq!(vertex_factor_message(&[]), msg(0, 0));
        assert_eq!(vertex_factor_message(&[msg(0, 2)]), msg(2, 0));
    }

    #[test]
    fn vertex_fast_path_matches_direct() {
        let incoming = [msg(0, 4), msg(-2, 0), msg(0, 4), msg(0, -1)];
        let mut out = [UNIT; 4];
        let mut ops = 0;
        vertex_factor_all(&incoming, &mut out, &mut ops);
        for t in 0..4 {
            let others: Vec<_> = (0..4).filter(|&j| j != t).map(|j| incoming[j]).collect();
            assert_eq!(out[t], vertex_factor_message(&others));
        }
    }

    #[test]
    fn triangle_spoke_factor() {
        for t in 0..3 {
            assert_eq!(cycle_factor_message(&[UNIT; 3], t), msg(0, 0));
        }
    }

    #[test]
    fn five_cycle_spoke_factor() {
        // Spokes at positions 1 and 2 favour 1; taking edge (1, 2) sets both.
        let mut incoming = [UNIT; 5];
        incoming[1] = msg(0, 1);
        incoming[2] = msg(0, 1);
        assert_eq!(cycle_factor_message(&incoming, 4)[0], ExtInt::finite(2));
    }

    #[test]
    fn count_factor() {
        assert_eq!(count_factor_message(&[msg(0, 3), msg(0, 2)], 1), msg(3, 0));
        assert_eq!(count_factor_message(&[msg(0, 3), msg(0, 2)], 0)[1], ExtInt::NEG_INF);
    }

    #[test]
    fn factor_graph_shapes() {
        let g = triangle();
        let fg = build_factor_graph(&build_transform(&g, &triangle_cycles(&g)).unwrap());
        assert_eq!(fg.variable_count(), 3);
        let kinds: Vec<_> = fg.factors().iter().map(|f| f.kind.clone()).collect();
        assert_eq!(kinds.iter().filter(|k| **k == FactorKind::Vertex).count(), 3);
        assert_eq!(kinds.iter().filter(|k| **k == FactorKind::CycleSpokes).count(), 1);
        assert_eq!(fg.variable_degrees(), vec![2, 2, 2]);

        let path = parse_graph("3 2\n0 1 1\n1 2 1").unwrap();
        let fg = build_factor_graph(&build_transform(&path, &OddCycleSet::new()).unwrap());
        assert_eq!(fg.variable_count(), 2);
        assert!(fg.factors().iter().any(|f| f.scope == vec![0, 1]));
        assert!(fg.satisfies_degree_two());

        let star = parse_graph("4 3\n0 1 1\n0 2 1\n0 3 1").unwrap();
        let fg = build_factor_graph(&build_transform(&star, &OddCycleSet::new()).unwrap());
        let mut arities: Vec<_> = fg.factors().iter().map(|f| f.scope.len()).collect();
        arities.sort();
        assert_eq!(arities, vec![1, 1, 1, 3]);

        let bare = build_bare_factor_graph(&g, &triangle_cycles(&g));
        assert_eq!(bare.variable_degrees(), vec![3, 3, 3]);
        assert!(!bare.satisfies_degree_two());
    }

    #[test]
    fn first_round_variable_messages() {
        let g = triangle();
        let fg = build_factor_graph(&build_transform(&g, &triangle_cycles(&g)).unwrap());
        let s1 = bp_round(&fg, &BPState::initial(&fg));
        assert_eq!(s1.t, 1);
        for f in fg.factors() {
            for (slot, &v) in f.scope.iter().enumerate() {
                let w = fg.weights()[v];
                assert_eq!(s1.to_factor[f.offset + slot], normalize(msg(0, w)));
            }
        }
        for m in s1.to_factor.iter().chain(&s1.to_variable) {
            assert_eq!(m[0].max(m[1]), ExtInt::ZERO);
        }
    }

    #[test]
    fn triangle_transformed_converges() {
        let g = triangle();
        let model = build_transform(&g, &triangle_cycles(&g)).unwrap();
        let out = run_bp(&model, 100);
        assert!(out.converged);
        assert_eq!(out.period, Some(1));
        use Ternary::*;
        assert_eq!(out.y.values, vec![One, One, Zero]);
    }

    #[test]
    fn triangle_bare_does_not_converge() {
        let g = triangle();
        let fg = build_bare_factor_graph(&g, &triangle_cycles(&g));
        let out = run_factor_graph(&fg, 1000, true);
        assert!(!out.converged, "{out:?}");
    }

    #[test]
    fn single_edge() {
        let g = parse_graph("2 1\n0 1 5").unwrap();
        let out = run_bp(&build_transform(&g, &OddCycleSet::new()).unwrap(), 10);
        assert!(out.converged);
        assert!(out.rounds_used <= 2);
        assert_eq!(out.y.values, vec![Ternary::One]);
    }

    #[test]
    fn no_pairwise_factors_is_fixed_after_one_round() {
        let g = parse_graph("4 2\n0 1 5\n2 3 -1").unwrap();
        let fg = build_factor_graph(&build_transform(&g, &OddCycleSet::new()).unwrap());
        let s1 = bp_round(&fg, &BPState::initial(&fg));
        let s2 = bp_round(&fg, &s1);
        assert!(s1.same_tables(&s2));
    }

    #[test]
    fn decode_rule() {
        let t = |a: i128, b: i128| BeliefTable { beliefs: vec![msg(a, b)] };
        assert_eq!(decode(&t(0, 5), &t(0, 5)).values, vec![Ternary::One]);
        assert_eq!(decode(&t(5, 0), &t(5, 0)).values, vec![Ternary::Zero]);
        assert_eq!(decode(&t(0, 5), &t(0, 0)).values, vec![Ternary::Half]);
        assert_eq!(decode(&t(0, 5), &t(5, 0)).values, vec![Ternary::Half]);
    }
}
