//! Exhaustive reference solvers for small instances.

use thiserror::Error;

use crate::graph::{Matching, Weight, WeightedGraph};
use crate::transform::{Provenance, TransformedModel};

pub const MWM_EDGE_LIMIT: usize = 30;
pub const MAP_EDGE_LIMIT: usize = 25;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {edges} edges; enumeration is limited to {limit}")]
    TooLarge { edges: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Indicator of the best assignment, one entry per variable.
    pub best: Vec<bool>,
    pub objective: Weight,
    /// No other feasible assignment reaches `objective`.
    pub is_unique: bool,
    /// Best objective among the remaining feasible assignments.
    pub runner_up: Option<Weight>,
}

impl OracleResult {
    pub fn matching(&self) -> Matching {
        Matching::new((0..self.best.len()).filter(|&e| self.best[e]))
    }
}

struct Tracker {
    best: Option<(Weight, Vec<bool>)>,
    runner_up: Option<Weight>,
}

impl Tracker {
    fn offer(&mut self, value: Weight, chosen: &[bool]) {
        match &self.best {
            Some((b, _)) if value <= *b => {
                self.runner_up = Some(self.runner_up.map_or(value, |r| r.max(value)));
            }
            _ => {
                if let Some((b, _)) = self.best.take() {
                    self.runner_up = Some(self.runner_up.map_or(b, |r| r.max(b)));
                }
                self.best = Some((value, chosen.to_vec()));
            }
        }
    }

    fn finish(self) -> OracleResult {
        let (objective, best) = self.best.expect("the empty assignment is always feasible");
        OracleResult {
            best,
            objective,
            is_unique: self.runner_up.is_none_or(|r| r < objective),
            runner_up: self.runner_up,
        }
    }
}

/// Enumerates every matching of `graph`.
pub fn brute_force_mwm(graph: &WeightedGraph) -> Result<OracleResult, OracleError> {
    let m = graph.edge_count();
    if m > MWM_EDGE_LIMIT {
        return Err(OracleError::TooLarge { edges: m, limit: MWM_EDGE_LIMIT });
    }
    fn walk(
        g: &WeightedGraph,
        e: usize,
        used: &mut [bool],
        chosen: &mut [bool],
        value: Weight,
        t: &mut Tracker,
    ) {
        if e == g.edge_count() {
            t.offer(value, chosen);
            return;
        }
        walk(g, e + 1, used, chosen, value, t);
        let edge = *g.edge(e);
        if !used[edge.u] && !used[edge.v] {
            used[edge.u] = true;
            used[edge.v] = true;
            chosen[e] = true;
            walk(g, e + 1, used, chosen, value + edge.w, t);
            chosen[e] = false;
            used[edge.u] = false;
            used[edge.v] = false;
        }
    }
    let mut t = Tracker { best: None, runner_up: None };
    walk(
        graph,
        0,
        &mut vec![false; graph.vertex_count()],
        &mut vec![false; m],
        0,
        &mut t,
    );
    Ok(t.finish())
}

/// Spoke-factor acceptance written directly from its definition: at most
/// `|C|−1` spokes set, and every alternating sum in {0, 2}.
fn spoke_factor_accepts(model: &TransformedModel, cycle: usize, y: &[bool]) -> bool {
    let t = &model.tables()[cycle];
    let k = t.spokes.len();
    let ones = t.spokes.iter().filter(|&&s| y[s]).count();
    if ones > k - 1 {
        return false;
    }
    (0..k).all(|a| {
        let s: i64 = (0..k).map(|p| t.sign[p][a] * y[t.spokes[p]] as i64).sum();
        s == 0 || s == 2
    })
}

/// Enumerates `y ∈ {0,1}^{E′}` under the vertex and spoke factors and
/// maximizes `Σ w′_e·y_e` (doubled scale).
pub fn brute_force_map_transformed(model: &TransformedModel) -> Result<OracleResult, OracleError> {
    let m = model.edge_count();
    if m > MAP_EDGE_LIMIT {
        return Err(OracleError::TooLarge { edges: m, limit: MAP_EDGE_LIMIT });
    }
    let n = model.base().vertex_count();
    let mut t = Tracker { best: None, runner_up: None };
    let mut y = vec![false; m];
    // Vertex factors are enforced while branching; spoke factors at the leaves.
    fn walk(
        model: &TransformedModel,
        n: usize,
        e: usize,
        used: &mut [bool],
        y: &mut [bool],
        value: Weight,
        t: &mut Tracker,
    ) {
        if e == model.edge_count() {
            if (0..model.tables().len()).all(|c| spoke_factor_accepts(model, c, y)) {
                t.offer(value, y);
            }
            return;
        }
        walk(model, n, e + 1, used, y, value, t);
        let edge = model.edges()[e];
        let ends: Vec<usize> = [edge.u, edge.v].into_iter().filter(|&v| v < n).collect();
        if ends.iter().all(|&v| !used[v]) {
            ends.iter().for_each(|&v| used[v] = true);
            y[e] = true;
            walk(model, n, e + 1, used, y, value + edge.w2, t);
            y[e] = false;
            ends.iter().for_each(|&v| used[v] = false);
        }
    }
    debug_assert!(model.edges().iter().all(|e| match e.provenance {
        Provenance::Kept(_) => e.u < n && e.v < n,
        Provenance::Spoke { .. } => e.u >= n && e.v < n,
    }));
    walk(model, n, 0, &mut vec![false; n], &mut y, 0, &mut t);
    Ok(t.finish())
}
