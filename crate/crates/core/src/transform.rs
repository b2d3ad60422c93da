//! Contraction of odd cycles into auxiliary vertices.
//!
//! Each cycle `C = (j_1, ..., j_k)` is replaced by a new vertex `i_C` joined to
//! every `j ∈ V(C)` by a spoke, and the cycle's own edges are dropped. A spoke
//! carries the alternating-sign combination `Σ_{e∈E(C)} (−1)^{d_C(j,e)} w_e`.
//! Kept edges carry `2·w_e`, so every transformed weight is stored at twice
//! the natural scale and stays integral.

use thiserror::Error;

use crate::graph::{EdgeId, OddCycle, OddCycleSet, Ternary, TernaryAssignment, VertexId, Weight, WeightedGraph};

pub type PrimeEdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("cycle {cycle} references unknown edge {edge}")]
    UnknownEdge { cycle: usize, edge: EdgeId },
    #[error("cycle {cycle} does not match the graph: {msg}")]
    InconsistentCycle { cycle: usize, msg: String },
    #[error("cycles {first} and {second} share edge {edge}")]
    IntersectingCycles { first: usize, second: usize, edge: EdgeId },
    #[error("assignment has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("edge {edge} is ½; only exact matchings can be lifted")]
    HalfEntry { edge: EdgeId },
    #[error("spoke {spoke} would carry {sum}: the assignment is not a matching on its cycle")]
    SpokeOverflow { spoke: PrimeEdgeId, sum: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// An original edge outside every cycle.
    Kept(EdgeId),
    /// The spoke `(i_C, j)` where `j` is the vertex at `position` in cycle `cycle`.
    Spoke { cycle: usize, position: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeEdge {
    pub u: VertexId,
    pub v: VertexId,
    /// Transformed weight at twice the natural scale.
    pub w2: Weight,
    pub provenance: Provenance,
}

/// Per-cycle bookkeeping: distance/sign tables and the spoke ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleTables {
    /// `distance[p][a]` = d_C(j_p, e_a), where `e_a` joins positions `a` and `a+1`.
    pub distance: Vec<Vec<usize>>,
    /// `sign[p][a]` = (−1)^{distance[p][a]}.
    pub sign: Vec<Vec<i64>>,
    /// Spoke edge′ id for each cycle position.
    pub spokes: Vec<PrimeEdgeId>,
    /// The auxiliary vertex i_C.
    pub hub: VertexId,
}

#[derive(Debug, Clone)]
pub struct TransformedModel {
    base: WeightedGraph,
    cycles: OddCycleSet,
    vertex_count: usize,
    edges: Vec<PrimeEdge>,
    adjacency: Vec<Vec<PrimeEdgeId>>,
    tables: Vec<CycleTables>,
    kept: Vec<Option<PrimeEdgeId>>,
    cycle_of_edge: Vec<Option<(usize, usize)>>,
}

fn cyclic_distance(p: usize, q: usize, k: usize) -> usize {
    let d = p.abs_diff(q);
    d.min(k - d)
}

/// d_C(j_p, e_a) for a cycle of length `k`.
pub fn cycle_distance(p: usize, a: usize, k: usize) -> usize {
    cyclic_distance(p, a, k).min(cyclic_distance(p, (a + 1) % k, k))
}

fn check_cycle(graph: &WeightedGraph, idx: usize, c: &OddCycle) -> Result<(), TransformError> {
    let k = c.len();
    for (a, &e) in c.edge_ids().iter().enumerate() {
        if e >= graph.edge_count() {
            return Err(TransformError::UnknownEdge { cycle: idx, edge: e });
        }
        let (x, y) = (c.vertices()[a], c.vertices()[(a + 1) % k]);
        let edge = graph.edge(e);
        if !(edge.touches(x) && edge.touches(y)) {
            return Err(TransformError::InconsistentCycle {
                cycle: idx,
                msg: format!("edge {e} does not join {x} and {y}"),
            });
        }
    }
    if k < 3 || k % 2 == 0 {
        return Err(TransformError::InconsistentCycle {
            cycle: idx,
            msg: format!("length {k} is not odd"),
        });
    }
    Ok(())
}

pub fn build_transform(
    graph: &WeightedGraph,
    cycles: &OddCycleSet,
) -> Result<TransformedModel, TransformError> {
    let n = graph.vertex_count();
    let mut cycle_of_edge: Vec<Option<(usize, usize)>> = vec![None; graph.edge_count()];
    for (ci, c) in cycles.cycles().iter().enumerate() {
        check_cycle(graph, ci, c)?;
        for (a, &e) in c.edge_ids().iter().enumerate() {
            if let Some((other, _)) = cycle_of_edge[e] {
                return Err(TransformError::IntersectingCycles {
                    first: other,
                    second: ci,
                    edge: e,
                });
            }
            cycle_of_edge[e] = Some((ci, a));
        }
    }

    let vertex_count = n + cycles.len();
    let mut edges = Vec::new();
    let mut kept = vec![None; graph.edge_count()];
    for (e, edge) in graph.edges().iter().enumerate() {
        if cycle_of_edge[e].is_none() {
            kept[e] = Some(edges.len());
            edges.push(PrimeEdge {
                u: edge.u,
                v: edge.v,
                w2: 2 * edge.w,
                provenance: Provenance::Kept(e),
            });
        }
    }

    let mut tables = Vec::with_capacity(cycles.len());
    for (ci, c) in cycles.cycles().iter().enumerate() {
        let k = c.len();
        let hub = n + ci;
        let distance: Vec<Vec<usize>> = (0..k)
            .map(|p| (0..k).map(|a| cycle_distance(p, a, k)).collect())
            .collect();
        let sign: Vec<Vec<i64>> = distance
            .iter()
            .map(|row| row.iter().map(|&d| if d % 2 == 0 { 1 } else { -1 }).collect())
            .collect();
        let mut spokes = Vec::with_capacity(k);
        for p in 0..k {
            let w2 = c
                .edge_ids()
                .iter()
                .enumerate()
                .map(|(a, &e)| sign[p][a] * graph.weight(e))
                .sum();
            spokes.push(edges.len());
            edges.push(PrimeEdge {
                u: hub,
                v: c.vertices()[p],
                w2,
                provenance: Provenance::Spoke { cycle: ci, position: p },
            });
        }
        tables.push(CycleTables {
            distance,
            sign,
            spokes,
            hub,
        });
    }

    let mut adjacency = vec![Vec::new(); vertex_count];
    for (id, e) in edges.iter().enumerate() {
        adjacency[e.u].push(id);
        adjacency[e.v].push(id);
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }

    Ok(TransformedModel {
        base: graph.clone(),
        cycles: cycles.clone(),
        vertex_count,
        edges,
        adjacency,
        tables,
        kept,
        cycle_of_edge,
    })
}

impl TransformedModel {
    pub fn base(&self) -> &WeightedGraph {
        &self.base
    }

    pub fn cycles(&self) -> &OddCycleSet {
        &self.cycles
    }

    /// |V′| = |V| + |𝒞|.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[PrimeEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// δ(v) in G′, ascending.
    pub fn incident(&self, v: VertexId) -> &[PrimeEdgeId] {
        &self.adjacency[v]
    }

    pub fn tables(&self) -> &[CycleTables] {
        &self.tables
    }

    /// The edge′ an original edge maps to, if it survives the contraction.
    pub fn kept_edge(&self, e: EdgeId) -> Option<PrimeEdgeId> {
        self.kept[e]
    }

    /// `(cycle, position in E(C))` for original cycle edges.
    pub fn cycle_of_edge(&self, e: EdgeId) -> Option<(usize, usize)> {
        self.cycle_of_edge[e]
    }

    pub fn max_abs_weight2(&self) -> Weight {
        self.edges.iter().map(|e| e.w2.abs()).max().unwrap_or(0)
    }

    /// G′ in the instance text format, weights at the doubled scale.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.u, e.v, e.w2));
        }
        out
    }

    /// One line per edge′: `kept <edge>` or `spoke <cycle> <vertex> <signs...>`.
    pub fn provenance_text(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            match e.provenance {
                Provenance::Kept(orig) => out.push_str(&format!("kept {orig}\n")),
                Provenance::Spoke { cycle, position } => {
                    let signs: Vec<String> = self.tables[cycle].sign[position]
                        .iter()
                        .map(|s| if *s > 0 { "+" } else { "-" }.to_string())
                        .collect();
                    let j = self.cycles.cycles()[cycle].vertices()[position];
                    out.push_str(&format!("spoke {cycle} {j} {}\n", signs.join("")));
                }
            }
        }
        out
    }
}

/// Per-edge′ assignment over {0, ½, 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YAssignment {
    pub values: Vec<Ternary>,
}

impl YAssignment {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Σ w′_e·y_e at the doubled weight scale, itself doubled so ½ stays integral.
    pub fn weight4(&self, model: &TransformedModel) -> i128 {
        self.values
            .iter()
            .zip(model.edges())
            .map(|(y, e)| y.doubled() as i128 * e.w2 as i128)
            .sum()
    }
}

/// Maps an exact matching x on G to y on G′.
pub fn lift_x_to_y(
    model: &TransformedModel,
    x: &TernaryAssignment,
) -> Result<YAssignment, TransformError> {
    let g = model.base();
    if x.len() != g.edge_count() {
        return Err(TransformError::LengthMismatch {
            expected: g.edge_count(),
            found: x.len(),
        });
    }
    if let Some(edge) = x.values.iter().position(|&v| v == Ternary::Half) {
        return Err(TransformError::HalfEntry { edge });
    }
    let bit = |e: EdgeId| (x.values[e] == Ternary::One) as i64;
    let mut values = Vec::with_capacity(model.edge_count());
    for (id, e) in model.edges().iter().enumerate() {
        let v = match e.provenance {
            Provenance::Kept(orig) => bit(orig),
            Provenance::Spoke { cycle, position } => {
                let c = &model.cycles().cycles()[cycle];
                let k = c.len();
                let sum = bit(c.edge_ids()[position]) + bit(c.edge_ids()[(position + k - 1) % k]);
                if sum > 1 {
                    return Err(TransformError::SpokeOverflow { spoke: id, sum });
                }
                sum
            }
        };
        values.push(Ternary::from_bool(v == 1));
    }
    Ok(YAssignment { values })
}

/// Result of mapping y back to the original edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    /// 4·x_e for every original edge; exact since y ∈ {0, ½, 1}.
    pub quarters: Vec<i64>,
    /// x itself, when every entry lies in {0, ½, 1}.
    pub x: Option<TernaryAssignment>,
}

impl Projection {
    pub fn in_half_integral_range(&self) -> bool {
        self.x.is_some()
    }
}

/// Reconstructs x from y: cycle edges take the signed half-sum of their
/// cycle's spokes, kept edges copy y.
pub fn project_y_to_x(model: &TransformedModel, y: &YAssignment) -> Projection {
    let g = model.base();
    assert_eq!(y.len(), model.edge_count(), "y must cover every edge′");
    let mut quarters = vec![0i64; g.edge_count()];
    for (e, q) in quarters.iter_mut().enumerate() {
        *q = match model.cycle_of_edge(e) {
            None => 2 * y.values[model.kept_edge(e).expect("non-cycle edges are kept")].doubled(),
            Some((ci, a)) => {
                let t = &model.tables()[ci];
                // 4·x = 4·½·Σ ± y = Σ ± (2y)
                t.spokes
                    .iter()
                    .enumerate()
                    .map(|(p, &s)| t.sign[p][a] * y.values[s].doubled())
                    .sum()
            }
        };
    }
    let x = quarters
        .iter()
        .map(|q| match q {
            0 => Some(Ternary::Zero),
            2 => Some(Ternary::Half),
            4 => Some(Ternary::One),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .map(|values| TernaryAssignment { values });
    Projection { quarters, x }
}
