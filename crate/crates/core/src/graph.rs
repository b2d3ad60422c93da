//! Weighted undirected graphs, odd cycles, matchings and the plain-text
//! instance format.
//!
//! Instance files start with a header line `<vertex_count> <edge_count>`
//! followed by one `<u> <v> <w>` line per edge. Vertex ids are 0-based and
//! weights are integers. Blank lines and lines starting with `#` are ignored.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type Weight = i64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: VertexId },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: VertexId, v: VertexId },
    #[error("line {line}: weight {token:?} is not an integer")]
    BadWeight { line: usize, token: String },
    #[error("line {line}: vertex {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { line: usize, vertex: VertexId, count: usize },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("cycle {index}: {msg}")]
    BadCycle { index: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: Weight,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// Undirected graph with integer edge weights and dense edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<EdgeId>>,
    index: HashMap<(VertexId, VertexId), EdgeId>,
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl WeightedGraph {
    pub fn new(vertex_count: usize) -> Self {
        WeightedGraph {
            vertex_count,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); vertex_count],
            index: HashMap::new(),
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates
    /// and out-of-range endpoints. Errors report the 1-based position of the
    /// offending edge as `line`.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Weight)>,
    ) -> Result<Self, GraphError> {
        let mut g = WeightedGraph::new(vertex_count);
        for (i, (u, v, w)) in edges.into_iter().enumerate() {
            g.push_edge(u, v, w, i + 1)?;
        }
        Ok(g)
    }

    fn push_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        w: Weight,
        line: usize,
    ) -> Result<EdgeId, GraphError> {
        for x in [u, v] {
            if x >= self.vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    line,
                    vertex: x,
                    count: self.vertex_count,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { line, vertex: u });
        }
        if self.index.contains_key(&key(u, v)) {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
        let id = self.edges.len();
        self.edges.push(Edge { u, v, w });
        self.adjacency[u].push(id);
        self.adjacency[v].push(id);
        self.index.insert(key(u, v), id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn weight(&self, e: EdgeId) -> Weight {
        self.edges[e].w
    }

    /// Incident edge ids of `v` in ascending order (the set δ(v)).
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adjacency[v]
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.index.get(&key(u, v)).copied()
    }

    pub fn max_abs_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.w.abs()).max().unwrap_or(0)
    }

    /// Serializes to the instance text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.u, e.v, e.w));
        }
        out
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_count(token: &str, line: usize, what: &str) -> Result<usize, GraphError> {
    token.parse().map_err(|_| GraphError::Malformed {
        line,
        msg: format!("{what} {token:?} is not a non-negative integer"),
    })
}

/// Parses the instance text format.
pub fn parse_graph(text: &str) -> Result<WeightedGraph, GraphError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(GraphError::Malformed {
        line: 1,
        msg: "missing header line".into(),
    })?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(GraphError::Malformed {
            line: hline,
            msg: "header must be \"<vertex_count> <edge_count>\"".into(),
        });
    }
    let n = parse_count(head[0], hline, "vertex count")?;
    let m = parse_count(head[1], hline, "edge count")?;
    let mut g = WeightedGraph::new(n);
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(GraphError::Malformed {
                line,
                msg: format!("expected \"<u> <v> <w>\", got {} fields", toks.len()),
            });
        }
        let u = parse_count(toks[0], line, "vertex id")?;
        let v = parse_count(toks[1], line, "vertex id")?;
        let w: Weight = toks[2].parse().map_err(|_| GraphError::BadWeight {
            line,
            token: toks[2].to_string(),
        })?;
        g.push_edge(u, v, w, line)?;
    }
    if g.edge_count() != m {
        return Err(GraphError::EdgeCountMismatch {
            declared: m,
            found: g.edge_count(),
        });
    }
    Ok(g)
}

/// Random instance: the complete graph on `n` vertices with each edge removed
/// independently with probability `p`, survivors weighted uniformly in
/// `[1, w_max]`. Edges are visited in lexicographic `(u, v)` order.
pub fn generate_instance(n: usize, p: f64, w_max: Weight, seed: u64) -> WeightedGraph {
    assert!((0.0..=1.0).contains(&p), "p must lie in [0, 1]");
    assert!(w_max >= 1, "w_max must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = WeightedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                continue;
            }
            let w = rng.gen_range(1..=w_max);
            g.push_edge(u, v, w, 0).expect("generated edges are simple");
        }
    }
    g
}

/// An odd cycle `(j_1, ..., j_k)`; `edge_ids[a]` joins `vertices[a]` and
/// `vertices[(a + 1) % k]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCycle {
    vertices: Vec<VertexId>,
    edge_ids: Vec<EdgeId>,
}

impl OddCycle {
    /// Builds a cycle from a cyclic vertex order, resolving edges in `graph`.
    pub fn from_vertices(graph: &WeightedGraph, vertices: Vec<VertexId>) -> Result<Self, String> {
        let k = vertices.len();
        if k < 3 || k % 2 == 0 {
            return Err(format!("cycle length {k} is not odd and at least 3"));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != k {
            return Err("cycle repeats a vertex".into());
        }
        let mut edge_ids = Vec::with_capacity(k);
        for a in 0..k {
            let (x, y) = (vertices[a], vertices[(a + 1) % k]);
            if x >= graph.vertex_count() || y >= graph.vertex_count() {
                return Err(format!("vertex out of range in ({x}, {y})"));
            }
            let e = graph
                .find_edge(x, y)
                .ok_or_else(|| format!("({x}, {y}) is not an edge"))?;
            edge_ids.push(e);
        }
        Ok(OddCycle { vertices, edge_ids })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    /// Position of `v` in the cyclic order.
    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }
}

/// Pairwise edge-disjoint odd cycles.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCycleSet {
    cycles: Vec<OddCycle>,
}

impl OddCycleSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_cycles(cycles: Vec<OddCycle>) -> Result<Self, GraphError> {
        let mut set = OddCycleSet::new();
        for c in cycles {
            set.push(c)?;
        }
        Ok(set)
    }

    /// Appends a cycle, rejecting it if it shares an edge with a member.
    pub fn push(&mut self, cycle: OddCycle) -> Result<(), GraphError> {
        let used = self.used_edges();
        if let Some(&e) = cycle.edge_ids.iter().find(|e| used.contains(e)) {
            return Err(GraphError::BadCycle {
                index: self.cycles.len(),
                msg: format!("edge {e} already belongs to another cycle"),
            });
        }
        self.cycles.push(cycle);
        Ok(())
    }

    pub fn cycles(&self) -> &[OddCycle] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// ∪ E(C) over all member cycles.
    pub fn used_edges(&self) -> BTreeSet<EdgeId> {
        self.cycles
            .iter()
            .flat_map(|c| c.edge_ids.iter().copied())
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cycles {
            let line: Vec<String> = c.vertices.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Parses the cycle sidecar: one cycle per line, vertex ids in cyclic order.
pub fn parse_cycles(graph: &WeightedGraph, text: &str) -> Result<OddCycleSet, GraphError> {
    let mut set = OddCycleSet::new();
    for (line, l) in content_lines(text) {
        let vertices = l
            .split_whitespace()
            .map(|t| parse_count(t, line, "vertex id"))
            .collect::<Result<Vec<_>, _>>()?;
        let cycle = OddCycle::from_vertices(graph, vertices)
            .map_err(|msg| GraphError::Malformed { line, msg })?;
        set.push(cycle).map_err(|e| match e {
            GraphError::BadCycle { msg, .. } => GraphError::Malformed { line, msg },
            other => other,
        })?;
    }
    Ok(set)
}

/// Finds an odd cycle in the subgraph of `allowed_edges` minus
/// `forbidden_edges`.
///
/// Every vertex is tried as a BFS root in ascending order, scanning incident
/// edges in ascending id order. In each BFS the first edge joining two
/// vertices of equal colour closes an odd cycle through their lowest common
/// ancestor in the BFS tree. The shortest of these candidates wins, ties going
/// to the smallest root; the result is therefore a shortest odd cycle.
pub fn find_odd_cycle(
    graph: &WeightedGraph,
    allowed_edges: &BTreeSet<EdgeId>,
    forbidden_edges: &BTreeSet<EdgeId>,
) -> Option<OddCycle> {
    let n = graph.vertex_count();
    let usable: Vec<bool> = (0..graph.edge_count())
        .map(|e| allowed_edges.contains(&e) && !forbidden_edges.contains(&e))
        .collect();
    let mut best: Option<Vec<VertexId>> = None;
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if !graph.incident(root).iter().any(|&e| usable[e]) {
            continue;
        }
        depth.iter_mut().for_each(|d| *d = usize::MAX);
        depth[root] = 0;
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            for &e in graph.incident(u) {
                if !usable[e] {
                    continue;
                }
                let v = graph.edge(e).other(u);
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if depth[v] == depth[u] {
                    let cycle = close_cycle(u, v, &parent);
                    if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                        best = Some(cycle);
                    }
                    break 'bfs;
                }
            }
        }
    }
    best.map(|vs| OddCycle::from_vertices(graph, vs).expect("BFS cycle is a simple odd cycle"))
}

fn close_cycle(u: VertexId, v: VertexId, parent: &[VertexId]) -> Vec<VertexId> {
    // u and v sit at equal depth, so walking both up in lockstep meets at the LCA.
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    // u .. lca .. v; the edge (v, u) closes the cycle.
    left.extend(right);
    left
}

/// True iff the subgraph restricted to `edges` admits a proper 2-colouring.
pub fn is_bipartite(graph: &WeightedGraph, edges: &BTreeSet<EdgeId>) -> bool {
    let n = graph.vertex_count();
    let mut colour = vec![u8::MAX; n];
    for root in 0..n {
        if colour[root] != u8::MAX {
            continue;
        }
        colour[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &e in graph.incident(u) {
                if !edges.contains(&e) {
                    continue;
                }
                let v = graph.edge(e).other(u);
                if colour[v] == u8::MAX {
                    colour[v] = 1 - colour[u];
                    queue.push_back(v);
                } else if colour[v] == colour[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// A set of edge ids intended to be a matching.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub edge_ids: BTreeSet<EdgeId>,
}

impl Matching {
    pub fn new(edge_ids: impl IntoIterator<Item = EdgeId>) -> Self {
        Matching {
            edge_ids: edge_ids.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchingCheck {
    pub ok: bool,
    pub total_weight: Weight,
    /// First vertex covered twice, when `ok` is false.
    pub shared_vertex: Option<VertexId>,
}

pub fn validate_matching(graph: &WeightedGraph, m: &Matching) -> MatchingCheck {
    let mut covered = vec![false; graph.vertex_count()];
    let mut shared_vertex = None;
    let mut total_weight = 0;
    for &e in &m.edge_ids {
        let edge = graph.edge(e);
        total_weight += edge.w;
        for x in [edge.u, edge.v] {
            if covered[x] && shared_vertex.is_none() {
                shared_vertex = Some(x);
            }
            covered[x] = true;
        }
    }
    MatchingCheck {
        ok: shared_vertex.is_none(),
        total_weight,
        shared_vertex,
    }
}

/// A value in {0, ½, 1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ternary {
    Zero,
    Half,
    One,
}

impl Ternary {
    /// Value doubled, so that ½ is represented exactly.
    pub fn doubled(self) -> i64 {
        match self {
            Ternary::Zero => 0,
            Ternary::Half => 1,
            Ternary::One => 2,
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Ternary::One
        } else {
            Ternary::Zero
        }
    }
}

impl fmt::Display for Ternary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ternary::Zero => "0",
            Ternary::Half => "?",
            Ternary::One => "1",
        })
    }
}

/// Per-edge assignment over {0, ½, 1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryAssignment {
    pub values: Vec<Ternary>,
}

impl TernaryAssignment {
    pub fn zeros(len: usize) -> Self {
        TernaryAssignment {
            values: vec![Ternary::Zero; len],
        }
    }

    pub fn from_matching(graph: &WeightedGraph, m: &Matching) -> Self {
        let mut x = Self::zeros(graph.edge_count());
        for &e in &m.edge_ids {
            x.values[e] = Ternary::One;
        }
        x
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn ids_with(&self, value: Ternary) -> BTreeSet<EdgeId> {
        (0..self.values.len())
            .filter(|&e| self.values[e] == value)
            .collect()
    }

    pub fn count(&self, value: Ternary) -> usize {
        self.values.iter().filter(|&&v| v == value).count()
    }

    /// The edges set to 1, when no entry is ½.
    pub fn to_matching(&self) -> Option<Matching> {
        if self.values.contains(&Ternary::Half) {
            return None;
        }
        Some(Matching::new(self.ids_with(Ternary::One)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> WeightedGraph {
        parse_graph("3 3\n0 1 2\n1 2 1\n2 0 1").unwrap()
    }

    fn all(g: &WeightedGraph) -> BTreeSet<EdgeId> {
        (0..g.edge_count()).collect()
    }

    #[test]
    fn parses_triangle() {
        let g = triangle();
        assert_eq!(g.vertex_count(), 3);
        let ws: Vec<_> = g.edges().iter().map(|e| e.w).collect();
        assert_eq!(ws, vec![2, 1, 1]);
        assert_eq!(g.incident(1), &[0, 1]);
    }

    #[test]
    fn parses_single_vertex() {
        let g = parse_graph("1 0").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn rejects_bad_lines() {
        assert_eq!(
            parse_graph("2 1\n0 0 5"),
            Err(GraphError::SelfLoop { line: 2, vertex: 0 })
        );
        assert_eq!(
            parse_graph("2 2\n0 1 5\n1 0 3"),
            Err(GraphError::DuplicateEdge { line: 3, u: 1, v: 0 })
        );
        assert!(matches!(
            parse_graph("2 1\n0 1 2.5"),
            Err(GraphError::BadWeight { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("2 1\n0 1"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("2 1\n0 7 1"),
            Err(GraphError::VertexOutOfRange { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 2\n0 1 1"),
            Err(GraphError::EdgeCountMismatch { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let g = generate_instance(9, 0.4, 100, 3);
        assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn generator_keeps_everything_at_p_zero() {
        let g = generate_instance(3, 0.0, 1, 7);
        assert_eq!(g.edge_count(), 3);
        assert!(g.edges().iter().all(|e| e.w == 1));
        assert_eq!(generate_instance(3, 1.0, 1, 7).edge_count(), 0);
    }

    #[test]
    fn generator_is_reproducible() {
        assert_eq!(
            generate_instance(20, 0.5, 1 << 20, 42),
            generate_instance(20, 0.5, 1 << 20, 42)
        );
        assert_ne!(
            generate_instance(20, 0.5, 1 << 20, 42),
            generate_instance(20, 0.5, 1 << 20, 43)
        );
    }

    #[test]
    fn generator_edge_density() {
        for (p, expected) in [(0.5, 612.5), (0.9, 122.5)] {
            let mean = (0..100u64)
                .map(|s| generate_instance(50, p, 1 << 20, s).edge_count() as f64)
                .sum::<f64>()
                / 100.0;
            assert!((mean - expected).abs() / expected < 0.05, "p={p} mean={mean}");
        }
        let g = generate_instance(50, 0.5, 1 << 20, 0);
        assert!(g.edges().iter().all(|e| (1..=1 << 20).contains(&e.w)));
    }

    #[test]
    fn odd_cycle_in_triangle() {
        let g = triangle();
        let c = find_odd_cycle(&g, &all(&g), &BTreeSet::new()).unwrap();
        assert_eq!(c.len(), 3);
        let es: BTreeSet<_> = c.edge_ids().iter().copied().collect();
        assert_eq!(es, all(&g));
    }

    #[test]
    fn no_odd_cycle_in_bipartite_square() {
        let g = parse_graph("4 4\n0 1 1\n1 2 1\n2 3 1\n3 0 1").unwrap();
        assert!(find_odd_cycle(&g, &all(&g), &BTreeSet::new()).is_none());
    }

    #[test]
    fn forbidden_triangle_leaves_no_odd_cycle() {
        // 5-cycle 0..4 plus chord (0,2): the chord closes triangle 0-1-2.
        let g = parse_graph("5 6\n0 1 1\n1 2 1\n2 3 1\n3 4 1\n4 0 1\n0 2 1").unwrap();
        let first = find_odd_cycle(&g, &all(&g), &BTreeSet::new()).unwrap();
        assert_eq!(first.len(), 3);
        let forbidden: BTreeSet<_> = [0, 1, 5].into();
        assert!(find_odd_cycle(&g, &all(&g), &forbidden).is_none());
    }

    #[test]
    fn prefers_shortest_cycle() {
        // 5-cycle on 0..4 with a pendant triangle 5-6-7 attached at 4.
        let g = parse_graph(
            "8 9\n0 1 1\n1 2 1\n2 3 1\n3 4 1\n4 0 1\n4 5 1\n5 6 1\n6 7 1\n7 5 1",
        )
        .unwrap();
        let c = find_odd_cycle(&g, &all(&g), &BTreeSet::new()).unwrap();
        assert_eq!(c.len(), 3);
        let vs: BTreeSet<_> = c.vertices().iter().copied().collect();
        assert_eq!(vs, [5, 6, 7].into());
    }

    #[test]
    fn cycle_set_rejects_shared_edges() {
        let g = parse_graph("5 6\n0 1 1\n1 2 1\n2 0 1\n2 3 1\n3 4 1\n4 2 1").unwrap();
        let a = OddCycle::from_vertices(&g, vec![0, 1, 2]).unwrap();
        let b = OddCycle::from_vertices(&g, vec![2, 3, 4]).unwrap();
        let mut set = OddCycleSet::from_cycles(vec![a.clone(), b]).unwrap();
        assert!(set.push(a).is_err());
        assert!(OddCycle::from_vertices(&g, vec![0, 1]).is_err());
        assert!(OddCycle::from_vertices(&g, vec![0, 1, 3]).is_err());
        let parsed = parse_cycles(&g, &set.to_text()).unwrap();
        assert_eq!(parsed, set);
    }

    #[test]
    fn matching_validation() {
        let g = triangle();
        let c = validate_matching(&g, &Matching::new([0]));
        assert!(c.ok);
        assert_eq!(c.total_weight, 2);
        let c = validate_matching(&g, &Matching::default());
        assert_eq!((c.ok, c.total_weight), (true, 0));
        let c = validate_matching(&g, &Matching::new([0, 1]));
        assert!(!c.ok);
        assert_eq!(c.shared_vertex, Some(1));
    }
}
