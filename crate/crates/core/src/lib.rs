//! Belief propagation for maximum weight matching with odd-cycle constraints.
//!
//! The crate contracts a set of edge-disjoint odd cycles into auxiliary
//! vertices so that every variable of the resulting graphical model touches at
//! most two factors, runs exact integer max-product BP on it, and wraps both
//! BP and an exact rational LP solver in a cutting-plane loop that grows the
//! cycle set from half-integral edges.

pub mod bench;
pub mod bp;
pub mod cutting_plane;
pub mod graph;
pub mod lp;
pub mod oracle;
pub mod transform;

pub use graph::{
    find_odd_cycle, generate_instance, parse_cycles, parse_graph, validate_matching, Matching,
    OddCycle, OddCycleSet, Ternary, TernaryAssignment, WeightedGraph,
};
pub use transform::{build_transform, lift_x_to_y, project_y_to_x, TransformedModel, YAssignment};
