//! Graph representations and connectivity primitives.

mod connectivity;
mod contraction;
mod digraph;
mod flow;
mod path;
mod undirected;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type ArcId = usize;

pub use connectivity::{
    articulation_points, components, is_biconnected, is_biconnected_without, is_connected,
    is_strongly_connected, reachable,
};
pub use contraction::{contract_sequence, path_contract, VertexMap};
pub use digraph::Digraph;
pub use flow::{flow_calls, local_connectivity, max_flow, max_flow_bounded};
pub(crate) use flow::{Network, INF};
pub use path::{FlowDecomposition, Path};
pub use undirected::UndirectedGraph;
