//! 2-critical edges, newly critical sets and mixed cuts.

mod partner;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{is_biconnected_without, reachable, EdgeId, UndirectedGraph, VertexId};

pub use partner::{
    build_partner_analysis, find_clean_stretch, partner_set, ComponentInfo, CriticalEntry,
    PartnerAnalysis,
};

/// One edge plus one vertex whose joint removal separates `x` from `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MixedCut {
    pub edge: EdgeId,
    pub vertex: VertexId,
    pub x: VertexId,
    pub y: VertexId,
}

impl MixedCut {
    pub fn holds_in(&self, g: &UndirectedGraph) -> bool {
        verify_mixed_cut(g, self.x, self.y, self.edge, self.vertex)
    }
}

/// Whether `g - e` fails to be biconnected.
pub fn is_critical(g: &UndirectedGraph, e: EdgeId) -> Result<bool> {
    if !g.has_edge(e) {
        return Err(Error::MissingEdge(e));
    }
    Ok(!is_biconnected_without(g, |f| f == e))
}

/// All currently critical edges.
pub fn critical_set(g: &UndirectedGraph) -> BTreeSet<EdgeId> {
    g.edge_ids().filter(|&e| !is_biconnected_without(g, |f| f == e)).collect()
}

/// Edges critical in `g - e` but not in `g`.
pub fn newly_critical(g: &UndirectedGraph, e: EdgeId) -> Result<BTreeSet<EdgeId>> {
    if is_critical(g, e)? {
        return Err(Error::InvalidInput(format!("edge {e} is already critical")));
    }
    Ok(g.edge_ids()
        .filter(|&f| f != e)
        .filter(|&f| {
            !is_biconnected_without(g, |h| h == e || h == f) && is_biconnected_without(g, |h| h == f)
        })
        .collect())
}

/// Whether removing `edge` and `vertex` leaves no `x`-`y` path. A vertex equal
/// to an endpoint never forms a mixed cut.
pub fn verify_mixed_cut(g: &UndirectedGraph, x: VertexId, y: VertexId, edge: EdgeId, vertex: VertexId) -> bool {
    if vertex == x || vertex == y {
        return false;
    }
    !reachable(g, x, |v| v != vertex, |f| f != edge)[y]
}
