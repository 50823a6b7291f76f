use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Digraph, EdgeId, UndirectedGraph, VertexId};

use super::cut::max_disjoint_paths;

/// Digraph encoding biconnectivity of `G - S` for every `S ⊆ F` as linkages.
///
/// Vertices of `G` keep their ids; subdivision vertices and the `v+`/`v-`
/// copies are appended after them.
#[derive(Clone, Debug)]
pub struct AuxiliaryDigraph {
    pub digraph: Digraph,
    /// `x_e` for every `e ∈ F`.
    pub subdivision: BTreeMap<EdgeId, VertexId>,
    /// `v+` for every endpoint of `F`.
    pub plus: BTreeMap<VertexId, VertexId>,
    /// `v-` for every endpoint of `F`.
    pub minus: BTreeMap<VertexId, VertexId>,
    /// `X = X_E ∪ {v+, v-, v}`.
    pub terminals: BTreeSet<VertexId>,
    /// One past the largest vertex id of `G`.
    pub graph_bound: usize,
}

/// Subdivides each `e ∈ F` by `x_e`, bidirects every edge, and adds `v+`
/// (arcs to the neighbors of `v`) and `v-` (arcs from them) per endpoint.
pub fn build_auxiliary_digraph(g: &UndirectedGraph, f: &BTreeSet<EdgeId>) -> AuxiliaryDigraph {
    let mut d = Digraph::new(g.vertex_bound());
    for v in 0..g.vertex_bound() {
        if !g.has_vertex(v) {
            d.remove_vertex(v).expect("fresh vertex");
        }
    }
    let mut subdivision = BTreeMap::new();
    for (e, u, v) in g.edges() {
        if f.contains(&e) {
            let x = d.add_vertex();
            subdivision.insert(e, x);
            for w in [u, v] {
                d.add_arc(w, x).expect("new arc");
                d.add_arc(x, w).expect("new arc");
            }
        } else {
            d.add_arc(u, v).expect("simple graph");
            d.add_arc(v, u).expect("simple graph");
        }
    }
    let ends: BTreeSet<VertexId> =
        f.iter().filter_map(|&e| g.endpoints(e)).flat_map(|(u, v)| [u, v]).collect();
    let mut plus = BTreeMap::new();
    let mut minus = BTreeMap::new();
    let mut terminals: BTreeSet<VertexId> = subdivision.values().copied().collect();
    for &v in &ends {
        let neighbors: Vec<VertexId> = d.out_neighbors(v).collect();
        let p = d.add_vertex();
        let m = d.add_vertex();
        for &w in &neighbors {
            d.add_arc(p, w).expect("new arc");
            d.add_arc(w, m).expect("new arc");
        }
        plus.insert(v, p);
        minus.insert(v, m);
        terminals.extend([v, p, m]);
    }
    AuxiliaryDigraph { digraph: d, subdivision, plus, minus, terminals, graph_bound: g.vertex_bound() }
}

impl AuxiliaryDigraph {
    /// Two vertex-disjoint paths from `{u+, u}` to `{v-, v}` avoiding `x_e`
    /// for every `e ∈ s`.
    pub fn linkage_exists(&self, s: &[EdgeId], u: VertexId, v: VertexId) -> bool {
        let (Some(&up), Some(&vm)) = (self.plus.get(&u), self.minus.get(&v)) else {
            return false;
        };
        let removed: BTreeSet<VertexId> = s.iter().filter_map(|e| self.subdivision.get(e)).copied().collect();
        max_disjoint_paths(&self.digraph, &[up, u], &[vm, v], &removed) == 2
    }

    /// Whether every deleted edge `(u, v) ∈ s` has its linkage; equivalent to
    /// `G - s` being biconnected.
    pub fn all_linkages(&self, g: &UndirectedGraph, s: &[EdgeId]) -> bool {
        s.iter().all(|&e| {
            let (u, v) = g.endpoints(e).expect("edge of F");
            self.linkage_exists(s, u, v)
        })
    }

    /// Vertices of `G` among `set`.
    pub fn graph_vertices(&self, set: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        set.iter().copied().filter(|&v| v < self.graph_bound && self.digraph.has_vertex(v)).collect()
    }
}
