//! Digraph instances built from Independent Set inputs: one for arc
//! contraction and one for vertex deletion preserving strong connectivity.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{is_strongly_connected, ArcId, Digraph, EdgeId, UndirectedGraph, VertexId};

/// Gadget bookkeeping for [`gen_pc_psc`]. Vectors indexed by vertex follow
/// the ascending vertex order of the input; those indexed by edge follow
/// ascending edge ids.
#[derive(Clone, Debug)]
pub struct PcGadgetMap {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(EdgeId, VertexId, VertexId)>,
    pub minus: Vec<VertexId>,
    pub plus: Vec<VertexId>,
    /// The arc `(v-, v+)`.
    pub vertex_arc: Vec<ArcId>,
    pub hub: Vec<VertexId>,
    pub pendants: Vec<Vec<VertexId>>,
    pub x: VertexId,
    pub y: VertexId,
    pub x_pendants: Vec<VertexId>,
    pub y_pendants: Vec<VertexId>,
    /// `(v-, ê), (ê, v+), (u-, ê), (ê, u+)` for `e = (u, v)`.
    pub selection_arcs: Vec<[ArcId; 4]>,
    /// Provenance of every gadget vertex, 1-based like the text formats.
    pub labels: Vec<Option<String>>,
}

impl PcGadgetMap {
    fn index_of(&self, v: VertexId) -> Result<usize> {
        self.vertices.binary_search(&v).map_err(|_| Error::MissingVertex(v))
    }

    /// Arcs `(v-, v+)` for the given input vertices.
    pub fn arcs_for(&self, set: &[VertexId]) -> Result<Vec<ArcId>> {
        set.iter().map(|&v| Ok(self.vertex_arc[self.index_of(v)?])).collect()
    }

    /// Input vertices whose arc `(v-, v+)` is in `arcs`, or `None` if some arc
    /// lies outside the vertex arcs.
    pub fn vertices_for(&self, arcs: &[ArcId]) -> Option<Vec<VertexId>> {
        arcs.iter()
            .map(|a| self.vertex_arc.iter().position(|b| b == a).map(|i| self.vertices[i]))
            .collect()
    }

    /// The arcs of the edge-selection gadget of the `i`-th edge.
    pub fn edge_gadget_arcs(&self, d: &Digraph, i: usize) -> BTreeSet<ArcId> {
        let (_, u, v) = self.edges[i];
        let (iu, iv) = (self.index_of(u).unwrap(), self.index_of(v).unwrap());
        let hub = self.hub[i];
        let mut out: BTreeSet<ArcId> = self.selection_arcs[i].iter().copied().collect();
        for &p in &self.pendants[i] {
            out.extend(d.arc_between(hub, p));
            out.extend(d.arc_between(p, hub));
        }
        out.extend([self.vertex_arc[iu], self.vertex_arc[iv]]);
        for j in [iu, iv] {
            out.extend(d.arc_between(self.x, self.minus[j]));
            out.extend(d.arc_between(self.plus[j], self.y));
        }
        out.extend(d.arc_between(self.y, self.x));
        out
    }
}

/// `|V(D)|` of [`gen_pc_psc`] for `n` vertices and `m` edges.
pub fn pc_vertex_count(n: usize, m: usize, k: usize) -> usize {
    2 * n + (k + 2) * m + 2 * k + 4
}

fn require_vertices(g: &UndirectedGraph) -> Result<()> {
    if g.vertex_count() == 0 {
        return Err(Error::InvalidInput("independent set input needs at least one vertex".into()));
    }
    Ok(())
}

/// Arc-contraction instance: a size-`k` independent set of `G` corresponds
/// to contracting the arcs `(v-, v+)` of its vertices.
pub fn gen_pc_psc(g: &UndirectedGraph, k: usize) -> Result<(Digraph, PcGadgetMap)> {
    require_vertices(g)?;
    let vertices: Vec<VertexId> = g.vertices().collect();
    let index = |v: VertexId| vertices.binary_search(&v).expect("vertex of g");
    let edges: Vec<(EdgeId, VertexId, VertexId)> = g.edges().collect();
    let mut d = Digraph::new(0);
    let mut labels = Vec::new();
    let mut fresh = |d: &mut Digraph, label: String| {
        labels.push(Some(label));
        d.add_vertex()
    };
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for &v in &vertices {
        minus.push(fresh(&mut d, format!("v- {}", v + 1)));
        plus.push(fresh(&mut d, format!("v+ {}", v + 1)));
    }
    let mut hub = Vec::new();
    let mut pendants = Vec::new();
    for &(e, u, v) in &edges {
        hub.push(fresh(&mut d, format!("hub {}-{} (edge {})", u + 1, v + 1, e + 1)));
        pendants.push((1..=k + 1).map(|i| fresh(&mut d, format!("pendant {i} of edge {}", e + 1))).collect::<Vec<_>>());
    }
    let x = fresh(&mut d, "x".into());
    let y = fresh(&mut d, "y".into());
    let x_pendants: Vec<VertexId> = (1..=k + 1).map(|i| fresh(&mut d, format!("x{i}"))).collect();
    let y_pendants: Vec<VertexId> = (1..=k + 1).map(|i| fresh(&mut d, format!("y{i}"))).collect();

    let arc = |d: &mut Digraph, a: VertexId, b: VertexId| d.add_arc(a, b).expect("gadget arcs are distinct");
    let vertex_arc: Vec<ArcId> = (0..vertices.len()).map(|i| arc(&mut d, minus[i], plus[i])).collect();
    for i in 0..=k {
        arc(&mut d, x, x_pendants[i]);
        arc(&mut d, x_pendants[i], x);
        arc(&mut d, y, y_pendants[i]);
        arc(&mut d, y_pendants[i], y);
    }
    arc(&mut d, y, x);
    let mut selection_arcs = Vec::new();
    for (j, &(_, u, v)) in edges.iter().enumerate() {
        for &p in &pendants[j] {
            arc(&mut d, hub[j], p);
            arc(&mut d, p, hub[j]);
        }
        let (iu, iv) = (index(u), index(v));
        selection_arcs.push([
            arc(&mut d, minus[iv], hub[j]),
            arc(&mut d, hub[j], plus[iv]),
            arc(&mut d, minus[iu], hub[j]),
            arc(&mut d, hub[j], plus[iu]),
        ]);
    }
    for i in 0..vertices.len() {
        arc(&mut d, x, minus[i]);
        arc(&mut d, plus[i], y);
    }
    if !is_strongly_connected(&d) {
        return Err(Error::inconsistency("contraction gadget is not strongly connected"));
    }
    let map = PcGadgetMap {
        vertices,
        edges,
        minus,
        plus,
        vertex_arc,
        hub,
        pendants,
        x,
        y,
        x_pendants,
        y_pendants,
        selection_arcs,
        labels,
    };
    Ok((d, map))
}

/// Connected graph with undeletable (marked) vertices: every edge of `G`
/// subdivided by a marked vertex, plus a marked apex adjacent to every
/// original vertex. Original vertices keep their ids when `G` is compact.
#[derive(Clone, Debug)]
pub struct MarkedGraph {
    pub graph: UndirectedGraph,
    pub marked: BTreeSet<VertexId>,
    /// Vertex of `graph` for each input vertex, in ascending input order.
    pub originals: Vec<VertexId>,
    /// Subdivision vertex per input edge, ascending edge ids.
    pub subdividers: Vec<VertexId>,
    pub apex: VertexId,
}

pub fn marked_connectivity_instance(g: &UndirectedGraph) -> Result<MarkedGraph> {
    require_vertices(g)?;
    let vertices: Vec<VertexId> = g.vertices().collect();
    let index = |v: VertexId| vertices.binary_search(&v).expect("vertex of g");
    let mut h = UndirectedGraph::new(vertices.len());
    let mut marked = BTreeSet::new();
    let mut subdividers = Vec::new();
    for (_, u, v) in g.edges() {
        let s = h.add_vertex();
        h.add_edge(index(u), s)?;
        h.add_edge(s, index(v))?;
        marked.insert(s);
        subdividers.push(s);
    }
    let apex = h.add_vertex();
    marked.insert(apex);
    for i in 0..vertices.len() {
        h.add_edge(apex, i)?;
    }
    Ok(MarkedGraph { graph: h, marked, originals: (0..vertices.len()).collect(), subdividers, apex })
}

/// Vertex-deletion instance: bidirected [`marked_connectivity_instance`]
/// with each marked vertex placed on a fresh directed cycle of length `k + 2`.
#[derive(Clone, Debug)]
pub struct VdGadgetMap {
    pub marked: MarkedGraph,
    /// The `k + 1` new cycle vertices per marked vertex, ascending marked id.
    pub cycles: Vec<(VertexId, Vec<VertexId>)>,
    pub labels: Vec<Option<String>>,
}

/// `|V(D)|` of [`gen_vd_psc`] for `n` vertices and `m` edges.
pub fn vd_vertex_count(n: usize, m: usize, k: usize) -> usize {
    n + (m + 1) * (k + 2)
}

pub fn gen_vd_psc(g: &UndirectedGraph, k: usize) -> Result<(Digraph, VdGadgetMap)> {
    let marked = marked_connectivity_instance(g)?;
    let vertices: Vec<VertexId> = g.vertices().collect();
    let h = &marked.graph;
    let mut d = Digraph::new(h.vertex_bound());
    for (_, u, v) in h.edges() {
        d.add_arc(u, v)?;
        d.add_arc(v, u)?;
    }
    let mut labels: Vec<Option<String>> = vec![None; h.vertex_bound()];
    for (i, &v) in vertices.iter().enumerate() {
        labels[i] = Some(format!("vertex {}", v + 1));
    }
    for (j, (e, u, v)) in g.edges().enumerate() {
        labels[marked.subdividers[j]] = Some(format!("subdivides {}-{} (edge {})", u + 1, v + 1, e + 1));
    }
    labels[marked.apex] = Some("apex".into());
    let mut cycles = Vec::new();
    for &w in &marked.marked {
        let extra: Vec<VertexId> = (0..=k).map(|_| d.add_vertex()).collect();
        let origin = labels[w].clone().unwrap_or_default();
        labels.extend((1..=extra.len()).map(|i| Some(format!("cycle {i} of {origin}"))));
        let mut ring = vec![w];
        ring.extend(&extra);
        for i in 0..ring.len() {
            d.add_arc(ring[i], ring[(i + 1) % ring.len()])?;
        }
        cycles.push((w, extra));
    }
    if !is_strongly_connected(&d) {
        return Err(Error::inconsistency("vertex-deletion gadget is not strongly connected"));
    }
    Ok((d, VdGadgetMap { marked, cycles, labels }))
}

impl VdGadgetMap {
    /// Digraph vertices of the given input vertices.
    pub fn vertices_for(&self, g: &UndirectedGraph, set: &[VertexId]) -> Result<Vec<VertexId>> {
        let vertices: Vec<VertexId> = g.vertices().collect();
        set.iter()
            .map(|v| vertices.binary_search(v).map(|i| self.marked.originals[i]).map_err(|_| Error::MissingVertex(*v)))
            .collect()
    }
}
