use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::{EdgeId, VertexId};

/// Simple undirected graph with stable vertex and edge ids.
///
/// Deleted vertices and edges leave tombstones; ids are never reused, so
/// edge sets computed on one graph stay meaningful on its subgraphs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UndirectedGraph {
    alive: Vec<bool>,
    edges: Vec<Option<(VertexId, VertexId)>>,
    incident: Vec<Vec<EdgeId>>,
    vertex_count: usize,
    edge_count: usize,
}

impl UndirectedGraph {
    /// Graph on vertices `0..n` without edges.
    pub fn new(n: usize) -> Self {
        UndirectedGraph {
            alive: vec![true; n],
            edges: Vec::new(),
            incident: vec![Vec::new(); n],
            vertex_count: n,
            edge_count: 0,
        }
    }

    /// Graph on `0..n`; edge ids follow the order of `edges`.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = UndirectedGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.alive.push(true);
        self.incident.push(Vec::new());
        self.vertex_count += 1;
        self.alive.len() - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        if !self.has_vertex(u) {
            return Err(Error::MissingVertex(u));
        }
        if !self.has_vertex(v) {
            return Err(Error::MissingVertex(v));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
        }
        if self.edge_between(u, v).is_some() {
            return Err(Error::InvalidInput(format!("parallel edge {u}-{v}")));
        }
        let id = self.edges.len();
        self.edges.push(Some((u.min(v), u.max(v))));
        self.incident[u].push(id);
        self.incident[v].push(id);
        self.edge_count += 1;
        Ok(id)
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<()> {
        let (u, v) = self.endpoints(e).ok_or(Error::MissingEdge(e))?;
        self.edges[e] = None;
        self.incident[u].retain(|&f| f != e);
        self.incident[v].retain(|&f| f != e);
        self.edge_count -= 1;
        Ok(())
    }

    /// Removes `v` together with its incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        if !self.has_vertex(v) {
            return Err(Error::MissingVertex(v));
        }
        for e in std::mem::take(&mut self.incident[v]) {
            let (a, b) = self.edges[e].take().expect("incident edge is alive");
            let other = if a == v { b } else { a };
            self.incident[other].retain(|&f| f != e);
            self.edge_count -= 1;
        }
        self.alive[v] = false;
        self.vertex_count -= 1;
        Ok(())
    }

    /// Copy of the graph without the given edges. Ids not present are ignored.
    pub fn without_edges<I: IntoIterator<Item = EdgeId>>(&self, edges: I) -> Self {
        let mut g = self.clone();
        for e in edges {
            let _ = g.remove_edge(e);
        }
        g
    }

    pub fn without_edge(&self, e: EdgeId) -> Self {
        self.without_edges([e])
    }

    pub fn without_vertex(&self, v: VertexId) -> Self {
        let mut g = self.clone();
        let _ = g.remove_vertex(v);
        g
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        matches!(self.edges.get(e), Some(Some(_)))
    }

    /// Endpoints as `(min, max)`.
    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(e).copied().flatten()
    }

    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.endpoints(e)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if !self.has_vertex(u) || !self.has_vertex(v) {
            return None;
        }
        let (s, t) = if self.incident[u].len() <= self.incident[v].len() { (u, v) } else { (v, u) };
        self.incident[s]
            .iter()
            .copied()
            .find(|&e| self.other_endpoint(e, s) == Some(t))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// One past the largest vertex id ever issued.
    pub fn vertex_bound(&self) -> usize {
        self.alive.len()
    }

    /// One past the largest edge id ever issued.
    pub fn edge_bound(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive.iter().enumerate().filter(|(_, &a)| a).map(|(v, _)| v)
    }

    /// Alive edges as `(id, u, v)` with `u < v`, in id order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(e, ends)| ends.map(|(u, v)| (e, u, v)))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges().map(|(e, _, _)| e)
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        self.incident.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v)
            .iter()
            .map(move |&e| self.other_endpoint(e, v).expect("incident edge"))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    /// Vertices outside `set` adjacent to some vertex of `set`.
    pub fn neighborhood(&self, set: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        set.iter()
            .flat_map(|&v| self.neighbors(v))
            .filter(|w| !set.contains(w))
            .collect()
    }

    /// Edges with both endpoints in `set`.
    pub fn edges_within(&self, set: &BTreeSet<VertexId>) -> BTreeSet<EdgeId> {
        self.edges()
            .filter(|&(_, u, v)| set.contains(&u) && set.contains(&v))
            .map(|(e, _, _)| e)
            .collect()
    }

    /// Edges with one endpoint in `a` and the other in `b` (disjoint sets).
    pub fn edges_between(&self, a: &BTreeSet<VertexId>, b: &BTreeSet<VertexId>) -> BTreeSet<EdgeId> {
        self.edges()
            .filter(|&(_, u, v)| (a.contains(&u) && b.contains(&v)) || (a.contains(&v) && b.contains(&u)))
            .map(|(e, _, _)| e)
            .collect()
    }

    /// Relabels alive vertices to `0..n` preserving their relative order.
    /// Returns the new graph and the old-to-new vertex and edge maps.
    pub fn compacted(&self) -> (Self, Vec<Option<VertexId>>, Vec<Option<EdgeId>>) {
        let mut vmap = vec![None; self.vertex_bound()];
        for (i, v) in self.vertices().enumerate() {
            vmap[v] = Some(i);
        }
        let mut g = UndirectedGraph::new(self.vertex_count);
        let mut emap = vec![None; self.edge_bound()];
        for (e, u, v) in self.edges() {
            let id = g
                .add_edge(vmap[u].unwrap(), vmap[v].unwrap())
                .expect("compaction preserves simplicity");
            emap[e] = Some(id);
        }
        (g, vmap, emap)
    }
}
