use crate::error::{Error, Result};

use super::{ArcId, VertexId};

/// Simple digraph with stable vertex and arc ids.
///
/// At most one arc per ordered pair; antiparallel pairs are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Digraph {
    alive: Vec<bool>,
    arcs: Vec<Option<(VertexId, VertexId)>>,
    out: Vec<Vec<ArcId>>,
    inc: Vec<Vec<ArcId>>,
    vertex_count: usize,
    arc_count: usize,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            alive: vec![true; n],
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            vertex_count: n,
            arc_count: 0,
        }
    }

    pub fn from_arcs(n: usize, arcs: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut d = Digraph::new(n);
        for &(u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    /// Both orientations of every edge, arcs `2i` and `2i+1` for edge `i`.
    pub fn bidirected(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut d = Digraph::new(n);
        for &(u, v) in edges {
            d.add_arc(u, v)?;
            d.add_arc(v, u)?;
        }
        Ok(d)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.alive.push(true);
        self.out.push(Vec::new());
        self.inc.push(Vec::new());
        self.vertex_count += 1;
        self.alive.len() - 1
    }

    pub fn add_arc(&mut self, u: VertexId, v: VertexId) -> Result<ArcId> {
        if !self.has_vertex(u) {
            return Err(Error::MissingVertex(u));
        }
        if !self.has_vertex(v) {
            return Err(Error::MissingVertex(v));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
        }
        if self.arc_between(u, v).is_some() {
            return Err(Error::InvalidInput(format!("parallel arc {u}->{v}")));
        }
        Ok(self.push_arc(u, v))
    }

    fn push_arc(&mut self, u: VertexId, v: VertexId) -> ArcId {
        let id = self.arcs.len();
        self.arcs.push(Some((u, v)));
        self.out[u].push(id);
        self.inc[v].push(id);
        self.arc_count += 1;
        id
    }

    /// Inserts an arc under a caller-chosen id, growing the id space as needed.
    pub(crate) fn insert_arc_with_id(&mut self, id: ArcId, u: VertexId, v: VertexId) {
        if self.arcs.len() <= id {
            self.arcs.resize(id + 1, None);
        }
        debug_assert!(self.arcs[id].is_none());
        self.arcs[id] = Some((u, v));
        self.out[u].push(id);
        self.inc[v].push(id);
        self.arc_count += 1;
    }

    pub fn remove_arc(&mut self, a: ArcId) -> Result<()> {
        let (u, v) = self.arc(a).ok_or(Error::MissingArc(a))?;
        self.arcs[a] = None;
        self.out[u].retain(|&b| b != a);
        self.inc[v].retain(|&b| b != a);
        self.arc_count -= 1;
        Ok(())
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        if !self.has_vertex(v) {
            return Err(Error::MissingVertex(v));
        }
        let mut incident = std::mem::take(&mut self.out[v]);
        incident.extend(std::mem::take(&mut self.inc[v]));
        for a in incident {
            if let Some((s, t)) = self.arcs[a].take() {
                self.out[s].retain(|&b| b != a);
                self.inc[t].retain(|&b| b != a);
                self.arc_count -= 1;
            }
        }
        self.alive[v] = false;
        self.vertex_count -= 1;
        Ok(())
    }

    pub fn without_vertices<I: IntoIterator<Item = VertexId>>(&self, vs: I) -> Self {
        let mut d = self.clone();
        for v in vs {
            let _ = d.remove_vertex(v);
        }
        d
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    pub fn has_arc(&self, a: ArcId) -> bool {
        matches!(self.arcs.get(a), Some(Some(_)))
    }

    /// `(tail, head)` of an alive arc.
    pub fn arc(&self, a: ArcId) -> Option<(VertexId, VertexId)> {
        self.arcs.get(a).copied().flatten()
    }

    pub fn arc_between(&self, u: VertexId, v: VertexId) -> Option<ArcId> {
        if !self.has_vertex(u) || !self.has_vertex(v) {
            return None;
        }
        self.out[u].iter().copied().find(|&a| self.arcs[a].map(|(_, h)| h) == Some(v))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn vertex_bound(&self) -> usize {
        self.alive.len()
    }

    pub fn arc_bound(&self) -> usize {
        self.arcs.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive.iter().enumerate().filter(|(_, &a)| a).map(|(v, _)| v)
    }

    /// Alive arcs as `(id, tail, head)` in id order.
    pub fn arcs(&self) -> impl Iterator<Item = (ArcId, VertexId, VertexId)> + '_ {
        self.arcs
            .iter()
            .enumerate()
            .filter_map(|(a, ends)| ends.map(|(u, v)| (a, u, v)))
    }

    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        self.out.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn in_arcs(&self, v: VertexId) -> &[ArcId] {
        self.inc.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn out_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out_arcs(v).iter().map(move |&a| self.arcs[a].expect("alive arc").1)
    }

    pub fn in_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.in_arcs(v).iter().map(move |&a| self.arcs[a].expect("alive arc").0)
    }

    /// Relabels alive vertices to `0..n` and arcs to `0..m`, preserving order.
    pub fn compacted(&self) -> (Self, Vec<Option<VertexId>>) {
        let mut vmap = vec![None; self.vertex_bound()];
        for (i, v) in self.vertices().enumerate() {
            vmap[v] = Some(i);
        }
        let mut d = Digraph::new(self.vertex_count);
        for (_, u, v) in self.arcs() {
            d.push_arc(vmap[u].unwrap(), vmap[v].unwrap());
        }
        (d, vmap)
    }
}
