use crate::error::{Error, Result};

use super::{EdgeId, UndirectedGraph, VertexId};

/// Simple path given by its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    vertices: Vec<VertexId>,
}

impl Path {
    /// Checks simplicity and that consecutive vertices are adjacent in `g`.
    pub fn new(g: &UndirectedGraph, vertices: Vec<VertexId>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidInput("empty path".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for &v in &vertices {
            if !g.has_vertex(v) {
                return Err(Error::MissingVertex(v));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidInput(format!("path repeats vertex {v}")));
            }
        }
        for w in vertices.windows(2) {
            if g.edge_between(w[0], w[1]).is_none() {
                return Err(Error::InvalidInput(format!("no edge {}-{} for path", w[0], w[1])));
            }
        }
        Ok(Path { vertices })
    }

    pub(crate) fn from_vertices_unchecked(vertices: Vec<VertexId>) -> Self {
        Path { vertices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn internal(&self) -> &[VertexId] {
        if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&u| u == v)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Edge ids along the path in traversal order.
    pub fn edges_in(&self, g: &UndirectedGraph) -> Vec<EdgeId> {
        self.vertices
            .windows(2)
            .map(|w| g.edge_between(w[0], w[1]).expect("path edge present in host graph"))
            .collect()
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Path { vertices }
    }
}

/// A set of internally vertex-disjoint `source`-`sink` paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowDecomposition {
    pub source: VertexId,
    pub sink: VertexId,
    pub paths: Vec<Path>,
}

impl FlowDecomposition {
    pub fn value(&self) -> usize {
        self.paths.len()
    }

    /// Whether `e` lies on one of the paths.
    pub fn participates(&self, g: &UndirectedGraph, e: EdgeId) -> bool {
        self.paths.iter().any(|p| p.edges_in(g).contains(&e))
    }
}
