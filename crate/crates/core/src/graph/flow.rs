//! Unit-capacity residual networks shared by the flow and cut routines.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

use super::{FlowDecomposition, Path, UndirectedGraph, VertexId};

static FLOW_CALLS: AtomicU64 = AtomicU64::new(0);

/// Total number of max-flow computations started in this process.
pub fn flow_calls() -> u64 {
    FLOW_CALLS.load(Ordering::Relaxed)
}

pub(crate) const INF: u32 = u32::MAX / 4;

/// Residual network; arc `2i+1` is the reverse of arc `2i`.
#[derive(Clone, Debug)]
pub(crate) struct Network {
    head: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
    pred: Vec<usize>,
    seen: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Network {
    pub fn new(n: usize) -> Self {
        Network {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
            pred: vec![usize::MAX; n],
            seen: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    pub fn arc_count(&self) -> usize {
        self.head.len()
    }

    pub fn capacities(&self) -> &[u32] {
        &self.cap
    }

    /// Drops every arc added after the first `m` and restores `caps`
    /// (a snapshot taken when the network had `m` arcs).
    pub fn reset(&mut self, m: usize, caps: &[u32]) {
        for a in (m..self.head.len()).rev() {
            let u = self.head[a ^ 1];
            let popped = self.adj[u].pop();
            debug_assert_eq!(popped, Some(a));
        }
        self.head.truncate(m);
        self.cap.clear();
        self.cap.extend_from_slice(caps);
    }

    pub fn add_arc(&mut self, u: usize, v: usize, cap: u32) -> usize {
        let id = self.head.len();
        self.head.push(v);
        self.cap.push(cap);
        self.adj[u].push(id);
        self.head.push(u);
        self.cap.push(0);
        self.adj[v].push(id + 1);
        id
    }

    /// Units of flow currently on forward arc `id`.
    pub fn flow(&self, id: usize) -> u32 {
        self.cap[id ^ 1]
    }

    /// Breadth-first search in the residual network from `s`, stopping at
    /// `stop`. Leaves the visited set in `self.seen`.
    fn search(&mut self, s: usize, stop: Option<usize>) -> bool {
        self.seen.iter_mut().for_each(|x| *x = false);
        self.queue.clear();
        self.seen[s] = true;
        self.queue.push_back(s);
        while let Some(u) = self.queue.pop_front() {
            for &a in &self.adj[u] {
                let v = self.head[a];
                if self.cap[a] > 0 && !self.seen[v] {
                    self.seen[v] = true;
                    self.pred[v] = a;
                    if Some(v) == stop {
                        return true;
                    }
                    self.queue.push_back(v);
                }
            }
        }
        false
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        if !self.search(s, Some(t)) {
            return false;
        }
        let mut w = t;
        while w != s {
            let a = self.pred[w];
            self.cap[a] -= 1;
            self.cap[a ^ 1] += 1;
            w = self.head[a ^ 1];
        }
        true
    }

    /// Pushes unit augmentations until `limit` is reached or none exists.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        FLOW_CALLS.fetch_add(1, Ordering::Relaxed);
        let mut value = 0;
        while value < limit && self.augment(s, t) {
            value += 1;
        }
        value
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn residual_reach(&mut self, s: usize) -> &[bool] {
        self.search(s, None);
        &self.seen
    }

    pub fn arcs_from(&self, u: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj[u].iter().filter(|&&a| a % 2 == 0).map(move |&a| (a, self.head[a]))
    }
}

/// Maximum set of internally vertex-disjoint `x`-`y` paths.
pub fn max_flow(g: &UndirectedGraph, x: VertexId, y: VertexId) -> Result<FlowDecomposition> {
    max_flow_bounded(g, x, y, usize::MAX)
}

/// As [`max_flow`], but stops once `cap` paths are found.
pub fn max_flow_bounded(
    g: &UndirectedGraph,
    x: VertexId,
    y: VertexId,
    cap: usize,
) -> Result<FlowDecomposition> {
    if !g.has_vertex(x) {
        return Err(Error::MissingVertex(x));
    }
    if !g.has_vertex(y) {
        return Err(Error::MissingVertex(y));
    }
    if x == y {
        return Err(Error::InvalidInput(format!("flow endpoints coincide at vertex {x}")));
    }
    let n = g.vertex_bound();
    let (vin, vout) = (|v: usize| 2 * v, |v: usize| 2 * v + 1);
    let mut net = Network::new(2 * n);
    for v in g.vertices() {
        let c = if v == x || v == y { INF } else { 1 };
        net.add_arc(vin(v), vout(v), c);
    }
    for (_, u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            // Nothing enters x or leaves y, so no flow can circulate through them.
            if b != x && a != y {
                net.add_arc(vout(a), vin(b), 1);
            }
        }
    }
    let value = net.max_flow(vin(x), vin(y), cap);
    let mut used = vec![false; net.head.len()];
    let mut paths = Vec::with_capacity(value);
    for _ in 0..value {
        let mut vertices = vec![x];
        let mut cur = x;
        while cur != y {
            let (a, next) = net
                .arcs_from(vout(cur))
                .find(|&(a, _)| !used[a] && net.flow(a) > 0)
                .expect("flow conservation");
            used[a] = true;
            cur = next / 2;
            vertices.push(cur);
        }
        paths.push(Path::from_vertices_unchecked(vertices));
    }
    Ok(FlowDecomposition { source: x, sink: y, paths })
}

/// `κ_G(x,y)` capped at `cap`.
pub fn local_connectivity(g: &UndirectedGraph, x: VertexId, y: VertexId, cap: usize) -> usize {
    max_flow_bounded(g, x, y, cap).map(|f| f.value()).unwrap_or(0)
}
