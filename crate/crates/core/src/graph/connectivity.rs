use std::collections::{BTreeSet, VecDeque};

use super::{Digraph, EdgeId, UndirectedGraph, VertexId};

/// Vertices reachable from `start` using only allowed vertices and edges.
///
/// `start` itself must be allowed; otherwise nothing is reached.
pub fn reachable<FV, FE>(g: &UndirectedGraph, start: VertexId, vertex_ok: FV, edge_ok: FE) -> Vec<bool>
where
    FV: Fn(VertexId) -> bool,
    FE: Fn(EdgeId) -> bool,
{
    let mut seen = vec![false; g.vertex_bound()];
    if !g.has_vertex(start) || !vertex_ok(start) {
        return seen;
    }
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &e in g.incident(u) {
            if !edge_ok(e) {
                continue;
            }
            let v = g.other_endpoint(e, u).unwrap();
            if !seen[v] && vertex_ok(v) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

pub fn is_connected(g: &UndirectedGraph) -> bool {
    match g.vertices().next() {
        None => true,
        Some(s) => {
            let seen = reachable(g, s, |_| true, |_| true);
            g.vertices().all(|v| seen[v])
        }
    }
}

/// Connected components of `g` restricted to vertices where `vertex_ok` holds.
pub fn components<FV: Fn(VertexId) -> bool>(g: &UndirectedGraph, vertex_ok: FV) -> Vec<BTreeSet<VertexId>> {
    let mut done = vec![false; g.vertex_bound()];
    let mut out = Vec::new();
    for v in g.vertices() {
        if done[v] || !vertex_ok(v) {
            continue;
        }
        let seen = reachable(g, v, &vertex_ok, |_| true);
        let comp: BTreeSet<_> = g.vertices().filter(|&u| seen[u]).collect();
        for &u in &comp {
            done[u] = true;
        }
        out.push(comp);
    }
    out
}

/// One low-link pass over the graph minus the edges rejected by `edge_ok`.
/// Returns `(connected, articulation points)`.
fn lowlink<FE: Fn(EdgeId) -> bool>(g: &UndirectedGraph, edge_ok: FE) -> (bool, Vec<VertexId>) {
    let n = g.vertex_bound();
    let Some(root) = g.vertices().next() else {
        return (true, Vec::new());
    };
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    // Stack frames: (vertex, edge used to enter, next incident index).
    let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
    disc[root] = time;
    low[root] = time;
    time += 1;
    let mut root_children = 0;
    while let Some(frame) = stack.last_mut() {
        let (u, parent_edge, idx) = *frame;
        if idx < g.incident(u).len() {
            frame.2 += 1;
            let e = g.incident(u)[idx];
            if Some(e) == parent_edge || !edge_ok(e) {
                continue;
            }
            let v = g.other_endpoint(e, u).unwrap();
            if disc[v] == usize::MAX {
                disc[v] = time;
                low[v] = time;
                time += 1;
                if u == root {
                    root_children += 1;
                }
                stack.push((v, Some(e), 0));
            } else {
                low[u] = low[u].min(disc[v]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[u]);
                if p != root && low[u] >= disc[p] {
                    is_cut[p] = true;
                }
            }
        }
    }
    if root_children > 1 {
        is_cut[root] = true;
    }
    let connected = g.vertices().all(|v| disc[v] != usize::MAX);
    (connected, (0..n).filter(|&v| is_cut[v]).collect())
}

/// Cut-vertices within the component of the smallest vertex id.
pub fn articulation_points(g: &UndirectedGraph) -> Vec<VertexId> {
    lowlink(g, |_| true).1
}

/// Connected, at least two vertices, no cut-vertex. `K_2` qualifies.
pub fn is_biconnected(g: &UndirectedGraph) -> bool {
    is_biconnected_without(g, |_| false)
}

/// Biconnectivity of `g` minus every edge for which `removed` holds,
/// without materializing the subgraph.
pub fn is_biconnected_without<FE: Fn(EdgeId) -> bool>(g: &UndirectedGraph, removed: FE) -> bool {
    if g.vertex_count() < 2 {
        return false;
    }
    let (connected, cuts) = lowlink(g, |e| !removed(e));
    connected && cuts.is_empty()
}

/// Every ordered pair joined by a directed path. The empty digraph is not
/// strongly connected; a single vertex is.
pub fn is_strongly_connected(d: &Digraph) -> bool {
    let Some(s) = d.vertices().next() else {
        return false;
    };
    let reach = |forward: bool| {
        let mut seen = vec![false; d.vertex_bound()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            let next: Vec<VertexId> =
                if forward { d.out_neighbors(u).collect() } else { d.in_neighbors(u).collect() };
            for v in next {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count
    };
    reach(true) == d.vertex_count() && reach(false) == d.vertex_count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> UndirectedGraph {
        UndirectedGraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn biconnectivity_basics() {
        assert!(is_biconnected(&cycle(5)));
        let p3 = UndirectedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!is_biconnected(&p3));
        assert_eq!(articulation_points(&p3), vec![1]);
        assert!(is_biconnected(&UndirectedGraph::from_edges(2, &[(0, 1)]).unwrap()));
        assert!(!is_biconnected(&UndirectedGraph::new(1)));
        assert!(!is_biconnected(&UndirectedGraph::new(2)));
    }

    #[test]
    fn bowtie_has_one_cut_vertex() {
        let g = UndirectedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(articulation_points(&g), vec![2]);
        assert!(!is_biconnected(&g));
    }

    #[test]
    fn removal_predicate() {
        let g = cycle(4);
        assert!(!is_biconnected_without(&g, |e| e == 0));
        let mut k4 = cycle(4);
        k4.add_edge(0, 2).unwrap();
        k4.add_edge(1, 3).unwrap();
        assert!(is_biconnected_without(&k4, |e| e == 0));
    }

    #[test]
    fn strong_connectivity() {
        let c4 = Digraph::from_arcs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(is_strongly_connected(&c4));
        let dag = Digraph::from_arcs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!is_strongly_connected(&dag));
        assert!(is_strongly_connected(&Digraph::new(1)));
        assert!(!is_strongly_connected(&Digraph::new(0)));
    }

    #[test]
    fn components_respect_filter() {
        let g = UndirectedGraph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let comps = components(&g, |v| v != 1);
        assert_eq!(comps.len(), 3);
    }
}
