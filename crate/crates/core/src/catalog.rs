//! Small-graph corpora: isomorph-free enumeration by vertex augmentation,
//! canonical forms for graphs and digraphs, and seeded random generators.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{is_biconnected, is_connected, Digraph, UndirectedGraph, VertexId};

/// Largest vertex count accepted by the canonical forms.
pub const MAX_CANONICAL: usize = 11;

/// Adjacency rows as bitmasks.
fn rows_undirected(g: &UndirectedGraph) -> (Vec<u16>, Vec<u16>) {
    let (c, _, _) = g.compacted();
    let n = c.vertex_count();
    let mut out = vec![0u16; n];
    for (_, u, v) in c.edges() {
        out[u] |= 1 << v;
        out[v] |= 1 << u;
    }
    (out.clone(), out)
}

fn rows_directed(d: &Digraph) -> (Vec<u16>, Vec<u16>) {
    let (c, _) = d.compacted();
    let n = c.vertex_count();
    let mut out = vec![0u16; n];
    let mut inc = vec![0u16; n];
    for (_, u, v) in c.arcs() {
        out[u] |= 1 << v;
        inc[v] |= 1 << u;
    }
    (out, inc)
}

/// Stable ordered partition from iterated neighbor-color refinement.
fn refine(out: &[u16], inc: &[u16]) -> Vec<usize> {
    let n = out.len();
    let mut color: Vec<usize> = vec![0; n];
    loop {
        let sig: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut o: Vec<usize> = (0..n).filter(|&w| out[v] >> w & 1 == 1).map(|w| color[w]).collect();
                let mut i: Vec<usize> = (0..n).filter(|&w| inc[v] >> w & 1 == 1).map(|w| color[w]).collect();
                o.sort_unstable();
                i.sort_unstable();
                (color[v], o, i)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>, Vec<usize>)> = sig.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sig.iter().map(|s| distinct.binary_search(&s).unwrap()).collect();
        let classes = distinct.len();
        let before = color.iter().collect::<BTreeSet<_>>().len();
        color = next;
        if classes == before {
            return color;
        }
    }
}

fn code(out: &[u16], order: &[usize], directed: bool) -> u128 {
    let n = order.len();
    let mut c: u128 = 0;
    for i in 0..n {
        let start = if directed { 0 } else { i + 1 };
        for j in start..n {
            c = c << 1 | (out[order[i]] >> order[j] & 1) as u128;
        }
    }
    c
}

/// Minimum code over all orderings consistent with the refined partition.
fn canonical_code(out: &[u16], inc: &[u16], directed: bool) -> (usize, u128) {
    let n = out.len();
    assert!(n <= MAX_CANONICAL, "canonical form limited to {MAX_CANONICAL} vertices");
    let color = refine(out, inc);
    let classes = color.iter().max().map_or(0, |&c| c + 1);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); classes];
    for v in 0..n {
        cells[color[v]].push(v);
    }
    let mut best = u128::MAX;
    let mut order = Vec::with_capacity(n);
    fn rec(
        cells: &mut [Vec<usize>],
        ci: usize,
        pos: usize,
        order: &mut Vec<usize>,
        out: &[u16],
        directed: bool,
        best: &mut u128,
    ) {
        if ci == cells.len() {
            *best = (*best).min(code(out, order, directed));
            return;
        }
        if pos == cells[ci].len() {
            rec(cells, ci + 1, 0, order, out, directed, best);
            return;
        }
        for i in pos..cells[ci].len() {
            cells[ci].swap(pos, i);
            order.push(cells[ci][pos]);
            rec(cells, ci, pos + 1, order, out, directed, best);
            order.pop();
            cells[ci].swap(pos, i);
        }
    }
    rec(&mut cells, 0, 0, &mut order, out, directed, &mut best);
    (n, best)
}

/// Isomorphism invariant of an undirected graph with at most
/// [`MAX_CANONICAL`] vertices: equal iff isomorphic.
pub fn canonical_form(g: &UndirectedGraph) -> (usize, u128) {
    let (out, inc) = rows_undirected(g);
    canonical_code(&out, &inc, false)
}

/// Digraph counterpart of [`canonical_form`].
pub fn canonical_digraph_form(d: &Digraph) -> (usize, u128) {
    let (out, inc) = rows_directed(d);
    canonical_code(&out, &inc, true)
}

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<UndirectedGraph> {
    let mut level: Vec<UndirectedGraph> = vec![UndirectedGraph::new(0)];
    for size in 1..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u32..1 << (size - 1) {
                let mut h = g.clone();
                let v = h.add_vertex();
                for u in 0..size - 1 {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, v).expect("fresh vertex");
                    }
                }
                if seen.insert(canonical_form(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

pub fn connected_graphs(n: usize) -> Vec<UndirectedGraph> {
    all_graphs(n).into_iter().filter(is_connected).collect()
}

/// Biconnected representatives on exactly `n` vertices.
pub fn biconnected_graphs(n: usize) -> Vec<UndirectedGraph> {
    all_graphs(n).into_iter().filter(is_biconnected).collect()
}

/// Biconnected representatives for every vertex count in `2..=max_n`.
pub fn biconnected_catalog(max_n: usize) -> Vec<UndirectedGraph> {
    (2..=max_n).flat_map(biconnected_graphs).collect()
}

/// Random biconnected graph on `n ≥ 3` vertices built from a cycle by ears,
/// then `extra` additional random edges where possible, randomly relabeled.
pub fn random_biconnected<R: Rng>(rng: &mut R, n: usize, extra: usize) -> UndirectedGraph {
    assert!(n >= 3, "random biconnected graphs need at least three vertices");
    let first = rng.gen_range(3..=n);
    let mut edges: Vec<(VertexId, VertexId)> = (0..first).map(|i| (i, (i + 1) % first)).collect();
    let mut count = first;
    while count < n {
        let len = rng.gen_range(1..=n - count);
        let a = rng.gen_range(0..count);
        let mut b = rng.gen_range(0..count - 1);
        if b >= a {
            b += 1;
        }
        let mut prev = a;
        for _ in 0..len {
            edges.push((prev, count));
            prev = count;
            count += 1;
        }
        edges.push((prev, b));
    }
    let mut g = UndirectedGraph::from_edges(n, &edges).expect("ears add no parallel edges");
    let missing: Vec<(VertexId, VertexId)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| g.edge_between(u, v).is_none()).collect();
    for &(u, v) in missing.choose_multiple(rng, extra.min(missing.len())) {
        g.add_edge(u, v).expect("missing edge");
    }
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().map(|(_, u, v)| (perm[u], perm[v])).collect();
    edges.shuffle(rng);
    UndirectedGraph::from_edges(n, &edges).expect("relabeling keeps the graph simple")
}

/// Each ordered pair becomes an arc with probability `p`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Digraph {
    let mut d = Digraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                d.add_arc(u, v).expect("fresh arc");
            }
        }
    }
    d
}
