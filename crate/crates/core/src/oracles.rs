//! Brute-force ground truth. Every oracle checks its input against an
//! [`OracleBudget`] before enumerating and refuses rather than running long.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{
    components, contract_sequence, is_biconnected_without, is_strongly_connected, ArcId, Digraph, EdgeId,
    UndirectedGraph, VertexId,
};
use crate::wbd::{Solution, WbdInstance, WEIGHT_EPS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    /// Applies to edges and arcs.
    pub max_edges: usize,
    pub max_k: usize,
    pub max_candidates: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 10, max_edges: 20, max_k: 3, max_candidates: 10_000_000 }
    }
}

impl OracleBudget {
    pub fn unlimited() -> Self {
        OracleBudget { max_vertices: usize::MAX, max_edges: usize::MAX, max_k: usize::MAX, max_candidates: u64::MAX }
    }

    fn check(&self, vertices: usize, edges: usize, k: usize, candidates: u64) -> Result<()> {
        let refuse = |what: String| Err(Error::BudgetExceeded(what));
        if vertices > self.max_vertices {
            return refuse(format!("{vertices} vertices (limit {})", self.max_vertices));
        }
        if edges > self.max_edges {
            return refuse(format!("{edges} edges (limit {})", self.max_edges));
        }
        if k > self.max_k {
            return refuse(format!("k = {k} (limit {})", self.max_k));
        }
        if candidates > self.max_candidates {
            return refuse(format!("{candidates} candidates (limit {})", self.max_candidates));
        }
        Ok(())
    }
}

/// `C(n, r)`, saturating.
pub fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Calls `f` on every `r`-subset of `items` in lexicographic order of
/// positions until it returns `true`.
pub fn find_combination<T: Copy>(items: &[T], r: usize, mut f: impl FnMut(&[T]) -> bool) -> bool {
    if r > items.len() {
        return false;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    let mut buf: Vec<T> = Vec::with_capacity(r);
    loop {
        buf.clear();
        buf.extend(idx.iter().map(|&i| items[i]));
        if f(&buf) {
            return true;
        }
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + items.len() - r) else {
            return false;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Next permutation in lexicographic order; `false` after the last one.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Heaviest feasible set reaching the target, ties to the lexicographically
/// smaller edge list. Frozen edges are excluded but critical ones are not
/// pre-filtered.
pub fn oracle_wbd(inst: &WbdInstance, budget: &OracleBudget) -> Result<Option<Solution>> {
    let f = inst.potential();
    let limit = inst.k.min(f.len());
    let candidates = (0..=limit).map(|r| binomial(f.len(), r)).fold(0u64, u64::saturating_add);
    budget.check(inst.graph.vertex_count(), inst.graph.edge_count(), inst.k, candidates)?;
    let mut best: Option<Solution> = None;
    for r in 0..=limit {
        find_combination(&f, r, |s| {
            let set: BTreeSet<EdgeId> = s.iter().copied().collect();
            if is_biconnected_without(&inst.graph, |e| set.contains(&e)) {
                let sol = inst.solution(s);
                if sol.weight + WEIGHT_EPS >= inst.target && best.as_ref().is_none_or(|b| sol.better_than(b)) {
                    best = Some(sol);
                }
            }
            false
        });
    }
    Ok(best)
}

/// True iff the instance has no solution or has one avoiding `e`.
pub fn oracle_irrelevance(inst: &WbdInstance, e: EdgeId, budget: &OracleBudget) -> Result<bool> {
    if oracle_wbd(inst, budget)?.is_none() {
        return Ok(true);
    }
    let mut without = inst.clone();
    without.frozen.insert(e);
    Ok(oracle_wbd(&without, budget)?.is_some())
}

fn pairwise_disjoint(d: &Digraph, arcs: &[ArcId]) -> bool {
    let mut seen = BTreeSet::new();
    arcs.iter().all(|&a| {
        let (u, v) = d.arc(a).expect("arc exists");
        seen.insert(u) && seen.insert(v)
    })
}

/// A sequence of exactly `k` arcs whose contraction leaves `d` strongly
/// connected. Sets are tried in ascending order; orderings of a set only
/// when its arcs share endpoints.
pub fn oracle_pcpsc(d: &Digraph, k: usize, budget: &OracleBudget) -> Result<Option<Vec<ArcId>>> {
    let arcs: Vec<ArcId> = d.arcs().map(|(a, _, _)| a).collect();
    let factorial = (1..=k as u64).fold(1u64, |acc, i| acc.saturating_mul(i));
    budget.check(d.vertex_count(), arcs.len(), k, binomial(arcs.len(), k).saturating_mul(factorial))?;
    let mut witness = None;
    find_combination(&arcs, k, |set| {
        let mut order = set.to_vec();
        let disjoint = pairwise_disjoint(d, set);
        loop {
            if let Ok((c, _)) = contract_sequence(d, &order) {
                if is_strongly_connected(&c) {
                    witness = Some(order);
                    return true;
                }
                if disjoint {
                    return false;
                }
            }
            if !next_permutation(&mut order) {
                return false;
            }
        }
    });
    Ok(witness)
}

/// Exactly `k` vertices whose deletion leaves `d` strongly connected.
pub fn oracle_vdpsc(d: &Digraph, k: usize, budget: &OracleBudget) -> Result<Option<Vec<VertexId>>> {
    let vertices: Vec<VertexId> = d.vertices().collect();
    budget.check(vertices.len(), d.arc_count(), k, binomial(vertices.len(), k))?;
    let mut witness = None;
    find_combination(&vertices, k, |s| {
        let ok = is_strongly_connected(&d.without_vertices(s.iter().copied()));
        if ok {
            witness = Some(s.to_vec());
        }
        ok
    });
    Ok(witness)
}

/// An independent set of exactly `k` vertices.
pub fn oracle_is(g: &UndirectedGraph, k: usize, budget: &OracleBudget) -> Result<Option<Vec<VertexId>>> {
    let vertices: Vec<VertexId> = g.vertices().collect();
    budget.check(vertices.len(), g.edge_count(), k, binomial(vertices.len(), k))?;
    let mut witness = None;
    find_combination(&vertices, k, |s| {
        let ok = s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| g.edge_between(u, v).is_none()));
        if ok {
            witness = Some(s.to_vec());
        }
        ok
    });
    Ok(witness)
}

/// Exactly `k` unmarked vertices whose deletion leaves `h` connected.
pub fn oracle_marked_connectivity(
    h: &UndirectedGraph,
    marked: &BTreeSet<VertexId>,
    k: usize,
    budget: &OracleBudget,
) -> Result<Option<Vec<VertexId>>> {
    let free: Vec<VertexId> = h.vertices().filter(|v| !marked.contains(v)).collect();
    budget.check(h.vertex_count(), h.edge_count(), k, binomial(free.len(), k))?;
    let mut witness = None;
    find_combination(&free, k, |s| {
        let ok = components(h, |v| !s.contains(&v)).len() == 1;
        if ok {
            witness = Some(s.to_vec());
        }
        ok
    });
    Ok(witness)
}
