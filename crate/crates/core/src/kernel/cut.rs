//! Potentially overlapping vertex cuts and cut-covering sets.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Network, VertexId, INF};

/// Vertex-split network of `d - removed` with unit vertex capacities
/// (`v_in = 2v`, `v_out = 2v + 1`) and room for a super source and sink.
/// Terminal arcs are added per query and dropped by [`CutNetwork::reset`].
struct CutNetwork {
    net: Network,
    base_arcs: usize,
    base_caps: Vec<u32>,
    s: usize,
    t: usize,
}

impl CutNetwork {
    fn new(d: &Digraph, removed: impl Fn(VertexId) -> bool) -> Self {
        let n = d.vertex_bound();
        let (s, t) = (2 * n, 2 * n + 1);
        let mut net = Network::new(2 * n + 2);
        let ok = |v: VertexId| d.has_vertex(v) && !removed(v);
        for v in d.vertices().filter(|&v| ok(v)) {
            net.add_arc(2 * v, 2 * v + 1, 1);
        }
        for (_, u, v) in d.arcs() {
            if ok(u) && ok(v) {
                net.add_arc(2 * u + 1, 2 * v, INF);
            }
        }
        let base_arcs = net.arc_count();
        let base_caps = net.capacities().to_vec();
        CutNetwork { net, base_arcs, base_caps, s, t }
    }

    /// Maximum number of disjoint paths from `a` to `b`; the callers keep
    /// removed vertices out of both.
    fn flow(&mut self, a: impl Iterator<Item = VertexId>, b: impl Iterator<Item = VertexId>) -> usize {
        for v in a {
            self.net.add_arc(self.s, 2 * v, INF);
        }
        for v in b {
            self.net.add_arc(2 * v + 1, self.t, INF);
        }
        self.net.max_flow(self.s, self.t, usize::MAX)
    }

    /// After [`CutNetwork::flow`]: vertices whose split arc crosses the
    /// residual cut closest to the source.
    fn cut(&mut self, d: &Digraph, mut emit: impl FnMut(VertexId)) {
        let reach = self.net.residual_reach(self.s);
        for v in d.vertices() {
            if reach[2 * v] && !reach[2 * v + 1] {
                emit(v);
            }
        }
    }

    fn reset(&mut self) {
        self.net.reset(self.base_arcs, &self.base_caps);
    }
}

/// Maximum number of pairwise vertex-disjoint `a`-`b` paths in `d - removed`.
pub(crate) fn max_disjoint_paths(
    d: &Digraph,
    a: &[VertexId],
    b: &[VertexId],
    removed: &BTreeSet<VertexId>,
) -> usize {
    let ok = |v: &&VertexId| d.has_vertex(**v) && !removed.contains(*v);
    let mut cn = CutNetwork::new(d, |v| removed.contains(&v));
    cn.flow(a.iter().filter(ok).copied(), b.iter().filter(ok).copied())
}

/// Minimum vertex set `C` of `d - r` such that no directed path leads from
/// `a \ C` to `b \ C`. Terminals may belong to `C`.
pub fn po_min_cut(
    d: &Digraph,
    a: &BTreeSet<VertexId>,
    b: &BTreeSet<VertexId>,
    r: &BTreeSet<VertexId>,
) -> BTreeSet<VertexId> {
    let ok = |v: &&VertexId| d.has_vertex(**v) && !r.contains(*v);
    let mut cn = CutNetwork::new(d, |v| r.contains(&v));
    cn.flow(a.iter().filter(ok).copied(), b.iter().filter(ok).copied());
    let mut out = BTreeSet::new();
    cn.cut(d, |v| {
        out.insert(v);
    });
    out
}

/// Source of cut-covering sets for `(D, X)`.
pub trait CutCovering: Sync {
    fn name(&self) -> &'static str;
    fn cover(&self, d: &Digraph, terminals: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>>;
}

/// All of `V(D)`: vacuously cut-covering.
#[derive(Clone, Copy, Debug, Default)]
pub struct TrivialProvider;

impl CutCovering for TrivialProvider {
    fn name(&self) -> &'static str {
        "trivial"
    }

    fn cover(&self, d: &Digraph, _terminals: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>> {
        Ok(d.vertices().collect())
    }
}

/// Union of one minimum cut per triple `(A, B, R)` of terminal subsets.
/// Costs `5^|X|` flow computations, so it refuses large terminal sets.
#[derive(Clone, Copy, Debug)]
pub struct ExhaustiveProvider {
    pub max_terminals: usize,
}

impl Default for ExhaustiveProvider {
    fn default() -> Self {
        // One potential solution edge already yields seven terminals.
        ExhaustiveProvider { max_terminals: 7 }
    }
}

fn members(items: &[VertexId], mask: u64) -> impl Iterator<Item = VertexId> + '_ {
    items.iter().enumerate().filter(move |(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v)
}

impl CutCovering for ExhaustiveProvider {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn cover(&self, d: &Digraph, terminals: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>> {
        let x: Vec<VertexId> = terminals.iter().copied().collect();
        if x.len() > self.max_terminals || x.len() > 20 {
            return Err(Error::ProviderRefused { terminals: x.len(), limit: self.max_terminals });
        }
        let full = (1u64 << x.len()) - 1;
        // Terminals inside R are gone from D - R, so A and B range over X \ R.
        let covers: Vec<Vec<bool>> = (0..=full)
            .into_par_iter()
            .map(|rmask| {
                let r: BTreeSet<VertexId> = members(&x, rmask).collect();
                let mut cn = CutNetwork::new(d, |v| r.contains(&v));
                let mut z = vec![false; d.vertex_bound()];
                let free = full & !rmask;
                let mut amask = free;
                while amask != 0 {
                    let mut bmask = free;
                    while bmask != 0 {
                        if cn.flow(members(&x, amask), members(&x, bmask)) > 0 {
                            cn.cut(d, |v| z[v] = true);
                        }
                        cn.reset();
                        bmask = (bmask - 1) & free;
                    }
                    amask = (amask - 1) & free;
                }
                z
            })
            .collect();
        Ok(d.vertices().filter(|&v| covers.iter().any(|z| z[v])).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[VertexId]) -> BTreeSet<VertexId> {
        v.iter().copied().collect()
    }

    #[test]
    fn path_cut_has_size_one() {
        let d = Digraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        let c = po_min_cut(&d, &set(&[0]), &set(&[2]), &set(&[]));
        assert_eq!(c.len(), 1);
        let c = po_min_cut(&d, &set(&[1]), &set(&[1]), &set(&[]));
        assert_eq!(c, set(&[1]));
        assert!(po_min_cut(&d, &set(&[2]), &set(&[0]), &set(&[])).is_empty());
        assert!(po_min_cut(&d, &set(&[0]), &set(&[2]), &set(&[1])).is_empty());
    }

    #[test]
    fn two_routes_need_two_vertices() {
        let d = Digraph::from_arcs(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        let c = po_min_cut(&d, &set(&[0]), &set(&[3]), &set(&[]));
        assert_eq!(c.len(), 1);
        // Both routes end in 3.
        let c = po_min_cut(&d, &set(&[1, 2]), &set(&[3]), &set(&[]));
        assert_eq!(c, set(&[3]));
        let d = Digraph::from_arcs(4, &[(0, 1), (2, 3)]).unwrap();
        let c = po_min_cut(&d, &set(&[0, 2]), &set(&[1, 3]), &set(&[]));
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn exhaustive_refuses_large_terminal_sets() {
        let d = Digraph::new(10);
        let x: BTreeSet<VertexId> = (0..8).collect();
        assert_eq!(
            ExhaustiveProvider::default().cover(&d, &x).unwrap_err(),
            Error::ProviderRefused { terminals: 8, limit: 7 }
        );
        assert_eq!(TrivialProvider.cover(&d, &x).unwrap().len(), 10);
    }
}
