use std::collections::BTreeSet;

use crate::error::Result;
use crate::graph::{components, reachable, EdgeId, UndirectedGraph, VertexId};
use crate::wbd::{normalize, WbdInstance};

/// Constant yes-instance: `K_4` with budget 0 and every edge frozen.
pub fn constant_yes() -> WbdInstance {
    let mut g = UndirectedGraph::new(4);
    for u in 0..4 {
        for v in u + 1..4 {
            g.add_edge(u, v).expect("simple");
        }
    }
    let frozen = g.edge_ids().collect();
    let mut inst = WbdInstance::unweighted(g, 0, frozen).expect("valid instance");
    inst.weights.iter_mut().for_each(|w| *w = 0.0);
    inst
}

/// Canonical no-instance: a triangle has no deletable edge.
pub fn constant_no(k: usize) -> WbdInstance {
    let g = UndirectedGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).expect("simple");
    let frozen = g.edge_ids().collect();
    let mut inst = WbdInstance::unweighted(g, k, frozen).expect("valid instance");
    inst.weights.iter_mut().for_each(|w| *w = 0.0);
    inst
}

/// Budget 0 is always satisfiable by the empty set.
pub fn rule_zero(inst: &WbdInstance) -> Option<WbdInstance> {
    (inst.k == 0).then(constant_yes)
}

/// Finds `e = (u, v) ∈ F` whose endpoints are joined by a path avoiding every
/// other potential solution edge and `Y \ {u, v}`; deletes it and spends one
/// unit of budget.
pub fn rule_one(inst: &WbdInstance, y: &BTreeSet<VertexId>) -> Result<Option<(WbdInstance, EdgeId)>> {
    if inst.k == 0 {
        return Ok(None);
    }
    let g = &inst.graph;
    for e in inst.potential() {
        let (u, v) = g.endpoints(e).expect("potential edge exists");
        let reach = reachable(
            g,
            u,
            |w| w == u || w == v || !y.contains(&w),
            |f| inst.frozen.contains(&f),
        );
        if reach[v] {
            let child = normalize(&inst.child_without(e))?;
            return Ok(Some((child, e)));
        }
    }
    Ok(None)
}

/// Torso of `G` at `Y`: every pair of `Y` joined through a component of
/// `G - Y` becomes adjacent by a new frozen edge, then `G[Y]` is kept.
/// Returns the new instance and the added edges.
pub fn rule_two_torso(inst: &WbdInstance, y: &BTreeSet<VertexId>) -> Result<(WbdInstance, Vec<EdgeId>)> {
    let mut g = inst.graph.clone();
    let mut frozen = inst.frozen.clone();
    let mut weights = inst.weights.clone();
    let mut added = Vec::new();
    for comp in components(&inst.graph, |v| !y.contains(&v)) {
        let attach: Vec<VertexId> = inst.graph.neighborhood(&comp).into_iter().collect();
        for (i, &a) in attach.iter().enumerate() {
            for &b in &attach[i + 1..] {
                if g.edge_between(a, b).is_none() {
                    let e = g.add_edge(a, b)?;
                    frozen.insert(e);
                    added.push(e);
                }
            }
        }
        for &v in &comp {
            g.remove_vertex(v)?;
        }
    }
    weights.resize(g.edge_bound(), 0.0);
    frozen.retain(|&e| g.has_edge(e));
    let torso = WbdInstance::new(g, weights, inst.k, inst.target, frozen)?;
    Ok((normalize(&torso)?, added))
}
