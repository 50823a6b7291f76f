use crate::error::{Error, Result};

use super::{ArcId, Digraph, VertexId};

/// Old-to-new vertex map produced by contractions; `None` never occurs for
/// alive input vertices.
pub type VertexMap = Vec<Option<VertexId>>;

/// Path-contracts arc `a = (x, y)`: `x` and `y` are replaced by a fresh vertex
/// `z` that keeps the in-arcs of `x` and the out-arcs of `y`. Out-arcs of `x`
/// and in-arcs of `y` disappear. Surviving arcs keep their ids.
pub fn path_contract(d: &Digraph, a: ArcId) -> Result<(Digraph, VertexMap)> {
    let (x, y) = d
        .arc(a)
        .ok_or_else(|| Error::InvalidInput(format!("arc {a} does not exist")))?;
    let mut out = d.clone();
    let kept_in: Vec<(ArcId, VertexId)> = d
        .in_arcs(x)
        .iter()
        .map(|&b| (b, d.arc(b).unwrap().0))
        .filter(|&(_, t)| t != y)
        .collect();
    let kept_out: Vec<(ArcId, VertexId)> = d
        .out_arcs(y)
        .iter()
        .map(|&b| (b, d.arc(b).unwrap().1))
        .filter(|&(_, h)| h != x)
        .collect();
    out.remove_vertex(x)?;
    out.remove_vertex(y)?;
    let z = out.add_vertex();
    for (b, t) in kept_in {
        out.insert_arc_with_id(b, t, z);
    }
    for (b, h) in kept_out {
        out.insert_arc_with_id(b, z, h);
    }
    let mut map: VertexMap = (0..d.vertex_bound()).map(|v| d.has_vertex(v).then_some(v)).collect();
    map[x] = Some(z);
    map[y] = Some(z);
    map.push(None);
    Ok((out, map))
}

/// Folds [`path_contract`] over `arcs` (ids of the original digraph). Fails
/// with [`Error::VanishedArc`] at the first arc destroyed by an earlier step.
pub fn contract_sequence(d: &Digraph, arcs: &[ArcId]) -> Result<(Digraph, VertexMap)> {
    let mut cur = d.clone();
    let mut map: VertexMap = (0..d.vertex_bound()).map(|v| d.has_vertex(v).then_some(v)).collect();
    for (position, &a) in arcs.iter().enumerate() {
        if !cur.has_arc(a) {
            return Err(if d.has_arc(a) {
                Error::VanishedArc { position, arc: a }
            } else {
                Error::InvalidInput(format!("arc {a} does not exist"))
            });
        }
        let (next, step) = path_contract(&cur, a)?;
        for m in map.iter_mut() {
            *m = m.and_then(|v| step[v]);
        }
        cur = next;
    }
    Ok((cur, map))
}
