//! Line-oriented text formats.
//!
//! Undirected instances:
//! ```text
//! p graph <n> <m>
//! e <u> <v> [weight] [inf]
//! ```
//! Directed instances use `p digraph <n> <m>` and `a <u> <v>`. Vertices are
//! 1-based, `#` starts a comment, and a missing weight means 1.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{Digraph, EdgeId, UndirectedGraph, VertexId};

/// Undirected graph with edge weights and a frozen (undeletable) edge set.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    pub graph: UndirectedGraph,
    /// Indexed by edge id.
    pub weights: Vec<f64>,
    pub frozen: BTreeSet<EdgeId>,
}

impl WeightedGraph {
    pub fn unit(graph: UndirectedGraph) -> Self {
        let weights = vec![1.0; graph.edge_bound()];
        WeightedGraph { graph, weights, frozen: BTreeSet::new() }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-comment lines as `(line number, tokens)`.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_count(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

fn parse_vertex(tok: &str, line: usize, n: usize) -> Result<VertexId> {
    let v: usize = tok.parse().map_err(|_| parse_err(line, format!("invalid vertex '{tok}'")))?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("vertex {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

fn parse_header<'a>(
    recs: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    kind: &str,
) -> Result<(usize, usize)> {
    let (line, toks) = recs.next().ok_or_else(|| parse_err(1, "missing header"))?;
    if toks.len() != 4 || toks[0] != "p" || toks[1] != kind {
        return Err(parse_err(line, format!("expected header 'p {kind} <n> <m>'")));
    }
    Ok((parse_count(toks[2], line, "vertex count")?, parse_count(toks[3], line, "edge count")?))
}

pub fn parse_weighted_graph(text: &str) -> Result<WeightedGraph> {
    let mut recs = records(text);
    let (n, m) = parse_header(&mut recs, "graph")?;
    let mut graph = UndirectedGraph::new(n);
    let mut weights = Vec::with_capacity(m);
    let mut frozen = BTreeSet::new();
    let mut last_line = 1;
    for (line, toks) in recs {
        last_line = line;
        if toks[0] != "e" {
            return Err(parse_err(line, format!("unexpected record '{}'", toks[0])));
        }
        if toks.len() < 3 || toks.len() > 5 {
            return Err(parse_err(line, "expected 'e <u> <v> [weight] [inf]'"));
        }
        let u = parse_vertex(toks[1], line, n)?;
        let v = parse_vertex(toks[2], line, n)?;
        let mut rest = &toks[3..];
        let inf = rest.last() == Some(&"inf");
        if inf {
            rest = &rest[..rest.len() - 1];
        }
        let weight = match rest {
            [] => 1.0,
            [tok] => tok
                .parse::<f64>()
                .ok()
                .filter(|w| w.is_finite() && *w >= 0.0)
                .ok_or_else(|| parse_err(line, format!("invalid weight '{tok}'")))?,
            _ => return Err(parse_err(line, "expected 'e <u> <v> [weight] [inf]'")),
        };
        let e = graph.add_edge(u, v).map_err(|err| parse_err(line, err.to_string()))?;
        weights.push(weight);
        if inf {
            frozen.insert(e);
        }
    }
    if graph.edge_count() != m {
        return Err(parse_err(last_line, format!("header declares {m} edges, found {}", graph.edge_count())));
    }
    Ok(WeightedGraph { graph, weights, frozen })
}

/// Writes the graph with vertices and edges renumbered densely in id order.
pub fn write_weighted_graph(wg: &WeightedGraph) -> String {
    let (g, vmap, _) = wg.graph.compacted();
    let mut out = format!("p graph {} {}\n", g.vertex_count(), g.edge_count());
    for (e, u, v) in wg.graph.edges() {
        let (a, b) = (vmap[u].unwrap() + 1, vmap[v].unwrap() + 1);
        let w = wg.weights.get(e).copied().unwrap_or(1.0);
        let _ = write!(out, "e {a} {b} {w}");
        if wg.frozen.contains(&e) {
            out.push_str(" inf");
        }
        out.push('\n');
    }
    out
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut recs = records(text);
    let (n, m) = parse_header(&mut recs, "digraph")?;
    let mut d = Digraph::new(n);
    let mut last_line = 1;
    for (line, toks) in recs {
        last_line = line;
        if toks[0] != "a" || toks.len() != 3 {
            return Err(parse_err(line, "expected 'a <u> <v>'"));
        }
        let u = parse_vertex(toks[1], line, n)?;
        let v = parse_vertex(toks[2], line, n)?;
        d.add_arc(u, v).map_err(|err| parse_err(line, err.to_string()))?;
    }
    if d.arc_count() != m {
        return Err(parse_err(last_line, format!("header declares {m} arcs, found {}", d.arc_count())));
    }
    Ok(d)
}

/// Writes the digraph densely renumbered. `labels[v]`, when present, is
/// emitted as a comment naming the origin of vertex `v`.
pub fn write_digraph(d: &Digraph, labels: &[Option<String>]) -> String {
    let (c, vmap) = d.compacted();
    let mut out = format!("p digraph {} {}\n", c.vertex_count(), c.arc_count());
    for v in d.vertices() {
        if let Some(Some(label)) = labels.get(v) {
            let _ = writeln!(out, "# {} {}", vmap[v].unwrap() + 1, label);
        }
    }
    for (_, u, v) in c.arcs() {
        let _ = writeln!(out, "a {} {}", u + 1, v + 1);
    }
    out
}

/// Witness records `<tag> <u> <v>` (edges or arcs), converted to 0-based pairs.
pub fn parse_pair_witness(text: &str, tag: &str, n: usize) -> Result<Vec<(VertexId, VertexId)>> {
    records(text)
        .map(|(line, toks)| {
            if toks.len() != 3 || toks[0] != tag {
                return Err(parse_err(line, format!("expected '{tag} <u> <v>'")));
            }
            Ok((parse_vertex(toks[1], line, n)?, parse_vertex(toks[2], line, n)?))
        })
        .collect()
}

/// Witness records `v <x>`, converted to 0-based vertices.
pub fn parse_vertex_witness(text: &str, n: usize) -> Result<Vec<VertexId>> {
    records(text)
        .map(|(line, toks)| {
            if toks.len() != 2 || toks[0] != "v" {
                return Err(parse_err(line, "expected 'v <x>'"));
            }
            parse_vertex(toks[1], line, n)
        })
        .collect()
}
