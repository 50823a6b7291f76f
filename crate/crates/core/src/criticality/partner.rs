//! Partner sets, segments and components along a value-2 flow.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{reachable, EdgeId, Path, UndirectedGraph, VertexId};

use super::{newly_critical, verify_mixed_cut};

/// A marked newly critical edge on `P1`, oriented along the traversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CriticalEntry {
    pub edge: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    /// Index of `u` on `P1`.
    pub position: usize,
}

/// The component hanging off the segment between two consecutive critical
/// edges that share a single partner `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentInfo {
    pub vertices: BTreeSet<VertexId>,
    pub partner: VertexId,
    /// Edges inside the component plus edges between it and `partner`.
    pub gamma: BTreeSet<EdgeId>,
    /// `P1` from `v_i` to `u_{i+1}`.
    pub segment: Vec<VertexId>,
    pub affected: bool,
}

#[derive(Clone, Debug)]
pub struct PartnerAnalysis {
    /// `G'`: the instance graph minus the earlier greedy deletions.
    pub host: UndirectedGraph,
    pub pivot: EdgeId,
    pub x: VertexId,
    pub y: VertexId,
    pub p1: Path,
    pub p2: Path,
    /// Earlier greedy deletions with their endpoints.
    pub removed: Vec<(EdgeId, VertexId, VertexId)>,
    /// Every edge made critical by deleting the pivot from `host`.
    pub critical_all: BTreeSet<EdgeId>,
    pub critical: Vec<CriticalEntry>,
    pub partners: Vec<Vec<VertexId>>,
    /// Indices `i < t-1` whose partner set differs from the next one.
    pub switches: BTreeSet<usize>,
    /// Entry `i` is present for every non-switch `i < t-1`.
    pub components: Vec<Option<ComponentInfo>>,
    /// Non-switch indices whose component touches a removed edge.
    pub affected: BTreeSet<usize>,
}

/// Internal vertices `v` of `p2`, in order, such that `{e_i, v}` separates
/// `x` from `y` in `g_minus_e`.
pub fn partner_set(
    g_minus_e: &UndirectedGraph,
    x: VertexId,
    y: VertexId,
    p2: &Path,
    e_i: EdgeId,
) -> Result<Vec<VertexId>> {
    let partners: Vec<VertexId> =
        p2.internal().iter().copied().filter(|&v| verify_mixed_cut(g_minus_e, x, y, e_i, v)).collect();
    if partners.is_empty() {
        return Err(Error::inconsistency(format!("critical edge {e_i} has no partner vertex")));
    }
    Ok(partners)
}

/// Builds the full analysis for pivot `e = (x, y)` of `host`, where `p1`
/// and `p2` form an `x`-`y` flow of value 2 in `host - e` and `marked`
/// restricts which newly critical edges are tracked.
pub fn build_partner_analysis(
    host: &UndirectedGraph,
    pivot: EdgeId,
    p1: &Path,
    p2: &Path,
    marked: &BTreeSet<EdgeId>,
    removed: &[(EdgeId, VertexId, VertexId)],
) -> Result<PartnerAnalysis> {
    let (x, y) = (p1.first(), p1.last());
    if host.endpoints(pivot) != Some((x.min(y), x.max(y))) || p2.first() != x || p2.last() != y {
        return Err(Error::InvalidInput("flow paths do not join the pivot endpoints".into()));
    }
    let critical_all = newly_critical(host, pivot)?;
    let g_minus_e = host.without_edge(pivot);
    let p1_vertices = p1.vertices();
    let critical: Vec<CriticalEntry> = p1
        .edges_in(&g_minus_e)
        .into_iter()
        .enumerate()
        .filter(|(_, e)| critical_all.contains(e) && marked.contains(e))
        .map(|(position, edge)| CriticalEntry {
            edge,
            u: p1_vertices[position],
            v: p1_vertices[position + 1],
            position,
        })
        .collect();
    if critical.is_empty() {
        return Err(Error::InvalidInput("no marked critical edge on the first path".into()));
    }
    let partners = critical
        .iter()
        .map(|c| partner_set(&g_minus_e, x, y, p2, c.edge))
        .collect::<Result<Vec<_>>>()?;
    let t = critical.len();
    let switches: BTreeSet<usize> = (0..t - 1).filter(|&i| partners[i] != partners[i + 1]).collect();
    let removed_ends: Vec<VertexId> = removed.iter().flat_map(|&(_, a, b)| [a, b]).collect();
    let mut components = Vec::with_capacity(t.saturating_sub(1));
    let mut affected = BTreeSet::new();
    for i in 0..t - 1 {
        if switches.contains(&i) || partners[i].len() != 1 {
            components.push(None);
            continue;
        }
        let w = partners[i][0];
        let (ei, ej) = (critical[i].edge, critical[i + 1].edge);
        let seen = reachable(host, critical[i].v, |v| v != w, |f| f != ei && f != ej);
        let vertices: BTreeSet<VertexId> = host.vertices().filter(|&v| seen[v]).collect();
        let mut with_w = vertices.clone();
        with_w.insert(w);
        let gamma: BTreeSet<EdgeId> = host
            .edges_within(&with_w)
            .into_iter()
            .filter(|&f| {
                let (a, b) = host.endpoints(f).unwrap();
                vertices.contains(&a) || vertices.contains(&b)
            })
            .collect();
        let segment = p1_vertices[critical[i].position + 1..=critical[i + 1].position].to_vec();
        let is_affected = removed_ends.iter().any(|v| vertices.contains(v));
        if is_affected {
            affected.insert(i);
        }
        components.push(Some(ComponentInfo { vertices, partner: w, gamma, segment, affected: is_affected }));
    }
    Ok(PartnerAnalysis {
        host: host.clone(),
        pivot,
        x,
        y,
        p1: p1.clone(),
        p2: p2.clone(),
        removed: removed.to_vec(),
        critical_all,
        critical,
        partners,
        switches,
        components,
        affected,
    })
}

impl PartnerAnalysis {
    pub fn t(&self) -> usize {
        self.critical.len()
    }

    /// Index of the first edge of every maximal run of equal partner sets.
    pub fn distinct_partner_indices(&self) -> Vec<usize> {
        let mut out = vec![0];
        out.extend(self.switches.iter().map(|&i| i + 1));
        let mut seen: Vec<&Vec<VertexId>> = Vec::new();
        out.retain(|&i| {
            if seen.contains(&&self.partners[i]) {
                false
            } else {
                seen.push(&self.partners[i]);
                true
            }
        });
        out
    }

    pub fn distinct_partner_sets(&self) -> usize {
        self.distinct_partner_indices().len()
    }

    /// Every third edge among the first `3k+1` pairwise distinct partner
    /// sets: `k` edges whose joint removal keeps the graph biconnected.
    pub fn every_third_selection(&self, k: usize) -> Option<Vec<EdgeId>> {
        let reps = self.distinct_partner_indices();
        if k == 0 || reps.len() < 3 * k + 1 {
            return None;
        }
        Some((0..k).map(|j| self.critical[reps[3 * j]].edge).collect())
    }

    /// Checks the structural guarantees of the analysis and describes every
    /// failure. An empty result means all of them hold.
    pub fn structural_violations(&self, k: usize) -> Vec<String> {
        let mut out = Vec::new();
        let t = self.t();
        let pos2 = |v: VertexId| self.p2.position(v).unwrap_or(usize::MAX);
        for (i, p) in self.partners.iter().enumerate() {
            if p.is_empty() {
                out.push(format!("partner set of index {i} is empty"));
            }
        }
        for i in 0..t.saturating_sub(1) {
            let (a, b) = (&self.partners[i], &self.partners[i + 1]);
            let max_a = a.iter().map(|&v| pos2(v)).max().unwrap_or(0);
            let min_b = b.iter().map(|&v| pos2(v)).min().unwrap_or(usize::MAX);
            if max_a > min_b {
                out.push(format!("partner sets {i} and {} are out of order on P2", i + 1));
            }
            if a.iter().filter(|v| b.contains(v)).count() > 1 {
                out.push(format!("partner sets {i} and {} share more than one vertex", i + 1));
            }
            if !self.switches.contains(&i) && (a.len() != 1 || b.len() != 1) {
                out.push(format!("equal partner sets at index {i} are not singletons"));
            }
        }
        if self.distinct_partner_sets() <= 3 * k && self.switches.len() > 3 * k {
            out.push(format!("{} partner switches exceed 3k = {}", self.switches.len(), 3 * k));
        }
        let p2_vertices: BTreeSet<VertexId> = self.p2.vertices().iter().copied().collect();
        let present: Vec<(usize, &ComponentInfo)> =
            self.components.iter().enumerate().filter_map(|(i, c)| c.as_ref().map(|c| (i, c))).collect();
        for &(i, c) in &present {
            if !c.segment.iter().all(|v| c.vertices.contains(v)) {
                out.push(format!("segment {i} leaves its component"));
            }
            let expect: BTreeSet<VertexId> = [self.critical[i].u, self.critical[i + 1].v, c.partner].into();
            let got = self.host.neighborhood(&c.vertices);
            if got != expect {
                out.push(format!("component {i} has neighborhood {got:?}, expected {expect:?}"));
            }
            if !c.vertices.is_disjoint(&p2_vertices) {
                out.push(format!("component {i} meets P2"));
            }
        }
        for (a, &(i, ci)) in present.iter().enumerate() {
            for &(j, cj) in &present[a + 1..] {
                if !ci.vertices.is_disjoint(&cj.vertices) {
                    out.push(format!("components {i} and {j} intersect"));
                }
                if !ci.gamma.is_disjoint(&cj.gamma) {
                    out.push(format!("edge sets of components {i} and {j} intersect"));
                }
            }
        }
        if self.affected.len() > 2 * self.removed.len() {
            out.push(format!("{} affected components for {} removed edges", self.affected.len(), self.removed.len()));
        }
        let on_paths: BTreeSet<EdgeId> = self
            .p1
            .edges_in(&self.host)
            .into_iter()
            .chain(self.p2.edges_in(&self.host))
            .collect();
        for e in &self.critical_all {
            if !on_paths.contains(e) {
                out.push(format!("newly critical edge {e} lies on neither flow path"));
            }
        }
        out
    }

    /// Human-readable summary used by `--explain`.
    pub fn dump(&self, stretch: Option<(usize, usize)>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "pivot {} = ({}, {})", self.pivot, self.x, self.y);
        let _ = writeln!(s, "P1 {:?}", self.p1.vertices());
        let _ = writeln!(s, "P2 {:?}", self.p2.vertices());
        let _ = writeln!(s, "removed {:?}", self.removed.iter().map(|r| r.0).collect::<Vec<_>>());
        for (i, (c, p)) in self.critical.iter().zip(&self.partners).enumerate() {
            let _ = writeln!(s, "e{i} edge {} ({}, {}) partners {:?}", c.edge, c.u, c.v, p);
        }
        let _ = writeln!(s, "switches {:?}", self.switches);
        let _ = writeln!(s, "affected {:?}", self.affected);
        match stretch {
            Some((a, b)) => {
                let _ = writeln!(s, "clean stretch [{a}, {b}]");
            }
            None => s.push_str("no clean stretch\n"),
        }
        s
    }
}

/// First run of indices `a..=b` with `b >= a + 2k + 3` such that every
/// `i in [a, b-1]` is neither a partner switch nor affected.
///
/// Fails when none exists although the analysis holds at least
/// `10k^2 + 23k` critical edges with at most `3k` distinct partner sets.
pub fn find_clean_stretch(pa: &PartnerAnalysis, k: usize) -> Result<Option<(usize, usize)>> {
    let t = pa.t();
    let need = 2 * k + 3;
    let good = |i: usize| i + 1 < t && pa.components[i].is_some() && !pa.affected.contains(&i);
    let mut start = 0;
    while start < t {
        if !good(start) {
            start += 1;
            continue;
        }
        let mut end = start;
        while good(end + 1) {
            end += 1;
        }
        if end + 1 - start >= need {
            return Ok(Some((start, end + 1)));
        }
        start = end + 1;
    }
    if t >= 10 * k * k + 23 * k && pa.distinct_partner_sets() <= 3 * k {
        return Err(Error::inconsistency(format!(
            "no clean stretch among {t} critical edges with {} partner sets",
            pa.distinct_partner_sets()
        )));
    }
    Ok(None)
}
