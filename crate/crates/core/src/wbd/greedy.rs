//! The greedy deletion set and the partner-case analysis at a rich step.

use std::collections::BTreeSet;

use crate::criticality::{build_partner_analysis, find_clean_stretch, newly_critical, PartnerAnalysis};
use crate::error::{Error, Result};
use crate::graph::{is_biconnected_without, max_flow_bounded, EdgeId, Path, UndirectedGraph};

use super::{heavy, Thresholds, WbdInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GreedyStep {
    pub edge: EdgeId,
    /// Heavy edges made critical by deleting `edge` after the earlier steps.
    pub newly_critical_heavy: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyRun {
    pub heavy: Vec<EdgeId>,
    pub steps: Vec<GreedyStep>,
}

impl GreedyRun {
    pub fn edges(&self) -> Vec<EdgeId> {
        self.steps.iter().map(|s| s.edge).collect()
    }
}

/// Repeatedly deletes the heaviest heavy edge that is not critical in the
/// current graph, for at most `k` steps.
pub fn greedy_deletion_set(inst: &WbdInstance, heavy_size: usize) -> GreedyRun {
    let heavy_edges = heavy(inst, heavy_size);
    let heavy_set: BTreeSet<EdgeId> = heavy_edges.iter().copied().collect();
    let mut cur = inst.graph.clone();
    let mut steps = Vec::new();
    while steps.len() < inst.k {
        let Some(f) = heavy_edges
            .iter()
            .copied()
            .find(|&e| cur.has_edge(e) && is_biconnected_without(&cur, |h| h == e))
        else {
            break;
        };
        let newly = newly_critical(&cur, f).expect("greedy edge is non-critical");
        steps.push(GreedyStep { edge: f, newly_critical_heavy: newly.intersection(&heavy_set).count() });
        cur.remove_edge(f).expect("greedy edge exists");
    }
    GreedyRun { heavy: heavy_edges, steps }
}

/// A value-2 `x`-`y` flow in `host - e`, with `P1` the path carrying at least
/// as many marked newly critical edges as `P2`.
pub fn find_rich_flow(host: &UndirectedGraph, e: EdgeId, marked: &BTreeSet<EdgeId>) -> Result<(Path, Path)> {
    let (x, y) = host.endpoints(e).ok_or(Error::MissingEdge(e))?;
    let critical = newly_critical(host, e)?;
    let without = host.without_edge(e);
    let flow = max_flow_bounded(&without, x, y, 3)?;
    if flow.value() != 2 {
        return Err(Error::inconsistency(format!(
            "flow between the ends of pivot {e} has value {}, expected 2",
            flow.value()
        )));
    }
    let count = |p: &Path| {
        p.edges_in(&without).iter().filter(|f| critical.contains(f) && marked.contains(f)).count()
    };
    let [a, b]: [Path; 2] = flow.paths.try_into().expect("two paths");
    Ok(if count(&b) > count(&a) { (b, a) } else { (a, b) })
}

/// `k` edges, every third among the first `3k+1` distinct partner sets;
/// checked to keep the host biconnected.
pub fn solution_from_distinct_partners(pa: &PartnerAnalysis, k: usize) -> Result<Vec<EdgeId>> {
    let s = pa.every_third_selection(k).ok_or_else(|| {
        Error::InvalidInput(format!("need {} distinct partner sets, found {}", 3 * k + 1, pa.distinct_partner_sets()))
    })?;
    if !is_biconnected_without(&pa.host, |e| s.contains(&e)) {
        return Err(Error::inconsistency(format!("selection {s:?} from distinct partner sets breaks biconnectivity")));
    }
    Ok(s)
}

/// Lightest edge strictly inside the clean stretch `[a, b]`, ties by id.
pub fn irrelevant_edge(pa: &PartnerAnalysis, (a, b): (usize, usize), weights: &[f64], k: usize) -> Result<EdgeId> {
    if b < a + 2 * k + 3 || b >= pa.t() {
        return Err(Error::InvalidInput(format!("stretch [{a}, {b}] is too short or out of range")));
    }
    Ok(pa.critical[a + 1..b]
        .iter()
        .map(|c| c.edge)
        .min_by(|&e, &f| weights[e].total_cmp(&weights[f]).then(e.cmp(&f)))
        .expect("stretch interior is non-empty"))
}

#[derive(Clone, Debug)]
pub enum Progress {
    /// The greedy run found `k` deletions inside the heavy set.
    BranchGreedy,
    /// More than `3k` distinct partner sets gave a deletion set of size `k`.
    BranchPartners { selection: Vec<EdgeId> },
    /// The edge can be frozen without changing the optimum.
    Irrelevant { edge: EdgeId },
    /// Only under lowered thresholds: no rich step produced progress.
    Fallback,
}

#[derive(Clone, Debug)]
pub struct StepOutcome {
    pub progress: Progress,
    pub greedy: GreedyRun,
    /// Every analysis built, with the clean stretch found in it.
    pub analyses: Vec<(PartnerAnalysis, Option<(usize, usize)>)>,
}

/// One round on an instance with more than `heavy(k)` potential solution
/// edges: a reason to branch on the heavy set, or an irrelevant edge.
pub fn progress_step(inst: &WbdInstance, thresholds: Thresholds) -> Result<StepOutcome> {
    let k = inst.k;
    let greedy = greedy_deletion_set(inst, thresholds.heavy(k));
    let mut analyses = Vec::new();
    if greedy.steps.len() == k {
        return Ok(StepOutcome { progress: Progress::BranchGreedy, greedy, analyses });
    }
    let marked: BTreeSet<EdgeId> = greedy.heavy.iter().copied().collect();
    let mut host = inst.graph.clone();
    let mut removed = Vec::new();
    let mut rich_seen = false;
    for step in &greedy.steps {
        let e = step.edge;
        if step.newly_critical_heavy >= thresholds.rich(k).max(1) {
            rich_seen = true;
            let (p1, p2) = find_rich_flow(&host, e, &marked)?;
            let pa = build_partner_analysis(&host, e, &p1, &p2, &marked, &removed)?;
            if pa.distinct_partner_sets() > 3 * k {
                let selection = solution_from_distinct_partners(&pa, k)?;
                analyses.push((pa, None));
                return Ok(StepOutcome { progress: Progress::BranchPartners { selection }, greedy, analyses });
            }
            let stretch = find_clean_stretch(&pa, k)?;
            if let Some(stretch) = stretch {
                let edge = irrelevant_edge(&pa, stretch, &inst.weights, k)?;
                analyses.push((pa, Some(stretch)));
                return Ok(StepOutcome { progress: Progress::Irrelevant { edge }, greedy, analyses });
            }
            analyses.push((pa, None));
        }
        let (u, v) = host.endpoints(e).expect("greedy edge exists");
        removed.push((e, u, v));
        host.remove_edge(e)?;
    }
    if thresholds.is_proven() {
        return Err(Error::inconsistency(if rich_seen {
            "rich greedy step yielded neither distinct partner sets nor a clean stretch".to_string()
        } else {
            format!("greedy stopped after {} of {k} steps without a rich step", greedy.steps.len())
        }));
    }
    Ok(StepOutcome { progress: Progress::Fallback, greedy, analyses })
}
