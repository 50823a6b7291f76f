//! Polynomial kernel for the unweighted problem: potential solution edges
//! are first reduced below `μ(k)` by the same progress step the solver uses,
//! then a cut-covering set of an auxiliary digraph bounds the vertex count.

mod auxiliary;
mod cut;
mod rules;

use std::collections::BTreeSet;

pub use auxiliary::{build_auxiliary_digraph, AuxiliaryDigraph};
pub use cut::{po_min_cut, CutCovering, ExhaustiveProvider, TrivialProvider};
pub use rules::{constant_no, constant_yes, rule_one, rule_two_torso, rule_zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};
use crate::wbd::{normalize, progress_step, Progress, Thresholds, WbdInstance};

/// Auxiliary digraph with its cut-covering set and the retained vertices
/// `Y = (Z ∩ V(G)) ∪ V(F)`.
#[derive(Clone, Debug)]
pub struct KernelState {
    pub aux: AuxiliaryDigraph,
    pub cover: BTreeSet<VertexId>,
    pub retained: BTreeSet<VertexId>,
}

pub fn kernel_state(inst: &WbdInstance, provider: &dyn CutCovering) -> Result<KernelState> {
    let f: BTreeSet<EdgeId> = inst.potential().into_iter().collect();
    let aux = build_auxiliary_digraph(&inst.graph, &f);
    let cover = provider.cover(&aux.digraph, &aux.terminals)?;
    let mut retained = aux.graph_vertices(&cover);
    for &e in &f {
        let (u, v) = inst.graph.endpoints(e).expect("potential edge exists");
        retained.extend([u, v]);
    }
    Ok(KernelState { aux, cover, retained })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct KernelConfig {
    /// Heavy and rich thresholds for the first phase.
    pub thresholds: Thresholds,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct KernelStats {
    pub vertices_before: usize,
    pub vertices_after: usize,
    pub potential_before: usize,
    pub potential_after_phase_one: usize,
    pub potential_after: usize,
    pub irrelevant_frozen: usize,
    pub rule_zero: bool,
    pub rule_one: usize,
    pub torso_rounds: usize,
    pub torso_edges: usize,
    pub max_terminals: usize,
    pub max_cover: usize,
    /// Phase one stopped early under lowered thresholds.
    pub phase_one_fallback: bool,
}

#[derive(Clone, Debug)]
pub struct KernelReport {
    pub instance: WbdInstance,
    /// Known answer when the output is a constant instance.
    pub decided: Option<bool>,
    pub provider: &'static str,
    pub stats: KernelStats,
}

fn check_unit(inst: &WbdInstance) -> Result<()> {
    if inst.potential().iter().any(|&e| inst.weights[e] != 1.0) || inst.target != inst.k as f64 {
        return Err(Error::InvalidInput(
            "kernelization needs unit weights on potential solution edges and target equal to k".into(),
        ));
    }
    Ok(())
}

/// Reduces an unweighted instance to an equivalent one with at most
/// `μ(k)` potential solution edges and a vertex set bounded by the cover.
pub fn kernelize(inst: &WbdInstance, provider: &dyn CutCovering, config: &KernelConfig) -> Result<KernelReport> {
    check_unit(inst)?;
    let mut cur = normalize(inst)?;
    let mut stats = KernelStats {
        vertices_before: cur.graph.vertex_count(),
        potential_before: cur.potential().len(),
        ..KernelStats::default()
    };
    let done = |instance: WbdInstance, decided: Option<bool>, mut stats: KernelStats| {
        stats.vertices_after = instance.graph.vertex_count();
        stats.potential_after = instance.potential().len();
        Ok(KernelReport { instance, decided, provider: provider.name(), stats })
    };

    loop {
        // A constant output ends phase one and has no potential solution edges.
        if let Some(yes) = rule_zero(&cur) {
            stats.rule_zero = true;
            stats.potential_after_phase_one = 0;
            return done(yes, Some(true), stats);
        }
        if cur.potential().len() <= config.thresholds.heavy(cur.k) {
            break;
        }
        let step = progress_step(&cur, config.thresholds)?;
        match step.progress {
            Progress::BranchGreedy | Progress::BranchPartners { .. } => {
                // Either branch exhibits k potential solution edges whose
                // deletion keeps the graph biconnected.
                stats.potential_after_phase_one = 0;
                return done(constant_yes(), Some(true), stats);
            }
            Progress::Irrelevant { edge } => {
                cur.frozen.insert(edge);
                cur = normalize(&cur)?;
                stats.irrelevant_frozen += 1;
            }
            Progress::Fallback => {
                stats.phase_one_fallback = true;
                break;
            }
        }
    }
    stats.potential_after_phase_one = cur.potential().len();

    loop {
        if let Some(yes) = rule_zero(&cur) {
            stats.rule_zero = true;
            return done(yes, Some(true), stats);
        }
        if cur.potential().is_empty() {
            return done(constant_no(cur.k), Some(false), stats);
        }
        let state = kernel_state(&cur, provider)?;
        stats.max_terminals = stats.max_terminals.max(state.aux.terminals.len());
        stats.max_cover = stats.max_cover.max(state.cover.len());
        if let Some((child, _)) = rule_one(&cur, &state.retained)? {
            stats.rule_one += 1;
            cur = child;
            continue;
        }
        if state.retained.len() == cur.graph.vertex_count() {
            break;
        }
        let (torso, added) = rule_two_torso(&cur, &state.retained)?;
        stats.torso_rounds += 1;
        stats.torso_edges += added.len();
        cur = torso;
    }
    let (graph, _, emap) = cur.graph.compacted();
    let mut weights = vec![0.0; graph.edge_bound()];
    let mut frozen = BTreeSet::new();
    for (old, new) in emap.iter().enumerate() {
        if let Some(new) = *new {
            weights[new] = cur.weights[old];
            if cur.frozen.contains(&old) {
                frozen.insert(new);
            }
        }
    }
    let out = WbdInstance::new(graph, weights, cur.k, cur.target, frozen)?;
    done(out, None, stats)
}
