//! Branching search over the heavy set with enumeration at the leaves.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::criticality::PartnerAnalysis;
use crate::error::{Error, Result};
use crate::graph::{is_biconnected_without, EdgeId};

use super::{heavy, mu, normalize, progress_step, Progress, Solution, Thresholds, WbdInstance, WEIGHT_EPS};

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub thresholds: Thresholds,
    /// Worker threads for branch exploration; 0 or 1 runs sequentially.
    pub jobs: usize,
    /// Keep every partner analysis for inspection.
    pub trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { thresholds: Thresholds::Proven, jobs: 1, trace: false }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub max_depth: usize,
    pub max_branch_factor: usize,
    /// Largest heavy-set size used at any branching node.
    pub max_heavy_size: usize,
    pub irrelevant_edges: u64,
    pub max_irrelevant_per_node: usize,
    pub fallbacks: u64,
    pub enumerated_sets: u64,
}

impl SolveStats {
    fn absorb(&mut self, other: &SolveStats) {
        self.nodes += other.nodes;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.max_branch_factor = self.max_branch_factor.max(other.max_branch_factor);
        self.max_heavy_size = self.max_heavy_size.max(other.max_heavy_size);
        self.irrelevant_edges += other.irrelevant_edges;
        self.max_irrelevant_per_node = self.max_irrelevant_per_node.max(other.max_irrelevant_per_node);
        self.fallbacks += other.fallbacks;
        self.enumerated_sets += other.enumerated_sets;
    }
}

#[derive(Clone, Debug)]
pub struct TraceEvent {
    pub depth: usize,
    pub k: usize,
    pub analysis: PartnerAnalysis,
    pub stretch: Option<(usize, usize)>,
    /// Edge frozen as irrelevant, if this analysis produced one.
    pub irrelevant: Option<EdgeId>,
    /// Instance right before the edge was frozen.
    pub instance: Option<WbdInstance>,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    /// Maximum-weight deletion set, when it reaches the target.
    pub solution: Option<Solution>,
    /// Maximum-weight deletion set regardless of the target.
    pub best: Solution,
    pub stats: SolveStats,
    pub trace: Vec<TraceEvent>,
    pub elapsed: Duration,
}

/// Exhaustive search over subsets of at most `k` potential solution edges,
/// returning the heaviest feasible one (possibly empty).
fn enumerate_best(inst: &WbdInstance, stats: &mut SolveStats) -> Solution {
    let f = inst.potential();
    let mut best = Solution::empty();
    let mut chosen: Vec<EdgeId> = Vec::new();
    fn rec(
        inst: &WbdInstance,
        f: &[EdgeId],
        start: usize,
        chosen: &mut Vec<EdgeId>,
        best: &mut Solution,
        stats: &mut SolveStats,
    ) {
        for i in start..f.len() {
            chosen.push(f[i]);
            stats.enumerated_sets += 1;
            if is_biconnected_without(&inst.graph, |e| chosen.contains(&e)) {
                let cand = inst.solution(chosen);
                if cand.better_than(best) {
                    *best = cand;
                }
            }
            if chosen.len() < inst.k {
                rec(inst, f, i + 1, chosen, best, stats);
            }
            chosen.pop();
        }
    }
    if inst.k > 0 {
        rec(inst, &f, 0, &mut chosen, &mut best, stats);
    }
    best
}

/// Checks all subsets of size at most `k`; requires at most `mu(k)`
/// potential solution edges.
pub fn enumerate_small(inst: &WbdInstance) -> Result<Option<Solution>> {
    let f = inst.potential().len();
    if f > mu(inst.k) {
        return Err(Error::inconsistency(format!("enumeration called with {f} > mu({}) potential edges", inst.k)));
    }
    let best = enumerate_best(inst, &mut SolveStats::default());
    Ok((best.weight + WEIGHT_EPS >= inst.target).then_some(best))
}

struct Search<'a> {
    config: &'a SolverConfig,
}

struct NodeResult {
    best: Solution,
    stats: SolveStats,
    trace: Vec<TraceEvent>,
}

impl Search<'_> {
    fn node(&self, inst: WbdInstance, depth: usize) -> Result<NodeResult> {
        let mut stats = SolveStats { nodes: 1, max_depth: depth, ..Default::default() };
        let mut trace = Vec::new();
        let mut inst = inst;
        let mut irrelevant_here = 0;
        let heavy_size = self.config.thresholds.heavy(inst.k);
        let best = loop {
            if inst.k == 0 {
                break Solution::empty();
            }
            if inst.potential().len() <= heavy_size {
                break enumerate_best(&inst, &mut stats);
            }
            let outcome = progress_step(&inst, self.config.thresholds)?;
            let irrelevant = match outcome.progress {
                Progress::Irrelevant { edge } => Some(edge),
                _ => None,
            };
            if self.config.trace {
                for (analysis, stretch) in outcome.analyses {
                    trace.push(TraceEvent {
                        depth,
                        k: inst.k,
                        analysis,
                        stretch,
                        irrelevant: stretch.and(irrelevant),
                        instance: stretch.and(irrelevant).map(|_| inst.clone()),
                    });
                }
            }
            match outcome.progress {
                Progress::Irrelevant { edge } => {
                    irrelevant_here += 1;
                    if irrelevant_here > inst.graph.edge_bound() {
                        return Err(Error::inconsistency("more irrelevant edges than edges"));
                    }
                    inst.frozen.insert(edge);
                    inst.weights[edge] = 0.0;
                    inst = normalize(&inst)?;
                }
                Progress::Fallback => {
                    stats.fallbacks += 1;
                    break enumerate_best(&inst, &mut stats);
                }
                Progress::BranchGreedy | Progress::BranchPartners { .. } => {
                    let result = self.branch(&inst, depth, heavy_size)?;
                    stats.absorb(&result.stats);
                    trace.extend(result.trace);
                    break result.best;
                }
            }
        };
        stats.irrelevant_edges += irrelevant_here as u64;
        stats.max_irrelevant_per_node = stats.max_irrelevant_per_node.max(irrelevant_here);
        Ok(NodeResult { best, stats, trace })
    }

    fn branch(&self, inst: &WbdInstance, depth: usize, heavy_size: usize) -> Result<NodeResult> {
        let choices: Vec<EdgeId> = heavy(inst, heavy_size)
            .into_iter()
            .filter(|&e| is_biconnected_without(&inst.graph, |f| f == e))
            .collect();
        let mut stats = SolveStats {
            max_branch_factor: choices.len(),
            max_heavy_size: heavy_size,
            ..Default::default()
        };
        let child = |e: EdgeId| -> Result<(EdgeId, NodeResult)> {
            let next = normalize(&inst.child_without(e))?;
            Ok((e, self.node(next, depth + 1)?))
        };
        let results: Vec<Result<(EdgeId, NodeResult)>> = if self.config.jobs > 1 {
            choices.par_iter().map(|&e| child(e)).collect()
        } else {
            choices.iter().map(|&e| child(e)).collect()
        };
        let mut best = Solution::empty();
        let mut trace = Vec::new();
        for r in results {
            let (e, res) = r?;
            stats.absorb(&res.stats);
            trace.extend(res.trace);
            let mut edges = res.best.edges.clone();
            edges.push(e);
            let cand = inst.solution(&edges);
            if cand.better_than(&best) {
                best = cand;
            }
        }
        Ok(NodeResult { best, stats, trace })
    }
}

/// Maximum-weight deletion set of at most `k` edges; the instance is a
/// yes-instance exactly when that weight reaches the target.
pub fn solve(inst: &WbdInstance, config: &SolverConfig) -> Result<SolveReport> {
    let start = Instant::now();
    let normalized = normalize(inst)?;
    let run = || Search { config }.node(normalized.clone(), 0);
    let result = if config.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::InvalidInput(format!("cannot start worker pool: {e}")))?;
        pool.install(run)?
    } else {
        run()?
    };
    let best = result.best;
    if !normalized.is_feasible(&best.edges) {
        return Err(Error::inconsistency(format!("solver produced an infeasible set {:?}", best.edges)));
    }
    let solution = (best.weight + WEIGHT_EPS >= inst.target).then(|| best.clone());
    Ok(SolveReport { solution, best, stats: result.stats, trace: result.trace, elapsed: start.elapsed() })
}
