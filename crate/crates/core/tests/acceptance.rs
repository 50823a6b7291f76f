use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use conndel::catalog::{all_graphs, biconnected_catalog, canonical_digraph_form, random_biconnected, random_digraph};
use conndel::criticality::{critical_set, is_critical, verify_mixed_cut};
use conndel::graph::{components, contract_sequence, local_connectivity, ArcId, Digraph, EdgeId, UndirectedGraph};
use conndel::hardness::{gen_pc_psc, gen_vd_psc, pc_vertex_count, vd_vertex_count};
use conndel::kernel::{kernelize, CutCovering, ExhaustiveProvider, KernelConfig, TrivialProvider};
use conndel::oracles::{oracle_is, oracle_marked_connectivity, oracle_pcpsc, oracle_vdpsc, oracle_wbd, OracleBudget};
use conndel::wbd::{mu, solve, SolverConfig, Thresholds, TraceEvent, WbdInstance, WEIGHT_EPS};
use conndel::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn budget() -> OracleBudget {
    OracleBudget::unlimited()
}

fn oracle_yes(inst: &WbdInstance) -> bool {
    oracle_wbd(inst, &budget()).expect("unlimited budget").is_some()
}

fn oracle_best(inst: &WbdInstance) -> f64 {
    let mut open = inst.clone();
    open.target = 0.0;
    oracle_wbd(&open, &budget()).expect("unlimited budget").map_or(0.0, |s| s.weight)
}

fn random_instance(rng: &mut ChaCha8Rng, g: UndirectedGraph, k: usize) -> WbdInstance {
    let weights: Vec<f64> = (0..g.edge_bound()).map(|_| rng.gen_range(0..=5) as f64).collect();
    let frozen: BTreeSet<EdgeId> = g.edge_ids().filter(|_| rng.gen_bool(0.15)).collect();
    WbdInstance::new(g, weights, k, 0.0, frozen).expect("valid instance")
}

fn solver_corpus(rng: &mut ChaCha8Rng) -> Vec<UndirectedGraph> {
    let mut graphs = biconnected_catalog(7);
    for _ in 0..500 {
        let n = rng.gen_range(8..=10);
        let extra = rng.gen_range(0..=6);
        graphs.push(random_biconnected(rng, n, extra));
    }
    graphs
}

/// Criteria 1 and 7 share their runs.
fn solver_sweep() -> (Outcome, Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let graphs = solver_corpus(&mut rng);
    let (mut runs, mut mismatches, mut yes) = (0usize, Vec::new(), 0usize);
    let (mut depth_bad, mut branch_bad, mut slow, mut slowest) = (0, 0, 0, Duration::ZERO);
    for (gi, g) in graphs.iter().enumerate() {
        for k in 0..=3 {
            let base = random_instance(&mut rng, g.clone(), k);
            let best = oracle_best(&base);
            let random_target = rng.gen_range(0..=15) as f64;
            for target in [best, best + 1.0, random_target] {
                let mut inst = base.clone();
                inst.target = target;
                let expect = oracle_wbd(&inst, &budget()).expect("unlimited budget");
                let report = match solve(&inst, &SolverConfig::default()) {
                    Ok(r) => r,
                    Err(e) => {
                        mismatches.push(format!("graph {gi} k={k}: {e}"));
                        continue;
                    }
                };
                runs += 1;
                let agree = match (&report.solution, &expect) {
                    (None, None) => true,
                    (Some(s), Some(o)) => inst.is_solution(&s.edges) && (s.weight - o.weight).abs() < WEIGHT_EPS,
                    _ => false,
                };
                if report.solution.is_some() {
                    yes += 1;
                }
                if !agree {
                    mismatches.push(format!("graph {gi} k={k} target={target}"));
                }
                depth_bad += usize::from(report.stats.max_depth > k);
                branch_bad += usize::from(report.stats.max_branch_factor > mu(k));
                slow += usize::from(report.elapsed >= Duration::from_secs(5));
                slowest = slowest.max(report.elapsed);
            }
        }
    }
    let first = outcome(
        mismatches.is_empty(),
        format!(
            "{} graphs, {runs} solves ({yes} yes), {} disagreements{}",
            graphs.len(),
            mismatches.len(),
            mismatches.first().map(|m| format!(", first: {m}")).unwrap_or_default()
        ),
    );
    let seventh = outcome(
        depth_bad == 0 && branch_bad == 0 && slow == 0,
        format!("depth violations {depth_bad}, branch-factor violations {branch_bad}, runs over 5 s {slow}, slowest {slowest:.2?}"),
    );
    (first, seventh)
}

fn full_existence() -> Outcome {
    let (mut pairs, mut bad) = (0usize, Vec::new());
    for (gi, g) in biconnected_catalog(7).iter().enumerate() {
        let critical = critical_set(g);
        let free: Vec<EdgeId> = g.edge_ids().filter(|e| !critical.contains(e)).collect();
        for &e in &free {
            let (x, y) = g.endpoints(e).unwrap();
            let ge = g.without_edge(e);
            for &f in free.iter().filter(|&&f| f != e) {
                pairs += 1;
                let newly = is_critical(&ge, f).unwrap();
                let gef = ge.without_edge(f);
                let mut cut = false;
                for w in g.vertices() {
                    let comps = components(&gef, |v| v != w);
                    if comps.len() >= 2 {
                        let a = *comps[0].iter().next().unwrap();
                        let b = *comps[1].iter().next().unwrap();
                        cut = verify_mixed_cut(&ge, a, b, f, w);
                        if !cut {
                            bad.push(format!("graph {gi}: separation by {{{f}, {w}}} not a mixed cut"));
                        }
                        break;
                    }
                }
                let participates = local_connectivity(&gef, x, y, 2) <= 1;
                if newly != cut || cut != participates {
                    bad.push(format!("graph {gi} e={e} e'={f}: {newly}/{cut}/{participates}"));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{pairs} ordered pairs, {} disagreements{}", bad.len(), bad.first().map(|m| format!(", first: {m}")).unwrap_or_default()),
    )
}

/// Instances where a long path between the pivot's endpoints hangs off one
/// hub vertex, so that lowered thresholds reach clean stretches. Returns the
/// heavy-set size covering exactly the pivot and the path.
fn fan_instance(rng: &mut ChaCha8Rng, n: usize, k: usize) -> (WbdInstance, usize) {
    // 0 = x, 1 = y, 2 = hub, 3.. = path interior.
    let mut g = UndirectedGraph::new(n);
    let pivot = g.add_edge(0, 1).unwrap();
    let mut path = vec![0];
    path.extend(3..n);
    path.push(1);
    let path_edges: Vec<EdgeId> = path.windows(2).map(|w| g.add_edge(w[0], w[1]).unwrap()).collect();
    for v in [0, 1].into_iter().chain(3..n) {
        g.add_edge(2, v).unwrap();
    }
    // An occasional chord bypasses part of the path.
    if rng.gen_bool(0.2) {
        let (u, v) = (rng.gen_range(3..n), rng.gen_range(3..n));
        if u != v && g.edge_between(u, v).is_none() {
            g.add_edge(u, v).unwrap();
        }
    }
    let mut weights: Vec<f64> = (0..g.edge_bound()).map(|_| rng.gen_range(0..=2) as f64).collect();
    weights[pivot] = 5.0;
    for &e in &path_edges {
        weights[e] = rng.gen_range(3..=4) as f64;
    }
    let heavy = 1 + path_edges.len();
    (WbdInstance::new(g, weights, k, 0.0, BTreeSet::new()).unwrap(), heavy)
}

struct KnobRuns {
    analyses: usize,
    violations: Vec<String>,
    firings: Vec<TraceEvent>,
    disagreements: Vec<String>,
}

fn knob_runs() -> KnobRuns {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut out = KnobRuns { analyses: 0, violations: Vec::new(), firings: Vec::new(), disagreements: Vec::new() };
    let mut instances = Vec::new();
    for g in biconnected_catalog(6) {
        for k in 2..=3 {
            instances.push((random_instance(&mut rng, g.clone(), k), None));
        }
    }
    for _ in 0..300 {
        let n = rng.gen_range(8..=10);
        let extra = rng.gen_range(0..=8);
        let k = rng.gen_range(2..=3);
        let g = random_biconnected(&mut rng, n, extra);
        instances.push((random_instance(&mut rng, g, k), None));
    }
    // A clean stretch needs 2k + 4 marked critical edges on the flow path,
    // which ten vertices allow for k = 2.
    for _ in 0..400 {
        let (inst, heavy) = fan_instance(&mut rng, 10, 2);
        instances.push((inst, Some(heavy)));
    }
    for (i, (inst, heavy)) in instances.iter().enumerate() {
        let heavy = heavy.unwrap_or_else(|| rng.gen_range(2..=inst.graph.edge_count().clamp(2, 12)));
        let config = SolverConfig { thresholds: Thresholds::Lowered { heavy, rich: 1 }, jobs: 1, trace: true };
        let report = match solve(inst, &config) {
            Ok(r) => r,
            Err(e) => {
                out.disagreements.push(format!("instance {i}: {e}"));
                continue;
            }
        };
        if (report.best.weight - oracle_best(inst)).abs() > WEIGHT_EPS {
            out.disagreements.push(format!("instance {i}: knob optimum {} differs", report.best.weight));
        }
        for ev in report.trace {
            out.analyses += 1;
            for v in ev.analysis.structural_violations(ev.k) {
                out.violations.push(format!("instance {i}: {v}"));
            }
            if ev.irrelevant.is_some() {
                out.firings.push(ev);
            }
        }
    }
    out
}

fn partner_structure(runs: &KnobRuns) -> Outcome {
    outcome(
        runs.analyses > 0 && runs.violations.is_empty(),
        format!(
            "{} partner analyses, {} violations{}",
            runs.analyses,
            runs.violations.len(),
            runs.violations.first().map(|m| format!(", first: {m}")).unwrap_or_default()
        ),
    )
}

fn irrelevant_soundness(runs: &KnobRuns) -> Outcome {
    let (mut checked, mut bad) = (0usize, Vec::new());
    for ev in runs.firings.iter().take(200) {
        let inst = ev.instance.as_ref().expect("firing keeps its instance");
        let e = ev.irrelevant.unwrap();
        let mut frozen = inst.clone();
        frozen.frozen.insert(e);
        checked += 1;
        if oracle_yes(inst) != oracle_yes(&frozen) || (oracle_best(inst) - oracle_best(&frozen)).abs() > WEIGHT_EPS {
            bad.push(format!("edge {e} at depth {}", ev.depth));
        }
    }
    let mut detail = format!("{checked} firings checked of {} found, {} changed answers", runs.firings.len(), bad.len());
    if !runs.disagreements.is_empty() {
        detail.push_str(&format!(", knob solver disagreements {} (first: {})", runs.disagreements.len(), runs.disagreements[0]));
    }
    outcome(checked >= 200 && bad.is_empty() && runs.disagreements.is_empty(), detail)
}

fn unit_answer(inst: &WbdInstance) -> bool {
    oracle_yes(inst)
}

fn kernel_equivalence() -> Outcome {
    let exhaustive = ExhaustiveProvider::default();
    let providers: [&dyn CutCovering; 2] = [&TrivialProvider, &exhaustive];
    let config = KernelConfig::default();
    let (mut runs, mut refused, mut bound_bad, mut bad) = (0usize, 0usize, 0usize, Vec::new());
    let mut check = |inst: &WbdInstance, provider: &dyn CutCovering, label: &str| {
        match kernelize(inst, provider, &config) {
            Ok(r) => {
                runs += 1;
                if r.stats.potential_after_phase_one > mu(inst.k) {
                    bound_bad += 1;
                }
                if unit_answer(inst) != unit_answer(&r.instance) {
                    bad.push(format!("{label} with {} provider", provider.name()));
                }
            }
            Err(Error::ProviderRefused { .. }) => refused += 1,
            Err(e) => bad.push(format!("{label}: {e}")),
        }
    };
    let catalog = biconnected_catalog(8);
    for (gi, g) in catalog.iter().enumerate() {
        for k in 0..=2 {
            let inst = WbdInstance::unweighted(g.clone(), k, BTreeSet::new()).unwrap();
            for p in providers {
                check(&inst, p, &format!("graph {gi} k={k}"));
            }
        }
    }
    // Exactly one potential solution edge keeps the terminal set within the
    // exhaustive provider's cap.
    let mut single = 0usize;
    for (gi, g) in biconnected_catalog(7).iter().enumerate().filter(|(i, _)| i % 3 == 0) {
        let critical = critical_set(g);
        for e in g.edge_ids().filter(|e| !critical.contains(e)).take(2) {
            let frozen: BTreeSet<EdgeId> = g.edge_ids().filter(|&f| f != e).collect();
            for k in 1..=2 {
                let inst = WbdInstance::unweighted(g.clone(), k, frozen.clone()).unwrap();
                single += 1;
                check(&inst, &exhaustive, &format!("graph {gi} single edge {e} k={k}"));
            }
        }
    }
    outcome(
        bad.is_empty() && bound_bad == 0,
        format!(
            "{} graphs, {runs} kernelizations ({single} single-edge instances), {refused} exhaustive refusals over |X| > {}, {} phase-one bound violations, {} answer changes{}",
            catalog.len(),
            exhaustive.max_terminals,
            bound_bad,
            bad.len(),
            bad.first().map(|m| format!(", first: {m}")).unwrap_or_default()
        ),
    )
}

fn hardness() -> Outcome {
    let (mut checked, mut bad) = (0usize, Vec::new());
    let graphs: Vec<(usize, UndirectedGraph)> = (1..=5).flat_map(|n| all_graphs(n).into_iter().map(move |g| (n, g))).collect();
    for (n, g) in &graphs {
        for k in 1..=2 {
            let is = oracle_is(g, k, &budget()).unwrap().is_some();
            let (d, map) = gen_pc_psc(g, k).unwrap();
            if d.vertex_count() != pc_vertex_count(*n, g.edge_count(), k) {
                bad.push(format!("pc vertex count n={n} m={} k={k}", g.edge_count()));
            }
            let witness = oracle_pcpsc(&d, k, &budget()).unwrap();
            checked += 1;
            if is != witness.is_some() {
                bad.push(format!("pc n={n} m={} k={k}: is={is}", g.edge_count()));
            }
            if let Some(w) = witness {
                match map.vertices_for(&w) {
                    Some(vs) if oracle_independent(g, &vs) => {}
                    _ => bad.push(format!("pc witness outside vertex arcs n={n} k={k}")),
                }
            }
            if *n <= 4 {
                let (d, map) = gen_vd_psc(g, k).unwrap();
                if d.vertex_count() != vd_vertex_count(*n, g.edge_count(), k) {
                    bad.push(format!("vd vertex count n={n} k={k}"));
                }
                let marked = oracle_marked_connectivity(&map.marked.graph, &map.marked.marked, k, &budget()).unwrap();
                let witness = oracle_vdpsc(&d, k, &budget()).unwrap();
                checked += 1;
                if is != marked.is_some() || is != witness.is_some() {
                    bad.push(format!("vd n={n} m={} k={k}: is={is}", g.edge_count()));
                }
                if let Some(w) = witness {
                    if w.iter().any(|v| !map.marked.originals.contains(v)) {
                        bad.push(format!("vd witness deletes a cycle vertex n={n} k={k}"));
                    }
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} graphs, {checked} reductions checked, {} failures{}",
            graphs.len(),
            bad.len(),
            bad.first().map(|m| format!(", first: {m}")).unwrap_or_default()
        ),
    )
}

fn oracle_independent(g: &UndirectedGraph, vs: &[usize]) -> bool {
    let set: BTreeSet<usize> = vs.iter().copied().collect();
    set.len() == vs.len() && vs.iter().all(|&u| vs.iter().all(|&v| g.edge_between(u, v).is_none()))
}

fn disjoint_arcs(rng: &mut ChaCha8Rng, d: &Digraph) -> Vec<ArcId> {
    let mut arcs: Vec<(ArcId, usize, usize)> = d.arcs().collect();
    arcs.shuffle(rng);
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for (a, u, v) in arcs {
        if !used.contains(&u) && !used.contains(&v) {
            used.insert(u);
            used.insert(v);
            out.push(a);
        }
    }
    out
}

fn contraction_order() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut digraphs, mut orders, mut bad) = (0usize, 0usize, Vec::new());
    while digraphs < 1000 {
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(0.15..0.6);
        let d = random_digraph(&mut rng, n, p);
        let mut set = disjoint_arcs(&mut rng, &d);
        if set.len() < 2 {
            continue;
        }
        set.truncate(rng.gen_range(2..=set.len()));
        digraphs += 1;
        let (base, _) = contract_sequence(&d, &set).expect("disjoint arcs survive");
        let base_form = canonical_digraph_form(&base);
        let base_arcs: BTreeSet<ArcId> = base.arcs().map(|(a, _, _)| a).collect();
        for _ in 0..3 {
            let mut order = set.clone();
            order.shuffle(&mut rng);
            orders += 1;
            match contract_sequence(&d, &order) {
                Ok((c, _)) => {
                    let arcs: BTreeSet<ArcId> = c.arcs().map(|(a, _, _)| a).collect();
                    if canonical_digraph_form(&c) != base_form || arcs != base_arcs {
                        bad.push(format!("digraph {digraphs}: order {order:?} differs"));
                    }
                }
                Err(e) => bad.push(format!("digraph {digraphs}: {e}")),
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{digraphs} digraphs, {orders} reorderings, {} mismatches", bad.len()),
    )
}

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let wanted = |id: &str| filter.is_empty() || filter.iter().any(|f| f == id);
    let mut failed = 0;
    let mut report = |id: &str, name: &str, started: Instant, o: Outcome| {
        println!("{} {id} {name}: {} [{:.1?}]", if o.pass { "PASS" } else { "FAIL" }, o.detail, started.elapsed());
        if !o.pass {
            failed += 1;
        }
    };
    if wanted("1") || wanted("7") {
        let t = Instant::now();
        let (first, seventh) = solver_sweep();
        report("1", "solver matches oracle", t, first);
        report("7", "search depth, branch factor and time", t, seventh);
    }
    if wanted("2") {
        let t = Instant::now();
        report("2", "criticality characterizations agree", t, full_existence());
    }
    if wanted("3") || wanted("4") {
        let t = Instant::now();
        let runs = knob_runs();
        report("3", "partner structure", t, partner_structure(&runs));
        let t = Instant::now();
        report("4", "irrelevant edges keep the answer", t, irrelevant_soundness(&runs));
    }
    if wanted("5") {
        let t = Instant::now();
        report("5", "kernel preserves answers", t, kernel_equivalence());
    }
    if wanted("6") {
        let t = Instant::now();
        report("6", "hardness reductions", t, hardness());
    }
    if wanted("8") {
        let t = Instant::now();
        report("8", "contraction order independence", t, contraction_order());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
