use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conndel::graph::{contract_sequence, flow_calls, is_strongly_connected, Digraph, EdgeId, UndirectedGraph};
use conndel::hardness::{gen_pc_psc, gen_vd_psc};
use conndel::io::{
    parse_digraph, parse_pair_witness, parse_vertex_witness, parse_weighted_graph, write_digraph,
    write_weighted_graph, WeightedGraph,
};
use conndel::kernel::{kernelize, CutCovering, ExhaustiveProvider, KernelConfig, TrivialProvider};
use conndel::oracles::{oracle_is, oracle_pcpsc, oracle_vdpsc, oracle_wbd, OracleBudget};
use conndel::wbd::{solve, SolverConfig, WbdInstance};
use conndel::Error;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Biconnectivity deletion solver, kernel and hardness tooling.
#[derive(Parser)]
#[command(name = "conndel", version)]
struct Cli {
    /// Omit wall-clock time from reports so they are byte-stable.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Reserved for randomized components; every current algorithm is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a weighted instance and report a maximum-weight deletion set.
    Solve {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Target weight; defaults to k.
        #[arg(long)]
        target: Option<f64>,
        /// Include every partner analysis in the report.
        #[arg(long)]
        explain: bool,
        /// Cross-check the answer with the brute-force oracle.
        #[arg(long)]
        oracle_check: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Reduce a unit-weight instance to an equivalent small one.
    Kernelize {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ProviderKind::Trivial)]
        provider: ProviderKind,
        /// Largest terminal set the exhaustive provider accepts.
        #[arg(long, default_value_t = ExhaustiveProvider::default().max_terminals)]
        max_x: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a digraph instance from an Independent Set instance.
    Gen {
        kind: GenKind,
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Write the digraph here and print a report; without it the digraph goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve by exhaustive enumeration.
    Oracle {
        kind: OracleKind,
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        target: Option<f64>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a witness file against an instance.
    Verify {
        kind: VerifyKind,
        input: PathBuf,
        witness: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        target: Option<f64>,
    },
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = OracleBudget::default().max_vertices)]
    max_vertices: usize,
    #[arg(long, default_value_t = OracleBudget::default().max_edges)]
    max_edges: usize,
    #[arg(long, default_value_t = OracleBudget::default().max_k)]
    max_k: usize,
    #[arg(long, default_value_t = OracleBudget::default().max_candidates)]
    max_candidates: u64,
}

impl BudgetArgs {
    fn budget(&self) -> OracleBudget {
        OracleBudget {
            max_vertices: self.max_vertices,
            max_edges: self.max_edges,
            max_k: self.max_k,
            max_candidates: self.max_candidates,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProviderKind {
    Trivial,
    Exhaustive,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Pcpsc,
    Vdpsc,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Wbd,
    Pcpsc,
    Vdpsc,
    Is,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Wbd,
    Pcpsc,
    Vdpsc,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) | Error::ProviderRefused { .. } => 3,
            Error::InternalInconsistency(_) => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

struct Input {
    text: String,
    digest: String,
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let bytes = fs::read(path).map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| fail(2, format!("{} is not UTF-8 text", path.display())))?;
    Ok(Input { text, digest })
}

fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| fail(2, format!("cannot write {}: {e}", path.display())))
}

fn edge_pairs(g: &UndirectedGraph, edges: &[EdgeId]) -> Value {
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    Value::Array(
        sorted
            .iter()
            .map(|&e| {
                let (u, v) = g.endpoints(e).expect("witness edge exists");
                json!([u + 1, v + 1])
            })
            .collect(),
    )
}

fn answer(yes: bool) -> Value {
    Value::from(if yes { "yes" } else { "no" })
}

/// Report under construction plus the exit code it implies.
struct Report {
    fields: Map<String, Value>,
    code: u8,
}

impl Report {
    fn new(subcommand: &str, digest: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("subcommand".into(), subcommand.into());
        fields.insert("input_digest".into(), digest.into());
        Report { fields, code: 0 }
    }

    fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.into(), value.into());
    }
}

fn instance_from(input: &Input, k: usize, target: Option<f64>) -> Result<WbdInstance, Failure> {
    let wg = parse_weighted_graph(&input.text)?;
    Ok(WbdInstance::from_weighted(wg, k, target.unwrap_or(k as f64))?)
}

fn cmd_solve(
    path: &Path,
    k: usize,
    target: Option<f64>,
    explain: bool,
    oracle_check: bool,
    jobs: usize,
    budget: OracleBudget,
) -> Result<Report, Failure> {
    let input = read_input(path)?;
    let inst = instance_from(&input, k, target)?;
    let config = SolverConfig { jobs, trace: explain, ..SolverConfig::default() };
    let flows_before = flow_calls();
    let result = solve(&inst, &config).map_err(|e| match e {
        Error::NotBiconnected => fail(2, "input graph is not biconnected"),
        other => other.into(),
    })?;
    let mut report = Report::new("solve", &input.digest);
    report.set("answer", answer(result.solution.is_some()));
    report.set(
        "witness",
        result.solution.as_ref().map_or(Value::Null, |s| edge_pairs(&inst.graph, &s.edges)),
    );
    report.set("weight", result.solution.as_ref().map_or(Value::Null, |s| s.weight.into()));
    report.set("best_weight", result.best.weight);
    report.set("k", k);
    report.set("target", inst.target);
    report.set(
        "counters",
        json!({
            "branch_nodes": result.stats.nodes,
            "max_depth": result.stats.max_depth,
            "max_branch_factor": result.stats.max_branch_factor,
            "irrelevant_edges": result.stats.irrelevant_edges,
            "enumerated_sets": result.stats.enumerated_sets,
            "flow_calls": flow_calls() - flows_before,
        }),
    );
    report.set("wall_time_ms", result.elapsed.as_secs_f64() * 1e3);
    if explain {
        let dumps: Vec<Value> = result.trace.iter().map(|ev| ev.analysis.dump(ev.stretch).into()).collect();
        report.set("explain", dumps);
    }
    if oracle_check {
        match oracle_wbd(&inst, &budget) {
            Ok(expected) => {
                let agrees = expected.is_some() == result.solution.is_some();
                report.set("oracle_agrees", agrees);
                if !agrees {
                    report.code = 4;
                }
            }
            Err(Error::BudgetExceeded(why)) => report.set("oracle_agrees", format!("skipped: {why}")),
            Err(e) => return Err(e.into()),
        }
    }
    if report.code == 0 && result.solution.is_none() {
        report.code = 1;
    }
    Ok(report)
}

fn cmd_kernelize(
    path: &Path,
    k: usize,
    provider: ProviderKind,
    max_x: usize,
    out: Option<&Path>,
) -> Result<Report, Failure> {
    let input = read_input(path)?;
    let inst = instance_from(&input, k, None)?;
    let exhaustive = ExhaustiveProvider { max_terminals: max_x };
    let provider: &dyn CutCovering = match provider {
        ProviderKind::Trivial => &TrivialProvider,
        ProviderKind::Exhaustive => &exhaustive,
    };
    let started = Instant::now();
    let result = kernelize(&inst, provider, &KernelConfig::default())?;
    let out_inst = &result.instance;
    let wg = WeightedGraph { graph: out_inst.graph.clone(), weights: out_inst.weights.clone(), frozen: out_inst.frozen.clone() };
    let text = format!("# k {}\n{}", out_inst.k, write_weighted_graph(&wg));
    let mut report = Report::new("kernelize", &input.digest);
    report.set("answer", result.decided.map_or(Value::Null, answer));
    report.set("provider", result.provider);
    report.set("k", out_inst.k);
    let s = &result.stats;
    report.set(
        "stats",
        json!({
            "vertices_before": s.vertices_before,
            "vertices_after": s.vertices_after,
            "potential_before": s.potential_before,
            "potential_after_phase_one": s.potential_after_phase_one,
            "potential_after": s.potential_after,
            "irrelevant_frozen": s.irrelevant_frozen,
            "rule_zero": s.rule_zero,
            "rule_one": s.rule_one,
            "torso_rounds": s.torso_rounds,
            "torso_edges": s.torso_edges,
            "max_terminals": s.max_terminals,
            "max_cover": s.max_cover,
        }),
    );
    report.set("wall_time_ms", started.elapsed().as_secs_f64() * 1e3);
    match out {
        Some(p) => {
            write_output(p, &text)?;
            report.set("output", p.display().to_string());
        }
        None => report.set("instance", text),
    }
    Ok(report)
}

fn cmd_gen(kind: GenKind, path: &Path, k: usize, out: Option<&Path>) -> Result<Option<Report>, Failure> {
    let input = read_input(path)?;
    let g = parse_weighted_graph(&input.text)?.graph;
    let started = Instant::now();
    let (d, labels, name) = match kind {
        GenKind::Pcpsc => {
            let (d, map) = gen_pc_psc(&g, k)?;
            (d, map.labels, "pcpsc")
        }
        GenKind::Vdpsc => {
            let (d, map) = gen_vd_psc(&g, k)?;
            (d, map.labels, "vdpsc")
        }
    };
    let text = format!("# {name} instance, k {k}\n{}", write_digraph(&d, &labels));
    let Some(p) = out else {
        print!("{text}");
        return Ok(None);
    };
    write_output(p, &text)?;
    let mut report = Report::new(&format!("gen {name}"), &input.digest);
    report.set("vertices", d.vertex_count());
    report.set("arcs", d.arc_count());
    report.set("k", k);
    report.set("output", p.display().to_string());
    report.set("wall_time_ms", started.elapsed().as_secs_f64() * 1e3);
    Ok(Some(report))
}

fn arc_pairs(d: &Digraph, arcs: &[usize]) -> Value {
    Value::Array(
        arcs.iter()
            .map(|&a| {
                let (u, v) = d.arc(a).expect("witness arc exists");
                json!([u + 1, v + 1])
            })
            .collect(),
    )
}

fn vertex_list(vs: &[usize]) -> Value {
    Value::Array(vs.iter().map(|v| json!(v + 1)).collect())
}

fn cmd_oracle(
    kind: OracleKind,
    path: &Path,
    k: usize,
    target: Option<f64>,
    budget: OracleBudget,
) -> Result<Report, Failure> {
    let input = read_input(path)?;
    let started = Instant::now();
    let (name, witness) = match kind {
        OracleKind::Wbd => {
            let inst = instance_from(&input, k, target)?;
            let sol = oracle_wbd(&inst, &budget)?;
            ("wbd", sol.map(|s| edge_pairs(&inst.graph, &s.edges)))
        }
        OracleKind::Is => {
            let g = parse_weighted_graph(&input.text)?.graph;
            ("is", oracle_is(&g, k, &budget)?.map(|vs| vertex_list(&vs)))
        }
        OracleKind::Pcpsc => {
            let d = parse_digraph(&input.text)?;
            ("pcpsc", oracle_pcpsc(&d, k, &budget)?.map(|arcs| arc_pairs(&d, &arcs)))
        }
        OracleKind::Vdpsc => {
            let d = parse_digraph(&input.text)?;
            ("vdpsc", oracle_vdpsc(&d, k, &budget)?.map(|vs| vertex_list(&vs)))
        }
    };
    let mut report = Report::new(&format!("oracle {name}"), &input.digest);
    report.set("answer", answer(witness.is_some()));
    report.set("k", k);
    report.code = if witness.is_some() { 0 } else { 1 };
    report.set("witness", witness.unwrap_or(Value::Null));
    report.set("wall_time_ms", started.elapsed().as_secs_f64() * 1e3);
    Ok(report)
}

fn cmd_verify(
    kind: VerifyKind,
    path: &Path,
    witness_path: &Path,
    k: usize,
    target: Option<f64>,
) -> Result<Report, Failure> {
    let input = read_input(path)?;
    let witness = read_input(witness_path)?;
    let (name, reason) = match kind {
        VerifyKind::Wbd => {
            let inst = instance_from(&input, k, target)?;
            let pairs = parse_pair_witness(&witness.text, "e", inst.graph.vertex_bound())?;
            let edges: Option<Vec<EdgeId>> = pairs.iter().map(|&(u, v)| inst.graph.edge_between(u, v)).collect();
            let reason = match edges {
                None => Some("witness names a non-edge".to_string()),
                Some(edges) if !inst.is_feasible(&edges) => {
                    Some("not a biconnectivity deletion set of size at most k avoiding frozen edges".into())
                }
                Some(edges) if !inst.is_solution(&edges) => Some("weight below target".into()),
                Some(_) => None,
            };
            ("wbd", reason)
        }
        VerifyKind::Pcpsc => {
            let d = parse_digraph(&input.text)?;
            let pairs = parse_pair_witness(&witness.text, "a", d.vertex_bound())?;
            let arcs: Option<Vec<usize>> = pairs.iter().map(|&(u, v)| d.arc_between(u, v)).collect();
            let reason = match arcs {
                None => Some("witness names a non-arc".to_string()),
                Some(arcs) if arcs.len() != k => Some(format!("expected exactly {k} arcs, got {}", arcs.len())),
                Some(arcs) => match contract_sequence(&d, &arcs) {
                    Err(e) => Some(e.to_string()),
                    Ok((c, _)) if !is_strongly_connected(&c) => Some("result is not strongly connected".into()),
                    Ok(_) => None,
                },
            };
            ("pcpsc", reason)
        }
        VerifyKind::Vdpsc => {
            let d = parse_digraph(&input.text)?;
            let vs = parse_vertex_witness(&witness.text, d.vertex_bound())?;
            let distinct: BTreeSet<usize> = vs.iter().copied().collect();
            let reason = if distinct.len() != vs.len() || vs.len() != k {
                Some(format!("expected exactly {k} distinct vertices"))
            } else if !is_strongly_connected(&d.without_vertices(vs.iter().copied())) {
                Some("result is not strongly connected".into())
            } else {
                None
            };
            ("vdpsc", reason)
        }
    };
    let mut report = Report::new(&format!("verify {name}"), &input.digest);
    report.set("answer", if reason.is_none() { "valid" } else { "invalid" });
    report.set("reason", reason.clone().map_or(Value::Null, Value::from));
    report.code = if reason.is_none() { 0 } else { 1 };
    Ok(report)
}

fn run(cli: &Cli) -> Result<Option<Report>, Failure> {
    let report = match &cli.command {
        Command::Solve { input, k, target, explain, oracle_check, jobs, budget } => {
            cmd_solve(input, *k, *target, *explain, *oracle_check, *jobs, budget.budget())?
        }
        Command::Kernelize { input, k, provider, max_x, out } => {
            cmd_kernelize(input, *k, *provider, *max_x, out.as_deref())?
        }
        Command::Gen { kind, input, k, out } => return cmd_gen(*kind, input, *k, out.as_deref()),
        Command::Oracle { kind, input, k, target, budget } => cmd_oracle(*kind, input, *k, *target, budget.budget())?,
        Command::Verify { kind, input, witness, k, target } => cmd_verify(*kind, input, witness, *k, *target)?,
    };
    Ok(Some(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(mut report)) => {
            if cli.no_timing {
                report.fields.remove("wall_time_ms");
            }
            report.set("seed", cli.seed);
            let text = serde_json::to_string_pretty(&Value::Object(report.fields)).expect("report serializes");
            println!("{text}");
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
