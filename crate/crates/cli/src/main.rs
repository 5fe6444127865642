use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use edgebip::branching::{EngineConfig, Stats, TraceRecord};
use edgebip::generate::planted;
use edgebip::io::{parse_graph, parse_termsep, write_graph};
use edgebip::oracle::oracle_min_bipartization;
use edgebip::pipeline::{
    baseline_guo, certify, fit_exponential_base, min_edge_bipartization, solve_edge_bipartization, SolverKind,
    TermSepSolver,
};
use edgebip::{Error, MultiGraph, TermSepInstance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "edgebip", version, about = "Exact edge bipartization solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Input file or directory.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write records here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// branching, guo or oracle.
    #[arg(long, default_value = "branching")]
    engine: String,
    /// Emit one trace record per search node.
    #[arg(long)]
    trace: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Delete at most k edges to make a graph bipartite; without --k, find the minimum.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<i64>,
    },
    /// Solve a terminal separation instance; --k overrides the file's budget.
    Termsep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<i64>,
    },
    /// Write a planted instance: a random bipartite graph plus k edges inside its parts.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Edge probability across the bipartition.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve every instance in a directory and fit the growth of the search tree.
    Bench {
        #[command(flatten)]
        common: Common,
    },
    /// Check solver answers against the reference solvers.
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Serialize)]
struct SolveRecord {
    kind: &'static str,
    input: String,
    engine: String,
    k: Option<i64>,
    feasible: bool,
    cost: Option<usize>,
    solution: Option<Vec<usize>>,
    nodes: u64,
    leaves: u64,
    violations: u64,
    assertion_failures: u64,
    rules: BTreeMap<String, u64>,
    wall_ms: f64,
}

#[derive(Serialize)]
struct TermSepRecord {
    kind: &'static str,
    input: String,
    engine: String,
    k: i64,
    feasible: bool,
    cost: Option<u64>,
    a: Option<Vec<u32>>,
    b: Option<Vec<u32>>,
    nodes: u64,
    violations: u64,
    wall_ms: f64,
}

#[derive(Serialize)]
struct TraceLine<'a> {
    kind: &'static str,
    depth: usize,
    tag: String,
    claimed: Option<String>,
    realized: Vec<Option<String>>,
    mu_before: f64,
    mu_after: &'a [f64],
    violation: Option<String>,
}

#[derive(Serialize)]
struct BenchRow {
    kind: &'static str,
    input: String,
    n: usize,
    m: usize,
    optimum: usize,
    nodes: u64,
    leaves: u64,
    wall_ms: f64,
}

#[derive(Serialize)]
struct BenchSummary {
    kind: &'static str,
    instances: usize,
    fitted_base: Option<f64>,
}

#[derive(Serialize)]
struct VerifyRow {
    kind: &'static str,
    input: String,
    status: &'static str,
    solver: Option<i64>,
    reference: Option<i64>,
    note: Option<String>,
}

struct Output {
    sink: Box<dyn Write>,
}

impl Output {
    fn new(path: Option<&Path>) -> Result<Self> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(fs::File::create(p).with_context(|| format!("cannot create {}", p.display()))?),
            None => Box::new(std::io::stdout()),
        };
        Ok(Output { sink })
    }

    fn record<T: Serialize>(&mut self, value: &T) -> Result<()> {
        serde_json::to_writer(&mut self.sink, value)?;
        writeln!(self.sink)?;
        Ok(())
    }

    fn trace(&mut self, records: &[TraceRecord]) -> Result<()> {
        for r in records {
            self.record(&TraceLine {
                kind: "trace",
                depth: r.depth,
                tag: r.tag.to_string(),
                claimed: r.claimed.map(|c| c.to_string()),
                realized: r.realized.iter().map(|g| g.map(|g| g.to_string())).collect(),
                mu_before: r.mu_before,
                mu_after: &r.mu_after,
                violation: r.violation.as_ref().map(|v| v.to_string()),
            })?;
        }
        Ok(())
    }
}

fn rule_counts(stats: &Stats) -> BTreeMap<String, u64> {
    stats.rules.iter().map(|(r, c)| (r.name().to_string(), *c)).collect()
}

fn input_path(common: &Common) -> Result<&Path> {
    common.input.as_deref().context("--input is required")
}

fn read_graph(path: &Path) -> Result<MultiGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("{}", path.display()))
}

fn read_termsep(path: &Path) -> Result<TermSepInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_termsep(&text).with_context(|| format!("{}", path.display()))
}

fn solver(common: &Common) -> Result<TermSepSolver> {
    let kind: SolverKind = common.engine.parse()?;
    Ok(TermSepSolver::new(kind, EngineConfig { trace: common.trace, ..Default::default() }))
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn cmd_solve(common: &Common, k: Option<i64>) -> Result<bool> {
    if k.is_some_and(|k| k < 0) {
        bail!("--k must be non-negative");
    }
    let path = input_path(common)?;
    let g = read_graph(path)?;
    let mut out = Output::new(common.out.as_deref())?;
    let mut s = solver(common)?;
    let start = Instant::now();
    let solution = match k {
        Some(k) => solve_edge_bipartization(&g, k, &mut s)?,
        None => Some(min_edge_bipartization(&g, &mut s)?),
    };
    if let Some(sol) = &solution {
        if !certify(&g, sol) {
            bail!("solution failed certification");
        }
    }
    let wall_ms = ms(start);
    out.trace(&s.engine.trace)?;
    let stats = s.stats();
    out.record(&SolveRecord {
        kind: "solve",
        input: path.display().to_string(),
        engine: common.engine.clone(),
        k,
        feasible: solution.is_some(),
        cost: solution.as_ref().map(|s| s.len()),
        solution: solution.as_ref().map(|s| s.iter().copied().collect()),
        nodes: stats.nodes,
        leaves: stats.leaves,
        violations: stats.violations(),
        assertion_failures: stats.assertion_failures,
        rules: rule_counts(stats),
        wall_ms,
    })?;
    Ok(solution.is_some())
}

fn cmd_termsep(common: &Common, k: Option<i64>) -> Result<bool> {
    let path = input_path(common)?;
    let mut inst = read_termsep(path)?;
    if let Some(k) = k {
        inst.k = k;
    }
    let mut out = Output::new(common.out.as_deref())?;
    let mut s = solver(common)?;
    let start = Instant::now();
    let sep = s.solve(&inst)?;
    let wall_ms = ms(start);
    out.trace(&s.engine.trace)?;
    let ids = |set: &edgebip::VertexSet| set.iter().map(|v| v.0 + 1).collect::<Vec<u32>>();
    out.record(&TermSepRecord {
        kind: "termsep",
        input: path.display().to_string(),
        engine: common.engine.clone(),
        k: inst.k,
        feasible: sep.is_some(),
        cost: sep.as_ref().map(|s| s.cost2(&inst.graph)).transpose()?.map(|c| c / 2),
        a: sep.as_ref().map(|s| ids(&s.a)),
        b: sep.as_ref().map(|s| ids(&s.b)),
        nodes: s.stats().nodes,
        violations: s.stats().violations(),
        wall_ms,
    })?;
    Ok(sep.is_some())
}

fn cmd_generate(seed: u64, n: usize, k: usize, p: f64, out: Option<&Path>) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        bail!("--p must lie in [0, 1]");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = planted(&mut rng, n, p, k);
    let text = format!("c planted seed={seed} n={n} k={k} p={p}\n{}", write_graph(&g));
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Instance files in a directory, sorted by name.
fn instances(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot list {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("graph" | "termsep")))
        .collect();
    files.sort();
    Ok(files)
}

fn is_termsep(path: &Path) -> bool {
    path.extension().and_then(|e| e.to_str()) == Some("termsep")
}

fn cmd_bench(common: &Common) -> Result<()> {
    let mut out = Output::new(common.out.as_deref())?;
    let mut points = Vec::new();
    let mut count = 0;
    for path in instances(input_path(common)?)? {
        if is_termsep(&path) {
            continue;
        }
        let g = read_graph(&path)?;
        let start = Instant::now();
        let optimum = min_edge_bipartization(&g, &mut solver(common)?)?.len();
        let mut s = solver(common)?;
        solve_edge_bipartization(&g, optimum as i64, &mut s)?;
        let row = BenchRow {
            kind: "bench",
            input: path.display().to_string(),
            n: g.vertex_count(),
            m: g.edge_count(),
            optimum,
            nodes: s.stats().nodes,
            leaves: s.stats().leaves,
            wall_ms: ms(start),
        };
        points.push((optimum as f64, row.leaves.max(1) as f64));
        out.record(&row)?;
        count += 1;
    }
    out.record(&BenchSummary { kind: "bench-summary", instances: count, fitted_base: fit_exponential_base(&points) })
}

/// Optimum of a terminal separation instance under a solver.
fn termsep_optimum(inst: &TermSepInstance, s: &mut TermSepSolver) -> Result<i64> {
    Ok(s.optimum(inst)?.0)
}

fn verify_one(path: &Path, common: &Common) -> Result<VerifyRow> {
    let row = |status, solver, reference, note| VerifyRow {
        kind: "verify",
        input: path.display().to_string(),
        status,
        solver,
        reference,
        note,
    };
    let (got, want) = if is_termsep(path) {
        let inst = read_termsep(path)?;
        let got = termsep_optimum(&inst, &mut solver(common)?)?;
        let mut best = None;
        let mut k = 0;
        while best.is_none() {
            let mut probe = inst.clone();
            probe.k = k;
            match baseline_guo(&probe) {
                Ok(Some(_)) => best = Some(k),
                Ok(None) => k += 1,
                Err(Error::Guard(msg)) => return Ok(row("skipped", Some(got), None, Some(msg))),
                Err(e) => return Err(e.into()),
            }
        }
        (got, best.unwrap())
    } else {
        let g = read_graph(path)?;
        let sol = min_edge_bipartization(&g, &mut solver(common)?)?;
        if !certify(&g, &sol) {
            return Ok(row("mismatch", Some(sol.len() as i64), None, Some("certification failed".into())));
        }
        let want = match oracle_min_bipartization(&g) {
            Ok((size, _)) => size,
            Err(Error::Guard(_)) => min_edge_bipartization(&g, &mut TermSepSolver::new(SolverKind::Guo, EngineConfig::default()))
                .map(|s| s.len())
                .map_err(|e| anyhow::anyhow!(e))?,
            Err(e) => return Err(e.into()),
        };
        (sol.len() as i64, want as i64)
    };
    let status = if got == want { "ok" } else { "mismatch" };
    Ok(row(status, Some(got), Some(want), None))
}

fn cmd_verify(common: &Common) -> Result<bool> {
    let mut out = Output::new(common.out.as_deref())?;
    let mut all_ok = true;
    for path in instances(input_path(common)?)? {
        let r = verify_one(&path, common)?;
        if r.status == "skipped" {
            eprintln!("skipping {}: {}", path.display(), r.note.as_deref().unwrap_or(""));
        }
        all_ok &= r.status != "mismatch";
        out.record(&r)?;
    }
    Ok(all_ok)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Solve { common, k } => cmd_solve(&common, k),
        Command::Termsep { common, k } => cmd_termsep(&common, k),
        Command::Generate { seed, n, k, p, out } => cmd_generate(seed, n, k, p, out.as_deref()).map(|_| true),
        Command::Bench { common } => cmd_bench(&common).map(|_| true),
        Command::Verify { common } => cmd_verify(&common),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
