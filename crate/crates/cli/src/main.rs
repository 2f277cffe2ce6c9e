use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use critid::classify::{classify, ClassificationReport};
use critid::critical::{algebraic_corank, critical_ideal, forb_search, CorankResult, GammaCache};
use critid::graph::families::*;
use critid::graph::{emit_graph6, parse_edge_list, parse_graph6, Graph};
use critid::ideal::{groebner_with_budget, Budget, Triviality};
use critid::snf::critical_group;
use critid::tables::Family;
use critid::verify::{verify_all, VerificationReport};

#[derive(Parser)]
#[command(
    name = "critid",
    version,
    about = "Critical ideals, algebraic co-rank and critical groups of graphs"
)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Algebraic co-rank with per-index triviality and a witness.
    Gamma(GraphInput),
    /// Generators of I_k, optionally with a Groebner basis.
    Ideal {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short, long)]
        k: i64,
        #[arg(long)]
        groebner: bool,
    },
    /// Invariant factors of the critical group.
    Group(GraphInput),
    /// Membership in the co-rank <= 1, <= 2 classes and in G1, G2.
    Classify(GraphInput),
    /// Minimal forbidden induced subgraphs for gamma <= k up to n_max vertices.
    ForbSearch {
        #[arg(short, long)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Runs the verification suites.
    Verify {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 8)]
        sweep_bound: usize,
    },
}

#[derive(Args)]
struct GraphInput {
    /// A graph6 string, or a file with one graph6 string per line.
    graph: Option<String>,
    /// Edge-list file: vertex count on the first line, then `u v` per line (0-based).
    #[arg(long, conflicts_with_all = ["graph", "family"])]
    edges: Option<PathBuf>,
    /// Named family, e.g. `path:7`, `kmno:2,2,2`, `matching:6,2`, `example`.
    #[arg(long, conflicts_with = "graph")]
    family: Option<String>,
}

fn family_graph(desc: &str) -> Result<Graph, String> {
    let (name, params) = desc.split_once(':').unwrap_or((desc, ""));
    let p: Vec<usize> = if params.is_empty() {
        Vec::new()
    } else {
        params
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| format!("bad parameter {s:?} in {desc:?}")))
            .collect::<Result<_, _>>()?
    };
    let want = |k: usize| {
        if p.len() == k {
            Ok(())
        } else {
            Err(format!("{name} takes {k} parameter(s), got {}", p.len()))
        }
    };
    let g = match name.to_ascii_lowercase().as_str() {
        "complete" => want(1).map(|_| complete(p[0]))?,
        "trivial" => want(1).map(|_| trivial(p[0]))?,
        "path" => want(1).map(|_| path(p[0]))?,
        "cycle" => want(1).map(|_| cycle(p[0]))?,
        "star" => want(1).map(|_| star(p[0]))?,
        "matching" => {
            want(2)?;
            matching_removed(p[0], p[1]).map_err(|e| e.to_string())?
        }
        "multipartite" => complete_multipartite(&p),
        "example" => want(0).map(|_| unit_free_corank5_example())?,
        other => {
            let f: Family = other.replace('-', "").parse().map_err(|e| format!("{e}"))?;
            let k = if f.has_z() { 3 } else { 2 };
            want(k)?;
            f.graph(p[0], p[1], if k == 3 { p[2] } else { 0 })
        }
    };
    Ok(g)
}

impl GraphInput {
    fn graphs(&self) -> Result<Vec<Graph>, String> {
        if let Some(f) = &self.edges {
            let text = std::fs::read_to_string(f).map_err(|e| format!("{}: {e}", f.display()))?;
            return Ok(vec![parse_edge_list(&text).map_err(|e| e.to_string())?]);
        }
        if let Some(desc) = &self.family {
            return Ok(vec![family_graph(desc)?]);
        }
        let Some(s) = &self.graph else {
            return Err("no graph given (graph6 string, .g6 file, --edges or --family)".into());
        };
        if Path::new(s).is_file() {
            let text = std::fs::read_to_string(s).map_err(|e| format!("{s}: {e}"))?;
            return text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| parse_graph6(l).map_err(|e| format!("{l:?}: {e}")))
                .collect();
        }
        Ok(vec![parse_graph6(s).map_err(|e| e.to_string())?])
    }
}

fn g6(g: &Graph) -> String {
    emit_graph6(g).unwrap_or_default()
}

fn gamma_json(g: &Graph, r: &CorankResult) -> Value {
    json!({ "graph6": g6(g), "n": g.order(), "result": r })
}

fn gamma_text(g: &Graph, r: &CorankResult) -> String {
    let mut s = format!("{}  gamma = {}\n", g6(g), r.gamma);
    for i in &r.indices {
        let how = match &i.decided_by {
            Triviality::UnitGenerator { .. } if i.generators == 0 => "unit minor".to_string(),
            Triviality::UnitGenerator { .. } => "unit generator".to_string(),
            Triviality::ConstantGcd => "constant gcd".to_string(),
            Triviality::GroebnerUnit { pairs } | Triviality::GroebnerNonUnit { pairs } => {
                format!("Groebner, {pairs} pairs")
            }
            Triviality::Witness { .. } => "common zero".to_string(),
            Triviality::ZeroIdeal => "zero ideal".to_string(),
        };
        let state = if i.trivial { "<1>" } else { "non-trivial" };
        let _ = writeln!(s, "  I_{}: {state} by {how}", i.k);
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(s, "  witness: {}", serde_json::to_string(w).unwrap());
    }
    s
}

fn classify_text(r: &ClassificationReport) -> String {
    let opt = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
    let mut s = format!("{}\n", r.graph6);
    let _ = writeln!(s, "  gamma: {}", r.gamma.map_or("-".into(), |g| g.to_string()));
    if let Some(f) = &r.invariant_factors {
        let _ = writeln!(s, "  critical group: {f}");
    }
    let _ = writeln!(s, "  gamma <= 1: {}  gamma <= 2: {}", r.gamma_le1, r.gamma_le2);
    let _ = writeln!(s, "  family: {:?} {:?}", r.family, r.parameters);
    if let Some(h) = &r.forbidden_hit {
        let _ = writeln!(s, "  forbidden subgraph: {h}");
    }
    let _ = writeln!(s, "  G1: {}  G2: {}", opt(r.g1), opt(r.g2));
    if let Some(c) = &r.g2_clause {
        let _ = writeln!(s, "  G2 clause: {}", c.condition);
    }
    s
}

fn verify_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    for suite in &r.suites {
        let _ = writeln!(s, "{}  ({:.1}s)", suite.summary(), suite.elapsed.as_secs_f64());
        for c in suite.failures() {
            let _ = writeln!(s, "    {}: expected {}, computed {}", c.input, c.expected, c.computed);
        }
        for e in &suite.budget_events {
            let _ = writeln!(s, "    error: {e}");
        }
    }
    let _ = writeln!(s, "overall: {}", if r.pass { "PASS" } else { "FAIL" });
    s
}

/// One entry per graph; a single graph is printed bare.
fn emit(text: bool, items: Vec<(String, Value)>) {
    if text {
        for (t, _) in items {
            print!("{t}");
        }
    } else if items.len() == 1 {
        println!("{}", serde_json::to_string_pretty(&items[0].1).unwrap());
    } else {
        let v: Vec<Value> = items.into_iter().map(|(_, v)| v).collect();
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.cmd {
        Cmd::Gamma(input) => {
            let mut out = Vec::new();
            for g in input.graphs()? {
                let r = algebraic_corank(&g).map_err(|e| format!("{}: {e}", g6(&g)))?;
                out.push((gamma_text(&g, &r), gamma_json(&g, &r)));
            }
            emit(cli.text, out);
        }
        Cmd::Ideal { input, k, groebner } => {
            let mut out = Vec::new();
            for g in input.graphs()? {
                let ci = critical_ideal(&g, k);
                let gens = ci.ideal.render(&ci.names);
                let gb = if groebner {
                    let b = groebner_with_budget(&ci.ideal, Budget::from_env()).map_err(|e| e.to_string())?;
                    Some(b.render(&ci.names))
                } else {
                    None
                };
                let mut t = format!("{}  I_{k}: {} generators\n", g6(&g), gens.len());
                for p in &gens {
                    let _ = writeln!(t, "  {p}");
                }
                if let Some(b) = &gb {
                    let _ = writeln!(t, "  Groebner basis:");
                    for p in b {
                        let _ = writeln!(t, "  {p}");
                    }
                }
                let v = json!({ "graph6": g6(&g), "k": k, "variables": ci.names, "generators": gens, "groebner_basis": gb });
                out.push((t, v));
            }
            emit(cli.text, out);
        }
        Cmd::Group(input) => {
            let mut out = Vec::new();
            for g in input.graphs()? {
                let c = critical_group(&g).map_err(|e| format!("{}: {e}", g6(&g)))?;
                let t = format!(
                    "{}  K(G) = {}  f1 = {}  spanning trees = {}\n",
                    g6(&g),
                    c.factors,
                    c.f_count(1),
                    c.order()
                );
                let v = json!({
                    "graph6": g6(&g),
                    "invariant_factors": c.factors,
                    "f1": c.f_count(1),
                    "spanning_trees": c.order().to_string(),
                });
                out.push((t, v));
            }
            emit(cli.text, out);
        }
        Cmd::Classify(input) => {
            let mut out = Vec::new();
            for g in input.graphs()? {
                let r = classify(&g).map_err(|e| format!("{}: {e}", g6(&g)))?;
                out.push((classify_text(&r), serde_json::to_value(&r).unwrap()));
            }
            emit(cli.text, out);
        }
        Cmd::ForbSearch { k, n_max } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cli.jobs)
                .build()
                .map_err(|e| e.to_string())?;
            let found = pool
                .install(|| forb_search(k, n_max, &GammaCache::new()))
                .map_err(|e| e.to_string())?;
            let list: Vec<String> = found.iter().map(g6).collect();
            let t = list.iter().map(|s| format!("{s}\n")).collect::<String>();
            emit(cli.text, vec![(t, json!({ "k": k, "n_max": n_max, "graphs": list }))]);
        }
        Cmd::Verify { n_max, sweep_bound } => {
            if n_max > 7 || sweep_bound > 9 {
                return Err("verify supports n_max <= 7 and sweep_bound <= 9".into());
            }
            let r = verify_all(n_max, sweep_bound, cli.jobs);
            let t = verify_text(&r);
            let pass = r.pass;
            emit(cli.text, vec![(t, serde_json::to_value(&r).unwrap())]);
            return Ok(pass);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
