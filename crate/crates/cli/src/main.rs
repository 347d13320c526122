use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use distbone::backbone::{extract_backbone, semi_triangular_ranking};
use distbone::closure::{distance_closure_with, Algorithm, ClosureMatrix};
use distbone::directed::{
    find_counterexample, meg_union, min_arborescence, min_equivalent_graphs, verify_remark,
    CounterexampleReport, DirectedError, UnionKind,
};
use distbone::graph::{
    components, parse_graph, serialize_graph, ComponentKind, DistanceGraph, Format,
};
use distbone::random::tie_heavy_graph;
use distbone::spanning::{kruskal_msf, mst_union, verify_union_theorem, SpanningSet};
use distbone::DistanceStructure;

/// Distance closures, backbones and spanning structures of weighted graphs.
///
/// Graphs are read from edge-list files: a first line `directed` or
/// `undirected`, then one `src dst weight` line per edge. `-` reads stdin.
///
/// Exit status: 0 on success, 1 when a verification fails, 2 on a usage or
/// input error.
#[derive(Debug, Parser)]
#[command(name = "distbone", version)]
struct Cli {
    /// Seed for commands that sample random graphs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format. Graph outputs accept all three; reports accept `json`
    /// and otherwise print plain text.
    #[arg(long, global = true, value_enum)]
    format: Option<OutFormat>,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Edges,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StructureArg {
    Metric,
    Ultrametric,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    PerSource,
    TripleLoop,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Theorem {
    /// Connected graphs: backbone = cut-rule union = union of all MSTs.
    Union,
    /// Two or three components, with minimum spanning forests.
    Forest,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Meg,
    Msa,
}

impl From<KindArg> for UnionKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Meg => UnionKind::Meg,
            KindArg::Msa => UnionKind::Msa,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// All-pairs closure distances (default output: JSON matrix).
    Closure {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "metric")]
        structure: StructureArg,
        #[arg(long, value_enum, default_value = "per-source")]
        algorithm: AlgorithmArg,
    },
    /// Edges whose weight equals their closure distance.
    Backbone {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "ultrametric")]
        structure: StructureArg,
        /// Also write the JSON report (kept edges, removed edges with
        /// distortion) to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Kruskal minimum spanning forest of an undirected graph.
    Mst { input: PathBuf },
    /// Union of all minimum spanning forests, by the cut rule.
    MstUnion { input: PathBuf },
    /// Minimum arborescence of a directed graph, over nodes reachable from
    /// the root.
    Arborescence {
        input: PathBuf,
        #[arg(long)]
        root: String,
    },
    /// Minimum equivalent graphs of a small directed graph. Graph formats
    /// show their union; JSON lists each one.
    Meg {
        input: PathBuf,
        #[arg(long, default_value_t = distbone::directed::DEFAULT_MEG_EDGE_LIMIT)]
        edge_limit: usize,
    },
    /// Checks the MST union identity on seeded random graphs.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    /// Compares the ultrametric backbone of a directed graph with the union
    /// of its minimum equivalent graphs or minimum arborescences.
    VerifyRemark {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Searches random small digraphs for a graph whose backbone and union
    /// each have an edge the other lacks. `--out` receives the witness as an
    /// edge list; the report goes to stdout.
    Counterexample {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Re-serializes a graph in another format.
    Convert { input: PathBuf },
    /// Counts, weight range and backbone retention.
    Stats { input: PathBuf },
}

enum CliError {
    Usage(String),
    Input(String),
    /// Verification ran and failed; the payload is already rendered.
    Failed(String),
}

type CliResult<T> = Result<T, CliError>;

fn read_graph(path: &Path) -> CliResult<DistanceGraph> {
    let shown = path.display();
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| match e.kind() {
            io::ErrorKind::NotFound => CliError::Input(format!("{shown}: file not found")),
            _ => CliError::Input(format!("{shown}: {e}")),
        })?
    };
    parse_graph(&text).map_err(|e| CliError::Input(format!("{shown}: {e}")))
}

fn structure(arg: StructureArg) -> DistanceStructure {
    match arg {
        StructureArg::Metric => DistanceStructure::metric(),
        StructureArg::Ultrametric => DistanceStructure::ultrametric(),
    }
}

fn input_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn edges_json(g: &DistanceGraph) -> Vec<Value> {
    g.canonical_edges()
        .into_iter()
        .map(|e| json!({"src": g.label(e.src), "dst": g.label(e.dst), "w": e.weight.value()}))
        .collect()
}

/// Graph rendering with an optional comment after the header line.
fn render_graph(g: &DistanceGraph, format: OutFormat, comment: Option<&str>) -> String {
    let f = match format {
        OutFormat::Edges => Format::EdgeList,
        OutFormat::Json => Format::Json,
        OutFormat::Dot => Format::Dot,
    };
    let text = serialize_graph(g, f);
    let Some(comment) = comment.filter(|_| format != OutFormat::Json) else {
        return text;
    };
    let marker = if format == OutFormat::Dot { "//" } else { "#" };
    let (head, rest) = text.split_once('\n').unwrap_or((&text, ""));
    let lead = if format == OutFormat::Dot { "  " } else { "" };
    format!("{head}\n{lead}{marker} {comment}\n{rest}")
}

fn report_format(cmd: &str, format: Option<OutFormat>) -> CliResult<bool> {
    match format {
        None | Some(OutFormat::Edges) => Ok(false),
        Some(OutFormat::Json) => Ok(true),
        Some(OutFormat::Dot) => Err(CliError::Usage(format!(
            "--format dot is not supported by `{cmd}`"
        ))),
    }
}

fn closure_graph(g: &DistanceGraph, c: &ClosureMatrix) -> DistanceGraph {
    let mut out = DistanceGraph::with_nodes(
        g.is_directed(),
        g.nodes().iter().map(|n| n.as_str().to_string()),
    )
    .expect("labels already validated");
    for i in 0..c.len() {
        for j in 0..c.len() {
            let d = c.get(i, j);
            if i != j && d.is_finite() && (g.is_directed() || i < j) {
                out.add_edge(g.label(i), g.label(j), d)
                    .expect("closure entries are positive");
            }
        }
    }
    out
}

fn spanning_output(g: &DistanceGraph, set: &SpanningSet, format: OutFormat, what: &str) -> String {
    let sub = set.to_graph(g);
    if format == OutFormat::Json {
        return json_text(&json!({
            "kind": what,
            "components": set.component_count,
            "total_weight": set.total_weight,
            "edges": edges_json(&sub),
        }));
    }
    let comment = format!(
        "{what}: {} edges, total weight {}",
        set.edges.len(),
        set.total_weight
    );
    render_graph(&sub, format, Some(&comment))
}

fn retention(kept: usize, total: usize) -> Value {
    let fraction = if total == 0 {
        0.0
    } else {
        kept as f64 / total as f64
    };
    json!({"kept": kept, "total": total, "fraction": fraction})
}

fn stats_json(g: &DistanceGraph) -> CliResult<Value> {
    let weights: Vec<f64> = g.edges().map(|e| e.weight.value()).collect();
    let (lo, hi) = if weights.is_empty() {
        (0.0, 0.0)
    } else {
        (
            weights.iter().copied().fold(f64::INFINITY, f64::min),
            weights.iter().copied().fold(0.0, f64::max),
        )
    };
    let mut doc = json!({
        "directed": g.is_directed(),
        "nodes": g.node_count(),
        "edges": g.edge_count(),
        "weak_components": components(g, ComponentKind::Weak).len(),
        "strong_components": components(g, ComponentKind::Strong).len(),
        "weight_min": lo,
        "weight_max": hi,
    });
    for (name, s) in [
        ("metric", DistanceStructure::metric()),
        ("ultrametric", DistanceStructure::ultrametric()),
    ] {
        let kept = extract_backbone(g, &s)
            .map_err(|e| CliError::Input(e.to_string()))?
            .kept()
            .len();
        doc[format!("{name}_backbone")] = retention(kept, g.edge_count());
    }
    Ok(doc)
}

fn stats_text(doc: &Value) -> String {
    let mut out = String::new();
    for key in [
        "directed",
        "nodes",
        "edges",
        "weak_components",
        "strong_components",
        "weight_min",
        "weight_max",
    ] {
        writeln!(out, "{key}: {}", doc[key]).unwrap();
    }
    for name in ["metric", "ultrametric"] {
        let r = &doc[format!("{name}_backbone")];
        writeln!(
            out,
            "{name} backbone: {}/{} edges retained",
            r["kept"], r["total"]
        )
        .unwrap();
    }
    out
}

fn remark_output(r: &CounterexampleReport, as_json: bool) -> String {
    let g = &r.graph;
    let label = |k: Option<(usize, usize)>| k.map(|k| g.canonical_labels(k));
    let edge_list = |set: &std::collections::BTreeSet<(usize, usize)>| {
        let mut v: Vec<_> = set.iter().copied().collect();
        v.sort_by(|&a, &b| g.canonical_cmp(a, b));
        v.into_iter()
            .map(|k| g.canonical_labels(k))
            .collect::<Vec<_>>()
    };
    let edge = |k: Option<(usize, usize)>| {
        label(k)
            .map(|(a, b)| json!({"src": a, "dst": b, "w": g.distance(k.unwrap().0, k.unwrap().1)}))
    };
    if as_json {
        return json_text(&json!({
            "kind": r.kind.name(),
            "exhibits_pattern": r.exhibits_pattern(),
            "verified": r.verified,
            "backbone": edge_list(&r.backbone),
            "union": edge_list(&r.union),
            "backbone_only": edge(r.backbone_only),
            "union_only": edge(r.union_only),
            "candidates": r.stats.candidates,
            "graph": serde_json::from_str::<Value>(&serialize_graph(g, Format::Json)).expect("valid JSON"),
        }));
    }
    let mut out = String::new();
    let union_name = match r.kind {
        UnionKind::Meg => "union of minimum equivalent graphs",
        UnionKind::Msa => "union of minimum arborescences over all roots",
    };
    writeln!(out, "kind: {}", r.kind.name()).unwrap();
    writeln!(
        out,
        "ultrametric backbone: {} of {} edges",
        r.backbone.len(),
        g.edge_count()
    )
    .unwrap();
    writeln!(out, "{union_name}: {} edges", r.union.len()).unwrap();
    let describe = |k: Option<(usize, usize)>| match k {
        Some(k) => {
            let (a, b) = g.canonical_labels(k);
            format!("{a} -> {b} (weight {})", g.distance(k.0, k.1))
        }
        None => "none".to_string(),
    };
    writeln!(
        out,
        "in backbone, not in union: {}",
        describe(r.backbone_only)
    )
    .unwrap();
    writeln!(out, "in union, not in backbone: {}", describe(r.union_only)).unwrap();
    writeln!(out, "witnesses independently verified: {}", r.verified).unwrap();
    let verdict = if r.exhibits_pattern() {
        "both differences present"
    } else {
        "pattern not exhibited"
    };
    writeln!(out, "verdict: {verdict}").unwrap();
    out
}

fn directed_error(path: &Path, e: DirectedError) -> CliError {
    input_error(path, e)
}

struct Output {
    primary: String,
    /// Written to stdout when the primary output goes to `--out`.
    side: Option<String>,
}

impl From<String> for Output {
    fn from(primary: String) -> Self {
        Output {
            primary,
            side: None,
        }
    }
}

fn run(cli: &Cli) -> CliResult<Output> {
    let graph_format = cli.format.unwrap_or(OutFormat::Edges);
    Ok(match &cli.command {
        Command::Closure {
            input,
            structure: s,
            algorithm,
        } => {
            let g = read_graph(input)?;
            let s = structure(*s);
            let alg = match algorithm {
                AlgorithmArg::PerSource => Algorithm::PerSource,
                AlgorithmArg::TripleLoop => Algorithm::TripleLoop,
            };
            let c = distance_closure_with(&g, &s, alg).map_err(|e| input_error(input, e))?;
            match cli.format.unwrap_or(OutFormat::Json) {
                OutFormat::Json => json_text(&c.to_json()),
                f => render_graph(
                    &closure_graph(&g, &c),
                    f,
                    Some(&format!("{} closure", s.name())),
                ),
            }
            .into()
        }
        Command::Backbone {
            input,
            structure: s,
            report,
        } => {
            let g = read_graph(input)?;
            let r = extract_backbone(&g, &structure(*s)).map_err(|e| input_error(input, e))?;
            let report_text = json_text(&r.to_json());
            if let Some(path) = report {
                write_file(path, &report_text)?;
            }
            if graph_format == OutFormat::Json {
                report_text.into()
            } else {
                let comment = format!(
                    "{} backbone: kept {} of {} edges",
                    r.structure,
                    r.backbone.edge_count(),
                    g.edge_count()
                );
                let mut primary = render_graph(&r.backbone, graph_format, Some(&comment));
                if graph_format == OutFormat::Edges {
                    for x in semi_triangular_ranking(&r) {
                        let (a, b) = g.canonical_labels(x.edge);
                        writeln!(
                            primary,
                            "# removed {a} {b} {} distortion {}",
                            x.weight, x.distortion
                        )
                        .unwrap();
                    }
                }
                primary.into()
            }
        }
        Command::Mst { input } => {
            let g = read_graph(input)?;
            let set = kruskal_msf(&g).map_err(|e| input_error(input, e))?;
            spanning_output(&g, &set, graph_format, "minimum spanning forest").into()
        }
        Command::MstUnion { input } => {
            let g = read_graph(input)?;
            let set = mst_union(&g).map_err(|e| input_error(input, e))?;
            spanning_output(&g, &set, graph_format, "union of minimum spanning forests").into()
        }
        Command::Arborescence { input, root } => {
            let g = read_graph(input)?;
            let t = min_arborescence(&g, root).map_err(|e| directed_error(input, e))?;
            let sub = g.subgraph(t.edges.iter().copied());
            let spanned = t.edges.len() + 1;
            if graph_format == OutFormat::Json {
                json_text(&json!({
                    "root": root,
                    "spanned_nodes": spanned,
                    "nodes": g.node_count(),
                    "total_weight": t.total_weight,
                    "edges": edges_json(&sub),
                }))
            } else {
                let comment = format!(
                    "root {root}: spans {spanned} of {} nodes (nodes unreachable from the root are excluded), total weight {}",
                    g.node_count(),
                    t.total_weight
                );
                render_graph(&sub, graph_format, Some(&comment))
            }
            .into()
        }
        Command::Meg { input, edge_limit } => {
            let g = read_graph(input)?;
            if graph_format == OutFormat::Json {
                let megs = min_equivalent_graphs(&g, *edge_limit).map_err(|e| directed_error(input, e))?;
                let list: Vec<Value> = megs
                    .iter()
                    .map(|m| json!({"total_weight": m.total_weight, "edges": edges_json(&g.subgraph(m.edges.iter().copied()))}))
                    .collect();
                json_text(&json!({"count": megs.len(), "graphs": list}))
            } else {
                let count = min_equivalent_graphs(&g, *edge_limit)
                    .map_err(|e| directed_error(input, e))?
                    .len();
                let set = meg_union(&g, *edge_limit).map_err(|e| directed_error(input, e))?;
                let comment = format!("union of {count} minimum equivalent graph(s)");
                render_graph(&set.to_graph(&g), graph_format, Some(&comment))
            }
            .into()
        }
        Command::Verify {
            theorem,
            n_max,
            trials,
        } => {
            let as_json = report_format("verify", cli.format)?;
            if *n_max < 3 {
                return Err(CliError::Usage("--n-max must be at least 3".into()));
            }
            let (name, parts) = match theorem {
                Theorem::Union => ("union", 1),
                Theorem::Forest => ("forest", 0),
            };
            let mut passed = 0u64;
            let mut failure = None;
            for i in 0..*trials {
                // forests alternate between two and three components
                let k = if parts == 1 { 1 } else { 2 + (i % 2) as usize };
                let g = tie_heavy_graph(cli.seed, i, 3, *n_max, k);
                let r = verify_union_theorem(&g).map_err(|e| CliError::Input(e.to_string()))?;
                if r.passed() {
                    passed += 1;
                } else if failure.is_none() {
                    failure = Some((i, g, r.witnesses));
                }
            }
            let summary = format!("{passed}/{trials} passed");
            let text = if as_json {
                let fail = failure.as_ref().map(|(i, g, w)| {
                    json!({"trial": i, "graph": serialize_graph(g, Format::EdgeList), "witnesses": w})
                });
                json_text(&json!({
                    "theorem": name, "seed": cli.seed, "trials": trials, "passed": passed, "first_failure": fail,
                }))
            } else {
                let mut s = format!(
                    "theorem {name}, seed {}, n <= {n_max}\n{summary}\n",
                    cli.seed
                );
                if let Some((i, g, w)) = &failure {
                    writeln!(s, "first failure at trial {i}:").unwrap();
                    for line in w {
                        writeln!(s, "  {line}").unwrap();
                    }
                    s.push_str(&serialize_graph(g, Format::EdgeList));
                }
                s
            };
            if failure.is_some() {
                return Err(CliError::Failed(text));
            }
            text.into()
        }
        Command::VerifyRemark { input, kind } => {
            let as_json = report_format("verify-remark", cli.format)?;
            let g = read_graph(input)?;
            let r = verify_remark(&g, (*kind).into()).map_err(|e| directed_error(input, e))?;
            let text = remark_output(&r, as_json);
            if !r.exhibits_pattern() {
                return Err(CliError::Failed(text));
            }
            text.into()
        }
        Command::Counterexample { kind, budget } => {
            let as_json = report_format("counterexample", cli.format)?;
            match find_counterexample((*kind).into(), *budget, cli.seed) {
                Ok(r) => {
                    let mut report = remark_output(&r, as_json);
                    if !as_json {
                        report = format!(
                            "seed {}: witness found after {} candidates\n{report}",
                            cli.seed, r.stats.candidates
                        );
                    }
                    let witness = serialize_graph(&r.graph, Format::EdgeList);
                    if cli.out.is_some() {
                        Output {
                            primary: witness,
                            side: Some(report),
                        }
                    } else {
                        format!("{report}{witness}").into()
                    }
                }
                Err(DirectedError::BudgetExhausted(stats)) => {
                    let text = format!(
                        "no witness within {budget} candidates ({} strongly connected, {} with a non-trivial backbone)\n",
                        stats.strongly_connected, stats.nontrivial_backbone
                    );
                    return Err(CliError::Failed(text));
                }
                Err(e) => return Err(CliError::Input(e.to_string())),
            }
        }
        Command::Convert { input } => render_graph(&read_graph(input)?, graph_format, None).into(),
        Command::Stats { input } => {
            let as_json = report_format("stats", cli.format)?;
            let doc = stats_json(&read_graph(input)?)?;
            if as_json {
                json_text(&doc)
            } else {
                stats_text(&doc)
            }
            .into()
        }
    })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| {
        emit(cli.out.as_deref(), &o.primary)?;
        if let Some(side) = o.side {
            emit(None, &side)?;
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(text)) => {
            let _ = emit(None, &text);
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg) | CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
