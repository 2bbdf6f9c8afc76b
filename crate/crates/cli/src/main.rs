//! Single binary exposing the library operations as subcommands with
//! machine-readable output. Exit codes: 0 for computed verdicts (including
//! negative ones), 2 for inconclusive outcomes, 1 for usage or input
//! errors.

mod atlas;
mod io;
mod runner;
mod source;

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ramsey_core::arrow::{arrow_check, is_2_choosable_wrt};
use ramsey_core::clots::{check_obstruction, find_clots, Clot, ObstructionReport};
use ramsey_core::collapse::{is_collapsible, is_semi_collapsible, Collapsibility, SemiCollapsibility};
use ramsey_core::colouring::{min_monochromatic_edges, proper_colouring};
use ramsey_core::counting::{
    count_constellations, count_prestars, count_preconstellations, count_rainbow, count_stars,
};
use ramsey_core::curve::{assemble_curve, CurveFamily, ThresholdCurve};
use ramsey_core::density::{density_report, helpful_lemma_check};
use ramsey_core::janson::{janson_bound, local_coarseness_check, JansonInput};
use ramsey_core::listcol::{
    find_non_choosable_subsets, is_2_choosable, is_list_schur, is_list_vdw, Choosability,
    FamilyLimits, ListRamseyVerdict,
};
use ramsey_core::rational::rat_string;
use ramsey_core::reveal::{reveal_layers, StepKind};
use ramsey_core::sampling::{McCaps, McProperty, McTallies};
use ramsey_core::stars::{has_rainbow_sc_property, RscLimits, RscVerdict};

use source::HyperSource;

#[derive(Parser)]
#[command(name = "ramsey", version, about = "Ramsey hypergraph toolbox", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path (defaults to standard output).
    #[arg(long, global = true)]
    output: Option<String>,
    /// Worker threads for sampling subcommands.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Node budget for the exact searches; exceeding it is inconclusive.
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    /// Wall-clock guard; exceeding it is inconclusive.
    #[arg(long, global = true)]
    timeout_ms: Option<u64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a built-in family and print it in the hypergraph format.
    Build {
        #[command(flatten)]
        source: HyperSource,
    },
    /// Degree profile of a hypergraph.
    Profile {
        #[command(flatten)]
        source: HyperSource,
    },
    /// Densities, balance, collapsibility and the star-constellation
    /// verdicts of a pattern graph.
    AnalyzeGraph {
        /// Atlas name or graph file.
        #[arg(long)]
        graph: String,
        /// Colour counts for the star-constellation check.
        #[arg(long, default_value = "2,3")]
        rsc_r: String,
        /// Skip star-type deduplication (cross-checking aid).
        #[arg(long)]
        no_dedup: bool,
    },
    /// Ramsey arrowing g -> (h)_r.
    Arrow {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        r: u32,
    },
    /// Proper r-colouring of a hypergraph, optionally minimising
    /// monochromatic edges.
    Colour {
        #[command(flatten)]
        source: HyperSource,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        min_mono: bool,
        /// Exactness cap for the minimisation.
        #[arg(long, default_value_t = 26)]
        vertex_cap: u32,
    },
    /// 2-choosability: of a hypergraph from [r], or of a host graph's
    /// edges with respect to a pattern (--g/--pattern).
    Choosable {
        #[command(flatten)]
        source: HyperSource,
        /// List universe for the vertex variant.
        #[arg(long, default_value_t = 4)]
        r: u32,
        /// Also list non-choosable subsets up to this size.
        #[arg(long)]
        find_subsets: Option<usize>,
        /// Host graph (edge variant).
        #[arg(long)]
        g: Option<String>,
        /// Pattern graph (edge variant).
        #[arg(long)]
        pattern: Option<String>,
    },
    /// List-Schur / list-van-der-Waerden predicates on a residue set.
    ListRamsey {
        #[arg(long)]
        mode: String,
        #[arg(long)]
        n: u32,
        /// Progression length (vdw mode).
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated residues.
        #[arg(long)]
        set: String,
    },
    /// Layer-reveal trace of a connected vertex set (JSON lines).
    Reveal {
        #[command(flatten)]
        source: HyperSource,
        #[arg(long)]
        set: String,
    },
    /// Clots whose support lies inside a vertex set.
    Clots {
        #[command(flatten)]
        source: HyperSource,
        /// Defaults to the whole vertex set.
        #[arg(long)]
        set: Option<String>,
    },
    /// Obstruction report for a minimally non-2-choosable set.
    Obstruction {
        #[command(flatten)]
        source: HyperSource,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 4)]
        r: u32,
    },
    /// Exact structure counts.
    Count {
        #[command(flatten)]
        source: HyperSource,
        /// stars | constellations | rainbow | prestars | preconstellations.
        #[arg(long)]
        what: String,
        #[arg(long, default_value_t = 2)]
        r: u32,
        /// Partial colouring file for rainbow counts.
        #[arg(long)]
        colouring: Option<String>,
        /// Part family file for prestar counts ('N t' header).
        #[arg(long)]
        y: Option<String>,
    },
    /// Monte Carlo estimate of a property under binomial sampling.
    Sample {
        #[command(flatten)]
        source: HyperSource,
        /// non-colourable | contains-clot | has-degenerates |
        /// non-2-choosable-subset | list-schur | list-vdw.
        #[arg(long)]
        property: String,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        r: u32,
        /// Subset size for non-2-choosable-subset.
        #[arg(long, default_value_t = 6)]
        subset_k: usize,
        /// Degenerate-element threshold (defaults to s - 1).
        #[arg(long)]
        count: Option<usize>,
    },
    /// Threshold curve over a probability grid.
    Curve {
        /// copies | kap | schur.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        size: Option<u32>,
        /// 'lo:hi:step' or comma list.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Flat key-value config file (flags override it).
        #[arg(long)]
        config: Option<String>,
        /// Also write the CSV here.
        #[arg(long)]
        csv: Option<String>,
    },
    /// Janson lower-tail bound, or the local-coarseness Monte Carlo check.
    Janson {
        /// Set-family file ('n m' header).
        #[arg(long)]
        sets: String,
        #[arg(long)]
        p: f64,
        /// Deviation t (bound mode).
        #[arg(long)]
        t: Option<f64>,
        /// Deviation as a fraction of mu (bound mode).
        #[arg(long)]
        t_frac: Option<f64>,
        /// bound | coarseness.
        #[arg(long, default_value = "bound")]
        mode: String,
        /// Density multiplier (coarseness mode).
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

struct Outcome {
    body: String,
    exit: i32,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            eprintln!("{e}");
            return 1;
        }
    };
    let format = cli.format;
    let output = cli.output.clone();
    let workers = cli.workers;
    let limits = family_limits(cli.max_nodes);
    let timeout = cli.timeout_ms;
    let job = move || dispatch(cli.command, format, workers, limits);
    let outcome = match run_with_timeout(timeout, job) {
        Ok(outcome) => outcome,
        Err(message) => {
            eprintln!("error: {message}");
            return 1;
        }
    };
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, outcome.body.as_bytes()) {
                eprintln!("error: cannot write {path:?}: {e}");
                return 1;
            }
        }
        None => print!("{}", outcome.body),
    }
    outcome.exit
}

fn family_limits(max_nodes: Option<u64>) -> FamilyLimits {
    let mut limits = FamilyLimits::default();
    if let Some(n) = max_nodes {
        limits.max_nodes = n;
    }
    limits
}

fn run_with_timeout(
    timeout_ms: Option<u64>,
    job: impl FnOnce() -> Result<Outcome, String> + Send + 'static,
) -> Result<Outcome, String> {
    let Some(ms) = timeout_ms else {
        return job();
    };
    let (tx, rx) = std::sync::mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(job());
    });
    match rx.recv_timeout(std::time::Duration::from_millis(ms)) {
        Ok(result) => result,
        Err(_) => Ok(Outcome {
            body: render(
                json!({"verdict": "inconclusive", "reason": format!("timeout after {ms} ms")}),
                Format::Json,
            ),
            exit: 2,
        }),
    }
}

fn render(value: Value, format: Format) -> String {
    match format {
        Format::Json | Format::Csv => {
            let mut s = serde_json::to_string_pretty(&value).expect("serialisable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            render_text(&value, "", &mut out);
            out
        }
    }
}

fn render_text(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_text(v, &key, out);
            }
        }
        other => {
            out.push_str(prefix);
            out.push_str(": ");
            out.push_str(&compact(other));
            out.push('\n');
        }
    }
}

fn compact(value: &Value) -> String {
    serde_json::to_string(value).expect("serialisable")
}

fn verdict_value(v: Option<bool>) -> Value {
    match v {
        Some(b) => json!(b),
        None => json!("inconclusive"),
    }
}

fn exit_for(v: Option<bool>) -> i32 {
    if v.is_some() {
        0
    } else {
        2
    }
}

fn dispatch(
    command: Command,
    format: Format,
    workers: usize,
    limits: FamilyLimits,
) -> Result<Outcome, String> {
    match command {
        Command::Build { source } => {
            let (h, _) = source.resolve()?;
            Ok(Outcome { body: io::write_hypergraph(&h), exit: 0 })
        }
        Command::Profile { source } => cmd_profile(source, format),
        Command::AnalyzeGraph { graph, rsc_r, no_dedup } => {
            cmd_analyze(graph, rsc_r, no_dedup, format)
        }
        Command::Arrow { g, h, r } => cmd_arrow(g, h, r, format),
        Command::Colour { source, r, min_mono, vertex_cap } => {
            cmd_colour(source, r, min_mono, vertex_cap, format)
        }
        Command::Choosable { source, r, find_subsets, g, pattern } => {
            cmd_choosable(source, r, find_subsets, g, pattern, limits, format)
        }
        Command::ListRamsey { mode, n, k, set } => cmd_list_ramsey(mode, n, k, set, limits, format),
        Command::Reveal { source, set } => cmd_reveal(source, set),
        Command::Clots { source, set } => cmd_clots(source, set, format),
        Command::Obstruction { source, set, r } => cmd_obstruction(source, set, r, limits, format),
        Command::Count { source, what, r, colouring, y } => {
            cmd_count(source, what, r, colouring, y, format)
        }
        Command::Sample { source, property, p, trials, seed, r, subset_k, count } => cmd_sample(
            source, property, p, trials, seed, r, subset_k, count, limits, workers, format,
        ),
        Command::Curve { family, h, k, r, size, grid, trials, seed, config, csv } => {
            cmd_curve(family, h, k, r, size, grid, trials, seed, config, csv, workers, format)
        }
        Command::Janson { sets, p, t, t_frac, mode, c, trials, seed } => {
            cmd_janson(sets, p, t, t_frac, mode, c, trials, seed, format)
        }
    }
}

fn cmd_profile(source: HyperSource, format: Format) -> Result<Outcome, String> {
    let (h, instance) = source.resolve()?;
    let profile = h.degree_profile().map_err(|e| e.to_string())?;
    let per_t: Vec<Value> = (1..=profile.s)
        .map(|t| {
            json!({
                "t": t,
                "max_degree": profile.max_degree[t - 1],
                "avg_degree": profile.avg_degree[t - 1],
                "ratio": profile.ratio[t - 1],
            })
        })
        .collect();
    let body = json!({
        "instance": instance,
        "s": profile.s,
        "vertices": profile.vertices,
        "edges": profile.edge_count,
        "p_scale": profile.p_scale,
        "per_t": per_t,
    });
    Ok(Outcome { body: render(body, format), exit: 0 })
}

fn cmd_analyze(
    graph: String,
    rsc_r: String,
    no_dedup: bool,
    format: Format,
) -> Result<Outcome, String> {
    let g = atlas::resolve_graph(&graph)?;
    let start = Instant::now();
    let report = density_report(&g).map_err(|e| e.to_string())?;
    let helpful = if report.strictly_2_balanced {
        Some(helpful_lemma_check(&g).map_err(|e| e.to_string())?.is_none())
    } else {
        None
    };
    let collapse = is_collapsible(&g).map_err(|e| e.to_string())?;
    let semi = is_semi_collapsible(&g).map_err(|e| e.to_string())?;
    let mut rsc = serde_json::Map::new();
    let mut rsc_witnesses = serde_json::Map::new();
    let mut any_inconclusive = false;
    for part in rsc_r.split(',').filter(|p| !p.trim().is_empty()) {
        let r: u32 = part.trim().parse().map_err(|_| format!("bad rsc colour count {part:?}"))?;
        let verdict = has_rainbow_sc_property(&g, r, RscLimits::default(), !no_dedup)
            .map_err(|e| e.to_string())?;
        any_inconclusive |= verdict.holds().is_none();
        rsc.insert(r.to_string(), verdict_value(verdict.holds()));
        match verdict {
            RscVerdict::Holds(ws) => {
                let maps: Vec<Value> = ws
                    .iter()
                    .map(|w| {
                        json!({
                            "star_copies": w.star.copies.iter().map(|&(e, o)| json!([e, o])).collect::<Vec<_>>(),
                            "base_map": w.base_map,
                        })
                    })
                    .collect();
                rsc_witnesses.insert(r.to_string(), Value::Array(maps));
            }
            RscVerdict::Fails { star } => {
                rsc_witnesses.insert(
                    r.to_string(),
                    json!({"failing_star_copies": star.copies.iter().map(|&(e, o)| json!([e, o])).collect::<Vec<_>>()}),
                );
            }
            RscVerdict::Inconclusive { star_types } => {
                rsc_witnesses
                    .insert(r.to_string(), json!({"inconclusive_star_types": star_types}));
            }
        }
    }
    let collapse_json = match &collapse {
        Collapsibility::Collapsible(ws) => json!({
            "witnesses": ws.iter().map(|w| json!({
                "removed_edge": [w.removed_edge.0, w.removed_edge.1],
                "endpoint": w.endpoint,
                "folded_edge": [w.folded_edge.0, w.folded_edge.1],
                "map": w.map,
            })).collect::<Vec<_>>(),
        }),
        Collapsibility::NotCollapsible { edge, endpoint } => {
            json!({"failing_edge": [edge.0, edge.1], "failing_endpoint": endpoint})
        }
    };
    let body = json!({
        "graph": graph,
        "n": g.n(),
        "edges": g.edge_count(),
        "m2": rat_string(report.m2),
        "m2_witness": report.m2_witness,
        "m": rat_string(report.m),
        "strictly_2_balanced": report.strictly_2_balanced,
        "balance_violation": report.balance_violation,
        "nearly_bipartite": report.nearly_bipartite,
        "helpful_lemma": helpful,
        "collapsible": collapse.holds(),
        "collapse": collapse_json,
        "semi_collapsible": matches!(semi, SemiCollapsibility::SemiCollapsible(_)),
        "rsc": Value::Object(rsc),
        "rsc_witnesses": Value::Object(rsc_witnesses),
        "wall_ms": start.elapsed().as_millis() as u64,
    });
    Ok(Outcome { body: render(body, format), exit: if any_inconclusive { 2 } else { 0 } })
}

fn cmd_arrow(g: String, h: String, r: u32, format: Format) -> Result<Outcome, String> {
    let host = atlas::resolve_graph(&g)?;
    let pattern = atlas::resolve_graph(&h)?;
    let start = Instant::now();
    let out = arrow_check(&host, &pattern, r).map_err(|e| e.to_string())?;
    let body = json!({
        "property": "arrow",
        "instance": format!("{g} -> ({h})_{r}"),
        "verdict": out.arrows,
        "witness": out.witness,
        "nodes_expanded": Value::Null,
        "wall_ms": start.elapsed().as_millis() as u64,
    });
    Ok(Outcome { body: render(body, format), exit: 0 })
}

fn cmd_colour(
    source: HyperSource,
    r: u32,
    min_mono: bool,
    vertex_cap: u32,
    format: Format,
) -> Result<Outcome, String> {
    let (h, instance) = source.resolve()?;
    let start = Instant::now();
    let colouring = proper_colouring(&h, r).map_err(|e| e.to_string())?;
    let minimum = if min_mono {
        Some(min_monochromatic_edges(&h, r, vertex_cap).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let body = json!({
        "property": "proper-colouring",
        "instance": instance,
        "r": r,
        "verdict": colouring.is_some(),
        "witness": colouring,
        "min_monochromatic": minimum.map(|m| json!({
            "value": m.value(),
            "exact": m.is_exact(),
        })),
        "nodes_expanded": Value::Null,
        "wall_ms": start.elapsed().as_millis() as u64,
    });
    Ok(Outcome { body: render(body, format), exit: 0 })
}

fn choosability_json(v: &Choosability) -> (Value, Value) {
    match v {
        Choosability::Choosable => (json!(true), Value::Null),
        Choosability::NotChoosable { lists, family } => (
            json!(false),
            json!({
                "lists": lists.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
                "classes": family
                    .iter()
                    .map(|m| mask_vertices(*m))
                    .collect::<Vec<_>>(),
            }),
        ),
        Choosability::Inconclusive { reason } => (json!("inconclusive"), json!({"reason": reason})),
    }
}

fn mask_vertices(mask: u64) -> Vec<u32> {
    (0..64).filter(|v| mask >> v & 1 == 1).collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_choosable(
    source: HyperSource,
    r: u32,
    find_subsets: Option<usize>,
    g: Option<String>,
    pattern: Option<String>,
    limits: FamilyLimits,
    format: Format,
) -> Result<Outcome, String> {
    let start = Instant::now();
    if let Some(gspec) = g {
        let pspec = pattern.ok_or("edge variant needs --pattern")?;
        let host = atlas::resolve_graph(&gspec)?;
        let pat = atlas::resolve_graph(&pspec)?;
        let verdict = is_2_choosable_wrt(&host, &pat, limits).map_err(|e| e.to_string())?;
        let (v, witness) = choosability_json(&verdict);
        let body = json!({
            "property": "2-choosable-wrt",
            "instance": format!("{gspec} wrt {pspec}"),
            "verdict": v,
            "witness": witness,
            "nodes_expanded": Value::Null,
            "wall_ms": start.elapsed().as_millis() as u64,
        });
        return Ok(Outcome { body: render(body, format), exit: exit_for(verdict.verdict()) });
    }
    let (h, instance) = source.resolve()?;
    let verdict = is_2_choosable(&h, r, limits).map_err(|e| e.to_string())?;
    let (v, witness) = choosability_json(&verdict);
    let subsets = match find_subsets {
        Some(k) => {
            let (sets, inconclusive) =
                find_non_choosable_subsets(&h, k, r, limits).map_err(|e| e.to_string())?;
            Some(json!({
                "non_choosable": sets.iter().map(|s| json!({
                    "vertices": s.vertices,
                    "minimal": s.minimal,
                })).collect::<Vec<_>>(),
                "inconclusive_subsets": inconclusive,
            }))
        }
        None => None,
    };
    let body = json!({
        "property": "2-choosable",
        "instance": instance,
        "r": r,
        "verdict": v,
        "witness": witness,
        "subsets": subsets,
        "nodes_expanded": Value::Null,
        "wall_ms": start.elapsed().as_millis() as u64,
    });
    Ok(Outcome { body: render(body, format), exit: exit_for(verdict.verdict()) })
}

fn cmd_list_ramsey(
    mode: String,
    n: u32,
    k: Option<usize>,
    set: String,
    limits: FamilyLimits,
    format: Format,
) -> Result<Outcome, String> {
    let y = io::parse_vertex_list(&set).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let (property, verdict) = match mode.as_str() {
        "schur" => ("list-schur", is_list_schur(&y, n, limits).map_err(|e| e.to_string())?),
        "vdw" => {
            let k = k.ok_or("vdw mode needs --k")?;
            ("list-vdw", is_list_vdw(&y, n, k, limits).map_err(|e| e.to_string())?)
        }
        other => return Err(format!("unknown mode {other:?} (schur | vdw)")),
    };
    let v = match verdict {
        ListRamseyVerdict::True => Some(true),
        ListRamseyVerdict::False => Some(false),
        ListRamseyVerdict::Inconclusive => None,
    };
    let body = json!({
        "property": property,
        "instance": format!("Z_{n}, Y = {y:?}"),
        "verdict": verdict_value(v),
        "witness": Value::Null,
        "nodes_expanded": Value::Null,
        "wall_ms": start.elapsed().as_millis() as u64,
    });
    Ok(Outcome { body: render(body, format), exit: exit_for(v) })
}

fn cmd_reveal(source: HyperSource, set: String) -> Result<Outcome, String> {
    let (h, _) = source.resolve()?;
    let vertices = io::parse_vertex_list(&set).map_err(|e| e.to_string())?;
    let trace = reveal_layers(&h, &vertices).map_err(|e| e.to_string())?;
    let mut body = String::new();
    for (i, step) in trace.steps.iter().enumerate() {
        let kind = match step.kind {
            StepKind::Degenerate => "degenerate",
            StepKind::NewLayer => "new-layer",
        };
        let line = json!({
            "step": i + 1,
            "kind": kind,
            "edge": step.edge,
            "new_vertices": step.new_vertices,
            "layer": step.layer,
        });
        body.push_str(&compact(&line));
        body.push('\n');
    }
    let summary = json!({
        "d": trace.depth(),
        "start": trace.start,
        "degenerate": trace.degenerate,
        "layers": trace.layers,
    });
    body.push_str(&compact(&summary));
    body.push('\n');
    Ok(Outcome { body, exit: 0 })
}

fn clot_json(c: &Clot) -> Value {
    json!({
        "nucleus": c.nucleus,
        "support": c.support,
        "completions": c.completions.iter().map(|p| json!({
            "subset": p.subset,
            "vertices": p.vertices,
            "total": p.total,
        })).collect::<Vec<_>>(),
    })
}

fn cmd_clots(source: HyperSource, set: Option<String>, format: Format) -> Result<Outcome, String> {
    let (h, instance) = source.resolve()?;
    let window = match set {
        Some(s) => io::parse_vertex_list(&s).map_err(|e| e.to_string())?,
        None => (0..h.n()).collect(),
    };
    let clots = find_clots(&h, &window).map_err(|e| e.to_string())?;
    let body = json!({
        "instance": instance,
        "window": window,
        "count": clots.len(),
        "clots": clots.iter().map(clot_json).collect::<Vec<_>>(),
    });
    Ok(Outcome { body: render(body, format), exit: 0 })
}

fn cmd_obstruction(
    source: HyperSource,
    set: String,
    r: u32,
    limits: FamilyLimits,
    format: Format,
) -> Result<Outcome, String> {
    let (h, instance) = source.resolve()?;
    let vertices = io::parse_vertex_list(&set).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let report = check_obstruction(&h, &vertices, r, limits).map_err(|e| e.to_string())?;
    let (body, exit) = match &report {
        ObstructionReport::NotApplicable { reason } => (
            json!({"report": "not-applicable", "reason": reason}),
            0,
        ),
        ObstructionReport::Inconclusive { reason } => (
            json!({"report": "inconclusive", "reason": reason}),
            2,
        ),
        ObstructionReport::Holds { degenerate_elements, depth, clot } => (
            json!({
                "report": "holds",
                "degenerate_elements": degenerate_elements,
                "depth": depth,
                "clot": clot.as_ref().map(clot_json),
            }),
            0,
        ),
        ObstructionReport::Violated { degenerate_elements, depth } => (
            json!({
                "report": "violated",
                "degenerate_elements": degenerate_elements,
                "depth": depth,
            }),
            0,
        ),
    };
    let body = json!({
        "instance": instance,
        "set": vertices,
        "r": r,
        "result": body,
        "wall_ms": start.elapsed().as_millis() as u64,
    });
    Ok(Outcome { body: render(body, format), exit })
}

fn cmd_count(
    source: HyperSource,
    what: String,
    r: u32,
    colouring: Option<String>,
    y: Option<String>,
    format: Format,
) -> Result<Outcome, String> {
    let body = match what.as_str() {
        "stars" | "constellations" => {
            let (h, instance) = source.resolve()?;
            let count = match what.as_str() {
                "stars" => count_stars(&h, r),
                _ => count_constellations(&h, r),
            }
            .map_err(|e| e.to_string())?;
            json!({"instance": instance, "what": what, "r": r, "count": count.to_string()})
        }
        "rainbow" => {
            let (h, instance) = source.resolve()?;
            let path = colouring.ok_or("rainbow counts need --colouring")?;
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("cannot read colouring {path:?}: {e}"))?;
            let psi = io::parse_partial_colouring(&text, h.n()).map_err(|e| format!("{path}: {e}"))?;
            let counts = count_rainbow(&h, r, &psi).map_err(|e| e.to_string())?;
            json!({
                "instance": instance,
                "what": "rainbow",
                "r": r,
                "per_i_stars": counts.per_i_stars.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "any_stars": counts.any_stars.to_string(),
                "per_i_constellations": counts.per_i_constellations.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "any_constellations": counts.any_constellations.to_string(),
            })
        }
        "prestars" | "preconstellations" => {
            let path = y.ok_or("prestar counts need --y")?;
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("cannot read parts {path:?}: {e}"))?;
            let (n, parts) = io::parse_set_family(&text).map_err(|e| format!("{path}: {e}"))?;
            let count = match what.as_str() {
                "prestars" => count_prestars(&parts, n),
                _ => count_preconstellations(&parts, n),
            }
            .map_err(|e| e.to_string())?;
            json!({"instance": format!("Z_{n}"), "what": what, "t": parts.len(), "count": count.to_string()})
        }
        other => return Err(format!("unknown count {other:?}")),
    };
    Ok(Outcome { body: render(body, format), exit: 0 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    source: HyperSource,
    property: String,
    p: f64,
    trials: u64,
    seed: u64,
    r: u32,
    subset_k: usize,
    count: Option<usize>,
    limits: FamilyLimits,
    workers: usize,
    format: Format,
) -> Result<Outcome, String> {
    if !(0.0..=1.0).contains(&p) {
        return Err("p must lie in [0, 1]".into());
    }
    if trials == 0 {
        return Err("trials must be positive".into());
    }
    let (h, instance) = source.resolve()?;
    let prop = match property.as_str() {
        "non-colourable" => McProperty::NonColourable { r },
        "contains-clot" => McProperty::ContainsClot,
        "has-degenerates" => {
            McProperty::HasDegenerates { count: count.unwrap_or(h.s() - 1) }
        }
        "non-2-choosable-subset" => McProperty::NonChoosableSubset { k: subset_k, r: r.max(2) },
        "list-schur" => {
            if !instance.starts_with("schur") {
                return Err("list-schur sampling needs --family schur".into());
            }
            McProperty::NotTwoChoosable { r: 4 }
        }
        "list-vdw" => {
            if !instance.starts_with("kap") {
                return Err("list-vdw sampling needs --family kap".into());
            }
            McProperty::NotTwoChoosable { r: 4 }
        }
        other => return Err(format!("unknown property {other:?}")),
    };
    let caps = McCaps { family: limits, ..McCaps::default() };
    let tallies = runner::run_trials(&h, p, seed, trials, prop, &caps, workers);
    let body = render(sample_json(&instance, &property, p, seed, &tallies), format);
    let exit = if tallies.decided() == 0 { 2 } else { 0 };
    Ok(Outcome { body, exit })
}

fn sample_json(instance: &str, property: &str, p: f64, seed: u64, t: &McTallies) -> Value {
    let decided = t.decided();
    let freq = if decided == 0 { 0.0 } else { t.successes as f64 / decided as f64 };
    let (lo, hi) = ramsey_core::curve::wilson_interval(t.successes, decided);
    json!({
        "property": property,
        "instance": instance,
        "p": p,
        "seed": seed,
        "trials": decided + t.inconclusive,
        "successes": t.successes,
        "failures": t.failures,
        "inconclusive": t.inconclusive,
        "freq": freq,
        "wilson_lo": lo,
        "wilson_hi": hi,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_curve(
    family: Option<String>,
    h: Option<String>,
    k: Option<usize>,
    r: Option<u32>,
    size: Option<u32>,
    grid: Option<String>,
    trials: Option<u64>,
    seed: Option<u64>,
    config: Option<String>,
    csv: Option<String>,
    workers: usize,
    format: Format,
) -> Result<Outcome, String> {
    // Config file values fill whatever the flags left unset.
    let mut conf: std::collections::BTreeMap<String, String> = Default::default();
    if let Some(path) = config {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read config {path:?}: {e}"))?;
        for (key, value) in io::parse_config(&text).map_err(|e| format!("{path}: {e}"))? {
            conf.insert(key, value);
        }
    }
    let pick = |flag: Option<String>, key: &str| flag.or_else(|| conf.get(key).cloned());
    let family = pick(family, "family").ok_or("curve needs --family (or a config file)")?;
    let h = pick(h, "h");
    let k = match pick(k.map(|v| v.to_string()), "k") {
        Some(s) => Some(s.parse::<usize>().map_err(|_| "bad k")?),
        None => None,
    };
    let r = match pick(r.map(|v| v.to_string()), "r") {
        Some(s) => s.parse::<u32>().map_err(|_| "bad r")?,
        None => return Err("curve needs --r".into()),
    };
    let size = match pick(size.map(|v| v.to_string()), "size") {
        Some(s) => s.parse::<u32>().map_err(|_| "bad size")?,
        None => return Err("curve needs --size".into()),
    };
    let grid_spec = pick(grid, "grid").ok_or("curve needs --grid")?;
    let trials = match pick(trials.map(|v| v.to_string()), "trials") {
        Some(s) => s.parse::<u64>().map_err(|_| "bad trials")?,
        None => return Err("curve needs --trials".into()),
    };
    let seed = match pick(seed.map(|v| v.to_string()), "seed") {
        Some(s) => s.parse::<u64>().map_err(|_| "bad seed")?,
        None => return Err("curve needs --seed".into()),
    };
    let grid = io::parse_grid(&grid_spec).map_err(|e| e.to_string())?;

    let fam = match family.as_str() {
        "copies" => {
            let spec = h.as_deref().ok_or("copies family needs --h")?;
            CurveFamily::Copies { h: atlas::resolve_graph(spec)?, r }
        }
        "kap" => CurveFamily::Kap { k: k.ok_or("kap family needs --k")?, r },
        "schur" => CurveFamily::Schur { r },
        other => return Err(format!("unknown family {other:?}")),
    };
    let hyper = fam.build(size).map_err(|e| e.to_string())?;
    let exponent = fam.exponent().map_err(|e| e.to_string())?;
    let caps = McCaps::default();
    let mut tallies: Vec<McTallies> = Vec::with_capacity(grid.len());
    for (i, &p) in grid.iter().enumerate() {
        let block = ramsey_core::curve::grid_block_seed(seed, i);
        tallies.push(runner::run_trials(
            &hyper,
            p,
            block,
            trials,
            McProperty::NonColourable { r },
            &caps,
            workers,
        ));
    }
    let curve = assemble_curve(&grid, &tallies, size as f64, exponent).map_err(|e| e.to_string())?;
    let csv_text = curve_csv(&curve);
    if let Some(path) = csv {
        std::fs::write(&path, csv_text.as_bytes())
            .map_err(|e| format!("cannot write {path:?}: {e}"))?;
    }
    if format == Format::Csv {
        return Ok(Outcome { body: csv_text, exit: 0 });
    }
    let body = json!({
        "family": family,
        "instance": format!("{family}:{size}"),
        "r": r,
        "size": size,
        "seed": seed,
        "trials_per_point": trials,
        "exponent": exponent,
        "p_hat": curve.p_hat,
        "width": curve.width,
        "scaled": curve.scaled,
        "isotonic": curve.isotonic,
        "points": curve.points.iter().map(|pt| json!({
            "p": pt.p,
            "successes": pt.successes,
            "trials": pt.trials,
            "inconclusive": pt.inconclusive,
            "freq": pt.freq,
            "wilson_lo": pt.wilson_lo,
            "wilson_hi": pt.wilson_hi,
        })).collect::<Vec<_>>(),
    });
    Ok(Outcome { body: render(body, format), exit: 0 })
}

fn curve_csv(curve: &ThresholdCurve) -> String {
    let mut out = String::from("p,successes,trials,freq,wilson_lo,wilson_hi\n");
    for pt in &curve.points {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            pt.p, pt.successes, pt.trials, pt.freq, pt.wilson_lo, pt.wilson_hi
        ));
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_janson(
    sets: String,
    p: f64,
    t: Option<f64>,
    t_frac: Option<f64>,
    mode: String,
    c: Option<f64>,
    trials: Option<u64>,
    seed: Option<u64>,
    format: Format,
) -> Result<Outcome, String> {
    let text =
        std::fs::read_to_string(&sets).map_err(|e| format!("cannot read sets {sets:?}: {e}"))?;
    let (ground, family) = io::parse_set_family(&text).map_err(|e| format!("{sets}: {e}"))?;
    match mode.as_str() {
        "bound" => {
            let mu: f64 = family
                .iter()
                .map(|s| f64::powf(p, s.len() as f64))
                .sum();
            let t = match (t, t_frac) {
                (Some(t), None) => t,
                (None, Some(f)) => f * mu,
                _ => return Err("bound mode needs exactly one of --t and --t-frac".into()),
            };
            let input = JansonInput { ground, sets: family, p, t };
            let out = janson_bound(&input).map_err(|e| e.to_string())?;
            let body = json!({
                "mode": "bound",
                "instance": sets,
                "p": p,
                "t": t,
                "mu": out.mu,
                "pseudo_variance": out.pseudo_variance,
                "bound": out.bound,
            });
            Ok(Outcome { body: render(body, format), exit: 0 })
        }
        "coarseness" => {
            let c = c.ok_or("coarseness mode needs --c")?;
            let trials = trials.ok_or("coarseness mode needs --trials")?;
            let seed = seed.ok_or("coarseness mode needs --seed")?;
            let rep = local_coarseness_check(ground, &family, p, c, trials, seed)
                .map_err(|e| e.to_string())?;
            let body = json!({
                "mode": "coarseness",
                "instance": sets,
                "p": p,
                "c": c,
                "seed": seed,
                "trials": trials,
                "mu_p": rep.mu_p,
                "mu_cp": rep.mu_cp,
                "required": rep.required,
                "sigma": rep.slack_sigma,
                "holds": rep.holds,
            });
            Ok(Outcome { body: render(body, format), exit: 0 })
        }
        other => Err(format!("unknown mode {other:?} (bound | coarseness)")),
    }
}
