//! symbreak: graph symmetry analysis, exact distinguishing numbers, and
//! verified symmetry-breaking colourings for 4-valent vertex-transitive
//! graphs.

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::io::Read;
use std::path::PathBuf;
use symbreak::canon::automorphism_group;
use symbreak::classifier::{self, CatalogEntry, CensusReport, RowStatus};
use symbreak::colouring::ColouringError;
use symbreak::constructions::FamilySpec;
use symbreak::distinguishing::{
    distinguishing_index, distinguishing_number, DistinguishingError, SearchLimits,
};
use symbreak::graph::Graph;
use symbreak::io::{from_adjacency_text, from_g6_or_s6, to_graph6};
use symbreak::symmetry::{
    edge_types_with_group, local_group_with_group, transitivity_profile_with_group,
};

const EXIT_FAILURE: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_BUDGET: i32 = 3;
const MIN_BUDGET: u64 = 10_000;

#[derive(Parser)]
#[command(
    name = "symbreak",
    about = "Automorphism groups, distinguishing numbers and verified \
             symmetry-breaking colourings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Input file; '-' or absent reads stdin
    #[arg(long)]
    input: Option<PathBuf>,
    /// Input format
    #[arg(long, value_parser = ["graph6", "adj"], default_value = "graph6")]
    format: String,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Search node budget (>= 10000); also via SYMBREAK_BUDGET
    #[arg(long)]
    budget: Option<u64>,
    /// Output format
    #[arg(long, value_parser = ["json", "table"], default_value = "table")]
    output: String,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetry profile: transitivity levels, edge types, local group,
    /// girth and group order
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Emit a named family instance as graph6
    Generate {
        /// Family name (wreath, cycle_of_k33, complete, complete_bipartite,
        /// cycle, hypercube, petersen, heawood, heawood_bipcomp, cage46,
        /// k3_box_k3, k4_box_k2, k5_tensor_k2, circulant, cayley)
        family: String,
        /// Family parameters
        params: Vec<String>,
    },
    /// Classify a connected 4-valent vertex-transitive graph: exceptional
    /// family or a verified distinguishing 2-colouring
    Colour {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Exact distinguishing number and index
    Dnum {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Largest number of colours to try
        #[arg(long, default_value_t = 8)]
        k_max: usize,
    },
    /// Classify every catalog graph and check the exceptional table
    Census {
        /// File of graph6 lines; absent runs the bundled catalog
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(classify_exit(&err));
        }
    }
}

/// Budget exhaustion gets its own exit code so callers can retry with a
/// larger budget rather than treating the answer as wrong.
fn classify_exit(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(DistinguishingError::BudgetExceeded { .. }) =
            cause.downcast_ref::<DistinguishingError>()
        {
            return EXIT_BUDGET;
        }
        if let Some(ColouringError::Search(DistinguishingError::BudgetExceeded { .. })) =
            cause.downcast_ref::<ColouringError>()
        {
            return EXIT_BUDGET;
        }
        if cause.downcast_ref::<UsageError>().is_some() {
            return EXIT_USAGE;
        }
    }
    EXIT_FAILURE
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn limits_from(common: &CommonArgs) -> Result<SearchLimits> {
    let env = std::env::var("SYMBREAK_BUDGET")
        .ok()
        .map(|s| {
            s.parse::<u64>()
                .map_err(|e| anyhow!(UsageError(format!("SYMBREAK_BUDGET: {e}"))))
        })
        .transpose()?;
    let budget = common.budget.or(env).unwrap_or(SearchLimits::default().node_budget);
    if budget < MIN_BUDGET {
        return Err(anyhow!(UsageError(format!(
            "budget {budget} is below the minimum {MIN_BUDGET}"
        ))));
    }
    Ok(SearchLimits::with_budget(budget))
}

fn read_graph(input: &InputArgs) -> Result<Graph> {
    let text = match &input.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .with_context(|| format!("reading {}", p.display()))?,
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
            buf
        }
    };
    let g = match input.format.as_str() {
        "adj" => from_adjacency_text(&text)?,
        _ => from_g6_or_s6(text.trim())?,
    };
    Ok(g)
}

#[derive(Serialize)]
struct AnalyzeReport {
    graph6: String,
    n: usize,
    edges: usize,
    girth: Option<usize>,
    regularity: Option<usize>,
    aut_order: u128,
    connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertex_transitive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    edge_transitive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    arc_transitive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_arc_regular_at: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    profile_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    edge_type_partition: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    local_group: Option<String>,
}

fn analyze(g: &Graph) -> AnalyzeReport {
    let group = automorphism_group(g);
    let mut report = AnalyzeReport {
        graph6: to_graph6(g),
        n: g.n(),
        edges: g.edge_count(),
        girth: g.girth(),
        regularity: g.regularity(),
        aut_order: group.order(),
        connected: g.is_connected(),
        vertex_transitive: None,
        edge_transitive: None,
        arc_transitive: None,
        max_s: None,
        s_arc_regular_at: None,
        profile_note: None,
        edge_type_partition: None,
        local_group: None,
    };
    if report.connected {
        match transitivity_profile_with_group(g, &group) {
            Ok(p) => {
                report.vertex_transitive = Some(p.vertex_transitive);
                report.edge_transitive = Some(p.edge_transitive);
                report.arc_transitive = Some(p.arc_transitive);
                report.max_s = Some(p.max_s);
                report.s_arc_regular_at = p.s_arc_regular_at;
                if p.vertex_transitive {
                    if let Ok(types) = edge_types_with_group(g, &group) {
                        report.edge_type_partition = Some(types.vertex_partition);
                    }
                    if g.n() > 0 {
                        let local = local_group_with_group(g, &group, 0);
                        report.local_group = Some(format!("{:?}", local.iso_label));
                    }
                }
            }
            Err(e) => report.profile_note = Some(e.to_string()),
        }
    } else {
        report.profile_note = Some("graph is not connected".into());
    }
    report
}

fn print_analyze_table(r: &AnalyzeReport) {
    println!("graph6:            {}", r.graph6);
    println!("vertices:          {}", r.n);
    println!("edges:             {}", r.edges);
    match r.girth {
        Some(g) => println!("girth:             {g}"),
        None => println!("girth:             infinity (acyclic)"),
    }
    match r.regularity {
        Some(d) => println!("regular:           {d}-valent"),
        None => println!("regular:           no"),
    }
    println!("|Aut|:             {}", r.aut_order);
    if let Some(v) = r.vertex_transitive {
        println!("vertex-transitive: {v}");
    }
    if let Some(v) = r.edge_transitive {
        println!("edge-transitive:   {v}");
    }
    if let Some(v) = r.arc_transitive {
        println!("arc-transitive:    {v}");
    }
    if let Some(s) = r.max_s {
        println!("max s-arc level:   {s}");
    }
    if let Some(s) = r.s_arc_regular_at {
        println!("s-arc-regular at:  {s}");
    }
    if let Some(p) = &r.edge_type_partition {
        let parts: Vec<String> = p.iter().map(|t| t.to_string()).collect();
        println!("edge types:        ({})", parts.join(","));
    }
    if let Some(l) = &r.local_group {
        println!("local group:       {l}");
    }
    if let Some(note) = &r.profile_note {
        println!("note:              {note}");
    }
}

#[derive(Serialize)]
struct DnumReport {
    graph6: String,
    d: usize,
    d_colouring: symbreak::distinguishing::Colouring,
    d_index: usize,
    d_index_colouring: symbreak::distinguishing::Colouring,
    #[serde(skip_serializing_if = "Option::is_none")]
    d_index_note: Option<String>,
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Analyze { input, common } => {
            let g = read_graph(&input)?;
            let report = analyze(&g);
            if common.output == "json" {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                print_analyze_table(&report);
            }
            Ok(0)
        }
        Command::Generate { family, params } => {
            let spec = FamilySpec::parse(&family, &params)
                .map_err(|e| anyhow!(UsageError(e.to_string())))?;
            let g = spec.build()?;
            println!("{}", to_graph6(&g));
            Ok(0)
        }
        Command::Colour { input, common } => {
            let g = read_graph(&input)?;
            let limits = limits_from(&common)?;
            let cert = classifier::classify(&g, limits)?;
            if common.output == "json" {
                println!("{}", serde_json::to_string(&cert)?);
            } else {
                println!("graph6:     {}", cert.graph6);
                let parts: Vec<String> =
                    cert.edge_type_partition.iter().map(|t| t.to_string()).collect();
                println!("edge types: ({})", parts.join(","));
                println!("branch:     {:?}", cert.branch_trace.branch);
                match &cert.exceptional {
                    Some(f) => println!("exceptional: {}", f.display_name()),
                    None => println!("exceptional: no"),
                }
                println!("D:          {}", cert.d);
                if let Some(c) = &cert.colouring {
                    let blacks: Vec<String> =
                        c.blacks().iter().map(|v| v.to_string()).collect();
                    println!("black set:  {{{}}}", blacks.join(","));
                }
                println!("verified:   {}", cert.verified);
            }
            Ok(0)
        }
        Command::Dnum { input, common, k_max } => {
            let g = read_graph(&input)?;
            let limits = limits_from(&common)?;
            let (d, d_colouring) = distinguishing_number(&g, k_max, limits)?;
            let index = distinguishing_index(&g, k_max, limits)?;
            let report = DnumReport {
                graph6: to_graph6(&g),
                d,
                d_colouring,
                d_index: index.value,
                d_index_colouring: index.colouring,
                d_index_note: index
                    .degenerate
                    .then(|| "single edge: the index is 1 by convention".to_string()),
            };
            if common.output == "json" {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                println!("D={}", report.d);
                println!("D'={}", report.d_index);
                if let Some(note) = &report.d_index_note {
                    println!("note: {note}");
                }
            }
            Ok(0)
        }
        Command::Census { input, common, jobs } => {
            let limits = limits_from(&common)?;
            if jobs == 0 {
                return Err(anyhow!(UsageError("jobs must be at least 1".into())));
            }
            let catalog: Vec<CatalogEntry> = match input {
                None => classifier::bundled_catalog(),
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    text.lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty() && !l.starts_with('#'))
                        .enumerate()
                        .map(|(i, line)| {
                            Ok(CatalogEntry {
                                name: format!("line-{}", i + 1),
                                graph: from_g6_or_s6(line)?,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?
                }
            };
            let report = run_census(&catalog, limits, jobs)?;
            if common.output == "json" {
                for row in &report.rows {
                    println!("{}", serde_json::to_string(row)?);
                }
                println!("{}", serde_json::to_string(&summary_of(&report))?);
            } else {
                print_census_table(&report);
            }
            Ok(if report.passed() { 0 } else { EXIT_FAILURE })
        }
    }
}

fn run_census(catalog: &[CatalogEntry], limits: SearchLimits, jobs: usize) -> Result<CensusReport> {
    let rows = if jobs <= 1 {
        catalog.iter().map(|e| classifier::census_row(e, limits)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .context("building worker pool")?;
        pool.install(|| {
            use rayon::prelude::*;
            catalog.par_iter().map(|e| classifier::census_row(e, limits)).collect()
        })
    };
    Ok(classifier::assemble_report(rows))
}

#[derive(Serialize)]
struct CensusSummary<'a> {
    total: usize,
    ok: usize,
    skipped: usize,
    failed: usize,
    branches_seen: &'a [symbreak::colouring::Branch],
    branches_missing: &'a [symbreak::colouring::Branch],
    passed: bool,
}

fn summary_of(report: &CensusReport) -> CensusSummary<'_> {
    CensusSummary {
        total: report.total,
        ok: report.ok,
        skipped: report.skipped,
        failed: report.failed,
        branches_seen: &report.branches_seen,
        branches_missing: &report.branches_missing,
        passed: report.passed(),
    }
}

fn print_census_table(report: &CensusReport) {
    println!(
        "{:<28} {:<10} {:>2}  {:<28} {}",
        "name", "status", "D", "branch", "note"
    );
    for row in &report.rows {
        let status = match row.status {
            RowStatus::Ok => "ok",
            RowStatus::Skipped => "skipped",
            RowStatus::Failed => "FAILED",
        };
        let d = row.d.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
        let branch = row
            .branch
            .map(|b| format!("{b:?}"))
            .unwrap_or_else(|| "-".into());
        println!(
            "{:<28} {:<10} {:>2}  {:<28} {}",
            row.name,
            status,
            d,
            branch,
            row.note.clone().unwrap_or_default()
        );
    }
    println!(
        "\ntotal {}  ok {}  skipped {}  failed {}",
        report.total, report.ok, report.skipped, report.failed
    );
    if report.branches_missing.is_empty() {
        println!("branch coverage: complete ({} branches)", report.branches_seen.len());
    } else {
        println!("branch coverage: MISSING {:?}", report.branches_missing);
    }
    println!("result: {}", if report.passed() { "PASS" } else { "FAIL" });
}
