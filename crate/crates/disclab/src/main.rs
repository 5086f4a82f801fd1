//! disclab: discrepancy, separation, and extraction tools on the command line.
//!
//! Exit codes: 0 success, 1 domain error (bad input, theory violation),
//! 2 budget error (a cap was exceeded, raise it or shrink the instance).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};

use disclab::colouring::EdgeColouring;
use disclab::discrepancy::{
    exact_tree_discrepancy, subgraph_family_discrepancy, DiscrepancyReport, SubgraphFamily,
    DEFAULT_COLOURING_ENUM_BUDGET,
};
use disclab::dual::extract_separator;
use disclab::error::{Error, Result};
use disclab::experiment::{run_experiment, Budgets, ExperimentConfig, VERSION};
use disclab::extremal::{
    clique_cycle_colouring, dc_scan, hamilton_extremal, phi_exact_with_cap, SequenceSpec,
    DEFAULT_PHI_N_CAP, DEFAULT_PHI_R_CAP,
};
use disclab::generators::{
    gen_clique_cycle, gen_complete, gen_grid, gen_grid_plus, gen_hedgehog, gen_hedgehog_regular,
    gen_hypercube, gen_random_regular,
};
use disclab::hamilton::{
    dfs_long_path, dirac_hamilton, hamilton_with_forced_edges, monochromatic_matching,
};
use disclab::io::{
    read_colouring, read_edge_list, read_graph, write_colouring, write_dot, write_graph,
    write_json, CliqueCycleMeta,
};
use disclab::separation::{
    exact_separation_number_with_cap, separation_lower_bounds, DEFAULT_SEPARATION_CAP,
};

#[derive(Parser)]
#[command(name = "disclab", version = VERSION)]
#[command(about = "discrepancy, separation, and extraction tools for edge-coloured graphs")]
struct Cli {
    /// RNG seed for randomised commands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Enumeration budget override (colourings, subsets, vertices; per command)
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Machine-readable JSON on stdout instead of prose
    #[arg(long, global = true)]
    json: bool,
    /// Write the primary JSON result to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph from a named family
    Gen(GenArgs),
    /// Discrepancy of a colouring, or the exact minimum over colourings
    Disc(DiscArgs),
    /// Balanced separation numbers: exact search and lower bounds
    Sep(SepArgs),
    /// Run the colouring-to-separator extraction pipeline
    Extract(ExtractArgs),
    /// Extremal constructions and their certificates
    #[command(subcommand)]
    Extremal(ExtremalCmd),
    /// Hamilton-cycle, long-path, and matching tools
    #[command(subcommand)]
    Ham(HamCmd),
    /// Run a named experiment and write its report
    Experiment(ExperimentArgs),
    /// Validate, round-trip, and convert interchange files
    #[command(subcommand)]
    Io(IoCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Hedgehog,
    HedgehogRegular,
    CliqueCycle,
    Grid,
    GridPlus,
    Hypercube,
    RandomRegular,
    Complete,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: Family,
    /// Vertex count
    #[arg(short)]
    n: Option<usize>,
    /// Degree or grid dimension
    #[arg(short)]
    d: Option<usize>,
    /// Side length or clique parameter
    #[arg(short)]
    k: Option<usize>,
    /// Number of colours
    #[arg(short)]
    r: Option<usize>,
    /// Offset sequence for clique cycles, comma separated
    #[arg(long, value_delimiter = ',')]
    x: Option<Vec<usize>>,
    /// Write the family's canonical colouring here, when it has one
    #[arg(long)]
    colouring_out: Option<PathBuf>,
    /// Write construction metadata here (clique cycles)
    #[arg(long)]
    meta: Option<PathBuf>,
    /// Write DOT output here
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiscTarget {
    Tree,
    Ham,
    Pm,
}

#[derive(Args)]
struct DiscArgs {
    #[arg(value_enum)]
    target: DiscTarget,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    colouring: Option<PathBuf>,
    /// Exact minimum over all r-colourings (trees only)
    #[arg(long)]
    exact_min: bool,
    /// Number of colours for --exact-min
    #[arg(short, default_value_t = 2)]
    r: usize,
    /// Report file (same content as --out)
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SepArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(short, default_value_t = 2)]
    r: usize,
    /// Exact search only (error when the graph exceeds the cap)
    #[arg(long)]
    exact: bool,
    /// Lower bounds only
    #[arg(long)]
    bounds: bool,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    colouring: PathBuf,
    /// Write the full extraction trace here
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExtremalCmd {
    /// Scan all index subsets of the two-level size sequence for negative slack
    DcScan {
        #[arg(short, default_value_t = 2)]
        r: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, value_delimiter = ',')]
        x: Vec<usize>,
    },
    /// Minimal size of r cliques covering all pairs of an n-set
    Phi {
        #[arg(short, default_value_t = 2)]
        r: usize,
        #[arg(short)]
        n: usize,
        /// Also emit the clique-cover colouring of the complete graph
        #[arg(long)]
        colouring_out: Option<PathBuf>,
    },
    /// Dense construction whose Hamilton cycles and perfect matchings all
    /// have zero discrepancy
    Build {
        #[arg(short, default_value_t = 2)]
        r: usize,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        colouring_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HamCmd {
    /// Monochromatic matching of guaranteed size in a dense coloured graph
    Match {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        colouring: PathBuf,
        /// Density margin as a fraction, e.g. 1/8
        #[arg(long, default_value = "1/8")]
        alpha: String,
    },
    /// Long path in a balanced bipartite graph via depth-first search
    Path {
        #[arg(long)]
        graph: PathBuf,
        /// Expansion defect parameter
        #[arg(short, default_value_t = 1)]
        k: usize,
    },
    /// Hamilton cycle through forced edges (or plain Dirac search)
    Forced {
        #[arg(long)]
        graph: PathBuf,
        /// JSON list of vertex pairs that must appear on the cycle
        #[arg(long)]
        forced: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// Full experiment config as JSON; overrides the inline flags
    #[arg(long)]
    config: Option<PathBuf>,
    /// Experiment id for inline configuration
    #[arg(long)]
    id: Option<String>,
    #[arg(short, default_value_t = 2)]
    r: usize,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    seeds: Vec<u64>,
    /// Integer knob, repeatable: --param n=40 --param d=3
    #[arg(long = "param")]
    params: Vec<String>,
}

#[derive(Subcommand)]
enum IoCmd {
    /// Parse files and report what they contain
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        colouring: Option<PathBuf>,
    },
    /// Parse and re-serialise a graph (writes to --out, else stdout)
    Roundtrip {
        #[arg(long)]
        graph: PathBuf,
    },
    /// DOT export with optional edge colours (writes to --out, else stdout)
    Dot {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        colouring: Option<PathBuf>,
    },
}

// stdout may be a pipe that closes early (`disclab ... | head`); treat a
// failed write as "the consumer has seen enough", not as a crash
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! say_raw {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

/// The global flags, separated from the subcommand so handlers can borrow
/// them while consuming their own arguments.
struct Opts {
    seed: u64,
    budget: Option<usize>,
    json: bool,
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_budget() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// Prints the result (prose or JSON) and mirrors it to --out when set.
fn emit(cli_json: bool, out: Option<&Path>, value: &Value, human: &str) -> Result<()> {
    if let Some(path) = out {
        write_json(path, value)?;
    }
    if cli_json {
        say!("{}", serde_json::to_string_pretty(value).expect("serialisable"));
    } else {
        say!("{human}");
    }
    Ok(())
}

fn require(name: &str, v: Option<usize>) -> Result<usize> {
    v.ok_or_else(|| Error::InvalidSpec(format!("this family needs -{name}")))
}

fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    let parse = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("bad ratio '{s}': {e}")))
    };
    match s.split_once('/') {
        Some((a, b)) => {
            let den = parse(b)?;
            if den == 0 {
                return Err(Error::Parse(format!("bad ratio '{s}': zero denominator")));
            }
            Ok(Ratio::new(parse(a)?, den))
        }
        None => Ok(Ratio::from_integer(parse(s)?)),
    }
}

fn discrepancy_json(rep: &DiscrepancyReport) -> Value {
    json!({
        "family": format!("{:?}", rep.family),
        "value": rep.value,
        "witness-colouring": rep.witness_colouring.as_ref().map(|f| f.colours().to_vec()),
        "witness-edges": rep.witness_subgraph,
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let Cli {
        seed,
        budget,
        json,
        out,
        cmd,
    } = cli;
    let cli = Opts {
        seed,
        budget,
        json,
        out,
    };
    let out = cli.out.as_deref();
    match cmd {
        Cmd::Gen(args) => run_gen(&cli, args)?,
        Cmd::Disc(args) => {
            let g = read_graph(&args.graph)?;
            let family = match args.target {
                DiscTarget::Tree => SubgraphFamily::SpanningTree,
                DiscTarget::Ham => SubgraphFamily::HamiltonCycle,
                DiscTarget::Pm => SubgraphFamily::PerfectMatching,
            };
            let rep = if args.exact_min {
                if family != SubgraphFamily::SpanningTree {
                    return Err(Error::InvalidSpec(
                        "--exact-min is only available for spanning trees".into(),
                    ));
                }
                let budget = cli.budget.unwrap_or(DEFAULT_COLOURING_ENUM_BUDGET);
                exact_tree_discrepancy(&g, args.r, budget)?
            } else {
                let path = args.colouring.as_ref().ok_or_else(|| {
                    Error::InvalidSpec("need --colouring (or --exact-min)".into())
                })?;
                let f = read_colouring(path, &g)?;
                subgraph_family_discrepancy(&g, &f, family)?
            };
            let value = discrepancy_json(&rep);
            if let Some(path) = &args.report {
                write_json(path, &value)?;
            }
            emit(
                cli.json,
                out,
                &value,
                &format!("{:?} discrepancy: {}", rep.family, rep.value),
            )?;
        }
        Cmd::Sep(args) => {
            let g = read_graph(&args.graph)?;
            let mut result = BTreeMap::new();
            let mut human = Vec::new();
            if !args.exact {
                let bounds = separation_lower_bounds(&g, args.r)?;
                result.insert(
                    "bounds",
                    json!({"kappa": bounds.kappa_bound, "iso": bounds.iso_bound}),
                );
                human.push(format!("lower bounds: s_r >= {}", bounds.best()));
            }
            if !args.bounds {
                let cap = cli.budget.unwrap_or(DEFAULT_SEPARATION_CAP);
                let (s, witness) = exact_separation_number_with_cap(&g, args.r, cap)?;
                result.insert("s_r", json!(s));
                result.insert("witness", serde_json::to_value(&witness).expect("serialisable"));
                human.push(format!("exact: s_{} = {s}", args.r));
            }
            emit(cli.json, out, &json!(result), &human.join("; "))?;
        }
        Cmd::Extract(args) => {
            let g = read_graph(&args.graph)?;
            let f = read_colouring(&args.colouring, &g)?;
            let ext = extract_separator(&g, &f)?;
            if let Some(path) = &args.trace {
                write_json(path, &ext)?;
            }
            let value = json!({
                "separator-size": ext.separation.separator_size(),
                "d-used": ext.trace.d_used,
                "bucket-size": ext.trace.final_bucket_size,
                "checks": ext.trace.checks.len(),
                "violations": ext.trace.violations().len(),
            });
            emit(
                cli.json,
                out,
                &value,
                &format!(
                    "separator of {} vertices (d = {}, {} checks, all passing)",
                    ext.separation.separator_size(),
                    ext.trace.d_used,
                    ext.trace.checks.len()
                ),
            )?;
        }
        Cmd::Extremal(cmd) => run_extremal(&cli, cmd)?,
        Cmd::Ham(cmd) => run_ham(&cli, cmd)?,
        Cmd::Experiment(args) => return run_experiment_cmd(&cli, args),
        Cmd::Io(cmd) => run_io(&cli, cmd)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn run_gen(cli: &Opts, args: GenArgs) -> Result<()> {
    let mut colouring: Option<EdgeColouring> = None;
    let family_name;
    let g = match args.family {
        Family::Hedgehog => {
            family_name = "hedgehog";
            let (g, f) = gen_hedgehog(require("n", args.n)?, require("r", args.r)?)?;
            colouring = Some(f);
            g
        }
        Family::HedgehogRegular => {
            family_name = "hedgehog-regular";
            gen_hedgehog_regular(require("n", args.n)?, require("d", args.d)?, cli.seed)?
        }
        Family::CliqueCycle => {
            family_name = "clique-cycle";
            let x = args
                .x
                .clone()
                .ok_or_else(|| Error::InvalidSpec("clique-cycle needs --x".into()))?;
            let cc = gen_clique_cycle(require("r", args.r)?, require("k", args.k)?, &x)?;
            if let Some(path) = &args.meta {
                write_json(path, &CliqueCycleMeta::of(&cc))?;
            }
            colouring = Some(clique_cycle_colouring(&cc)?);
            cc.graph
        }
        Family::Grid => {
            family_name = "grid";
            gen_grid(require("k", args.k)?, require("d", args.d)?)?
        }
        Family::GridPlus => {
            family_name = "grid-plus";
            gen_grid_plus(require("k", args.k)?)?
        }
        Family::Hypercube => {
            family_name = "hypercube";
            gen_hypercube(require("d", args.d)?)?
        }
        Family::RandomRegular => {
            family_name = "random-regular";
            gen_random_regular(require("n", args.n)?, require("d", args.d)?, cli.seed)?
        }
        Family::Complete => {
            family_name = "complete";
            gen_complete(require("n", args.n)?)?
        }
    };
    if let (Some(path), Some(f)) = (&args.colouring_out, &colouring) {
        write_colouring(path, f)?;
    }
    if let Some(path) = &args.dot {
        write_dot(path, &g, colouring.as_ref())?;
    }
    if let Some(path) = cli.out.as_deref() {
        write_graph(path, &g)?;
    }
    let value = json!({
        "family": family_name,
        "n": g.n(),
        "m": g.m(),
        "colouring": colouring.as_ref().map(|f| f.r()),
    });
    let human = format!("{family_name}: n = {}, m = {}", g.n(), g.m());
    if cli.json {
        say!("{}", serde_json::to_string_pretty(&value).expect("serialisable"));
    } else if cli.out.is_none() && !cli.json {
        // no file requested: put the graph itself on stdout
        say!(
            "{}",
            serde_json::to_string_pretty(&g.to_json()).expect("serialisable")
        );
    } else {
        say!("{human}");
    }
    Ok(())
}

fn run_extremal(cli: &Opts, cmd: ExtremalCmd) -> Result<()> {
    let out = cli.out.as_deref();
    match cmd {
        ExtremalCmd::DcScan { r, k, x } => {
            let spec = SequenceSpec::new(r, k, x)?;
            let slack = dc_scan(&spec)?;
            let value = json!({
                "r": r, "k": k,
                "positions": r * k,
                "min-slack": slack.to_string(),
                "nonnegative": slack >= Ratio::from_integer(0),
            });
            emit(
                cli.json,
                out,
                &value,
                &format!("scanned {} subsets; minimum slack {slack}", 1u64 << (r * k)),
            )?;
        }
        ExtremalCmd::Phi { r, n, colouring_out } => {
            let cover = phi_exact_with_cap(r, n, DEFAULT_PHI_R_CAP.max(r), DEFAULT_PHI_N_CAP)?;
            if let Some(path) = &colouring_out {
                let g = gen_complete(n)?;
                let f = disclab::extremal::clique_cover_colouring(&g, &cover.cover)?;
                write_colouring(path, &f)?;
            }
            let value = json!({"r": r, "n": n, "phi": cover.k, "cover": cover.cover});
            emit(
                cli.json,
                out,
                &value,
                &format!("phi({r}, {n}) = {}", cover.k),
            )?;
        }
        ExtremalCmd::Build { r, n, colouring_out } => {
            let (g, f) = hamilton_extremal(r, n)?;
            if let Some(path) = &colouring_out {
                write_colouring(path, &f)?;
            }
            if let Some(path) = out {
                write_graph(path, &g)?;
            }
            let value = json!({
                "r": r, "n": n, "m": g.m(),
                "min-degree": g.min_degree(),
            });
            if cli.json {
                say!("{}", serde_json::to_string_pretty(&value).expect("serialisable"));
            } else {
                say!(
                    "built extremal graph: n = {n}, m = {}, min degree {}",
                    g.m(),
                    g.min_degree()
                );
            }
        }
    }
    Ok(())
}

fn run_ham(cli: &Opts, cmd: HamCmd) -> Result<()> {
    let out = cli.out.as_deref();
    match cmd {
        HamCmd::Match {
            graph,
            colouring,
            alpha,
        } => {
            let g = read_graph(&graph)?;
            let f = read_colouring(&colouring, &g)?;
            let alpha = parse_ratio(&alpha)?;
            let result = monochromatic_matching(&g, &f, alpha)?;
            let value = serde_json::to_value(&result).expect("serialisable");
            emit(
                cli.json,
                out,
                &value,
                &format!(
                    "matching of {} edges in colour {} (slack {})",
                    result.matching.len(),
                    result.colour,
                    result.slack
                ),
            )?;
        }
        HamCmd::Path { graph, k } => {
            let g = read_graph(&graph)?;
            let report = dfs_long_path(&g, k)?;
            let value = serde_json::to_value(&report).expect("serialisable");
            emit(
                cli.json,
                out,
                &value,
                &format!(
                    "path of {} vertices (side {}, expansion checked: {:?})",
                    report.length, report.side_size, report.hypothesis_checked
                ),
            )?;
        }
        HamCmd::Forced { graph, forced } => {
            let g = read_graph(&graph)?;
            let cycle = match &forced {
                Some(path) => {
                    let edges = read_edge_list(path)?;
                    hamilton_with_forced_edges(&g, &edges)?
                }
                None => dirac_hamilton(&g)?,
            };
            let value = json!({"cycle": cycle});
            let human = match &cycle {
                Some(c) => format!("Hamilton cycle found: {c:?}"),
                None => "no Hamilton cycle under the given constraints".to_string(),
            };
            emit(cli.json, out, &value, &human)?;
        }
    }
    Ok(())
}

fn run_experiment_cmd(cli: &Opts, args: ExperimentArgs) -> Result<ExitCode> {
    let mut cfg: ExperimentConfig = match (&args.config, &args.id) {
        (Some(path), _) => disclab::io::read_json(path)?,
        (None, Some(id)) => {
            let mut cfg = ExperimentConfig::new(id, args.r, args.seeds.clone());
            for pair in &args.params {
                let (key, v) = pair.split_once('=').ok_or_else(|| {
                    Error::InvalidSpec(format!("--param needs key=value, got '{pair}'"))
                })?;
                let v: i64 = v
                    .parse()
                    .map_err(|e| Error::InvalidSpec(format!("bad --param '{pair}': {e}")))?;
                cfg.params.insert(key.to_string(), v);
            }
            cfg
        }
        (None, None) => {
            return Err(Error::InvalidSpec(
                "experiment needs --config or --id".into(),
            ))
        }
    };
    if let Some(budget) = cli.budget {
        cfg.budgets = Budgets {
            colourings: budget,
            ..cfg.budgets
        };
    }
    if cfg.out.is_none() {
        cfg.out = cli.out.clone();
    }
    let report = run_experiment(&cfg)?;
    if cli.json {
        say_raw!("{}", report.to_json_string());
    } else {
        say!(
            "{}: {} items, {} ok, complete: {}",
            report.experiment,
            report.items.len(),
            report
                .items
                .iter()
                .filter(|i| i.status == disclab::experiment::ItemStatus::Ok)
                .count(),
            report.complete
        );
        for (key, v) in &report.summary {
            say!("  {key}: {v}");
        }
    }
    Ok(if report.complete {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn run_io(cli: &Opts, cmd: IoCmd) -> Result<()> {
    let out = cli.out.as_deref();
    match cmd {
        IoCmd::Validate { graph, colouring } => {
            let g = read_graph(&graph)?;
            let mut value = json!({
                "n": g.n(),
                "m": g.m(),
                "connected": g.is_connected(),
            });
            let mut human = format!("graph ok: n = {}, m = {}", g.n(), g.m());
            if let Some(path) = &colouring {
                let f = read_colouring(path, &g)?;
                value["r"] = json!(f.r());
                human.push_str(&format!("; colouring ok: r = {}", f.r()));
            }
            emit(cli.json, out, &value, &human)?;
        }
        IoCmd::Roundtrip { graph } => {
            let g = read_graph(&graph)?;
            if let Some(path) = out {
                write_graph(path, &g)?;
                if !cli.json {
                    say!("round-tripped to {}", path.display());
                } else {
                    say!("{}", serde_json::to_string_pretty(&g.to_json()).expect("ok"));
                }
            } else {
                say!("{}", serde_json::to_string_pretty(&g.to_json()).expect("ok"));
            }
        }
        IoCmd::Dot { graph, colouring } => {
            let g = read_graph(&graph)?;
            let f = match &colouring {
                Some(path) => Some(read_colouring(path, &g)?),
                None => None,
            };
            match out {
                Some(path) => {
                    write_dot(path, &g, f.as_ref())?;
                    say!("wrote {}", path.display());
                }
                None => say_raw!("{}", g.to_dot(f.as_ref())),
            }
        }
    }
    Ok(())
}
