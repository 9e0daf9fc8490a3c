//! `diverse`: command-line front end for the diverse-solution pipelines.
//!
//! Exit codes: 0 on success, 1 on parse or validation errors, 2 when the
//! instance is well formed but infeasible.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use diverse_core::bench::{
    run_benchmark, write_csv, write_plot_files, BenchConfig, FileFormat, GridRange,
};
use diverse_core::diversity::{diversity_pairwise, GroundSetWeights};
use diverse_core::graph::{
    generate_grid, parse_dimacs_gr, parse_edge_list, parse_snap_edgelist, DimacsOptions, GridSpec,
};
use diverse_core::matching::{diverse_bipartite_matchings, parse_bipartite};
use diverse_core::matroid::{graphic_matroid, weighted_diverse_bases};
use diverse_core::paths::{diverse_shortest_paths, PathInstance, PhaseTimings};
use diverse_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "diverse",
    version,
    about = "Maximally diverse shortest paths, spanning trees and matchings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// k shortest s-t paths with maximum total pairwise weighted distance
    Paths(PathsArgs),
    /// k matchings of size p in a bipartite graph
    Matchings(MatchingsArgs),
    /// k spanning trees (forests) of an undirected graph
    Trees(TreesArgs),
    /// Compare against the first k Yen paths and write CSV
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dimacs,
    Snap,
    Grid,
    Edge,
}

#[derive(Args)]
struct Output {
    /// Print a JSON report (default)
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Print a short human-readable report
    #[arg(long)]
    text: bool,
    /// Recompute the diversity from the listed solutions and fail on mismatch
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct PathsArgs {
    /// Input file, or - for stdin
    #[arg(long, required_unless_present = "grid", conflicts_with = "grid")]
    input: Option<String>,
    /// Use the unit p x p grid from corner to corner
    #[arg(long)]
    grid: Option<usize>,
    /// Input format: DIMACS .gr and SNAP are directed, edge lists undirected
    #[arg(long, value_enum, default_value = "dimacs")]
    format: Format,
    /// Source vertex (0-based)
    #[arg(long)]
    s: Option<usize>,
    /// Target vertex (0-based)
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    k: usize,
    /// Round DIMACS lengths to multiples of 100
    #[arg(long)]
    round100: bool,
    /// Give every DIMACS arc weight 1 instead of its length
    #[arg(long)]
    unit_weight: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct MatchingsArgs {
    /// Bipartite input file, or - for stdin
    #[arg(long)]
    input: String,
    #[arg(long)]
    k: usize,
    /// Size of every matching
    #[arg(long)]
    p: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct TreesArgs {
    /// Undirected edge-list file, or - for stdin
    #[arg(long)]
    input: String,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BenchArgs {
    /// Grid dimensions as start:end:step
    #[arg(long)]
    grid_range: Option<GridRange>,
    /// Comma-separated values of k
    #[arg(long, value_delimiter = ',', required = true)]
    k_list: Vec<usize>,
    /// Graph files; .gr is read as DIMACS, anything else as a SNAP edge list
    #[arg(long, num_args = 1..)]
    files: Vec<PathBuf>,
    /// Vertex pairs sampled per file
    #[arg(long, default_value_t = 400)]
    n: usize,
    #[arg(long, default_value_t = 2021)]
    seed: u64,
    /// Round DIMACS lengths to multiples of 100
    #[arg(long)]
    round100: bool,
    /// Leave the time column empty so reruns are byte-identical
    #[arg(long)]
    no_timing: bool,
    /// CSV destination (default stdout)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Directory for two-column plot data files
    #[arg(long)]
    plot_dir: Option<PathBuf>,
}

#[derive(Serialize)]
struct Report<'a, X: Serialize> {
    problem: &'a str,
    k: usize,
    diversity: i64,
    packing_weight: i64,
    /// Element ids (arcs, edges) of each solution, ascending.
    solutions: &'a [Vec<usize>],
    multiplicity: &'a [usize],
    #[serde(flatten)]
    extra: X,
}

#[derive(Serialize)]
struct PathsExtra<'a> {
    s: usize,
    t: usize,
    shortest_distance: u64,
    paths: &'a [Vec<usize>],
    timings_ms: PhaseTimings,
}

#[derive(Serialize)]
struct MatchingsExtra {
    p: usize,
    pairs: Vec<Vec<(usize, usize)>>,
}

#[derive(Serialize)]
struct TreesExtra {
    rank: usize,
    oracle_queries: u64,
}

fn read_input(input: &str) -> Result<String> {
    let io = |e: std::io::Error| Error::Io {
        path: input.to_string(),
        message: e.to_string(),
    };
    if input == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io)?;
        Ok(text)
    } else {
        std::fs::read_to_string(Path::new(input)).map_err(io)
    }
}

fn emit<X: Serialize>(
    report: &Report<'_, X>,
    weights: &GroundSetWeights,
    output: &Output,
) -> Result<()> {
    if output.verify {
        let recomputed = diversity_pairwise(report.solutions, weights);
        if recomputed != report.diversity {
            return Err(Error::Precondition(format!(
                "reported diversity {} but solutions give {recomputed}",
                report.diversity
            )));
        }
    }
    let mut out = std::io::stdout().lock();
    let io = |e: std::io::Error| Error::Io {
        path: "stdout".into(),
        message: e.to_string(),
    };
    if output.text {
        writeln!(out, "problem: {}", report.problem).map_err(io)?;
        writeln!(out, "k: {}", report.k).map_err(io)?;
        writeln!(out, "diversity: {}", report.diversity).map_err(io)?;
        for (i, s) in report.solutions.iter().enumerate() {
            let ids: Vec<String> = s.iter().map(usize::to_string).collect();
            writeln!(out, "solution {}: {}", i + 1, ids.join(" ")).map_err(io)?;
        }
    } else {
        let json = serde_json::to_string_pretty(report).expect("report serializes");
        writeln!(out, "{json}").map_err(io)?;
    }
    Ok(())
}

fn cmd_paths(args: &PathsArgs) -> Result<()> {
    let opts = DimacsOptions {
        round100: args.round100,
        unit_weight: args.unit_weight,
    };
    let (directed, undirected, default_ends) = match (args.grid, args.format) {
        (Some(p), _) => {
            let (g, s, t) = generate_grid(GridSpec { p })?;
            (None, Some(g), Some((s, t)))
        }
        (None, format) => {
            let text = read_input(args.input.as_deref().expect("clap requires --input"))?;
            match format {
                Format::Dimacs => (Some(parse_dimacs_gr(&text, opts)?), None, None),
                Format::Snap => (Some(parse_snap_edgelist(&text)?), None, None),
                Format::Edge => (None, Some(parse_edge_list(&text)?), None),
                Format::Grid => {
                    let p = text.trim().parse().map_err(|_| {
                        Error::InvalidArgument("grid input must hold a single dimension".into())
                    })?;
                    let (g, s, t) = generate_grid(GridSpec { p })?;
                    (None, Some(g), Some((s, t)))
                }
            }
        }
    };
    let instance = match (&directed, &undirected) {
        (Some(g), _) => PathInstance::Directed(g),
        (_, Some(g)) => PathInstance::Undirected(g),
        _ => unreachable!("one graph is always built"),
    };
    let (s, t) = match (args.s, args.t, default_ends) {
        (Some(s), Some(t), _) => (s, t),
        (s, t, Some((ds, dt))) => (s.unwrap_or(ds), t.unwrap_or(dt)),
        _ => {
            return Err(Error::InvalidArgument(
                "--s and --t are required for file inputs".into(),
            ))
        }
    };
    let r = diverse_shortest_paths(instance, s, t, args.k)?;
    let report = Report {
        problem: "paths",
        k: args.k,
        diversity: r.diversity(),
        packing_weight: r.packing_weight,
        solutions: r.solutions.sets(),
        multiplicity: r.solutions.multiplicity(),
        extra: PathsExtra {
            s,
            t,
            shortest_distance: r.shortest_distance,
            paths: &r.paths,
            timings_ms: r.timings,
        },
    };
    emit(&report, &instance.weights(), &args.output)
}

fn cmd_matchings(args: &MatchingsArgs) -> Result<()> {
    let g = parse_bipartite(&read_input(&args.input)?)?;
    let r = diverse_bipartite_matchings(&g, args.k, args.p)?;
    let pairs = r
        .matchings
        .iter()
        .map(|m| {
            m.iter()
                .map(|&e| (g.edges()[e].a, g.edges()[e].b))
                .collect()
        })
        .collect();
    let report = Report {
        problem: "matchings",
        k: args.k,
        diversity: r.diversity(),
        packing_weight: r.packing_weight,
        solutions: r.solutions.sets(),
        multiplicity: r.solutions.multiplicity(),
        extra: MatchingsExtra { p: args.p, pairs },
    };
    emit(&report, &g.weights(), &args.output)
}

fn cmd_trees(args: &TreesArgs) -> Result<()> {
    let g = parse_edge_list(&read_input(&args.input)?)?;
    let weights = GroundSetWeights::new(g.weights());
    let r = weighted_diverse_bases(&graphic_matroid(&g), &weights, args.k)?;
    let report = Report {
        problem: "trees",
        k: args.k,
        diversity: r.diversity(),
        packing_weight: r.packing_weight,
        solutions: r.solutions.sets(),
        multiplicity: r.solutions.multiplicity(),
        extra: TreesExtra {
            rank: r.rank,
            oracle_queries: r.oracle_queries,
        },
    };
    emit(&report, &weights, &args.output)
}

fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let config = BenchConfig {
        grid: args.grid_range,
        ks: args.k_list.clone(),
        files: args
            .files
            .iter()
            .map(|p| (p.clone(), FileFormat::from_path(p)))
            .collect(),
        pairs: args.n,
        seed: args.seed,
        round100: args.round100,
        timing: !args.no_timing,
    };
    let rows = run_benchmark(&config)?;
    match &args.output {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| Error::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            write_csv(&rows, file)?;
        }
        None => write_csv(&rows, std::io::stdout().lock())?,
    }
    if let Some(dir) = &args.plot_dir {
        write_plot_files(&rows, dir)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Paths(a) => cmd_paths(a),
        Command::Matchings(a) => cmd_matchings(a),
        Command::Trees(a) => cmd_trees(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_infeasible() { 2 } else { 1 })
        }
    }
}
