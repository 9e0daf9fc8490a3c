//! Benchmark runner comparing the diverse-paths pipeline with the first `k`
//! paths of the Yen enumeration, on corner-to-corner grids and on sampled
//! vertex pairs of graph files.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::baseline::yen_k_shortest;
use crate::diversity::SolutionSet;
use crate::error::{Error, Result};
use crate::graph::{
    generate_grid, parse_dimacs_gr, parse_snap_edgelist, DimacsOptions, DirectedGraph, GridSpec,
    UndirectedGraph, VertexId,
};
use crate::paths::{diverse_shortest_paths, PathInstance};
use crate::shortest_dag::build_shortest_path_dag;

/// Inclusive range `start:end:step` of grid dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridRange {
    pub start: usize,
    pub end: usize,
    pub step: usize,
}

impl GridRange {
    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.end).step_by(self.step).collect()
    }
}

impl FromStr for GridRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidArgument(format!(
                "grid range must look like start:end:step, got {s:?}"
            ))
        };
        let parts: Vec<usize> = s
            .split(':')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let range = match parts[..] {
            [p] => GridRange {
                start: p,
                end: p,
                step: 1,
            },
            [a, b] => GridRange {
                start: a,
                end: b,
                step: 1,
            },
            [a, b, c] => GridRange {
                start: a,
                end: b,
                step: c,
            },
            _ => return Err(bad()),
        };
        if range.step == 0 || range.start < 2 || range.start > range.end {
            return Err(bad());
        }
        Ok(range)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    Dimacs,
    Snap,
}

impl FileFormat {
    /// `.gr` files are DIMACS, anything else a SNAP edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("gr") => FileFormat::Dimacs,
            _ => FileFormat::Snap,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub grid: Option<GridRange>,
    pub ks: Vec<usize>,
    pub files: Vec<(PathBuf, FileFormat)>,
    /// Vertex pairs sampled per file.
    pub pairs: usize,
    pub seed: u64,
    /// Round DIMACS lengths to multiples of 100.
    pub round100: bool,
    /// When false, timing columns are left empty so output is reproducible
    /// byte for byte.
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            grid: None,
            ks: vec![10],
            files: Vec::new(),
            pairs: 400,
            seed: 2021,
            round100: false,
            timing: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Algo {
    Ours,
    Yen,
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::Ours => "ours",
            Algo::Yen => "yen",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub p_or_file: String,
    pub k: usize,
    pub algo: Algo,
    /// `None` when the instance was skipped as infeasible.
    pub diversity: Option<i64>,
    pub time_ms: Option<f64>,
    pub paths: usize,
    pub avg_len: Option<f64>,
}

pub const CSV_HEADER: [&str; 8] = [
    "instance",
    "p_or_file",
    "k",
    "algo",
    "diversity",
    "time_ms",
    "paths",
    "avg_len",
];
const SKIP: &str = "skip";

enum Graph {
    Directed(DirectedGraph),
    Undirected(UndirectedGraph),
}

impl Graph {
    fn instance(&self) -> PathInstance<'_> {
        match self {
            Graph::Directed(g) => PathInstance::Directed(g),
            Graph::Undirected(g) => PathInstance::Undirected(g),
        }
    }
}

struct Task {
    instance: String,
    p_or_file: String,
    graph: Arc<Graph>,
    s: VertexId,
    t: VertexId,
    k: usize,
}

fn validate(config: &BenchConfig) -> Result<()> {
    if config.ks.is_empty() {
        return Err(Error::InvalidArgument("k list is empty".into()));
    }
    if config.ks.contains(&0) {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if config.grid.is_none() && config.files.is_empty() {
        return Err(Error::InvalidArgument(
            "nothing to run: give a grid range or input files".into(),
        ));
    }
    Ok(())
}

fn load(path: &Path, format: FileFormat, round100: bool) -> Result<DirectedGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    match format {
        FileFormat::Dimacs => parse_dimacs_gr(
            &text,
            DimacsOptions {
                round100,
                ..Default::default()
            },
        ),
        FileFormat::Snap => parse_snap_edgelist(&text),
    }
}

/// Draws up to `count` pairs whose shortest paths have at least 3 arcs and
/// number at least `min_paths`.
pub fn sample_pairs(
    g: &DirectedGraph,
    count: usize,
    min_paths: u64,
    rng: &mut ChaCha8Rng,
) -> Vec<(VertexId, VertexId)> {
    let n = g.vertex_count();
    let mut pairs = Vec::with_capacity(count);
    if n < 2 {
        return pairs;
    }
    let attempts = count.saturating_mul(100).max(1000);
    for _ in 0..attempts {
        if pairs.len() == count {
            break;
        }
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        if s == t {
            continue;
        }
        let Ok(dag) = build_shortest_path_dag(g, s, t) else {
            continue;
        };
        if dag.min_hops() >= 3 && dag.count_paths() >= min_paths {
            pairs.push((s, t));
        }
    }
    pairs
}

fn build_tasks(config: &BenchConfig) -> Result<Vec<Task>> {
    let mut tasks = Vec::new();
    if let Some(range) = config.grid {
        for p in range.values() {
            let (g, s, t) = generate_grid(GridSpec { p })?;
            let graph = Arc::new(Graph::Undirected(g));
            for &k in &config.ks {
                tasks.push(Task {
                    instance: "grid".into(),
                    p_or_file: p.to_string(),
                    graph: Arc::clone(&graph),
                    s,
                    t,
                    k,
                });
            }
        }
    }
    let max_k = *config.ks.iter().max().expect("validated");
    for (index, (path, format)) in config.files.iter().enumerate() {
        let g = load(path, *format, config.round100)?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(index as u64));
        let pairs = sample_pairs(&g, config.pairs, 3 * max_k as u64, &mut rng);
        let name = path.file_name().map_or_else(
            || path.display().to_string(),
            |f| f.to_string_lossy().into_owned(),
        );
        let graph = Arc::new(Graph::Directed(g));
        for (i, &(s, t)) in pairs.iter().enumerate() {
            for &k in &config.ks {
                tasks.push(Task {
                    instance: format!("pair{i}_{s}_{t}"),
                    p_or_file: name.clone(),
                    graph: Arc::clone(&graph),
                    s,
                    t,
                    k,
                });
            }
        }
    }
    Ok(tasks)
}

fn run_task(task: &Task, timing: bool) -> Result<[BenchRow; 2]> {
    let instance = task.graph.instance();
    let weights = instance.weights();
    let row = |algo, diversity, time_ms: f64, paths, avg_len| BenchRow {
        instance: task.instance.clone(),
        p_or_file: task.p_or_file.clone(),
        k: task.k,
        algo,
        diversity,
        time_ms: timing.then_some(time_ms),
        paths,
        avg_len,
    };

    let clock = Instant::now();
    let ours = match diverse_shortest_paths(instance, task.s, task.t, task.k) {
        Ok(r) => {
            let ms = clock.elapsed().as_secs_f64() * 1e3;
            row(
                Algo::Ours,
                Some(r.diversity()),
                ms,
                r.paths.len(),
                Some(r.shortest_distance as f64),
            )
        }
        Err(e) if e.is_infeasible() => row(Algo::Ours, None, 0.0, 0, None),
        Err(e) => return Err(e),
    };

    let clock = Instant::now();
    let yen = match yen_k_shortest(instance, task.s, task.t, task.k) {
        Ok(paths) => {
            let ms = clock.elapsed().as_secs_f64() * 1e3;
            let avg = paths.iter().map(|p| p.length as f64).sum::<f64>() / paths.len() as f64;
            let solutions =
                SolutionSet::new(paths.iter().map(|p| p.edges.clone()).collect(), &weights);
            row(
                Algo::Yen,
                Some(solutions.diversity()),
                ms,
                paths.len(),
                Some(avg),
            )
        }
        Err(e) if e.is_infeasible() => row(Algo::Yen, None, 0.0, 0, None),
        Err(e) => return Err(e),
    };
    Ok([ours, yen])
}

/// Runs every configured instance and returns one `ours` and one `yen` row per
/// instance and `k`, in configuration order.
pub fn run_benchmark(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    validate(config)?;
    let tasks = build_tasks(config)?;
    let rows: Vec<[BenchRow; 2]> = tasks
        .par_iter()
        .map(|t| run_task(t, config.timing))
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// Row pairs (same instance and `k`) where the baseline beats the optimum.
pub fn dominance_violations(rows: &[BenchRow]) -> Vec<(&BenchRow, &BenchRow)> {
    let mut bad = Vec::new();
    for ours in rows.iter().filter(|r| r.algo == Algo::Ours) {
        for yen in rows.iter().filter(|r| {
            r.algo == Algo::Yen
                && r.instance == ours.instance
                && r.p_or_file == ours.p_or_file
                && r.k == ours.k
        }) {
            if let (Some(a), Some(b)) = (ours.diversity, yen.diversity) {
                if a < b {
                    bad.push((ours, yen));
                }
            }
        }
    }
    bad
}

pub fn write_csv<W: std::io::Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Io {
        path: "csv output".into(),
        message: e.to_string(),
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record([
            r.instance.clone(),
            r.p_or_file.clone(),
            r.k.to_string(),
            r.algo.to_string(),
            r.diversity
                .map_or_else(|| SKIP.to_string(), |d| d.to_string()),
            r.time_ms.map_or_else(String::new, |t| format!("{t:.3}")),
            r.paths.to_string(),
            r.avg_len.map_or_else(String::new, |a| format!("{a:.3}")),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io {
        path: "csv output".into(),
        message: e.to_string(),
    })?;
    Ok(())
}

pub fn to_csv(rows: &[BenchRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Writes two-column `p value` files for the grid rows, one per algorithm,
/// `k` and quantity: `<algo>_k<k>_diversity.dat` and, when timed,
/// `<algo>_k<k>_time.dat`. Returns the paths written.
pub fn write_plot_files(rows: &[BenchRow], dir: &Path) -> Result<Vec<PathBuf>> {
    let io = |path: &Path, e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let mut series: std::collections::BTreeMap<(Algo, usize), Vec<&BenchRow>> = Default::default();
    for r in rows
        .iter()
        .filter(|r| r.instance == "grid" && r.diversity.is_some())
    {
        series.entry((r.algo, r.k)).or_default().push(r);
    }
    let mut written = Vec::new();
    for ((algo, k), rs) in series {
        let diversity: String = rs
            .iter()
            .map(|r| format!("{} {}\n", r.p_or_file, r.diversity.unwrap_or(0)))
            .collect();
        let path = dir.join(format!("{algo}_k{k}_diversity.dat"));
        std::fs::write(&path, diversity).map_err(|e| io(&path, e))?;
        written.push(path);
        if rs.iter().all(|r| r.time_ms.is_some()) {
            let time: String = rs
                .iter()
                .map(|r| format!("{} {:.3}\n", r.p_or_file, r.time_ms.unwrap_or(0.0)))
                .collect();
            let path = dir.join(format!("{algo}_k{k}_time.dat"));
            std::fs::write(&path, time).map_err(|e| io(&path, e))?;
            written.push(path);
        }
    }
    Ok(written)
}
