//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use diverse_core::baseline::{
    brute_force_diverse_bases, brute_force_diverse_matchings, brute_force_diverse_paths,
    enumerate_shortest_paths,
};
use diverse_core::bench::{dominance_violations, run_benchmark, Algo, BenchConfig, GridRange};
use diverse_core::diversity::{diversity_multiplicity, diversity_pairwise, GroundSetWeights};
use diverse_core::graph::{generate_grid, GridSpec};
use diverse_core::matching::{
    bipartite_edge_color, color_classes, diverse_bipartite_matchings, is_matching,
    rebalance_matchings,
};
use diverse_core::matroid::{graphic_matroid, uniform_matroid, weighted_diverse_bases};
use diverse_core::paths::{diverse_shortest_paths, PathInstance};
use diverse_core::shortest_dag::{build_shortest_path_dag, orient_undirected};
use diverse_core::Error;
use rand::Rng;

type Check = Result<String, String>;
type Criterion = fn() -> Check;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid_diversity(p: usize, k: usize) -> (i64, Duration) {
    let (g, s, t) = generate_grid(GridSpec { p }).unwrap();
    let clock = Instant::now();
    let d = diverse_shortest_paths(PathInstance::Undirected(&g), s, t, k)
        .unwrap()
        .diversity();
    (d, clock.elapsed())
}

fn grid_optimum(cases: &[(usize, usize, i64)], limit: Duration) -> Check {
    let mut detail = Vec::new();
    for &(p, k, expected) in cases {
        let (d, took) = grid_diversity(p, k);
        detail.push(format!("p={p} k={k}: {d} in {:.2}s", took.as_secs_f64()));
        ensure(d == expected, || {
            format!("p={p} k={k}: got {d}, expected {expected}")
        })?;
        ensure(took < limit, || {
            format!(
                "p={p} k={k}: {:.2}s exceeds {:?}",
                took.as_secs_f64(),
                limit
            )
        })?;
    }
    Ok(detail.join(", "))
}

fn criterion_1() -> Check {
    grid_optimum(
        &[(40, 10, 6876), (50, 10, 8676), (60, 10, 10476)],
        Duration::from_secs(10),
    )
}

fn criterion_2() -> Check {
    grid_optimum(
        &[(40, 50, 182652), (40, 100, 731832)],
        Duration::from_secs(120),
    )
}

fn criterion_3() -> Check {
    const TRIALS: usize = 200;
    let mut r = rng(3);

    let mut paths = 0;
    while paths < TRIALS {
        let n = r.gen_range(4..=30);
        let m = r.gen_range(n..=4 * n);
        let k = r.gen_range(1..=8);
        let res = if r.gen_bool(0.5) {
            let g = random_directed(&mut r, n, m, 4, 6);
            diverse_shortest_paths(PathInstance::Directed(&g), 0, n - 1, k)
                .map(|x| (x, g.weights()))
        } else {
            let g = random_undirected(&mut r, n, m, 4, 6);
            diverse_shortest_paths(PathInstance::Undirected(&g), 0, n - 1, k)
                .map(|x| (x, g.weights()))
        };
        let (res, w) = match res {
            Ok(x) => x,
            Err(e) if e.is_infeasible() => continue,
            Err(e) => return Err(format!("paths: {e}")),
        };
        let direct = naive_diversity(res.solutions.sets(), &w);
        ensure(
            res.packing_weight == direct && res.diversity() == direct,
            || {
                format!(
                    "paths: packing {} vs diversity {direct}",
                    res.packing_weight
                )
            },
        )?;
        paths += 1;
    }

    let mut matchings = 0;
    while matchings < TRIALS {
        let (left, right) = (r.gen_range(1..=6), r.gen_range(1..=6));
        let m = r.gen_range(1..=14);
        let g = random_bipartite(&mut r, left, right, m, 6);
        let (k, p) = (r.gen_range(1..=4), r.gen_range(1..=left.min(right)));
        let res = match diverse_bipartite_matchings(&g, k, p) {
            Ok(x) => x,
            Err(e) if e.is_infeasible() => continue,
            Err(e) => return Err(format!("matchings: {e}")),
        };
        let w = g.weights();
        let direct = naive_diversity(res.solutions.sets(), w.as_slice());
        ensure(res.packing_weight == direct, || {
            format!("matchings: packing {} vs {direct}", res.packing_weight)
        })?;
        matchings += 1;
    }

    for i in 0..TRIALS {
        let k = r.gen_range(1..=4);
        let m = r.gen_range(1..=8);
        let w = GroundSetWeights::new((0..m).map(|_| r.gen_range(0..=6)).collect());
        let res = if i % 2 == 0 {
            let n = r.gen_range(2..=6);
            let g = random_undirected(&mut r, n, m, 1, 1);
            weighted_diverse_bases(&graphic_matroid(&g), &w, k)
        } else {
            let rank = r.gen_range(1..=m);
            weighted_diverse_bases(&uniform_matroid(m, rank).unwrap(), &w, k)
        }
        .map_err(|e| format!("bases: {e}"))?;
        let direct = naive_diversity(res.solutions.sets(), w.as_slice());
        ensure(res.packing_weight == direct, || {
            format!("bases: packing {} vs {direct}", res.packing_weight)
        })?;
    }
    Ok(format!(
        "{TRIALS} paths, {TRIALS} matchings, {TRIALS} bases instances"
    ))
}

fn criterion_4() -> Check {
    let mut r = rng(4);

    let (mut paths, mut skipped) = (0, 0);
    while paths < 300 {
        let n = r.gen_range(2..=9);
        let m = r.gen_range(n..=3 * n);
        let k = r.gen_range(1..=3);
        let (ours, brute) = if r.gen_bool(0.5) {
            let g = random_directed(&mut r, n, m, 3, 4);
            let i = PathInstance::Directed(&g);
            (
                diverse_shortest_paths(i, 0, n - 1, k).map(|x| x.diversity()),
                brute_force_diverse_paths(i, 0, n - 1, k),
            )
        } else {
            let g = random_undirected(&mut r, n, m, 3, 4);
            let i = PathInstance::Undirected(&g);
            (
                diverse_shortest_paths(i, 0, n - 1, k).map(|x| x.diversity()),
                brute_force_diverse_paths(i, 0, n - 1, k),
            )
        };
        match (ours, brute) {
            (Ok(a), Ok(b)) => {
                ensure(a == b.diversity(), || {
                    format!("paths: ours {a}, exhaustive {}", b.diversity())
                })?;
                paths += 1;
            }
            (Err(a), Err(b)) if a.is_infeasible() && b.is_infeasible() => {}
            (_, Err(Error::BudgetExceeded(_))) => skipped += 1,
            (a, b) => {
                return Err(format!(
                    "paths: ours {a:?}, exhaustive {:?}",
                    b.map(|s| s.diversity())
                ))
            }
        }
    }

    let mut matchings = 0;
    while matchings < 200 {
        let (left, right) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let m = r.gen_range(1..=10);
        let g = random_bipartite(&mut r, left, right, m, 5);
        let (k, p) = (r.gen_range(1..=3), r.gen_range(1..=left.min(right)));
        match (
            diverse_bipartite_matchings(&g, k, p),
            brute_force_diverse_matchings(&g, k, p),
        ) {
            (Ok(a), Ok(b)) => {
                ensure(a.diversity() == b.diversity(), || {
                    format!(
                        "matchings: ours {}, exhaustive {}",
                        a.diversity(),
                        b.diversity()
                    )
                })?;
                matchings += 1;
            }
            (Err(a), Err(b)) if a.is_infeasible() && b.is_infeasible() => {}
            (a, b) => {
                return Err(format!(
                    "matchings: ours {:?}, exhaustive {:?}",
                    a.map(|x| x.diversity()),
                    b.map(|x| x.diversity())
                ))
            }
        }
    }

    for i in 0..200 {
        let k = r.gen_range(1..=3);
        let m = r.gen_range(1..=6);
        let w = GroundSetWeights::new((0..m).map(|_| r.gen_range(0..=5)).collect());
        let (ours, brute) = if i % 2 == 0 {
            let n = r.gen_range(2..=5);
            let g = random_undirected(&mut r, n, m, 1, 1);
            let mat = graphic_matroid(&g);
            (
                weighted_diverse_bases(&mat, &w, k),
                brute_force_diverse_bases(&mat, &w, k),
            )
        } else {
            let rank = r.gen_range(1..=m);
            let mat = uniform_matroid(m, rank).unwrap();
            (
                weighted_diverse_bases(&mat, &w, k),
                brute_force_diverse_bases(&mat, &w, k),
            )
        };
        let (a, b) = (
            ours.map_err(|e| e.to_string())?,
            brute.map_err(|e| e.to_string())?,
        );
        ensure(a.diversity() == b.diversity(), || {
            format!(
                "bases: ours {}, exhaustive {}",
                a.diversity(),
                b.diversity()
            )
        })?;
    }
    Ok(format!(
        "300 paths ({skipped} over budget, redrawn), 200 matchings, 200 bases trials"
    ))
}

fn criterion_5() -> Check {
    let mut r = rng(5);
    let mut checked = 0;
    while checked < 300 {
        let n = r.gen_range(2..=8);
        let m = r.gen_range(n..=3 * n);
        let (dag, reference) = if r.gen_bool(0.5) {
            let g = random_directed(&mut r, n, m, 3, 1);
            (
                build_shortest_path_dag(&g, 0, n - 1),
                enumerate_shortest_paths(PathInstance::Directed(&g), 0, n - 1),
            )
        } else {
            let g = random_undirected(&mut r, n, m, 3, 1);
            (
                orient_undirected(&g, 0, n - 1),
                enumerate_shortest_paths(PathInstance::Undirected(&g), 0, n - 1),
            )
        };
        match (dag, reference) {
            (Ok(dag), Ok(reference)) => {
                let got = dag_paths(&dag);
                ensure(got == reference, || {
                    format!("pruned paths {got:?} vs shortest paths {reference:?}")
                })?;
                checked += 1;
            }
            (Err(a), Err(b)) if a.is_infeasible() && b.is_infeasible() => {}
            (a, b) => {
                return Err(format!(
                    "reachability disagrees: {:?} / {:?}",
                    a.err(),
                    b.err()
                ))
            }
        }
    }
    Ok("300 graphs, path sets identical".into())
}

fn criterion_6() -> Check {
    let mut r = rng(6);
    for _ in 0..1000 {
        let n = r.gen_range(1..=15);
        let k = r.gen_range(1..=10);
        let (w, sets) = random_family(&mut r, n, k, 100);
        let naive = naive_diversity(&sets, &w);
        let w = GroundSetWeights::new(w);
        let (a, b) = (
            diversity_pairwise(&sets, &w),
            diversity_multiplicity(&sets, &w),
        );
        ensure(a == b && a == naive, || {
            format!("pairwise {a}, multiplicity {b}, definition {naive}")
        })?;
    }
    Ok("1000 triples".into())
}

fn criterion_7() -> Check {
    let mut r = rng(7);
    let mut checked = 0;
    while checked < 200 {
        let (k, p) = (r.gen_range(1..=5), r.gen_range(1..=5));
        let Some(h) = random_degree_bounded(&mut r, k, p) else {
            continue;
        };
        let colors = bipartite_edge_color(&h, k).map_err(|e| e.to_string())?;
        ensure(colors.iter().all(|&c| (1..=k).contains(&c)), || {
            "color out of range".into()
        })?;
        let classes = color_classes(&colors, k);
        ensure(classes.iter().all(|c| is_matching(&h, c)), || {
            "coloring is not proper".into()
        })?;
        let balanced = rebalance_matchings(&h, classes, p).map_err(|e| e.to_string())?;
        ensure(balanced.len() == k, || {
            format!("{} classes", balanced.len())
        })?;
        ensure(
            balanced.iter().all(|c| c.len() == p && is_matching(&h, c)),
            || {
                format!(
                    "class sizes {:?}",
                    balanced.iter().map(Vec::len).collect::<Vec<_>>()
                )
            },
        )?;
        let mut union: Vec<usize> = balanced.concat();
        union.sort_unstable();
        ensure(union == (0..k * p).collect::<Vec<_>>(), || {
            "union changed".into()
        })?;
        checked += 1;
    }
    Ok("200 multigraphs".into())
}

fn criterion_8() -> Check {
    let config = BenchConfig {
        grid: Some(GridRange {
            start: 40,
            end: 60,
            step: 10,
        }),
        ks: vec![10, 50],
        timing: false,
        ..Default::default()
    };
    let rows = run_benchmark(&config).map_err(|e| e.to_string())?;
    let bad = dominance_violations(&rows);
    ensure(bad.is_empty(), || {
        format!("{} dominance violations", bad.len())
    })?;
    let mut detail = Vec::new();
    for row in rows.iter().filter(|r| r.k == 10) {
        let d = row.diversity.ok_or("skipped grid row")?;
        match row.algo {
            Algo::Ours => ensure(d > 6000, || format!("ours {d} at p={}", row.p_or_file))?,
            Algo::Yen => {
                ensure(d < 1000, || format!("baseline {d} at p={}", row.p_or_file))?;
                detail.push(format!("p={} baseline {d}", row.p_or_file));
            }
        }
    }
    Ok(format!(
        "{} rows dominated; {}",
        rows.len(),
        detail.join(", ")
    ))
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("grid optimum, k=10", criterion_1),
        ("grid optimum, large k", criterion_2),
        ("packing weight equals diversity", criterion_3),
        ("exhaustive oracle equivalence", criterion_4),
        ("pruned DAG paths are the shortest paths", criterion_5),
        ("pairwise and multiplicity formulas agree", criterion_6),
        ("matching decomposition", criterion_7),
        ("dominance over the baseline", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "criterion 9: NOT RUN  dataset tables and absolute runtimes are not reproducible offline"
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
