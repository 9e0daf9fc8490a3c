//! Random instance generators and independent reference computations shared by
//! the integration tests.
#![allow(dead_code)]

use diverse_core::flow::{ArcTag, FlowNetwork};
use diverse_core::graph::{Arc, DirectedGraph, Edge, UndirectedGraph};
use diverse_core::matching::{BipartiteEdge, BipartiteGraph, DegreeBoundedSubgraph, SelectedEdge};
use diverse_core::shortest_dag::ShortestPathDag;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Directed graph on `n` vertices with lengths in `1..=max_len`, weights in
/// `0..=max_w`, no self-loops; parallel arcs allowed.
pub fn random_directed(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    max_len: u64,
    max_w: u64,
) -> DirectedGraph {
    let mut arcs = Vec::with_capacity(m);
    while arcs.len() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            arcs.push(Arc::new(
                u,
                v,
                rng.gen_range(1..=max_len),
                rng.gen_range(0..=max_w),
            ));
        }
    }
    DirectedGraph::new(n, arcs).unwrap()
}

pub fn random_undirected(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    max_len: u64,
    max_w: u64,
) -> UndirectedGraph {
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push(Edge::new(
                u,
                v,
                rng.gen_range(1..=max_len),
                rng.gen_range(0..=max_w),
            ));
        }
    }
    UndirectedGraph::new(n, edges).unwrap()
}

pub fn random_bipartite(
    rng: &mut ChaCha8Rng,
    left: usize,
    right: usize,
    m: usize,
    max_w: u64,
) -> BipartiteGraph {
    let edges = (0..m)
        .map(|_| BipartiteEdge {
            a: rng.gen_range(0..left),
            b: rng.gen_range(0..right),
            weight: rng.gen_range(0..=max_w),
        })
        .collect();
    BipartiteGraph::new(left, right, edges).unwrap()
}

/// Random bipartite multigraph with exactly `k * p` members and maximum degree
/// at most `k`, or `None` when the random fill gets stuck.
pub fn random_degree_bounded(
    rng: &mut ChaCha8Rng,
    k: usize,
    p: usize,
) -> Option<DegreeBoundedSubgraph> {
    let left = rng.gen_range(p..=p + 3);
    let right = rng.gen_range(p..=p + 3);
    let (mut da, mut db) = (vec![0; left], vec![0; right]);
    let mut members = Vec::with_capacity(k * p);
    let mut attempts = 0;
    while members.len() < k * p {
        attempts += 1;
        if attempts > 10_000 {
            return None;
        }
        let (a, b) = (rng.gen_range(0..left), rng.gen_range(0..right));
        if da[a] < k && db[b] < k {
            da[a] += 1;
            db[b] += 1;
            members.push(SelectedEdge {
                edge: members.len(),
                a,
                b,
            });
        }
    }
    Some(DegreeBoundedSubgraph::new(left, right, members).unwrap())
}

/// All source-sink paths of the DAG, each as the sequence of source-graph
/// element ids.
pub fn dag_paths(dag: &ShortestPathDag) -> Vec<Vec<usize>> {
    let g = dag.graph();
    let out = g.out_adjacency();
    let mut paths = Vec::new();
    let mut cur = Vec::new();
    fn walk(
        v: usize,
        dag: &ShortestPathDag,
        out: &[Vec<usize>],
        cur: &mut Vec<usize>,
        paths: &mut Vec<Vec<usize>>,
    ) {
        if v == dag.sink() {
            paths.push(cur.clone());
            return;
        }
        for &a in &out[v] {
            cur.push(dag.origin(a));
            walk(dag.graph().arc(a).head, dag, out, cur, paths);
            cur.pop();
        }
    }
    walk(dag.source(), dag, &out, &mut cur, &mut paths);
    paths.sort();
    paths
}

/// Acyclic network (arcs go from lower to higher ids) with source 0 and sink
/// `n - 1`.
pub fn random_dag_network(rng: &mut ChaCha8Rng, n: usize, m: usize, max_cap: u64) -> FlowNetwork {
    let mut net = FlowNetwork::new(n, 0, n - 1);
    for _ in 0..m {
        let u = rng.gen_range(0..n - 1);
        let v = rng.gen_range(u + 1..n);
        net.add_arc(
            u,
            v,
            rng.gen_range(1..=max_cap),
            rng.gen_range(-5..=5),
            ArcTag::Auxiliary,
        );
    }
    net
}

/// Minimum cost over all integral flows of value `value`, by enumeration.
pub fn brute_min_cost(net: &FlowNetwork, value: u64) -> Option<i64> {
    let arcs = net.arcs();
    let mut best = None;
    let mut flow = vec![0u64; arcs.len()];
    loop {
        let mut balance = vec![0i64; net.vertex_count()];
        for (a, &f) in arcs.iter().zip(&flow) {
            balance[a.tail] -= f as i64;
            balance[a.head] += f as i64;
        }
        let ok = (0..net.vertex_count()).all(|v| {
            if v == net.source() {
                balance[v] == -(value as i64)
            } else if v == net.sink() {
                balance[v] == value as i64
            } else {
                balance[v] == 0
            }
        });
        if ok {
            let cost: i64 = arcs
                .iter()
                .zip(&flow)
                .map(|(a, &f)| a.cost * f as i64)
                .sum();
            best = Some(best.map_or(cost, |b: i64| b.min(cost)));
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == flow.len() {
                return best;
            }
            if flow[i] < arcs[i].capacity {
                flow[i] += 1;
                break;
            }
            flow[i] = 0;
            i += 1;
        }
    }
}

/// Random sets over `0..n` with random weights.
pub fn random_family(
    rng: &mut ChaCha8Rng,
    n: usize,
    k: usize,
    max_w: u64,
) -> (Vec<u64>, Vec<Vec<usize>>) {
    let w = (0..n).map(|_| rng.gen_range(0..=max_w)).collect();
    let sets = (0..k)
        .map(|_| (0..n).filter(|_| rng.gen_bool(0.5)).collect())
        .collect();
    (w, sets)
}

/// `sum over pairs of w(A xor B)`, straight from the definition.
pub fn naive_diversity(sets: &[Vec<usize>], w: &[u64]) -> i64 {
    let mut total = 0i64;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            for (e, &we) in w.iter().enumerate() {
                if sets[i].contains(&e) != sets[j].contains(&e) {
                    total += we as i64;
                }
            }
        }
    }
    total
}
