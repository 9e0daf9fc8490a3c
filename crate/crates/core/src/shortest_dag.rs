//! Single-source distances and the pruned shortest-path DAG.
//!
//! The DAG keeps only arcs that are tight for the distance labels and only
//! vertices that are reachable from `s` and reach `t`. Its `s -> t` paths are
//! then exactly the shortest `s -> t` paths of the input graph.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Arc, DirectedGraph, UndirectedGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceLabels {
    dist: Vec<Option<u64>>,
}

impl DistanceLabels {
    pub fn get(&self, v: VertexId) -> Option<u64> {
        self.dist[v]
    }

    pub fn as_slice(&self) -> &[Option<u64>] {
        &self.dist
    }
}

/// Dijkstra over `adj[v] = [(head, length)]`. Ties pop by vertex id.
fn dijkstra_adj(adj: &[Vec<(VertexId, u64)>], s: VertexId) -> Vec<Option<u64>> {
    let mut dist: Vec<Option<u64>> = vec![None; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[s] = Some(0);
    heap.push(Reverse((0u64, s)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u] != Some(d) {
            continue;
        }
        for &(v, len) in &adj[u] {
            let nd = d + len;
            if dist[v].is_none_or(|old| nd < old) {
                dist[v] = Some(nd);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist
}

pub fn dijkstra(g: &DirectedGraph, s: VertexId) -> Result<DistanceLabels> {
    if s >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: s,
            n: g.vertex_count(),
        });
    }
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for a in g.arcs() {
        adj[a.tail].push((a.head, a.length));
    }
    Ok(DistanceLabels {
        dist: dijkstra_adj(&adj, s),
    })
}

/// Pruned acyclic subgraph whose `s -> t` paths are the shortest paths of the
/// source graph. Vertex ids are those of the source graph; pruned vertices
/// simply have no incident arcs.
#[derive(Debug, Clone)]
pub struct ShortestPathDag {
    graph: DirectedGraph,
    s: VertexId,
    t: VertexId,
    dist: DistanceLabels,
    origin: Vec<usize>,
    kept: Vec<bool>,
}

impl ShortestPathDag {
    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn source(&self) -> VertexId {
        self.s
    }

    pub fn sink(&self) -> VertexId {
        self.t
    }

    pub fn distances(&self) -> &DistanceLabels {
        &self.dist
    }

    /// Length of every shortest `s -> t` path.
    pub fn shortest_distance(&self) -> u64 {
        self.dist
            .get(self.t)
            .expect("sink is reachable by construction")
    }

    /// Id of the source-graph arc (directed input) or edge (undirected input)
    /// behind DAG arc `arc`.
    pub fn origin(&self, arc: usize) -> usize {
        self.origin[arc]
    }

    pub fn origins(&self) -> &[usize] {
        &self.origin
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.kept[v]
    }

    pub fn kept_vertex_count(&self) -> usize {
        self.kept.iter().filter(|&&k| k).count()
    }

    /// Kept vertices in an order compatible with every arc. Distances strictly
    /// increase along arcs, so sorting by distance suffices.
    pub fn topological_order(&self) -> Vec<VertexId> {
        let mut order: Vec<VertexId> = (0..self.kept.len()).filter(|&v| self.kept[v]).collect();
        order.sort_by_key(|&v| (self.dist.get(v), v));
        order
    }

    /// Number of `s -> t` paths, saturating at `i64::MAX`.
    pub fn count_paths(&self) -> u64 {
        let cap = i64::MAX as u64;
        let mut ways = vec![0u64; self.kept.len()];
        ways[self.s] = 1;
        let out = self.graph.out_adjacency();
        for u in self.topological_order() {
            let w = ways[u];
            if w == 0 {
                continue;
            }
            for &a in &out[u] {
                let h = self.graph.arc(a).head;
                ways[h] = ways[h].saturating_add(w).min(cap);
            }
        }
        ways[self.t]
    }

    /// Fewest arcs on any `s -> t` path of the DAG.
    pub fn min_hops(&self) -> usize {
        let mut hops = vec![usize::MAX; self.kept.len()];
        hops[self.s] = 0;
        let out = self.graph.out_adjacency();
        for u in self.topological_order() {
            if hops[u] == usize::MAX {
                continue;
            }
            for &a in &out[u] {
                let h = self.graph.arc(a).head;
                hops[h] = hops[h].min(hops[u] + 1);
            }
        }
        hops[self.t]
    }

    fn from_tight_arcs(
        n: usize,
        s: VertexId,
        t: VertexId,
        dist: DistanceLabels,
        tight: Vec<(Arc, usize)>,
    ) -> ShortestPathDag {
        let mut fwd = vec![Vec::new(); n];
        let mut bwd = vec![Vec::new(); n];
        for (a, _) in &tight {
            fwd[a.tail].push(a.head);
            bwd[a.head].push(a.tail);
        }
        let from_s = reachable(&fwd, s);
        let to_t = reachable(&bwd, t);
        let kept: Vec<bool> = (0..n).map(|v| from_s[v] && to_t[v]).collect();

        let (arcs, origin): (Vec<Arc>, Vec<usize>) = tight
            .into_iter()
            .filter(|(a, _)| kept[a.tail] && kept[a.head])
            .unzip();
        let graph = DirectedGraph::new(n, arcs).expect("subgraph of a valid graph");
        ShortestPathDag {
            graph,
            s,
            t,
            dist,
            origin,
            kept,
        }
    }
}

fn reachable(adj: &[Vec<VertexId>], start: VertexId) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

fn check_terminals(n: usize, s: VertexId, t: VertexId) -> Result<()> {
    for v in [s, t] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    Ok(())
}

pub fn build_shortest_path_dag(
    g: &DirectedGraph,
    s: VertexId,
    t: VertexId,
) -> Result<ShortestPathDag> {
    check_terminals(g.vertex_count(), s, t)?;
    let dist = dijkstra(g, s)?;
    if dist.get(t).is_none() {
        return Err(Error::Unreachable { s, t });
    }
    let tight = g
        .arcs()
        .iter()
        .enumerate()
        .filter(|(_, a)| matches!((dist.get(a.tail), dist.get(a.head)), (Some(du), Some(dv)) if du + a.length == dv))
        .map(|(id, a)| (*a, id))
        .collect();
    Ok(ShortestPathDag::from_tight_arcs(
        g.vertex_count(),
        s,
        t,
        dist,
        tight,
    ))
}

/// Orients each undirected edge in its distance-increasing direction, dropping
/// edges that are tight in neither direction. DAG arc origins are edge ids.
pub fn orient_undirected(g: &UndirectedGraph, s: VertexId, t: VertexId) -> Result<ShortestPathDag> {
    check_terminals(g.vertex_count(), s, t)?;
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for e in g.edges() {
        adj[e.u].push((e.v, e.length));
        adj[e.v].push((e.u, e.length));
    }
    let dist = DistanceLabels {
        dist: dijkstra_adj(&adj, s),
    };
    if dist.get(t).is_none() {
        return Err(Error::Unreachable { s, t });
    }
    let mut tight = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        let (Some(du), Some(dv)) = (dist.get(e.u), dist.get(e.v)) else {
            continue;
        };
        // lengths are positive, so at most one of these holds
        if du + e.length == dv {
            tight.push((Arc::new(e.u, e.v, e.length, e.weight), id));
        } else if dv + e.length == du {
            tight.push((Arc::new(e.v, e.u, e.length, e.weight), id));
        }
    }
    Ok(ShortestPathDag::from_tight_arcs(
        g.vertex_count(),
        s,
        t,
        dist,
        tight,
    ))
}
