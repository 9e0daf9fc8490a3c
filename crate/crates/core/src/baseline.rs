//! The k-shortest-simple-paths baseline and exhaustive reference solvers.
//!
//! The exhaustive solvers share nothing with the flow and matroid pipelines
//! beyond the diversity formula, so they double as test oracles.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use crate::diversity::{diversity_pairwise, normalize, GroundSetWeights, SolutionSet};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, VertexId};
use crate::matching::BipartiteGraph;
use crate::matroid::IndependenceOracle;
use crate::paths::PathInstance;

/// A simple `s -> t` path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RankedPath {
    pub length: u64,
    pub vertices: Vec<VertexId>,
    /// Source-graph arc (directed) or edge (undirected) ids.
    pub edges: Vec<usize>,
}

struct Searcher<'a> {
    g: &'a DirectedGraph,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Searcher<'_> {
    /// Lexicographically smallest shortest path from `from` to `t` avoiding
    /// `blocked_vertex` and `blocked_arc`, as (length, vertices, arcs).
    fn spur(
        &self,
        from: VertexId,
        t: VertexId,
        blocked_vertex: &[bool],
        blocked_arc: &[bool],
    ) -> Option<(u64, Vec<VertexId>, Vec<usize>)> {
        // distances to t, settled until `from` is reached
        let n = self.g.vertex_count();
        let mut dist: Vec<Option<u64>> = vec![None; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[t] = Some(0);
        heap.push(Reverse((0u64, t)));
        while let Some(Reverse((d, v))) = heap.pop() {
            if done[v] {
                continue;
            }
            done[v] = true;
            if v == from {
                break;
            }
            for &a in &self.inc[v] {
                let arc = self.g.arc(a);
                if blocked_arc[a] || blocked_vertex[arc.tail] {
                    continue;
                }
                let nd = d + arc.length;
                if dist[arc.tail].is_none_or(|old| nd < old) {
                    dist[arc.tail] = Some(nd);
                    heap.push(Reverse((nd, arc.tail)));
                }
            }
        }
        if !done[from] {
            return None;
        }
        let total = dist[from]?;
        let (mut vertices, mut arcs) = (vec![from], Vec::new());
        let mut v = from;
        while v != t {
            let rest = dist[v].expect("walk stays on settled vertices");
            let (next, a) = self.out[v]
                .iter()
                .filter(|&&a| !blocked_arc[a])
                .map(|&a| (self.g.arc(a).head, a))
                .filter(|&(w, a)| {
                    !blocked_vertex[w]
                        && done[w]
                        && dist[w].is_some_and(|dw| dw + self.g.arc(a).length == rest)
                })
                .min()
                .expect("a settled vertex has a tight successor");
            vertices.push(next);
            arcs.push(a);
            v = next;
        }
        Some((total, vertices, arcs))
    }
}

/// Up to `k` shortest simple `s -> t` paths in order of length, ties broken by
/// vertex sequence and then by edge sequence.
pub fn yen_k_shortest(
    instance: PathInstance<'_>,
    s: VertexId,
    t: VertexId,
    k: usize,
) -> Result<Vec<RankedPath>> {
    let owned;
    let (g, undirected) = match instance {
        PathInstance::Directed(g) => (g, false),
        PathInstance::Undirected(u) => {
            owned = u.to_bidirected();
            (&owned, true)
        }
    };
    let n = g.vertex_count();
    for v in [s, t] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    for (id, a) in g.arcs().iter().enumerate() {
        out[a.tail].push(id);
        inc[a.head].push(id);
    }
    let searcher = Searcher { g, out, inc };
    let mut blocked_vertex = vec![false; n];
    let mut blocked_arc = vec![false; g.arc_count()];

    // (length, vertices, arcs, first index at which spurs are taken)
    let first = searcher
        .spur(s, t, &blocked_vertex, &blocked_arc)
        .ok_or(Error::Unreachable { s, t })?;
    let mut found: Vec<(u64, Vec<VertexId>, Vec<usize>)> = Vec::new();
    let mut candidates: BTreeSet<(u64, Vec<VertexId>, Vec<usize>, usize)> = BTreeSet::new();
    candidates.insert((first.0, first.1, first.2, 0));

    while found.len() < k {
        let Some((length, vertices, arcs, deviation)) = candidates.pop_first() else {
            break;
        };
        found.push((length, vertices, arcs));
        if found.len() == k {
            break;
        }
        let (_, vertices, arcs) = found.last().expect("just pushed");
        for i in deviation..arcs.len() {
            let spur_vertex = vertices[i];
            for &v in &vertices[..i] {
                blocked_vertex[v] = true;
            }
            for (_, fv, fa) in &found {
                if fa.len() > i && fv[..=i] == vertices[..=i] && fa[..i] == arcs[..i] {
                    blocked_arc[fa[i]] = true;
                }
            }
            if let Some((spur_len, spur_v, spur_a)) =
                searcher.spur(spur_vertex, t, &blocked_vertex, &blocked_arc)
            {
                let root_len: u64 = arcs[..i].iter().map(|&a| g.arc(a).length).sum();
                let mut cv = vertices[..i].to_vec();
                cv.extend(spur_v);
                let mut ca = arcs[..i].to_vec();
                ca.extend(spur_a);
                candidates.insert((root_len + spur_len, cv, ca, i));
            }
            blocked_vertex.iter_mut().for_each(|b| *b = false);
            blocked_arc.iter_mut().for_each(|b| *b = false);
        }
    }

    Ok(found
        .into_iter()
        .map(|(length, vertices, arcs)| {
            let edges = if undirected {
                arcs.iter().map(|a| a / 2).collect()
            } else {
                arcs
            };
            RankedPath {
                length,
                vertices,
                edges,
            }
        })
        .collect())
}

/// Calls `visit` with every multiset of `k` indices drawn from `0..n`, as a
/// non-decreasing sequence.
fn for_each_multiset(n: usize, k: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(
        n: usize,
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, visit);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::with_capacity(k), visit);
}

/// Best `k`-multiset of `candidates` by pairwise diversity; ties keep the
/// first multiset in enumeration order.
fn best_multiset(candidates: &[Vec<usize>], k: usize, w: &GroundSetWeights) -> SolutionSet {
    let mut best: Option<(i64, Vec<Vec<usize>>)> = None;
    for_each_multiset(candidates.len(), k, &mut |pick| {
        let sets: Vec<Vec<usize>> = pick.iter().map(|&i| candidates[i].clone()).collect();
        let d = diversity_pairwise(&sets, w);
        if best.as_ref().is_none_or(|(b, _)| d > *b) {
            best = Some((d, sets));
        }
    });
    let (_, sets) = best.expect("at least one candidate");
    SolutionSet::new(sets, w)
}

const MAX_BRUTE_K: usize = 3;
const MAX_SHORTEST_PATHS: usize = 50;
const MAX_BRUTE_SOLUTIONS: usize = 400;

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if k > MAX_BRUTE_K {
        return Err(Error::BudgetExceeded(format!(
            "k = {k} exceeds {MAX_BRUTE_K}"
        )));
    }
    Ok(())
}

/// All shortest simple `s -> t` paths as edge-id lists, by depth-first search
/// over every simple path.
pub fn enumerate_shortest_paths(
    instance: PathInstance<'_>,
    s: VertexId,
    t: VertexId,
) -> Result<Vec<Vec<usize>>> {
    // (head, length, element) per vertex
    type Adjacency = Vec<Vec<(VertexId, u64, usize)>>;
    let (n, adj): (usize, Adjacency) = match instance {
        PathInstance::Directed(g) => {
            let mut adj = vec![Vec::new(); g.vertex_count()];
            for (id, a) in g.arcs().iter().enumerate() {
                adj[a.tail].push((a.head, a.length, id));
            }
            (g.vertex_count(), adj)
        }
        PathInstance::Undirected(g) => {
            let mut adj = vec![Vec::new(); g.vertex_count()];
            for (id, e) in g.edges().iter().enumerate() {
                adj[e.u].push((e.v, e.length, id));
                adj[e.v].push((e.u, e.length, id));
            }
            (g.vertex_count(), adj)
        }
    };
    for v in [s, t] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    let mut best: Option<u64> = None;
    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut on_path = vec![false; n];
    let mut cur = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        v: VertexId,
        t: VertexId,
        len: u64,
        adj: &[Vec<(VertexId, u64, usize)>],
        on_path: &mut [bool],
        cur: &mut Vec<usize>,
        best: &mut Option<u64>,
        paths: &mut Vec<Vec<usize>>,
    ) {
        if best.is_some_and(|b| len > b) {
            return;
        }
        if v == t {
            if best.is_none_or(|b| len < b) {
                *best = Some(len);
                paths.clear();
            }
            paths.push(cur.clone());
            return;
        }
        on_path[v] = true;
        for &(w, l, e) in &adj[v] {
            if !on_path[w] {
                cur.push(e);
                dfs(w, t, len + l, adj, on_path, cur, best, paths);
                cur.pop();
            }
        }
        on_path[v] = false;
    }
    dfs(s, t, 0, &adj, &mut on_path, &mut cur, &mut best, &mut paths);
    if paths.is_empty() {
        return Err(Error::Unreachable { s, t });
    }
    paths.sort();
    Ok(paths)
}

/// Optimum over all `k`-multisets of shortest `s -> t` paths.
pub fn brute_force_diverse_paths(
    instance: PathInstance<'_>,
    s: VertexId,
    t: VertexId,
    k: usize,
) -> Result<SolutionSet> {
    check_k(k)?;
    let paths = enumerate_shortest_paths(instance, s, t)?;
    if paths.len() > MAX_SHORTEST_PATHS {
        return Err(Error::BudgetExceeded(format!(
            "{} shortest paths exceed {MAX_SHORTEST_PATHS}",
            paths.len()
        )));
    }
    Ok(best_multiset(&paths, k, &instance.weights()))
}

/// Optimum over all `k`-multisets of matchings with exactly `p` edges.
pub fn brute_force_diverse_matchings(
    g: &BipartiteGraph,
    k: usize,
    p: usize,
) -> Result<SolutionSet> {
    check_k(k)?;
    let mut matchings = Vec::new();
    let mut cur = Vec::new();
    let (mut used_a, mut used_b) = (vec![false; g.left()], vec![false; g.right()]);

    fn rec(
        g: &BipartiteGraph,
        p: usize,
        start: usize,
        cur: &mut Vec<usize>,
        used: (&mut [bool], &mut [bool]),
        out: &mut Vec<Vec<usize>>,
    ) -> bool {
        if cur.len() == p {
            out.push(cur.clone());
            return out.len() <= MAX_BRUTE_SOLUTIONS;
        }
        let (ua, ub) = used;
        for i in start..g.edges().len() {
            let e = g.edges()[i];
            if ua[e.a] || ub[e.b] {
                continue;
            }
            ua[e.a] = true;
            ub[e.b] = true;
            cur.push(i);
            let ok = rec(g, p, i + 1, cur, (&mut *ua, &mut *ub), out);
            cur.pop();
            ua[e.a] = false;
            ub[e.b] = false;
            if !ok {
                return false;
            }
        }
        true
    }
    if !rec(
        g,
        p,
        0,
        &mut cur,
        (&mut used_a, &mut used_b),
        &mut matchings,
    ) {
        return Err(Error::BudgetExceeded(format!(
            "more than {MAX_BRUTE_SOLUTIONS} matchings of size {p}"
        )));
    }
    if matchings.is_empty() {
        return Err(Error::InfeasibleFlow {
            required: p as u64,
            achieved: 0,
        });
    }
    Ok(best_multiset(&matchings, k, &g.weights()))
}

/// Optimum over all `k`-multisets of bases of `matroid`.
pub fn brute_force_diverse_bases<M: IndependenceOracle + ?Sized>(
    matroid: &M,
    weights: &GroundSetWeights,
    k: usize,
) -> Result<SolutionSet> {
    check_k(k)?;
    let n = matroid.ground_size();
    if n > 16 {
        return Err(Error::BudgetExceeded(format!("ground set of {n} elements")));
    }
    let independent: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| {
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .collect::<Vec<usize>>()
        })
        .filter(|set| matroid.is_independent(set))
        .collect();
    let rank = independent.iter().map(Vec::len).max().unwrap_or(0);
    let mut bases: Vec<Vec<usize>> = independent
        .into_iter()
        .filter(|s| s.len() == rank)
        .map(|s| normalize(&s))
        .collect();
    bases.sort();
    if bases.len() > MAX_BRUTE_SOLUTIONS {
        return Err(Error::BudgetExceeded(format!(
            "{} bases exceed {MAX_BRUTE_SOLUTIONS}",
            bases.len()
        )));
    }
    Ok(best_multiset(&bases, k, weights))
}
