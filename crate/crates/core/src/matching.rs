//! Diverse bipartite matchings of fixed cardinality `p`.
//!
//! A min-cost flow of value `kp` through `k` weighted copies of every edge
//! selects a multigraph `H` with `kp` edges and maximum degree `k`. A proper
//! `k`-edge-coloring splits `H` into matchings, and swapping alternating paths
//! between the largest and smallest class evens every class out to size `p`.

use std::fmt::Write as _;

use crate::diversity::{copy_weight, GroundSetWeights, SolutionSet};
use crate::error::{Error, ParseError, Result};
use crate::flow::{min_cost_flow, ArcTag, FlowNetwork, IntegralFlow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BipartiteEdge {
    pub a: usize,
    pub b: usize,
    pub weight: u64,
}

/// Bipartite multigraph with sides `A = 0..left` and `B = 0..right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<BipartiteEdge>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: Vec<BipartiteEdge>) -> Result<Self> {
        for e in &edges {
            if e.a >= left {
                return Err(Error::VertexOutOfRange {
                    vertex: e.a,
                    n: left,
                });
            }
            if e.b >= right {
                return Err(Error::VertexOutOfRange {
                    vertex: e.b,
                    n: right,
                });
            }
        }
        Ok(BipartiteGraph { left, right, edges })
    }

    /// Complete bipartite graph with unit weights, edges in row-major order.
    pub fn complete(left: usize, right: usize) -> Self {
        let edges = (0..left)
            .flat_map(|a| (0..right).map(move |b| BipartiteEdge { a, b, weight: 1 }))
            .collect();
        BipartiteGraph { left, right, edges }
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[BipartiteEdge] {
        &self.edges
    }

    pub fn weights(&self) -> GroundSetWeights {
        GroundSetWeights::new(self.edges.iter().map(|e| e.weight).collect())
    }
}

/// Reads `b <|A|> <|B|> <m>` followed by `m` lines `e <a> <b> <w>` (0-based
/// per side). Lines starting with `c` or `#` are comments.
pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first().copied() {
            None | Some("c") => continue,
            Some(t) if t.starts_with('#') => continue,
            Some("b") => {
                if header.is_some() {
                    return Err(ParseError::DuplicateProblemLine { line }.into());
                }
                let bad = || ParseError::ProblemLine {
                    line,
                    text: raw.to_string(),
                };
                if tokens.len() != 4 {
                    return Err(bad().into());
                }
                let mut nums = [0usize; 3];
                for (slot, tok) in nums.iter_mut().zip(&tokens[1..]) {
                    *slot = tok.parse().map_err(|_| bad())?;
                }
                header = Some((nums[0], nums[1], nums[2]));
            }
            Some("e") => {
                let (left, right, _) = header.ok_or(ParseError::MissingProblemLine)?;
                if tokens.len() != 4 {
                    return Err(ParseError::Record {
                        line,
                        text: raw.to_string(),
                    }
                    .into());
                }
                let mut nums = [0i64; 3];
                for (slot, tok) in nums.iter_mut().zip(&tokens[1..]) {
                    *slot = tok.parse().map_err(|_| ParseError::NotAnInteger {
                        line,
                        token: tok.to_string(),
                    })?;
                }
                let [a, b, w] = nums;
                if a < 0 || a as u64 >= left as u64 {
                    return Err(ParseError::VertexOutOfRange {
                        line,
                        vertex: a,
                        n: left,
                    }
                    .into());
                }
                if b < 0 || b as u64 >= right as u64 {
                    return Err(ParseError::VertexOutOfRange {
                        line,
                        vertex: b,
                        n: right,
                    }
                    .into());
                }
                if w < 0 {
                    return Err(ParseError::NegativeWeight { line, weight: w }.into());
                }
                edges.push(BipartiteEdge {
                    a: a as usize,
                    b: b as usize,
                    weight: w as u64,
                });
            }
            Some(_) => {
                return Err(ParseError::Record {
                    line,
                    text: raw.to_string(),
                }
                .into())
            }
        }
    }
    let (left, right, m) = header.ok_or(ParseError::MissingProblemLine)?;
    if edges.len() != m {
        return Err(ParseError::CountMismatch {
            declared: m,
            found: edges.len(),
        }
        .into());
    }
    BipartiteGraph::new(left, right, edges)
}

pub fn write_bipartite(g: &BipartiteGraph) -> String {
    let mut out = String::new();
    writeln!(out, "b {} {} {}", g.left, g.right, g.edges.len()).unwrap();
    for e in &g.edges {
        writeln!(out, "e {} {} {}", e.a, e.b, e.weight).unwrap();
    }
    out
}

/// Flow network `s -> A -> B -> t` together with its flow requirement `kp`.
#[derive(Debug, Clone)]
pub struct MatchingNetwork {
    pub network: FlowNetwork,
    pub requirement: u64,
}

/// Vertex layout: `s = 0`, `A` at `1..=|A|`, `B` after that, `t` last. Arcs
/// are the `|A|` source arcs, then `k` copies per edge, then the `|B|` sink
/// arcs.
pub fn build_matching_network(g: &BipartiteGraph, k: usize, p: usize) -> Result<MatchingNetwork> {
    if k == 0 || p == 0 {
        return Err(Error::InvalidArgument("k and p must be at least 1".into()));
    }
    let n = g.left + g.right + 2;
    let (s, t) = (0, n - 1);
    let a_vertex = |a: usize| 1 + a;
    let b_vertex = |b: usize| 1 + g.left + b;
    let mut network = FlowNetwork::new(n, s, t);
    for a in 0..g.left {
        network.add_arc(s, a_vertex(a), k as u64, 0, ArcTag::Auxiliary);
    }
    for (element, e) in g.edges.iter().enumerate() {
        for i in 1..=k {
            let cost = -copy_weight(e.weight, k, i)?;
            network.add_arc(
                a_vertex(e.a),
                b_vertex(e.b),
                1,
                cost,
                ArcTag::Copy { element, index: i },
            );
        }
    }
    for b in 0..g.right {
        network.add_arc(b_vertex(b), t, k as u64, 0, ArcTag::Auxiliary);
    }
    Ok(MatchingNetwork {
        network,
        requirement: (k * p) as u64,
    })
}

/// One selected copy of an original edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectedEdge {
    pub edge: usize,
    pub a: usize,
    pub b: usize,
}

/// Multigraph of selected edge copies. Parallel copies of one original edge
/// appear as separate members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBoundedSubgraph {
    left: usize,
    right: usize,
    members: Vec<SelectedEdge>,
}

impl DegreeBoundedSubgraph {
    pub fn new(left: usize, right: usize, members: Vec<SelectedEdge>) -> Result<Self> {
        for m in &members {
            if m.a >= left || m.b >= right {
                return Err(Error::VertexOutOfRange {
                    vertex: m.a.max(m.b),
                    n: left.max(right),
                });
            }
        }
        Ok(DegreeBoundedSubgraph {
            left,
            right,
            members,
        })
    }

    /// Copy arcs carrying flow, in arc order.
    pub fn from_flow(g: &BipartiteGraph, net: &FlowNetwork, flow: &IntegralFlow) -> Self {
        let members = net
            .arcs()
            .iter()
            .enumerate()
            .filter(|&(id, _)| flow.on_arc(id) > 0)
            .filter_map(|(_, arc)| match arc.tag {
                ArcTag::Copy { element, .. } => {
                    let e = g.edges[element];
                    Some(SelectedEdge {
                        edge: element,
                        a: e.a,
                        b: e.b,
                    })
                }
                ArcTag::Auxiliary => None,
            })
            .collect();
        DegreeBoundedSubgraph {
            left: g.left,
            right: g.right,
            members,
        }
    }

    pub fn members(&self) -> &[SelectedEdge] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Degrees of `A` vertices followed by degrees of `B` vertices.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.left + self.right];
        for m in &self.members {
            deg[m.a] += 1;
            deg[self.left + m.b] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    fn ends(&self, member: usize) -> [usize; 2] {
        let m = self.members[member];
        [m.a, self.left + m.b]
    }
}

/// Proper edge coloring of `h` with colors `1..=k`, indexed by member. Every
/// color is used once `h` has at least `k` members.
pub fn bipartite_edge_color(h: &DegreeBoundedSubgraph, k: usize) -> Result<Vec<usize>> {
    let degree = h.max_degree();
    if degree > k {
        return Err(Error::DegreeTooLarge { degree, k });
    }
    let n = h.left + h.right;
    // at[v][c]: member of color c at vertex v
    let mut at: Vec<Vec<Option<usize>>> = vec![vec![None; k]; n];
    let mut color = vec![usize::MAX; h.len()];
    for e in 0..h.len() {
        let [u, v] = h.ends(e);
        let alpha = (0..k)
            .find(|&c| at[u][c].is_none())
            .expect("degree bound leaves a free color");
        let beta = (0..k)
            .find(|&c| at[v][c].is_none())
            .expect("degree bound leaves a free color");
        if at[v][alpha].is_some() {
            // Swap alpha and beta along the alternating chain leaving v; the
            // chain cannot reach u in a bipartite graph.
            let mut chain = Vec::new();
            let (mut x, mut c) = (v, alpha);
            while let Some(f) = at[x][c] {
                chain.push(f);
                let [p, q] = h.ends(f);
                x = if p == x { q } else { p };
                c = if c == alpha { beta } else { alpha };
            }
            for &f in &chain {
                for w in h.ends(f) {
                    at[w][color[f]] = None;
                }
            }
            for &f in &chain {
                color[f] = if color[f] == alpha { beta } else { alpha };
                for w in h.ends(f) {
                    at[w][color[f]] = Some(f);
                }
            }
        }
        debug_assert!(at[u][alpha].is_none() && at[v][alpha].is_none());
        color[e] = alpha;
        at[u][alpha] = Some(e);
        at[v][alpha] = Some(e);
    }

    if h.len() >= k {
        let mut count = vec![0usize; k];
        for &c in &color {
            count[c] += 1;
        }
        while let Some(unused) = (0..k).find(|&c| count[c] == 0) {
            // An unused color is free everywhere, so any edge may move to it.
            let e = (0..h.len())
                .find(|&e| count[color[e]] >= 2)
                .expect("pigeonhole");
            count[color[e]] -= 1;
            color[e] = unused;
            count[unused] += 1;
        }
    }
    Ok(color.into_iter().map(|c| c + 1).collect())
}

/// Groups members by color into `k` classes.
pub fn color_classes(colors: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut classes = vec![Vec::new(); k];
    for (e, &c) in colors.iter().enumerate() {
        classes[c - 1].push(e);
    }
    classes
}

/// True when no two members of `class` share an endpoint.
pub fn is_matching(h: &DegreeBoundedSubgraph, class: &[usize]) -> bool {
    let mut seen = vec![false; h.left + h.right];
    for &e in class {
        for v in h.ends(e) {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
    }
    true
}

/// Moves edges between matchings along alternating paths until every class
/// has exactly `p` members. The union of the classes is unchanged.
pub fn rebalance_matchings(
    h: &DegreeBoundedSubgraph,
    mut classes: Vec<Vec<usize>>,
    p: usize,
) -> Result<Vec<Vec<usize>>> {
    let k = classes.len();
    let total: usize = classes.iter().map(Vec::len).sum();
    if total != k * p {
        return Err(Error::Precondition(format!(
            "{total} edges cannot form {k} matchings of size {p}"
        )));
    }
    if let Some(i) = classes.iter().position(|c| !is_matching(h, c)) {
        return Err(Error::Precondition(format!("class {i} is not a matching")));
    }
    let n = h.left + h.right;
    loop {
        let big = (0..k)
            .max_by_key(|&i| (classes[i].len(), std::cmp::Reverse(i)))
            .unwrap_or(0);
        let small = (0..k).min_by_key(|&i| (classes[i].len(), i)).unwrap_or(0);
        if k == 0 || classes[big].len() == p {
            return Ok(classes);
        }
        // mate[side][v]: member of the big (0) or small (1) class at v
        let mut mate = vec![[None::<usize>; 2]; n];
        for (side, &class) in [big, small].iter().enumerate() {
            for &e in &classes[class] {
                for v in h.ends(e) {
                    mate[v][side] = Some(e);
                }
            }
        }
        let mut augmenting = None;
        for start in 0..n {
            if mate[start][0].is_none() || mate[start][1].is_some() {
                continue;
            }
            let mut path = Vec::new();
            let (mut x, mut side) = (start, 0);
            while let Some(e) = mate[x][side] {
                path.push(e);
                let [p0, q0] = h.ends(e);
                x = if p0 == x { q0 } else { p0 };
                side ^= 1;
            }
            // odd length: starts and ends with a big-class edge
            if path.len() % 2 == 1 {
                augmenting = Some(path);
                break;
            }
        }
        let path = augmenting.expect("a larger matching always leaves an augmenting path");
        // even positions leave the big class, odd positions leave the small one
        let to_small: Vec<usize> = path.iter().step_by(2).copied().collect();
        let to_big: Vec<usize> = path.iter().skip(1).step_by(2).copied().collect();
        classes[big].retain(|e| !to_small.contains(e));
        classes[small].retain(|e| !to_big.contains(e));
        classes[big].extend(&to_big);
        classes[small].extend(&to_small);
        classes[big].sort_unstable();
        classes[small].sort_unstable();
    }
}

#[derive(Debug, Clone)]
pub struct DiverseMatchingsResult {
    /// Original edge ids of each matching, ascending.
    pub matchings: Vec<Vec<usize>>,
    pub solutions: SolutionSet,
    pub packing_weight: i64,
}

impl DiverseMatchingsResult {
    pub fn diversity(&self) -> i64 {
        self.solutions.diversity()
    }
}

pub fn diverse_bipartite_matchings(
    g: &BipartiteGraph,
    k: usize,
    p: usize,
) -> Result<DiverseMatchingsResult> {
    let weights = g.weights();
    weights.check_bound(k)?;
    let MatchingNetwork {
        network,
        requirement,
    } = build_matching_network(g, k, p)?;
    let flow = min_cost_flow(&network, requirement)?;
    let h = DegreeBoundedSubgraph::from_flow(g, &network, &flow);
    debug_assert_eq!(h.len(), k * p);
    let colors = bipartite_edge_color(&h, k)?;
    let classes = rebalance_matchings(&h, color_classes(&colors, k), p)?;
    let matchings: Vec<Vec<usize>> = classes
        .iter()
        .map(|class| {
            let mut edges: Vec<usize> = class.iter().map(|&e| h.members()[e].edge).collect();
            edges.sort_unstable();
            edges
        })
        .collect();
    let solutions = SolutionSet::new(matchings.clone(), &weights);
    let packing_weight = -flow.cost();
    #[cfg(debug_assertions)]
    {
        crate::paths::assert_copies_are_prefixes(&network, flow.values());
        assert_eq!(
            packing_weight,
            solutions.diversity(),
            "packing weight differs from diversity"
        );
    }
    Ok(DiverseMatchingsResult {
        matchings,
        solutions,
        packing_weight,
    })
}
