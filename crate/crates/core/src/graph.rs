//! Graph containers, text-format readers/writers and the grid generator.
//!
//! Lengths are positive integers bounded by 2^31 and weights are non-negative,
//! so every distance and every diversity value fits comfortably in 64 bits.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

pub type VertexId = usize;

/// Largest accepted arc length.
pub const MAX_LENGTH: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
    pub length: u64,
    pub weight: u64,
}

impl Arc {
    pub fn new(tail: VertexId, head: VertexId, length: u64, weight: u64) -> Self {
        Arc {
            tail,
            head,
            length,
            weight,
        }
    }
}

/// Directed multigraph with per-arc length and weight. Parallel arcs and
/// self-loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    n: usize,
    arcs: Vec<Arc>,
}

impl DirectedGraph {
    pub fn new(n: usize, arcs: Vec<Arc>) -> Result<Self> {
        for (index, a) in arcs.iter().enumerate() {
            check_endpoint(a.tail, n)?;
            check_endpoint(a.head, n)?;
            check_length(index, a.length)?;
        }
        Ok(DirectedGraph { n, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: usize) -> &Arc {
        &self.arcs[id]
    }

    /// Outgoing arc ids per vertex, in increasing arc id order.
    pub fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (id, a) in self.arcs.iter().enumerate() {
            adj[a.tail].push(id);
        }
        adj
    }

    /// Incoming arc ids per vertex, in increasing arc id order.
    pub fn in_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (id, a) in self.arcs.iter().enumerate() {
            adj[a.head].push(id);
        }
        adj
    }

    pub fn weights(&self) -> Vec<u64> {
        self.arcs.iter().map(|a| a.weight).collect()
    }

    pub fn to_json(&self) -> String {
        let doc = ArcListJson {
            n: self.n,
            arcs: self
                .arcs
                .iter()
                .map(|a| [a.tail as u64, a.head as u64, a.length, a.weight])
                .collect(),
        };
        serde_json::to_string(&doc).expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ArcListJson =
            serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
        let arcs = doc
            .arcs
            .iter()
            .map(|&[u, v, l, w]| Arc::new(u as usize, v as usize, l, w))
            .collect();
        DirectedGraph::new(doc.n, arcs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub length: u64,
    pub weight: u64,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId, length: u64, weight: u64) -> Self {
        Edge {
            u,
            v,
            length,
            weight,
        }
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected multigraph without self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        for (index, e) in edges.iter().enumerate() {
            check_endpoint(e.u, n)?;
            check_endpoint(e.v, n)?;
            check_length(index, e.length)?;
            if e.u == e.v {
                return Err(Error::SelfLoop { index, vertex: e.u });
            }
        }
        Ok(UndirectedGraph { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    /// Incident edge ids per vertex, in increasing edge id order.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.u].push(id);
            adj[e.v].push(id);
        }
        adj
    }

    pub fn weights(&self) -> Vec<u64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    /// Both orientations of every edge: arc `2i` is `u -> v` and arc `2i + 1`
    /// is `v -> u` for edge `i`.
    pub fn to_bidirected(&self) -> DirectedGraph {
        let arcs = self
            .edges
            .iter()
            .flat_map(|e| {
                [
                    Arc::new(e.u, e.v, e.length, e.weight),
                    Arc::new(e.v, e.u, e.length, e.weight),
                ]
            })
            .collect();
        DirectedGraph { n: self.n, arcs }
    }

    pub fn to_json(&self) -> String {
        let doc = EdgeListJson {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| [e.u as u64, e.v as u64, e.length, e.weight])
                .collect(),
        };
        serde_json::to_string(&doc).expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: EdgeListJson =
            serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
        let edges = doc
            .edges
            .iter()
            .map(|&[u, v, l, w]| Edge::new(u as usize, v as usize, l, w))
            .collect();
        UndirectedGraph::new(doc.n, edges)
    }
}

#[derive(Serialize, Deserialize)]
struct ArcListJson {
    n: usize,
    arcs: Vec<[u64; 4]>,
}

#[derive(Serialize, Deserialize)]
struct EdgeListJson {
    n: usize,
    edges: Vec<[u64; 4]>,
}

fn check_endpoint(v: VertexId, n: usize) -> Result<()> {
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok(())
}

fn check_length(index: usize, length: u64) -> Result<()> {
    if length == 0 || length > MAX_LENGTH {
        return Err(Error::InvalidLength { index, length });
    }
    Ok(())
}

/// Options for [`parse_dimacs_gr`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DimacsOptions {
    /// Round every length to the nearest multiple of 100 (ties up), with a
    /// floor of 100.
    pub round100: bool,
    /// Give every arc weight 1 instead of reusing the (rounded) length.
    pub unit_weight: bool,
}

/// Round to the nearest multiple of 100, ties up, never below 100.
pub fn round_to_hundred(length: u64) -> u64 {
    ((length + 50) / 100 * 100).max(100)
}

fn parse_int(line: usize, token: &str) -> Result<i64, ParseError> {
    token.parse::<i64>().map_err(|_| ParseError::NotAnInteger {
        line,
        token: token.to_string(),
    })
}

/// Reads a 9th DIMACS challenge `.gr` shortest-path file.
pub fn parse_dimacs_gr(text: &str, opts: DimacsOptions) -> Result<DirectedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut arcs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first().copied() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(ParseError::DuplicateProblemLine { line }.into());
                }
                let bad = || ParseError::ProblemLine {
                    line,
                    text: raw.to_string(),
                };
                if tokens.len() != 4 || tokens[1] != "sp" {
                    return Err(bad().into());
                }
                let n = tokens[2].parse::<usize>().map_err(|_| bad())?;
                let m = tokens[3].parse::<usize>().map_err(|_| bad())?;
                header = Some((n, m));
                arcs.reserve(m);
            }
            Some("a") => {
                let (n, _) = header.ok_or(ParseError::MissingProblemLine)?;
                if tokens.len() != 4 {
                    return Err(ParseError::Record {
                        line,
                        text: raw.to_string(),
                    }
                    .into());
                }
                let u = parse_int(line, tokens[1])?;
                let v = parse_int(line, tokens[2])?;
                let len = parse_int(line, tokens[3])?;
                for x in [u, v] {
                    if x < 1 || x as u64 > n as u64 {
                        return Err(ParseError::VertexOutOfRange { line, vertex: x, n }.into());
                    }
                }
                if len <= 0 {
                    return Err(ParseError::NonPositiveLength { line, length: len }.into());
                }
                let mut length = len as u64;
                if opts.round100 {
                    length = round_to_hundred(length);
                }
                let weight = if opts.unit_weight { 1 } else { length };
                arcs.push(Arc::new(u as usize - 1, v as usize - 1, length, weight));
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
    let (n, m) = header.ok_or(ParseError::MissingProblemLine)?;
    if arcs.len() != m {
        return Err(ParseError::CountMismatch {
            declared: m,
            found: arcs.len(),
        }
        .into());
    }
    DirectedGraph::new(n, arcs)
}

/// Writes `g` in DIMACS `.gr` form. Only lengths are written; the reader
/// restores them as weights too.
pub fn write_dimacs_gr(g: &DirectedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p sp {} {}", g.vertex_count(), g.arc_count()).unwrap();
    for a in g.arcs() {
        writeln!(out, "a {} {} {}", a.tail + 1, a.head + 1, a.length).unwrap();
    }
    out
}

/// Reads a SNAP edge list. Vertex ids are remapped densely in order of first
/// appearance and every arc gets unit length and weight.
pub fn parse_snap_edgelist(text: &str) -> Result<DirectedGraph> {
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut arcs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(ParseError::TokenCount {
                line,
                found: tokens.len(),
            }
            .into());
        }
        let mut ends = [0usize; 2];
        for (slot, token) in ends.iter_mut().zip(&tokens) {
            let raw_id = token.parse::<u64>().map_err(|_| ParseError::NotAnInteger {
                line,
                token: token.to_string(),
            })?;
            let next = ids.len();
            *slot = *ids.entry(raw_id).or_insert(next);
        }
        arcs.push(Arc::new(ends[0], ends[1], 1, 1));
    }
    DirectedGraph::new(ids.len(), arcs)
}

/// Writes `g` as a SNAP edge list using its own vertex ids.
pub fn write_snap_edgelist(g: &DirectedGraph) -> String {
    let mut out = String::new();
    for a in g.arcs() {
        writeln!(out, "{} {}", a.tail, a.head).unwrap();
    }
    out
}

/// Reads an undirected edge list: `c` comments, one `p edge <n> <m>` line and
/// `e <u> <v> [<length> [<weight>]]` lines with 1-based ids. Length defaults to
/// 1 and weight defaults to the length.
pub fn parse_edge_list(text: &str) -> Result<UndirectedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first().copied() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(ParseError::DuplicateProblemLine { line }.into());
                }
                let bad = || ParseError::ProblemLine {
                    line,
                    text: raw.to_string(),
                };
                if tokens.len() != 4 || tokens[1] != "edge" {
                    return Err(bad().into());
                }
                let n = tokens[2].parse::<usize>().map_err(|_| bad())?;
                let m = tokens[3].parse::<usize>().map_err(|_| bad())?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or(ParseError::MissingProblemLine)?;
                if !(3..=5).contains(&tokens.len()) {
                    return Err(ParseError::Record {
                        line,
                        text: raw.to_string(),
                    }
                    .into());
                }
                let u = parse_int(line, tokens[1])?;
                let v = parse_int(line, tokens[2])?;
                for x in [u, v] {
                    if x < 1 || x as u64 > n as u64 {
                        return Err(ParseError::VertexOutOfRange { line, vertex: x, n }.into());
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop { line, vertex: u }.into());
                }
                let length = match tokens.get(3) {
                    Some(t) => parse_int(line, t)?,
                    None => 1,
                };
                if length <= 0 {
                    return Err(ParseError::NonPositiveLength { line, length }.into());
                }
                let weight = match tokens.get(4) {
                    Some(t) => parse_int(line, t)?,
                    None => length,
                };
                if weight < 0 {
                    return Err(ParseError::NegativeWeight { line, weight }.into());
                }
                edges.push(Edge::new(
                    u as usize - 1,
                    v as usize - 1,
                    length as u64,
                    weight as u64,
                ));
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
    let (n, m) = header.ok_or(ParseError::MissingProblemLine)?;
    if edges.len() != m {
        return Err(ParseError::CountMismatch {
            declared: m,
            found: edges.len(),
        }
        .into());
    }
    UndirectedGraph::new(n, edges)
}

pub fn write_edge_list(g: &UndirectedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for e in g.edges() {
        writeln!(out, "e {} {} {} {}", e.u + 1, e.v + 1, e.length, e.weight).unwrap();
    }
    out
}

/// Side length of a square grid instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub p: usize,
}

/// Unit-length, unit-weight `p x p` grid. Vertex `(r, c)` has id `r * p + c`;
/// the source is the top-left corner and the sink the bottom-right one.
pub fn generate_grid(spec: GridSpec) -> Result<(UndirectedGraph, VertexId, VertexId)> {
    let p = spec.p;
    if p < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid side must be at least 2, got {p}"
        )));
    }
    let mut edges = Vec::with_capacity(2 * p * (p - 1));
    for r in 0..p {
        for c in 0..p {
            let v = r * p + c;
            if c + 1 < p {
                edges.push(Edge::new(v, v + 1, 1, 1));
            }
            if r + 1 < p {
                edges.push(Edge::new(v, v + p, 1, 1));
            }
        }
    }
    Ok((UndirectedGraph { n: p * p, edges }, 0, p * p - 1))
}
