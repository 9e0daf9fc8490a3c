//! Diverse shortest `s -> t` paths: prune to the shortest-path DAG, copy every
//! arc `k` times, pack `k` unit flows of minimum cost and decode the paths.
//!
//! Returned paths form a multiset. When fewer than `k` distinct shortest paths
//! exist the flow reuses routes through higher-index copies and the diversity
//! accounts for the repetition.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::diversity::{copy_weight, GroundSetWeights, SolutionSet};
use crate::error::{Error, Result};
use crate::flow::{decompose_unit_flow_paths, min_cost_flow, ArcTag, FlowNetwork};
use crate::graph::{DirectedGraph, UndirectedGraph, VertexId};
use crate::shortest_dag::{build_shortest_path_dag, orient_undirected, ShortestPathDag};

/// Flow network with `k` unit-capacity copies of every DAG arc. Copy `i` of an
/// arc of weight `w` costs `-w * (k - 2i + 1)`.
#[derive(Debug, Clone)]
pub struct ExpandedNetwork {
    network: FlowNetwork,
    dag_arc: Vec<usize>,
    k: usize,
}

impl ExpandedNetwork {
    pub fn network(&self) -> &FlowNetwork {
        &self.network
    }

    /// DAG arc that network arc `arc` copies.
    pub fn dag_arc(&self, arc: usize) -> usize {
        self.dag_arc[arc]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn requirement(&self) -> u64 {
        self.k as u64
    }
}

pub fn expand_dag(dag: &ShortestPathDag, k: usize) -> Result<ExpandedNetwork> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let g = dag.graph();
    let mut network = FlowNetwork::new(g.vertex_count(), dag.source(), dag.sink());
    let mut dag_arc = Vec::with_capacity(k * g.arc_count());
    for (id, a) in g.arcs().iter().enumerate() {
        let element = dag.origin(id);
        for i in 1..=k {
            let cost = -copy_weight(a.weight, k, i)?;
            network.add_arc(a.tail, a.head, 1, cost, ArcTag::Copy { element, index: i });
            dag_arc.push(id);
        }
    }
    Ok(ExpandedNetwork {
        network,
        dag_arc,
        k,
    })
}

#[derive(Debug, Clone, Copy)]
pub enum PathInstance<'a> {
    Directed(&'a DirectedGraph),
    Undirected(&'a UndirectedGraph),
}

impl PathInstance<'_> {
    pub fn weights(&self) -> GroundSetWeights {
        match self {
            PathInstance::Directed(g) => GroundSetWeights::new(g.weights()),
            PathInstance::Undirected(g) => GroundSetWeights::new(g.weights()),
        }
    }

    pub fn shortest_path_dag(&self, s: VertexId, t: VertexId) -> Result<ShortestPathDag> {
        match self {
            PathInstance::Directed(g) => build_shortest_path_dag(g, s, t),
            PathInstance::Undirected(g) => orient_undirected(g, s, t),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PhaseTimings {
    #[serde(serialize_with = "as_millis")]
    pub prune: Duration,
    #[serde(serialize_with = "as_millis")]
    pub flow: Duration,
    #[serde(serialize_with = "as_millis")]
    pub decode: Duration,
}

impl PhaseTimings {
    pub fn total(&self) -> Duration {
        self.prune + self.flow + self.decode
    }
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

#[derive(Debug, Clone)]
pub struct DiversePathsResult {
    /// Vertex sequences, each starting at `s` and ending at `t`.
    pub paths: Vec<Vec<VertexId>>,
    /// Source-graph arc (directed) or edge (undirected) ids of each path, in
    /// path order.
    pub edge_paths: Vec<Vec<usize>>,
    pub solutions: SolutionSet,
    /// Total weight of the chosen copies.
    pub packing_weight: i64,
    pub shortest_distance: u64,
    pub timings: PhaseTimings,
}

impl DiversePathsResult {
    pub fn diversity(&self) -> i64 {
        self.solutions.diversity()
    }
}

pub fn diverse_shortest_paths(
    instance: PathInstance<'_>,
    s: VertexId,
    t: VertexId,
    k: usize,
) -> Result<DiversePathsResult> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let weights = instance.weights();
    weights.check_bound(k)?;

    let clock = Instant::now();
    let dag = instance.shortest_path_dag(s, t)?;
    let prune = clock.elapsed();

    let clock = Instant::now();
    let expanded = expand_dag(&dag, k)?;
    let net = expanded.network();
    let flow = min_cost_flow(net, expanded.requirement())?;
    let flow_time = clock.elapsed();

    let clock = Instant::now();
    let copy_paths = decompose_unit_flow_paths(net, &flow, k)?;
    let mut paths = Vec::with_capacity(k);
    let mut edge_paths = Vec::with_capacity(k);
    for copy_path in &copy_paths {
        let mut vertices = vec![dag.source()];
        let mut edges = Vec::with_capacity(copy_path.len());
        for &arc in copy_path {
            let dag_arc = expanded.dag_arc(arc);
            vertices.push(dag.graph().arc(dag_arc).head);
            edges.push(dag.origin(dag_arc));
        }
        paths.push(vertices);
        edge_paths.push(edges);
    }
    let solutions = SolutionSet::new(edge_paths.clone(), &weights);
    let decode = clock.elapsed();

    let packing_weight = -flow.cost();
    #[cfg(debug_assertions)]
    {
        assert_copies_are_prefixes(net, flow.values());
        assert_eq!(
            packing_weight,
            solutions.diversity(),
            "packing weight differs from diversity"
        );
    }

    Ok(DiversePathsResult {
        paths,
        edge_paths,
        solutions,
        packing_weight,
        shortest_distance: dag.shortest_distance(),
        timings: PhaseTimings {
            prune,
            flow: flow_time,
            decode,
        },
    })
}

/// For every element of positive weight the used copies are `1..=m`.
#[cfg(debug_assertions)]
pub(crate) fn assert_copies_are_prefixes(net: &FlowNetwork, flow: &[u64]) {
    use std::collections::HashMap;
    // element -> (used copy indices, whether any copy has non-zero cost)
    let mut used: HashMap<usize, (Vec<usize>, bool)> = HashMap::new();
    for (a, &f) in net.arcs().iter().zip(flow) {
        if let ArcTag::Copy { element, index } = a.tag {
            let entry = used.entry(element).or_default();
            entry.1 |= a.cost != 0;
            if f > 0 {
                entry.0.push(index);
            }
        }
    }
    for (element, (mut idx, weighted)) in used {
        if !weighted {
            continue;
        }
        idx.sort_unstable();
        assert!(
            idx.iter().enumerate().all(|(j, &i)| i == j + 1),
            "element {element} uses non-consecutive copies {idx:?}"
        );
    }
}
