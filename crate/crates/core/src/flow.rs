//! Integral minimum-cost flow of a prescribed value on acyclic networks, and
//! decomposition of unit flows into arc-disjoint paths.
//!
//! The solver runs successive shortest augmenting paths with vertex
//! potentials. Arc costs may be negative; because every network is acyclic,
//! the initial potentials come from one relaxation pass in topological order
//! and all later searches use Dijkstra on non-negative reduced costs.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::VertexId;

/// What a network arc stands for in the reduction that built it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ArcTag {
    /// Copy `index` (1-based) of ground-set element `element`.
    Copy {
        element: usize,
        index: usize,
    },
    Auxiliary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub tail: VertexId,
    pub head: VertexId,
    pub capacity: u64,
    pub cost: i64,
    pub tag: ArcTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    n: usize,
    source: VertexId,
    sink: VertexId,
    arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    pub fn new(n: usize, source: VertexId, sink: VertexId) -> Self {
        assert!(source < n && sink < n, "terminals must be vertices");
        FlowNetwork {
            n,
            source,
            sink,
            arcs: Vec::new(),
        }
    }

    pub fn add_arc(
        &mut self,
        tail: VertexId,
        head: VertexId,
        capacity: u64,
        cost: i64,
        tag: ArcTag,
    ) -> usize {
        assert!(tail < self.n && head < self.n, "arc endpoint out of range");
        self.arcs.push(FlowArc {
            tail,
            head,
            capacity,
            cost,
            tag,
        });
        self.arcs.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    pub fn arc(&self, id: usize) -> &FlowArc {
        &self.arcs[id]
    }

    /// Topological order over arcs with positive capacity, or `None` when
    /// those arcs contain a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let mut indeg = vec![0usize; self.n];
        let mut out = vec![Vec::new(); self.n];
        for a in self.arcs.iter().filter(|a| a.capacity > 0) {
            indeg[a.head] += 1;
            out[a.tail].push(a.head);
        }
        let mut queue: VecDeque<VertexId> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralFlow {
    flow: Vec<u64>,
    value: u64,
    cost: i64,
}

impl IntegralFlow {
    pub fn new(flow: Vec<u64>, value: u64, cost: i64) -> Self {
        IntegralFlow { flow, value, cost }
    }

    pub fn on_arc(&self, arc: usize) -> u64 {
        self.flow[arc]
    }

    pub fn values(&self) -> &[u64] {
        &self.flow
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn cost(&self) -> i64 {
        self.cost
    }

    /// Checks capacity bounds, conservation away from the terminals, and that
    /// the stored value and cost match the arc flows.
    pub fn verify(&self, net: &FlowNetwork) -> Result<()> {
        if self.flow.len() != net.arcs.len() {
            return Err(Error::Precondition(
                "flow vector length differs from arc count".into(),
            ));
        }
        let mut balance = vec![0i128; net.n];
        let mut cost = 0i64;
        for (id, (a, &f)) in net.arcs.iter().zip(&self.flow).enumerate() {
            if f > a.capacity {
                return Err(Error::Precondition(format!(
                    "arc {id} carries {f} > capacity {}",
                    a.capacity
                )));
            }
            balance[a.tail] -= f as i128;
            balance[a.head] += f as i128;
            cost += a.cost * f as i64;
        }
        for (v, &b) in balance.iter().enumerate() {
            if v != net.source && v != net.sink && b != 0 {
                return Err(Error::Precondition(format!(
                    "conservation violated at vertex {v}"
                )));
            }
        }
        let value: u64 = net
            .arcs
            .iter()
            .zip(&self.flow)
            .filter(|(a, _)| a.tail == net.source)
            .map(|(_, &f)| f)
            .sum();
        if value != self.value || cost != self.cost {
            return Err(Error::Precondition(
                "stored value or cost does not match arc flows".into(),
            ));
        }
        Ok(())
    }
}

struct Residual {
    head: Vec<VertexId>,
    cap: Vec<u64>,
    cost: Vec<i64>,
    // residual edge ids leaving each vertex, ascending
    start: Vec<usize>,
    out: Vec<usize>,
}

impl Residual {
    // edge 2i is arc i, edge 2i + 1 its reverse
    fn new(net: &FlowNetwork) -> Self {
        let m = net.arcs.len();
        let mut head = Vec::with_capacity(2 * m);
        let mut cap = Vec::with_capacity(2 * m);
        let mut cost = Vec::with_capacity(2 * m);
        let mut deg = vec![0usize; net.n + 1];
        for a in &net.arcs {
            head.extend([a.head, a.tail]);
            cap.extend([a.capacity, 0]);
            cost.extend([a.cost, -a.cost]);
            deg[a.tail] += 1;
            deg[a.head] += 1;
        }
        let mut start = vec![0usize; net.n + 1];
        for v in 0..net.n {
            start[v + 1] = start[v] + deg[v];
        }
        let mut fill = start.clone();
        let mut out = vec![0usize; 2 * m];
        for (id, a) in net.arcs.iter().enumerate() {
            out[fill[a.tail]] = 2 * id;
            fill[a.tail] += 1;
            out[fill[a.head]] = 2 * id + 1;
            fill[a.head] += 1;
        }
        Residual {
            head,
            cap,
            cost,
            start,
            out,
        }
    }

    fn edges(&self, v: VertexId) -> &[usize] {
        &self.out[self.start[v]..self.start[v + 1]]
    }
}

/// Minimum-cost integral flow of value exactly `requirement` from the
/// network's source to its sink.
pub fn min_cost_flow(net: &FlowNetwork, requirement: u64) -> Result<IntegralFlow> {
    let order = net
        .topological_order()
        .ok_or_else(|| Error::Precondition("flow network contains a directed cycle".into()))?;
    let n = net.n;
    let (s, t) = (net.source, net.sink);
    let mut res = Residual::new(net);

    // Shortest distances from s in the DAG, 0 where unreachable.
    let mut potential = vec![0i64; n];
    let mut seen = vec![false; n];
    seen[s] = true;
    for &u in &order {
        if !seen[u] {
            continue;
        }
        for &e in res.edges(u) {
            if e % 2 == 1 || res.cap[e] == 0 {
                continue;
            }
            let v = res.head[e];
            let cand = potential[u] + res.cost[e];
            if !seen[v] || cand < potential[v] {
                potential[v] = cand;
                seen[v] = true;
            }
        }
    }

    let mut value = 0u64;
    let mut dist = vec![i64::MAX; n];
    let mut prev_edge = vec![usize::MAX; n];
    let mut heap = BinaryHeap::new();
    while value < requirement {
        dist.fill(i64::MAX);
        prev_edge.fill(usize::MAX);
        dist[s] = 0;
        heap.push(Reverse((0i64, s)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d != dist[u] {
                continue;
            }
            for &e in res.edges(u) {
                if res.cap[e] == 0 {
                    continue;
                }
                let v = res.head[e];
                let reduced = res.cost[e] + potential[u] - potential[v];
                debug_assert!(reduced >= 0, "negative reduced cost on residual edge {e}");
                let nd = d + reduced;
                if nd < dist[v] {
                    dist[v] = nd;
                    prev_edge[v] = e;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        if dist[t] == i64::MAX {
            return Err(Error::InfeasibleFlow {
                required: requirement,
                achieved: value,
            });
        }
        for v in 0..n {
            if dist[v] != i64::MAX {
                potential[v] += dist[v];
            }
        }
        let mut push = requirement - value;
        let mut v = t;
        while v != s {
            let e = prev_edge[v];
            push = push.min(res.cap[e]);
            v = res.head[e ^ 1];
        }
        let mut v = t;
        while v != s {
            let e = prev_edge[v];
            res.cap[e] -= push;
            res.cap[e ^ 1] += push;
            v = res.head[e ^ 1];
        }
        value += push;
    }

    let flow: Vec<u64> = (0..net.arcs.len()).map(|i| res.cap[2 * i + 1]).collect();
    let cost = net
        .arcs
        .iter()
        .zip(&flow)
        .map(|(a, &f)| a.cost * f as i64)
        .sum();
    let result = IntegralFlow { flow, value, cost };
    #[cfg(debug_assertions)]
    result.verify(net).expect("solver produced an invalid flow");
    Ok(result)
}

/// Splits a unit flow of value `k` on an acyclic network into `k` arc-disjoint
/// source-sink paths (arc id sequences) covering exactly the arcs with flow.
pub fn decompose_unit_flow_paths(
    net: &FlowNetwork,
    flow: &IntegralFlow,
    k: usize,
) -> Result<Vec<Vec<usize>>> {
    if flow.value() != k as u64 {
        return Err(Error::Precondition(format!(
            "flow value {} differs from k = {k}",
            flow.value()
        )));
    }
    let mut out = vec![Vec::new(); net.n];
    let mut used = 0usize;
    for (id, a) in net.arcs.iter().enumerate() {
        match flow.on_arc(id) {
            0 => {}
            1 if a.capacity == 1 => {
                out[a.tail].push(id);
                used += 1;
            }
            f => {
                return Err(Error::Precondition(format!(
                    "arc {id} carries {f} with capacity {}; unit flow required",
                    a.capacity
                )))
            }
        }
    }
    let mut next = vec![0usize; net.n];
    let mut paths = Vec::with_capacity(k);
    let mut covered = 0usize;
    for _ in 0..k {
        let mut path = Vec::new();
        let mut v = net.source;
        while v != net.sink || path.is_empty() {
            let Some(&arc) = out[v].get(next[v]) else {
                return Err(Error::Precondition(format!(
                    "flow path stuck at vertex {v}"
                )));
            };
            next[v] += 1;
            path.push(arc);
            v = net.arcs[arc].head;
            if path.len() > net.arcs.len() {
                return Err(Error::Precondition("flow contains a cycle".into()));
            }
        }
        covered += path.len();
        paths.push(path);
    }
    if covered != used {
        return Err(Error::Precondition(format!(
            "{} saturated arcs not on any path",
            used - covered
        )));
    }
    Ok(paths)
}
