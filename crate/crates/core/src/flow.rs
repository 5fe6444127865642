//! Augmenting-path max flow with a value bound and extremal min cuts.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::multigraph::{MultiGraph, VertexId, VertexSet};

#[derive(Clone, Copy, Debug)]
struct Arc {
    to: usize,
    cap: u32,
}

/// Outcome of a bounded max-flow run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowOutcome {
    Value(u64),
    Exceeded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremal {
    Min,
    Max,
}

/// Directed residual network. Arcs are stored in pairs `(2i, 2i+1)`.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
    source: usize,
    sink: usize,
    value: u64,
    exceeded: bool,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            arcs: Vec::new(),
            source,
            sink,
            value: 0,
            exceeded: false,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Directed arc `u -> v`.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: u32) {
        self.push_pair(u, v, cap, 0);
    }

    /// Undirected edge: capacity `cap` in both directions.
    pub fn add_undirected(&mut self, u: usize, v: usize, cap: u32) {
        self.push_pair(u, v, cap, cap);
    }

    fn push_pair(&mut self, u: usize, v: usize, fwd: u32, back: u32) {
        let i = self.arcs.len();
        self.arcs.push(Arc { to: v, cap: fwd });
        self.arcs.push(Arc { to: u, cap: back });
        self.adj[u].push(i);
        self.adj[v].push(i + 1);
    }

    /// Runs BFS augmentation until no path remains or the value exceeds `limit`.
    pub fn max_flow_bounded(&mut self, limit: u64) -> FlowOutcome {
        let n = self.adj.len();
        let mut pred: Vec<usize> = vec![usize::MAX; n];
        loop {
            if self.value > limit {
                self.exceeded = true;
                return FlowOutcome::Exceeded;
            }
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([self.source]);
            let mut found = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let Arc { to, cap } = self.arcs[a];
                    if cap > 0 && to != self.source && pred[to] == usize::MAX {
                        pred[to] = a;
                        if to == self.sink {
                            found = true;
                            break 'bfs;
                        }
                        queue.push_back(to);
                    }
                }
            }
            if !found {
                return FlowOutcome::Value(self.value);
            }
            let mut bottleneck = u32::MAX;
            let mut v = self.sink;
            while v != self.source {
                let a = pred[v];
                bottleneck = bottleneck.min(self.arcs[a].cap);
                v = self.arcs[a ^ 1].to;
            }
            let mut v = self.sink;
            while v != self.source {
                let a = pred[v];
                self.arcs[a].cap -= bottleneck;
                self.arcs[a ^ 1].cap += bottleneck;
                v = self.arcs[a ^ 1].to;
            }
            self.value += bottleneck as u64;
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Nodes reachable from `from` through arcs with residual capacity,
    /// never entering nodes flagged in `stop`.
    pub fn residual_reach(&self, from: usize, stop: &[bool]) -> Vec<usize> {
        let mut seen = vec![false; self.adj.len()];
        let mut out = vec![from];
        seen[from] = true;
        let mut i = 0;
        while i < out.len() {
            let u = out[i];
            i += 1;
            for &a in &self.adj[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && !seen[to] && !stop[to] {
                    seen[to] = true;
                    out.push(to);
                }
            }
        }
        out
    }

    /// Source side of the minimal or maximal minimum cut, as a node mask.
    pub fn source_side(&self, extremal: Extremal) -> Result<Vec<bool>> {
        if self.exceeded {
            return Err(Error::FlowExceeded);
        }
        let n = self.adj.len();
        match extremal {
            Extremal::Min => {
                let mut side = vec![false; n];
                for v in self.residual_reach(self.source, &vec![false; n]) {
                    side[v] = true;
                }
                Ok(side)
            }
            Extremal::Max => {
                // co-reachability: u reaches the sink if some arc u->w has
                // residual capacity and w reaches it
                let mut reaches = vec![false; n];
                reaches[self.sink] = true;
                let mut stack = vec![self.sink];
                while let Some(w) = stack.pop() {
                    for &a in &self.adj[w] {
                        // arc a goes w -> x; its twin goes x -> w
                        let x = self.arcs[a].to;
                        if !reaches[x] && self.arcs[a ^ 1].cap > 0 {
                            reaches[x] = true;
                            stack.push(x);
                        }
                    }
                }
                Ok(reaches.into_iter().map(|r| !r).collect())
            }
        }
    }
}

/// A min-cut problem between two vertex sets of a multigraph.
#[derive(Clone, Debug)]
pub struct GraphCut {
    net: FlowNetwork,
    verts: Vec<VertexId>,
    r_max: u64,
    outcome: Option<FlowOutcome>,
}

impl GraphCut {
    /// Every edge becomes a unit undirected arc; `sources` and `sinks` hang off
    /// a super source and super sink with capacity `r_max + 1`.
    pub fn new(g: &MultiGraph, sources: &VertexSet, sinks: &VertexSet, r_max: u64) -> Result<Self> {
        if sources.iter().any(|v| sinks.contains(v)) {
            return Err(Error::OverlappingSets);
        }
        for v in sources.iter().chain(sinks) {
            if !g.contains(*v) {
                return Err(Error::UnknownVertex(*v));
            }
        }
        let verts: Vec<VertexId> = g.vertices().collect();
        let mut index = vec![usize::MAX; g.id_bound()];
        for (i, v) in verts.iter().enumerate() {
            index[v.index()] = i;
        }
        let s = verts.len();
        let t = s + 1;
        let mut net = FlowNetwork::new(verts.len() + 2, s, t);
        for (u, v, _) in g.edges() {
            net.add_undirected(index[u.index()], index[v.index()], 1);
        }
        let pin = u32::try_from(r_max.saturating_add(1)).unwrap_or(u32::MAX);
        for v in sources {
            net.add_arc(s, index[v.index()], pin);
        }
        for v in sinks {
            net.add_arc(index[v.index()], t, pin);
        }
        Ok(GraphCut { net, verts, r_max, outcome: None })
    }

    pub fn max_flow_bounded(&mut self) -> FlowOutcome {
        if let Some(o) = self.outcome {
            return o;
        }
        let o = self.net.max_flow_bounded(self.r_max);
        self.outcome = Some(o);
        o
    }

    pub fn min_cut_source_side(&self, extremal: Extremal) -> Result<VertexSet> {
        match self.outcome {
            Some(FlowOutcome::Value(_)) => {}
            _ => return Err(Error::FlowExceeded),
        }
        let side = self.net.source_side(extremal)?;
        Ok(self
            .verts
            .iter()
            .enumerate()
            .filter(|(i, _)| side[*i])
            .map(|(_, v)| *v)
            .collect())
    }
}

/// Minimum cut value and the maximal source side, or `None` above `r_max`.
pub fn max_min_cut(
    g: &MultiGraph,
    sources: &VertexSet,
    sinks: &VertexSet,
    r_max: u64,
) -> Result<Option<(u64, VertexSet)>> {
    let mut cut = GraphCut::new(g, sources, sinks, r_max)?;
    match cut.max_flow_bounded() {
        FlowOutcome::Exceeded => Ok(None),
        FlowOutcome::Value(v) => Ok(Some((v, cut.min_cut_source_side(Extremal::Max)?))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::Provenance;

    fn graph(n: usize, edges: &[(u32, u32)]) -> MultiGraph {
        let mut g = MultiGraph::with_vertices(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            g.add_edge(VertexId(u), VertexId(v), Provenance::Original(i)).unwrap();
        }
        g
    }

    fn set(ids: &[u32]) -> VertexSet {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn bounded_values() {
        let g = graph(2, &[(0, 1)]);
        let mut c = GraphCut::new(&g, &set(&[0]), &set(&[1]), 5).unwrap();
        assert_eq!(c.max_flow_bounded(), FlowOutcome::Value(1));
        assert_eq!(c.min_cut_source_side(Extremal::Min).unwrap(), set(&[0]));
        assert_eq!(c.min_cut_source_side(Extremal::Max).unwrap(), set(&[0]));

        let g = graph(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]);
        let mut c = GraphCut::new(&g, &set(&[0]), &set(&[3]), 1).unwrap();
        assert_eq!(c.max_flow_bounded(), FlowOutcome::Exceeded);
        assert_eq!(c.min_cut_source_side(Extremal::Min), Err(Error::FlowExceeded));

        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let mut c = GraphCut::new(&g, &set(&[0]), &set(&[2]), 5).unwrap();
        assert_eq!(c.max_flow_bounded(), FlowOutcome::Value(2));
    }

    #[test]
    fn extremal_sides() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let mut c = GraphCut::new(&g, &set(&[0]), &set(&[2]), 5).unwrap();
        assert_eq!(c.max_flow_bounded(), FlowOutcome::Value(1));
        assert_eq!(c.min_cut_source_side(Extremal::Min).unwrap(), set(&[0]));
        assert_eq!(c.min_cut_source_side(Extremal::Max).unwrap(), set(&[0, 1]));

        let g = graph(3, &[(0, 1), (0, 1), (0, 2)]);
        let mut c = GraphCut::new(&g, &set(&[0]), &set(&[1]), 5).unwrap();
        assert_eq!(c.max_flow_bounded(), FlowOutcome::Value(2));
        assert!(c.min_cut_source_side(Extremal::Min).unwrap().contains(&VertexId(2)));
        assert!(c.min_cut_source_side(Extremal::Max).unwrap().contains(&VertexId(2)));
    }
}
