//! Loop-free multigraph with stable vertex ids, edge provenance and merging.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Stable vertex identifier. Ids are never reused; merging allocates a fresh one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

pub type VertexSet = BTreeSet<VertexId>;

/// Where an edge came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    /// Edge `i` of the input graph (0-based, file order).
    Original(usize),
    /// Pendant edge of a terminal standing in for input edge `i`.
    Terminal(usize),
    Synthetic(Transform),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Transform {
    /// Parallel edges replacing a two-attachment pendant set.
    PendantBypass,
    /// Edge joining the surviving terminals of two adjacent pairs.
    TerminalBridge,
}

#[derive(Clone, Debug, Default)]
struct Slot {
    nbrs: BTreeMap<VertexId, Vec<Provenance>>,
    degree: usize,
}

#[derive(Clone, Debug, Default)]
pub struct MultiGraph {
    slots: Vec<Option<Slot>>,
    live: usize,
    edges: usize,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with vertices `0..n` and no edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.slots.len() as u32);
        self.slots.push(Some(Slot::default()));
        self.live += 1;
        id
    }

    /// One past the largest id ever allocated.
    pub fn id_bound(&self) -> usize {
        self.slots.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        matches!(self.slots.get(v.index()), Some(Some(_)))
    }

    fn slot(&self, v: VertexId) -> Result<&Slot> {
        self.slots
            .get(v.index())
            .and_then(|s| s.as_ref())
            .ok_or(Error::UnknownVertex(v))
    }

    fn slot_mut(&mut self, v: VertexId) -> Result<&mut Slot> {
        self.slots
            .get_mut(v.index())
            .and_then(|s| s.as_mut())
            .ok_or(Error::UnknownVertex(v))
    }

    pub fn vertex_count(&self) -> usize {
        self.live
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Live vertices in increasing id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_some())
            .map(|(i, _)| VertexId(i as u32))
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.slot(v).map(|s| s.degree).unwrap_or(0)
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.slot(u)
            .ok()
            .and_then(|s| s.nbrs.get(&v))
            .map_or(0, |p| p.len())
    }

    /// Distinct neighbours with edge multiplicities.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, usize)> + '_ {
        self.slot(v)
            .ok()
            .into_iter()
            .flat_map(|s| s.nbrs.iter().map(|(w, p)| (*w, p.len())))
    }

    pub fn neighbor_set(&self, v: VertexId) -> VertexSet {
        self.neighbors(v).map(|(w, _)| w).collect()
    }

    /// Every edge once, as `(u, v, provenance)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, Provenance)> + '_ {
        self.vertices().flat_map(move |u| {
            let slot = self.slots[u.index()].as_ref().unwrap();
            slot.nbrs
                .range(VertexId(u.0 + 1)..)
                .flat_map(move |(v, ps)| ps.iter().map(move |p| (u, *v, *p)))
        })
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, prov: Provenance) -> Result<()> {
        if u == v {
            return Err(Error::Loop(u));
        }
        self.slot(u)?;
        self.slot(v)?;
        for (a, b) in [(u, v), (v, u)] {
            let s = self.slot_mut(a)?;
            s.nbrs.entry(b).or_default().push(prov);
            s.degree += 1;
        }
        self.edges += 1;
        Ok(())
    }

    /// Removes one `u`–`v` edge and returns its provenance.
    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<Provenance> {
        let prov = {
            let s = self.slot_mut(u)?;
            let list = s.nbrs.get_mut(&v).ok_or(Error::MissingEdge(u, v))?;
            let p = list.pop().expect("empty multiplicity list");
            if list.is_empty() {
                s.nbrs.remove(&v);
            }
            s.degree -= 1;
            p
        };
        let s = self.slot_mut(v)?;
        let list = s.nbrs.get_mut(&u).expect("asymmetric adjacency");
        let pos = list.iter().rposition(|p| *p == prov).expect("asymmetric adjacency");
        list.swap_remove(pos);
        if list.is_empty() {
            s.nbrs.remove(&u);
        }
        s.degree -= 1;
        self.edges -= 1;
        Ok(prov)
    }

    /// Removes the `u`–`v` edge carrying `prov`.
    pub fn remove_edge_with(&mut self, u: VertexId, v: VertexId, prov: Provenance) -> Result<()> {
        for (a, b) in [(u, v), (v, u)] {
            let s = self.slot_mut(a)?;
            let list = s.nbrs.get_mut(&b).ok_or(Error::MissingEdge(u, v))?;
            let pos = list.iter().position(|p| *p == prov).ok_or(Error::MissingEdge(u, v))?;
            list.swap_remove(pos);
            if list.is_empty() {
                s.nbrs.remove(&b);
            }
            s.degree -= 1;
        }
        self.edges -= 1;
        Ok(())
    }

    /// Deletes `v` with its incident edges, which are returned.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<Vec<(VertexId, Provenance)>> {
        let slot = self.slot(v)?.clone();
        let mut gone = Vec::with_capacity(slot.degree);
        for (w, ps) in slot.nbrs {
            let ws = self.slot_mut(w)?;
            ws.nbrs.remove(&v);
            ws.degree -= ps.len();
            self.edges -= ps.len();
            gone.extend(ps.into_iter().map(|p| (w, p)));
        }
        self.slots[v.index()] = None;
        self.live -= 1;
        Ok(gone)
    }

    /// Replaces `x` by one fresh vertex. Boundary edges keep multiplicity and
    /// provenance; edges inside `x` disappear.
    pub fn merge_set(&mut self, x: &VertexSet) -> Result<VertexId> {
        if x.is_empty() {
            return Err(Error::EmptyMerge);
        }
        for &v in x {
            self.slot(v)?;
        }
        let z = self.add_vertex();
        let mut boundary: BTreeMap<VertexId, Vec<Provenance>> = BTreeMap::new();
        for &v in x {
            let slot = self.slots[v.index()].take().unwrap();
            self.live -= 1;
            for (w, ps) in slot.nbrs {
                if x.contains(&w) {
                    // internal edges are seen from both ends
                    if v < w {
                        self.edges -= ps.len();
                    }
                    continue;
                }
                let ws = self.slot_mut(w)?;
                ws.nbrs.remove(&v);
                boundary.entry(w).or_default().extend(ps);
            }
        }
        let mut deg = 0;
        for (w, ps) in &boundary {
            deg += ps.len();
            self.slot_mut(*w)?.nbrs.entry(z).or_default().extend(ps.iter().copied());
        }
        let zs = self.slot_mut(z)?;
        zs.nbrs = boundary;
        zs.degree = deg;
        Ok(z)
    }

    /// d(A): edges with exactly one endpoint in `a`.
    pub fn cut_size(&self, a: &VertexSet) -> Result<usize> {
        let mut total = 0;
        for &v in a {
            let s = self.slot(v)?;
            total += s
                .nbrs
                .iter()
                .filter(|(w, _)| !a.contains(w))
                .map(|(_, p)| p.len())
                .sum::<usize>();
        }
        Ok(total)
    }

    /// |E(A, B)| for disjoint `a`, `b`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> Result<usize> {
        if a.iter().any(|v| b.contains(v)) {
            return Err(Error::OverlappingSets);
        }
        for &v in b {
            self.slot(v)?;
        }
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let mut total = 0;
        for &v in small {
            total += self
                .slot(v)?
                .nbrs
                .iter()
                .filter(|(w, _)| large.contains(w))
                .map(|(_, p)| p.len())
                .sum::<usize>();
        }
        Ok(total)
    }

    /// Number of edges from `v` into `set`.
    pub fn edges_to(&self, v: VertexId, set: &VertexSet) -> usize {
        self.neighbors(v)
            .filter(|(w, _)| set.contains(w))
            .map(|(_, m)| m)
            .sum()
    }

    /// Vertices outside `set` adjacent to it.
    pub fn boundary_of(&self, set: &VertexSet) -> VertexSet {
        set.iter()
            .flat_map(|&v| self.neighbors(v))
            .map(|(w, _)| w)
            .filter(|w| !set.contains(w))
            .collect()
    }

    /// BFS 2-colouring; `Err` carries the vertices of an odd closed walk's
    /// conflicting edge.
    pub fn two_coloring(&self) -> std::result::Result<BTreeMap<VertexId, bool>, (VertexId, VertexId)> {
        let mut color = BTreeMap::new();
        for root in self.vertices() {
            if color.contains_key(&root) {
                continue;
            }
            color.insert(root, false);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let cu = color[&u];
                for (w, _) in self.neighbors(u) {
                    match color.get(&w) {
                        Some(&cw) if cw == cu => return Err((u, w)),
                        Some(_) => {}
                        None => {
                            color.insert(w, !cu);
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        Ok(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_ok()
    }

    /// Connected components of the subgraph induced by `within`.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for &root in within {
            if !seen.insert(root) {
                continue;
            }
            let mut comp = VertexSet::from([root]);
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for (w, _) in self.neighbors(u) {
                    if within.contains(&w) && seen.insert(w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected_set(&self, set: &VertexSet) -> bool {
        set.is_empty() || self.components_within(set).len() == 1
    }

    /// Subgraph induced by `set`, with fresh ids, and the map from old ids.
    pub fn induced(&self, set: &VertexSet) -> (MultiGraph, BTreeMap<VertexId, VertexId>) {
        let map: BTreeMap<VertexId, VertexId> =
            set.iter().enumerate().map(|(i, v)| (*v, VertexId(i as u32))).collect();
        let mut h = MultiGraph::with_vertices(set.len());
        for &v in set {
            for (w, m) in self.neighbors(v) {
                if v < w {
                    if let Some(&hw) = map.get(&w) {
                        for p in &self.slots[v.index()].as_ref().unwrap().nbrs[&w][..m] {
                            h.add_edge(map[&v], hw, *p).expect("fresh ids are distinct");
                        }
                    }
                }
            }
        }
        (h, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn c4() -> MultiGraph {
        graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    #[test]
    fn cut_size_examples() {
        let tri = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(tri.cut_size(&set(&[0])).unwrap(), 2);
        assert_eq!(tri.cut_size(&set(&[])).unwrap(), 0);
        assert_eq!(c4().cut_size(&set(&[0, 1])).unwrap(), 2);
        assert!(tri.cut_size(&set(&[7])).is_err());
    }

    #[test]
    fn edges_between_examples() {
        let g = c4();
        assert_eq!(g.edges_between(&set(&[0]), &set(&[2])).unwrap(), 0);
        assert_eq!(g.edges_between(&set(&[0]), &set(&[1, 3])).unwrap(), 2);
        let d = graph(2, &[(0, 1), (0, 1)]);
        assert_eq!(d.edges_between(&set(&[0]), &set(&[1])).unwrap(), 2);
        assert!(g.edges_between(&set(&[0, 1]), &set(&[1])).is_err());
    }

    #[test]
    fn merge_examples() {
        let mut tri = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let z = tri.merge_set(&set(&[0, 1])).unwrap();
        assert_eq!(tri.multiplicity(z, VertexId(2)), 2);
        assert_eq!(tri.edge_count(), 2);
        assert_eq!(tri.vertex_count(), 2);

        let mut g = c4();
        let z = g.merge_set(&set(&[2])).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degree(z), 2);

        let mut g = c4();
        let z = g.merge_set(&set(&[0, 2])).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.cut_size(&VertexSet::from([z])).unwrap(), 4);
        assert!(g.merge_set(&VertexSet::new()).is_err());
    }

    #[test]
    fn mutators_round_trip() {
        let mut g = graph(2, &[(0, 1), (0, 1)]);
        g.remove_edge(VertexId(0), VertexId(1)).unwrap();
        assert_eq!(g.multiplicity(VertexId(0), VertexId(1)), 1);

        let mut g = graph(3, &[(0, 1)]);
        g.remove_vertex(VertexId(2)).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));

        let mut g = c4();
        let before: Vec<_> = g.edges().collect();
        g.add_edge(VertexId(0), VertexId(2), Provenance::Original(9)).unwrap();
        g.remove_edge(VertexId(0), VertexId(2)).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), before);
        assert!(g.remove_edge(VertexId(0), VertexId(2)).is_err());
        assert!(g.add_edge(VertexId(1), VertexId(1), Provenance::Original(0)).is_err());
    }

    #[test]
    fn merge_keeps_provenance() {
        let mut g = graph(3, &[(0, 2), (1, 2)]);
        let z = g.merge_set(&set(&[0, 1])).unwrap();
        let mut provs: Vec<_> = g.edges().map(|(_, _, p)| p).collect();
        provs.sort();
        assert_eq!(provs, vec![Provenance::Original(0), Provenance::Original(1)]);
        assert_eq!(g.multiplicity(VertexId(2), z), 2);
    }

    #[test]
    fn coloring() {
        assert!(c4().is_bipartite());
        assert!(!graph(3, &[(0, 1), (1, 2), (2, 0)]).is_bipartite());
    }
}
