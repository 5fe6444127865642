//! Terminal separation instances and the undo log that lifts their solutions.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::multigraph::{MultiGraph, VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

pub type PairId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TerminalPair {
    pub s: VertexId,
    pub t: VertexId,
}

impl TerminalPair {
    pub fn partner(&self, v: VertexId) -> Option<VertexId> {
        if v == self.s {
            Some(self.t)
        } else if v == self.t {
            Some(self.s)
        } else {
            None
        }
    }
}

/// A disjoint pair (A, B) respecting the pair discipline.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TerminalSeparation {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl TerminalSeparation {
    pub fn new(a: VertexSet, b: VertexSet) -> Self {
        TerminalSeparation { a, b }
    }

    pub fn side(&self, side: Side) -> &VertexSet {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    pub fn side_mut(&mut self, side: Side) -> &mut VertexSet {
        match side {
            Side::A => &mut self.a,
            Side::B => &mut self.b,
        }
    }

    pub fn label(&self, v: VertexId) -> Option<Side> {
        if self.a.contains(&v) {
            Some(Side::A)
        } else if self.b.contains(&v) {
            Some(Side::B)
        } else {
            None
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.a.contains(&v) || self.b.contains(&v)
    }

    pub fn extends(&self, other: &TerminalSeparation) -> bool {
        other.a.is_subset(&self.a) && other.b.is_subset(&self.b)
    }

    /// 2·cost = d(A) + d(B).
    pub fn cost2(&self, g: &MultiGraph) -> Result<u64> {
        Ok((g.cut_size(&self.a)? + g.cut_size(&self.b)?) as u64)
    }

    /// Separation with `near` on side `o` and `far` on the other side.
    pub fn oriented(o: Side, near: VertexSet, far: VertexSet) -> Self {
        match o {
            Side::A => TerminalSeparation::new(near, far),
            Side::B => TerminalSeparation::new(far, near),
        }
    }
}

/// How to recover labels of vertices that a reduction removed.
#[derive(Clone, Debug)]
pub enum Undo {
    Merge { members: Vec<VertexId>, into: VertexId },
    /// Every vertex takes the label of `anchor`, or A without one.
    Follow { vertices: Vec<VertexId>, anchor: Option<VertexId> },
    /// `vertex` takes the label opposite to `of`.
    Opposite { vertex: VertexId, of: VertexId },
    Fixed { vertex: VertexId, side: Side },
    /// Vertices removed between `u` and `v`; `near_u` sits on u's side of a
    /// minimum u–v cut through them.
    Bypass { u: VertexId, v: VertexId, near_u: Vec<VertexId>, near_v: Vec<VertexId> },
}

#[derive(Debug)]
struct LogNode {
    undo: Undo,
    prev: Option<Arc<LogNode>>,
}

/// Persistent undo list; clones share history.
#[derive(Clone, Debug, Default)]
pub struct UndoLog {
    head: Option<Arc<LogNode>>,
}

impl UndoLog {
    pub fn push(&mut self, undo: Undo) {
        let prev = self.head.take();
        self.head = Some(Arc::new(LogNode { undo, prev }));
    }

    /// Records several undos; they are replayed in the given order.
    pub fn push_group(&mut self, undos: Vec<Undo>) {
        for u in undos.into_iter().rev() {
            self.push(u);
        }
    }

    /// Extends `labels` (known for the current vertices) to every vertex that
    /// existed when the log was empty.
    pub fn replay(&self, labels: &mut HashMap<VertexId, Side>) -> Result<()> {
        let get = |labels: &HashMap<VertexId, Side>, v: VertexId| {
            labels
                .get(&v)
                .copied()
                .ok_or_else(|| Error::InvalidSeparation(format!("no label for {v} during lifting")))
        };
        let mut node = self.head.as_deref();
        while let Some(n) = node {
            match &n.undo {
                Undo::Merge { members, into } => {
                    let s = get(labels, *into)?;
                    for m in members {
                        labels.insert(*m, s);
                    }
                }
                Undo::Follow { vertices, anchor } => {
                    let s = match anchor {
                        Some(a) => get(labels, *a)?,
                        None => Side::A,
                    };
                    for v in vertices {
                        labels.insert(*v, s);
                    }
                }
                Undo::Opposite { vertex, of } => {
                    let s = get(labels, *of)?.other();
                    labels.insert(*vertex, s);
                }
                Undo::Fixed { vertex, side } => {
                    labels.insert(*vertex, *side);
                }
                Undo::Bypass { u, v, near_u, near_v } => {
                    let su = get(labels, *u)?;
                    let sv = get(labels, *v)?;
                    for w in near_u {
                        labels.insert(*w, su);
                    }
                    for w in near_v {
                        labels.insert(*w, if su == sv { su } else { sv });
                    }
                }
            }
            node = n.prev.as_deref();
        }
        Ok(())
    }
}

/// (G, pairs, (A°, B°), k).
#[derive(Clone, Debug)]
pub struct TermSepInstance {
    pub graph: MultiGraph,
    pairs: BTreeMap<PairId, TerminalPair>,
    terminal_of: BTreeMap<VertexId, PairId>,
    pub base: TerminalSeparation,
    pub k: i64,
    pub log: UndoLog,
}

impl TermSepInstance {
    pub fn new(graph: MultiGraph, pairs: Vec<(VertexId, VertexId)>, a0: VertexSet, b0: VertexSet, k: i64) -> Result<Self> {
        let mut inst = TermSepInstance {
            graph,
            pairs: BTreeMap::new(),
            terminal_of: BTreeMap::new(),
            base: TerminalSeparation::new(a0, b0),
            k,
            log: UndoLog::default(),
        };
        for (i, (s, t)) in pairs.into_iter().enumerate() {
            let (s, t) = if s <= t { (s, t) } else { (t, s) };
            for v in [s, t] {
                if !inst.graph.contains(v) {
                    return Err(Error::UnknownVertex(v));
                }
                if inst.terminal_of.insert(v, i).is_some() {
                    return Err(Error::InvalidInstance(format!("{v} belongs to two pairs")));
                }
            }
            if s == t {
                return Err(Error::InvalidInstance(format!("pair {s}/{t} repeats a vertex")));
            }
            inst.pairs.insert(i, TerminalPair { s, t });
        }
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        for &v in self.terminal_of.keys() {
            if self.graph.degree(v) > 1 {
                return Err(Error::InvalidInstance(format!("terminal {v} has degree {}", self.graph.degree(v))));
            }
        }
        self.check_separation(&self.base)
    }

    /// Disjointness, membership and pair discipline.
    pub fn check_separation(&self, sep: &TerminalSeparation) -> Result<()> {
        for v in sep.a.iter().chain(&sep.b) {
            if !self.graph.contains(*v) {
                return Err(Error::UnknownVertex(*v));
            }
        }
        if sep.a.iter().any(|v| sep.b.contains(v)) {
            return Err(Error::InvalidSeparation("A and B overlap".into()));
        }
        for p in self.pairs.values() {
            match (sep.label(p.s), sep.label(p.t)) {
                (None, None) => {}
                (Some(x), Some(y)) if x != y => {}
                _ => {
                    return Err(Error::InvalidSeparation(format!("pair {}/{} is neither split nor untouched", p.s, p.t)))
                }
            }
        }
        Ok(())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (PairId, TerminalPair)> + '_ {
        self.pairs.iter().map(|(i, p)| (*i, *p))
    }

    pub fn pair(&self, id: PairId) -> Option<TerminalPair> {
        self.pairs.get(&id).copied()
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_resolved(&self, p: &TerminalPair) -> bool {
        self.base.contains(p.s)
    }

    pub fn unresolved_pairs(&self) -> Vec<(PairId, TerminalPair)> {
        self.pairs().filter(|(_, p)| !self.is_resolved(p)).collect()
    }

    /// t_I.
    pub fn unresolved_count(&self) -> usize {
        self.pairs.values().filter(|p| !self.is_resolved(p)).count()
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.terminal_of.contains_key(&v)
    }

    pub fn is_unresolved_terminal(&self, v: VertexId) -> bool {
        self.is_terminal(v) && !self.base.contains(v)
    }

    pub fn pair_of(&self, v: VertexId) -> Option<PairId> {
        self.terminal_of.get(&v).copied()
    }

    pub fn partner(&self, v: VertexId) -> Option<VertexId> {
        self.pair_of(v).and_then(|i| self.pairs[&i].partner(v))
    }

    /// Unresolved terminals.
    pub fn open_terminals(&self) -> VertexSet {
        self.pairs
            .values()
            .filter(|p| !self.is_resolved(p))
            .flat_map(|p| [p.s, p.t])
            .collect()
    }

    /// All terminals, resolved or not.
    pub fn terminals(&self) -> VertexSet {
        self.terminal_of.keys().copied().collect()
    }

    /// The unique neighbour of a degree-one vertex.
    pub fn sole_neighbor(&self, v: VertexId) -> Option<VertexId> {
        let mut it = self.graph.neighbors(v);
        match (it.next(), it.next()) {
            (Some((w, 1)), None) => Some(w),
            _ => None,
        }
    }

    /// 2·cost(A°, B°).
    pub fn cost2(&self) -> u64 {
        self.base.cost2(&self.graph).expect("base separation references live vertices")
    }

    /// 2ν = 2k − 2·cost(A°, B°).
    pub fn nu2(&self) -> i64 {
        2 * self.k - self.cost2() as i64
    }

    pub fn is_integral(&self) -> bool {
        self.base.a.len() + self.base.b.len() == self.graph.vertex_count()
    }

    pub fn remove_pair(&mut self, id: PairId) -> Option<TerminalPair> {
        let p = self.pairs.remove(&id)?;
        self.terminal_of.remove(&p.s);
        self.terminal_of.remove(&p.t);
        Some(p)
    }

    /// Deletes a vertex everywhere it occurs. Its pair, if any, must already be gone.
    pub fn delete_vertex(&mut self, v: VertexId) -> Result<()> {
        debug_assert!(!self.is_terminal(v));
        self.graph.remove_vertex(v)?;
        self.base.a.remove(&v);
        self.base.b.remove(&v);
        Ok(())
    }

    /// Merges non-terminal vertices, keeping side membership. Mixing A° with
    /// B° is rejected.
    pub fn merge(&mut self, x: &VertexSet) -> Result<VertexId> {
        if let Some(v) = x.iter().find(|v| self.is_terminal(**v)) {
            return Err(Error::Precondition(format!("cannot merge terminal {v}")));
        }
        let in_a = x.iter().any(|v| self.base.a.contains(v));
        let in_b = x.iter().any(|v| self.base.b.contains(v));
        if in_a && in_b {
            return Err(Error::Precondition("merge would join A and B".into()));
        }
        let z = self.graph.merge_set(x)?;
        for v in x {
            self.base.a.remove(v);
            self.base.b.remove(v);
        }
        if in_a {
            self.base.a.insert(z);
        }
        if in_b {
            self.base.b.insert(z);
        }
        self.log.push(Undo::Merge { members: x.iter().copied().collect(), into: z });
        Ok(z)
    }

    /// Labels for every vertex of the instance this one was reduced from,
    /// given that (A°, B°) is integral here.
    pub fn lift_labels(&self) -> Result<HashMap<VertexId, Side>> {
        if !self.is_integral() {
            return Err(Error::InvalidSeparation("base separation is not integral".into()));
        }
        let mut labels: HashMap<VertexId, Side> = HashMap::new();
        for v in &self.base.a {
            labels.insert(*v, Side::A);
        }
        for v in &self.base.b {
            labels.insert(*v, Side::B);
        }
        self.log.replay(&mut labels)?;
        Ok(labels)
    }

    /// Builds an integral separation of this instance from labels, checking
    /// that every vertex is labelled.
    pub fn separation_from_labels(&self, labels: &HashMap<VertexId, Side>) -> Result<TerminalSeparation> {
        let mut sep = TerminalSeparation::default();
        for v in self.graph.vertices() {
            let s = labels
                .get(&v)
                .ok_or_else(|| Error::InvalidSeparation(format!("{v} left unlabelled")))?;
            sep.side_mut(*s).insert(v);
        }
        Ok(sep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::Provenance;

    #[test]
    fn rejects_bad_instances() {
        let mut g = MultiGraph::with_vertices(3);
        g.add_edge(VertexId(0), VertexId(1), Provenance::Original(0)).unwrap();
        g.add_edge(VertexId(0), VertexId(2), Provenance::Original(1)).unwrap();
        let p = vec![(VertexId(0), VertexId(1))];
        assert!(TermSepInstance::new(g.clone(), p.clone(), VertexSet::new(), VertexSet::new(), 1).is_err());
        let p = vec![(VertexId(1), VertexId(2))];
        let a: VertexSet = [VertexId(1)].into();
        assert!(TermSepInstance::new(g.clone(), p.clone(), a.clone(), VertexSet::new(), 1).is_err());
        let b: VertexSet = [VertexId(2)].into();
        assert!(TermSepInstance::new(g, p, a, b, 1).is_ok());
    }

    #[test]
    fn replay_follows_merges() {
        let mut g = MultiGraph::with_vertices(3);
        g.add_edge(VertexId(0), VertexId(1), Provenance::Original(0)).unwrap();
        g.add_edge(VertexId(1), VertexId(2), Provenance::Original(1)).unwrap();
        let mut inst = TermSepInstance::new(g, vec![], VertexSet::new(), VertexSet::new(), 0).unwrap();
        let z = inst.merge(&[VertexId(0), VertexId(1)].into()).unwrap();
        inst.log.push(Undo::Opposite { vertex: VertexId(2), of: z });
        inst.delete_vertex(VertexId(2)).unwrap();
        inst.base.b.insert(z);
        let labels = inst.lift_labels().unwrap();
        assert_eq!(labels[&VertexId(0)], Side::B);
        assert_eq!(labels[&VertexId(1)], Side::B);
        assert_eq!(labels[&VertexId(2)], Side::A);
    }
}
