//! Minimum-cost maximal extensions of partial terminal separations.
//!
//! Every vertex v gets two nodes v⁺ ("v in A") and v⁻ ("v in B"); an edge uv
//! becomes unit arcs u⁺v⁺ and u⁻v⁻, and a pair {s,t} shares nodes s⁺ = t⁻ and
//! s⁻ = t⁺. A source side S that never holds both v⁺ and v⁻ encodes a labelling
//! whose cost is half the cut value. Minimum cuts form a lattice closed under
//! the mirror map, so the minimal one is always a valid labelling and can be
//! grown greedily through the residual graph.

use crate::error::{Error, Result};
use crate::flow::{Extremal, FlowNetwork};
use crate::multigraph::{MultiGraph, VertexId, VertexSet};
use crate::termsep::{Side, TermSepInstance, TerminalSeparation};

/// A solved doubled network for one seed.
#[derive(Clone, Debug)]
pub struct Relaxation {
    net: FlowNetwork,
    verts: Vec<VertexId>,
    plus: Vec<usize>,
    minus: Vec<usize>,
    mirror: Vec<usize>,
    min_side: Vec<bool>,
    side: Vec<bool>,
    cost2: u64,
}

impl Relaxation {
    pub fn solve(inst: &TermSepInstance, seed: &TerminalSeparation) -> Result<Self> {
        inst.check_separation(seed)?;
        if !seed.extends(&inst.base) {
            return Err(Error::InvalidSeparation("seed does not extend the base separation".into()));
        }
        let g = &inst.graph;
        let verts: Vec<VertexId> = g.vertices().collect();
        let bound = g.id_bound();
        let mut plus = vec![usize::MAX; bound];
        let mut minus = vec![usize::MAX; bound];
        let mut mirror = Vec::new();
        let fresh = |mirror: &mut Vec<usize>| {
            let a = mirror.len();
            mirror.push(a + 1);
            mirror.push(a);
            (a, a + 1)
        };
        let (src, snk) = fresh(&mut mirror);
        for (_, p) in inst.pairs() {
            let (n1, n2) = fresh(&mut mirror);
            plus[p.s.index()] = n1;
            minus[p.t.index()] = n1;
            minus[p.s.index()] = n2;
            plus[p.t.index()] = n2;
        }
        for &v in &verts {
            if plus[v.index()] == usize::MAX {
                let (a, b) = fresh(&mut mirror);
                plus[v.index()] = a;
                minus[v.index()] = b;
            }
        }
        let mut net = FlowNetwork::new(mirror.len(), src, snk);
        for (u, v, _) in g.edges() {
            net.add_undirected(plus[u.index()], plus[v.index()], 1);
            net.add_undirected(minus[u.index()], minus[v.index()], 1);
        }
        let limit = 2 * g.edge_count() as u64;
        let inf = u32::try_from(limit + 1).unwrap_or(u32::MAX);
        for v in &seed.a {
            net.add_arc(src, plus[v.index()], inf);
            net.add_arc(minus[v.index()], snk, inf);
        }
        for v in &seed.b {
            net.add_arc(src, minus[v.index()], inf);
            net.add_arc(plus[v.index()], snk, inf);
        }
        let cost2 = match net.max_flow_bounded(limit) {
            crate::flow::FlowOutcome::Value(v) => v,
            crate::flow::FlowOutcome::Exceeded => {
                return Err(Error::InvalidSeparation("seed forces a vertex onto both sides".into()))
            }
        };
        let min_side = net.source_side(Extremal::Min)?;
        let mut r = Relaxation { net, verts, plus, minus, mirror, min_side: min_side.clone(), side: min_side, cost2 };
        r.grow();
        Ok(r)
    }

    /// Closure of `node` on top of `base`, if it yields another valid minimum cut.
    fn closure(&self, base: &[bool], node: usize) -> Option<Vec<usize>> {
        if base[node] {
            return Some(Vec::new());
        }
        let reach = self.net.residual_reach(node, base);
        let mut fresh = vec![false; base.len()];
        for &x in &reach {
            fresh[x] = true;
        }
        if fresh[self.net.sink()] {
            return None;
        }
        for &x in &reach {
            let m = self.mirror[x];
            if base[m] || fresh[m] {
                return None;
            }
        }
        Some(reach)
    }

    fn grow(&mut self) {
        for i in 0..self.verts.len() {
            let v = self.verts[i];
            for node in [self.plus[v.index()], self.minus[v.index()]] {
                if let Some(add) = self.closure(&self.side, node) {
                    for x in add {
                        self.side[x] = true;
                    }
                }
            }
        }
    }

    /// 2·cost of every minimum-cost extension.
    pub fn cost2(&self) -> u64 {
        self.cost2
    }

    /// The maximal minimum-cost extension found.
    pub fn separation(&self) -> TerminalSeparation {
        let mut sep = TerminalSeparation::default();
        for &v in &self.verts {
            if self.side[self.plus[v.index()]] {
                sep.a.insert(v);
            } else if self.side[self.minus[v.index()]] {
                sep.b.insert(v);
            }
        }
        sep
    }

    /// Whether some minimum-cost extension of the seed puts `v` on `side`.
    pub fn can_assign(&self, v: VertexId, side: Side) -> bool {
        let node = match side {
            Side::A => self.plus[v.index()],
            Side::B => self.minus[v.index()],
        };
        self.closure(&self.min_side, node).is_some()
    }
}

/// A minimum-cost extension of `seed` that no equal-cost extension strictly contains.
pub fn min_cost_extension(inst: &TermSepInstance, seed: &TerminalSeparation) -> Result<TerminalSeparation> {
    Ok(Relaxation::solve(inst, seed)?.separation())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalized {
    Done,
    NoSolution,
}

/// Replaces (A°, B°) by its maximal minimum-cost extension.
pub fn normalize(inst: &mut TermSepInstance) -> Result<Normalized> {
    let sep = min_cost_extension(inst, &inst.base)?;
    inst.base = sep;
    if inst.nu2() < 0 {
        return Ok(Normalized::NoSolution);
    }
    Ok(Normalized::Done)
}

/// Statistics of a tentative branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub separation: TerminalSeparation,
    /// Pairs resolved by the extension but not by (A°, B°).
    pub resolved: usize,
    /// 2·(cost of the extension − cost(A°, B°)).
    pub cost_delta2: i64,
    pub rho: usize,
}

pub fn probe_branch(inst: &TermSepInstance, seed: &TerminalSeparation) -> Result<ProbeReport> {
    let r = Relaxation::solve(inst, seed)?;
    let sep = r.separation();
    let resolved = inst
        .pairs()
        .filter(|(_, p)| !inst.is_resolved(p) && sep.contains(p.s))
        .count();
    Ok(ProbeReport {
        resolved,
        cost_delta2: r.cost2() as i64 - inst.cost2() as i64,
        rho: rho(&inst.graph, &sep)?,
        separation: sep,
    })
}

/// Boundary reductions immediately available once `sep` is fixed.
pub fn rho(g: &MultiGraph, sep: &TerminalSeparation) -> Result<usize> {
    let mut total = g.edges_between(&sep.a, &sep.b)?;
    for v in g.vertices().filter(|v| !sep.contains(*v)) {
        total += g.edges_to(v, &sep.a).min(g.edges_to(v, &sep.b));
    }
    Ok(total)
}

/// Cost of the cheapest extension of `seed`, doubled.
pub fn min_cost2(inst: &TermSepInstance, seed: &TerminalSeparation) -> Result<u64> {
    Ok(Relaxation::solve(inst, seed)?.cost2())
}

/// Vertices with the given label set, for building seeds.
pub fn seed_with(inst: &TermSepInstance, side: Side, near: &[VertexId], far: &[VertexId]) -> TerminalSeparation {
    let mut sep = inst.base.clone();
    sep.side_mut(side).extend(near.iter().copied());
    sep.side_mut(side.other()).extend(far.iter().copied());
    sep
}

pub fn set_of(vs: &[VertexId]) -> VertexSet {
    vs.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::Provenance;

    fn inst(n: usize, edges: &[(u32, u32)], pairs: &[(u32, u32)]) -> TermSepInstance {
        let mut g = MultiGraph::with_vertices(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            g.add_edge(VertexId(u), VertexId(v), Provenance::Original(i)).unwrap();
        }
        let pairs = pairs.iter().map(|&(s, t)| (VertexId(s), VertexId(t))).collect();
        TermSepInstance::new(g, pairs, VertexSet::new(), VertexSet::new(), 5).unwrap()
    }

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn shared_neighbor_stays_open() {
        // s=0, t=1, u=2
        let i = inst(3, &[(0, 2), (1, 2)], &[(0, 1)]);
        let r = Relaxation::solve(&i, &i.base).unwrap();
        assert_eq!(r.cost2(), 0);
        assert_eq!(r.separation(), TerminalSeparation::default());
    }

    #[test]
    fn seeded_pair_costs_one() {
        // s=0, t=1, u=2, w=3 ; s-u, t-w, u-w
        let i = inst(4, &[(0, 2), (1, 3), (2, 3)], &[(0, 1)]);
        let seed = seed_with(&i, Side::A, &[v(0)], &[v(1)]);
        let r = Relaxation::solve(&i, &seed).unwrap();
        assert_eq!(r.cost2(), 2);
        let sep = r.separation();
        assert!(sep.extends(&seed));
        assert_eq!(sep.a.len() + sep.b.len(), 4);
        assert_eq!(sep.cost2(&i.graph).unwrap(), 2);
    }

    #[test]
    fn integral_seed_is_fixed_point() {
        let i = inst(4, &[(0, 2), (1, 3), (2, 3)], &[(0, 1)]);
        let seed = TerminalSeparation::new(set_of(&[v(0), v(2)]), set_of(&[v(1), v(3)]));
        assert_eq!(min_cost_extension(&i, &seed).unwrap(), seed);
    }

    #[test]
    fn pendant_joins_its_side() {
        let mut i = inst(3, &[(0, 1), (1, 2)], &[]);
        i.base.a.insert(v(0));
        i.base.b.insert(v(2));
        let mut j = inst(2, &[(0, 1)], &[]);
        j.base.a.insert(v(0));
        assert_eq!(normalize(&mut j).unwrap(), Normalized::Done);
        assert!(j.base.a.contains(&v(1)));
        // either side is fine for the middle vertex, but it must be decided
        normalize(&mut i).unwrap();
        assert!(i.base.contains(v(1)));
    }

    #[test]
    fn rejects_broken_seed() {
        let i = inst(3, &[(0, 2), (1, 2)], &[(0, 1)]);
        let seed = TerminalSeparation::new(set_of(&[v(0), v(1)]), VertexSet::new());
        assert!(min_cost_extension(&i, &seed).is_err());
    }

    #[test]
    fn rho_counts_boundary_contacts() {
        // v=0 with two edges to a=1 and one to b=2, plus an a-b edge
        let i = inst(3, &[(0, 1), (0, 1), (0, 2), (1, 2)], &[]);
        let sep = TerminalSeparation::new(set_of(&[v(1)]), set_of(&[v(2)]));
        assert_eq!(rho(&i.graph, &sep).unwrap(), 2);
        let j = inst(4, &[(0, 2), (1, 3)], &[(0, 1)]);
        let p = probe_branch(&j, &seed_with(&j, Side::A, &[v(0)], &[v(1)])).unwrap();
        assert_eq!((p.resolved, p.rho), (1, 0));
    }
}
