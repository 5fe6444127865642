//! Low-excess extensions of one side of the base separation.
//!
//! For a side `o`, an extension is a set A with base(o) ⊆ A that avoids
//! base(o'); its excess is d(A) − d(base(o)).

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::flow::max_min_cut;
use crate::multigraph::{VertexId, VertexSet};
use crate::termsep::{Side, TermSepInstance};

/// Excess of `a` relative to the base set of `side`.
pub fn excess(inst: &TermSepInstance, a: &VertexSet, side: Side) -> Result<i64> {
    let base = inst.base.side(side);
    if !base.is_subset(a) {
        return Err(Error::Precondition("set does not contain the base side".into()));
    }
    if a.iter().any(|v| inst.base.side(side.other()).contains(v)) {
        return Err(Error::Precondition("set meets the opposite base side".into()));
    }
    Ok(inst.graph.cut_size(a)? as i64 - inst.graph.cut_size(base)? as i64)
}

/// Everything an extension of `side` must avoid: the opposite base side and
/// every terminal not already on `side`.
pub fn extension_sinks(inst: &TermSepInstance, side: Side) -> VertexSet {
    let mut sinks = inst.base.side(side.other()).clone();
    sinks.extend(inst.terminals().into_iter().filter(|v| !inst.base.side(side).contains(v)));
    sinks
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactExtension {
    pub vertices: VertexSet,
    pub excess: i64,
}

impl CompactExtension {
    /// The part outside the base side.
    pub fn added(&self, inst: &TermSepInstance, side: Side) -> VertexSet {
        self.vertices.difference(inst.base.side(side)).copied().collect()
    }
}

pub fn is_compact(inst: &TermSepInstance, a: &VertexSet, side: Side) -> bool {
    let base = inst.base.side(side);
    let added: VertexSet = a.difference(base).copied().collect();
    !added.is_empty()
        && inst.graph.is_connected_set(&added)
        && added.iter().any(|v| inst.graph.edges_to(*v, base) > 0)
}

/// Terminal-free compact extensions of excess at most `r` that no compact
/// strict superset of excess at most `r` contains, found by repeatedly
/// growing along maximal minimum cuts.
pub fn enumerate_compact_extensions(inst: &TermSepInstance, r: i64, side: Side) -> Result<Vec<CompactExtension>> {
    let g = &inst.graph;
    let base = inst.base.side(side).clone();
    let sinks = extension_sinks(inst, side);
    let d0 = g.cut_size(&base)? as i64;
    let bound = (d0 + r).max(0) as u64;
    let mut seen: BTreeSet<VertexSet> = BTreeSet::from([base.clone()]);
    let mut queue = VecDeque::from([base.clone()]);
    let mut out = Vec::new();
    while let Some(a) = queue.pop_front() {
        let mut grew = false;
        for v in g.boundary_of(&a) {
            if sinks.contains(&v) {
                continue;
            }
            let mut src = a.clone();
            src.insert(v);
            let Some((value, side_set)) = max_min_cut(g, &src, &sinks, bound)? else {
                continue;
            };
            if value > bound {
                continue;
            }
            grew = true;
            if seen.insert(side_set.clone()) {
                queue.push_back(side_set);
            }
        }
        if !grew && a != base && is_compact(inst, &a, side) {
            let excess = g.cut_size(&a)? as i64 - d0;
            out.push(CompactExtension { vertices: a, excess });
        }
    }
    Ok(out)
}

/// Split of an excess-2 extension into an optional heavy vertex `d` and
/// vertices `c_i` that have excess 1 on their own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcessDecomposition {
    pub side: Side,
    pub d_vertex: Option<VertexId>,
    pub c_vertices: Vec<VertexId>,
    /// Multiplicity of d–c_i.
    pub p: Vec<usize>,
    /// c_i has x_i + 1 edges leaving the extension.
    pub x: Vec<i64>,
    /// |E(d, base)| + Σ p_i, or 0 without d.
    pub sigma: usize,
    /// |E(d, base)|.
    pub d_to_base: usize,
}

impl ExcessDecomposition {
    pub fn r(&self) -> usize {
        self.c_vertices.len()
    }
}

/// Decomposes a terminal-free extension of excess exactly 2. Fails if the
/// heavy part has more than one vertex, which means the instance is not reduced.
pub fn decompose_excess2(inst: &TermSepInstance, a: &VertexSet, side: Side) -> Result<ExcessDecomposition> {
    let ex = excess(inst, a, side)?;
    if ex != 2 {
        return Err(Error::Precondition(format!("extension has excess {ex}, not 2")));
    }
    let g = &inst.graph;
    let base = inst.base.side(side);
    let d0 = g.cut_size(base)? as i64;
    let mut heavy = Vec::new();
    let mut light = Vec::new();
    for v in a.difference(base) {
        if inst.is_terminal(*v) {
            return Err(Error::Precondition(format!("extension contains terminal {v}")));
        }
        let mut one = base.clone();
        one.insert(*v);
        if g.cut_size(&one)? as i64 - d0 == 1 {
            light.push(*v);
        } else {
            heavy.push(*v);
        }
    }
    if heavy.len() > 1 {
        return Err(Error::Precondition(format!("heavy part has {} vertices", heavy.len())));
    }
    let d = heavy.first().copied();
    let p: Vec<usize> = light.iter().map(|c| d.map_or(0, |d| g.multiplicity(d, *c))).collect();
    let x: Vec<i64> = light
        .iter()
        .map(|c| g.neighbors(*c).filter(|(w, _)| !a.contains(w)).map(|(_, m)| m).sum::<usize>() as i64 - 1)
        .collect();
    let d_to_base = d.map_or(0, |d| g.edges_to(d, base));
    let sigma = if d.is_some() { d_to_base + p.iter().sum::<usize>() } else { 0 };
    Ok(ExcessDecomposition { side, d_vertex: d, c_vertices: light, p, x, sigma, d_to_base })
}

/// The two shapes in which putting d on the far side triggers exactly one
/// boundary reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaShape {
    /// Only d; degree four with one edge to the base.
    LoneHeavy,
    /// d and one c joined by a single edge, d without base edges.
    HeavyWithOne,
}

/// σ and, when σ = 1, which of the two shapes occurs.
pub fn sigma_b_side(dec: &ExcessDecomposition) -> Result<(usize, Option<SigmaShape>)> {
    if dec.d_vertex.is_none() {
        return Err(Error::Precondition("decomposition has no heavy vertex".into()));
    }
    let shape = match (dec.sigma, dec.r()) {
        (1, 0) => Some(SigmaShape::LoneHeavy),
        (1, 1) if dec.p[0] == 1 && dec.d_to_base == 0 => Some(SigmaShape::HeavyWithOne),
        _ => None,
    };
    Ok((dec.sigma, shape))
}
