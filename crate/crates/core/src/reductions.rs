//! Reduction rules for terminal separation instances and their fixpoint driver.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::excess::{enumerate_compact_extensions, excess};
use crate::flow::max_min_cut;
use crate::multigraph::{Provenance, Transform, VertexId, VertexSet};
use crate::relaxation::{normalize, Normalized};
use crate::termsep::{Side, TermSepInstance, TerminalSeparation, Undo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Terminator,
    Boundary,
    Pendant,
    LonelyTerminal,
    AdjacentTerminals,
    CommonNeighbor,
    MajorityNeighbour,
    Excess1,
    Excess2,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::Terminator,
        Rule::Boundary,
        Rule::Pendant,
        Rule::LonelyTerminal,
        Rule::AdjacentTerminals,
        Rule::CommonNeighbor,
        Rule::MajorityNeighbour,
        Rule::Excess1,
        Rule::Excess2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Terminator => "terminator",
            Rule::Boundary => "boundary",
            Rule::Pendant => "pendant",
            Rule::LonelyTerminal => "lonely_terminal",
            Rule::AdjacentTerminals => "adjacent_terminals",
            Rule::CommonNeighbor => "common_neighbor",
            Rule::MajorityNeighbour => "majority_neighbour",
            Rule::Excess1 => "excess1",
            Rule::Excess2 => "excess2",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionOutcome {
    NoSolution,
    Solved(TerminalSeparation),
    Applied { rule: Rule, dk: i64, dpairs: i64 },
    NotApplicable,
}

/// One applied rule, measured after re-normalisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionEvent {
    pub rule: Rule,
    pub dk: i64,
    pub dv: i64,
    pub dpairs: i64,
    pub dcost2: i64,
}

#[derive(Clone, Debug, Default)]
pub struct ReductionLog {
    pub counts: BTreeMap<Rule, u64>,
    pub events: Vec<ReductionEvent>,
    pub keep_events: bool,
}

impl ReductionLog {
    pub fn recording() -> Self {
        ReductionLog { keep_events: true, ..Default::default() }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn absorb(&mut self, other: &ReductionLog) {
        for (r, c) in &other.counts {
            *self.counts.entry(*r).or_default() += c;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    /// Reduced and maximal, with at least one unresolved pair.
    Open,
    Solved(TerminalSeparation),
    NoSolution,
}

fn applied(rule: Rule, dk: i64, dpairs: i64) -> ReductionOutcome {
    ReductionOutcome::Applied { rule, dk, dpairs }
}

fn measure(inst: &TermSepInstance) -> i64 {
    inst.k + inst.pair_count() as i64 + inst.graph.vertex_count() as i64
}

fn is_free(inst: &TermSepInstance, v: VertexId) -> bool {
    !inst.base.contains(v) && !inst.is_terminal(v)
}

pub fn terminator(inst: &TermSepInstance) -> Result<ReductionOutcome> {
    if inst.k < 0 || inst.nu2() < 0 {
        return Ok(ReductionOutcome::NoSolution);
    }
    if inst.is_integral() {
        return Ok(ReductionOutcome::Solved(inst.base.clone()));
    }
    Ok(ReductionOutcome::NotApplicable)
}

pub fn boundary(inst: &mut TermSepInstance) -> Result<ReductionOutcome> {
    let g = &inst.graph;
    let direct = inst
        .base
        .a
        .iter()
        .find_map(|&a| g.neighbors(a).find(|(w, _)| inst.base.b.contains(w)).map(|(w, _)| (a, w)));
    if let Some((a, b)) = direct {
        inst.graph.remove_edge(a, b)?;
        inst.k -= 1;
        return Ok(applied(Rule::Boundary, -1, 0));
    }
    let straddle = g.vertices().find_map(|v| {
        if inst.base.contains(v) {
            return None;
        }
        let a = g.neighbors(v).find(|(w, _)| inst.base.a.contains(w))?.0;
        let b = g.neighbors(v).find(|(w, _)| inst.base.b.contains(w))?.0;
        Some((v, a, b))
    });
    if let Some((v, a, b)) = straddle {
        inst.graph.remove_edge(v, a)?;
        inst.graph.remove_edge(v, b)?;
        inst.k -= 1;
        return Ok(applied(Rule::Boundary, -1, 0));
    }
    Ok(ReductionOutcome::NotApplicable)
}

enum PendantPlan {
    Delete { x: VertexSet, anchor: Option<VertexId> },
    Bypass { x: VertexSet, u: VertexId, v: VertexId, near_u: VertexSet, lambda: usize },
    Merge(VertexSet),
    Infeasible,
}

/// Decides what to do with a free set `x` whose neighbourhood has at most two
/// vertices; `None` when the rule must leave it alone.
fn pendant_plan(inst: &TermSepInstance, x: VertexSet) -> Result<Option<PendantPlan>> {
    let g = &inst.graph;
    let n: Vec<VertexId> = g.boundary_of(&x).into_iter().collect();
    match n[..] {
        [] => Ok(Some(PendantPlan::Delete { x, anchor: None })),
        [w] => Ok(Some(PendantPlan::Delete { x, anchor: Some(w) })),
        [u, v] => {
            let mut span = x.clone();
            span.insert(u);
            span.insert(v);
            let (mut h, map) = g.induced(&span);
            let (hu, hv) = (map[&u], map[&v]);
            while h.multiplicity(hu, hv) > 0 {
                h.remove_edge(hu, hv)?;
            }
            let r_max = (inst.k + 1).max(0) as u64;
            let cut = max_min_cut(&h, &[hu].into(), &[hv].into(), r_max)?;
            let direct = g.multiplicity(u, v) as u64;
            if let Some((lambda, side)) = cut.filter(|(l, _)| l + direct <= inst.k.max(0) as u64) {
                let back: BTreeMap<VertexId, VertexId> = map.iter().map(|(a, b)| (*b, *a)).collect();
                let near_u = side.iter().map(|h| back[h]).filter(|w| x.contains(w)).collect();
                return Ok(Some(PendantPlan::Bypass { x, u, v, near_u, lambda: lambda as usize }));
            }
            if inst.is_terminal(u) || inst.is_terminal(v) {
                return Ok(None);
            }
            let (lu, lv) = (inst.base.label(u), inst.base.label(v));
            if lu.is_some() && lv.is_some() && lu != lv {
                return Ok(Some(PendantPlan::Infeasible));
            }
            Ok(Some(PendantPlan::Merge(span)))
        }
        _ => Ok(None),
    }
}

/// Components and separated pieces of G − u, reported as free sets whose
/// neighbourhood lies in {u, v} for some v. Calls `f` until it returns `Some`.
fn scan_without<T>(
    inst: &TermSepInstance,
    u: Option<VertexId>,
    two_sided: bool,
    f: &mut dyn FnMut(VertexSet) -> Result<Option<T>>,
) -> Result<Option<T>> {
    let g = &inst.graph;
    let bound = g.id_bound();
    let mut disc = vec![0usize; bound];
    let mut low = vec![0usize; bound];
    let mut parent = vec![None::<VertexId>; bound];
    let mut size = vec![0usize; bound];
    let mut nonfree = vec![0usize; bound];
    let mut time = 0;
    let roots: Vec<VertexId> = g.vertices().filter(|v| Some(*v) != u).collect();
    for &root in &roots {
        if disc[root.index()] != 0 {
            continue;
        }
        let mut order: Vec<VertexId> = Vec::new();
        let mut stack: Vec<(VertexId, Vec<VertexId>)> = Vec::new();
        let push = |v: VertexId, time: &mut usize, disc: &mut Vec<usize>, low: &mut Vec<usize>| {
            *time += 1;
            disc[v.index()] = *time;
            low[v.index()] = *time;
            let mut nb: Vec<VertexId> = g.neighbors(v).map(|(w, _)| w).filter(|w| Some(*w) != u).collect();
            nb.reverse();
            (v, nb)
        };
        stack.push(push(root, &mut time, &mut disc, &mut low));
        order.push(root);
        while let Some((v, nb)) = stack.last_mut() {
            let v = *v;
            if let Some(w) = nb.pop() {
                if disc[w.index()] == 0 {
                    parent[w.index()] = Some(v);
                    order.push(w);
                    stack.push(push(w, &mut time, &mut disc, &mut low));
                } else if parent[v.index()] != Some(w) || g.multiplicity(v, w) > 1 {
                    low[v.index()] = low[v.index()].min(disc[w.index()]);
                }
            } else {
                stack.pop();
                size[v.index()] += 1;
                nonfree[v.index()] += usize::from(!is_free(inst, v));
                if let Some(p) = parent[v.index()] {
                    low[p.index()] = low[p.index()].min(low[v.index()]);
                    size[p.index()] += size[v.index()];
                    nonfree[p.index()] += nonfree[v.index()];
                }
            }
        }
        let comp_nonfree = nonfree[root.index()];
        if !two_sided {
            if comp_nonfree == 0 {
                if let Some(r) = f(order.iter().copied().collect())? {
                    return Ok(Some(r));
                }
            }
            continue;
        }
        let pos: BTreeMap<VertexId, usize> = order.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        if comp_nonfree == 1 && order.len() > 1 {
            let rest: VertexSet = order.iter().copied().filter(|v| is_free(inst, *v)).collect();
            if let Some(r) = f(rest)? {
                return Ok(Some(r));
            }
        }
        for &c in order.iter().skip(1) {
            let p = parent[c.index()].unwrap();
            if low[c.index()] < disc[p.index()] {
                continue;
            }
            let i = pos[&c];
            let sub = &order[i..i + size[c.index()]];
            if nonfree[c.index()] == 0 {
                if let Some(r) = f(sub.iter().copied().collect())? {
                    return Ok(Some(r));
                }
            }
            let p_nonfree = usize::from(!is_free(inst, p));
            if comp_nonfree - nonfree[c.index()] - p_nonfree == 0 && order.len() > sub.len() + 1 {
                let sub_set: VertexSet = sub.iter().copied().collect();
                let rest: VertexSet = order.iter().copied().filter(|w| *w != p && !sub_set.contains(w)).collect();
                if let Some(r) = f(rest)? {
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(None)
}

pub fn pendant(inst: &mut TermSepInstance) -> Result<ReductionOutcome> {
    let plan = find_pendant(inst)?;
    let Some(plan) = plan else {
        return Ok(ReductionOutcome::NotApplicable);
    };
    match plan {
        PendantPlan::Delete { x, anchor } => {
            inst.log.push(Undo::Follow { vertices: x.iter().copied().collect(), anchor });
            for v in x {
                inst.delete_vertex(v)?;
            }
        }
        PendantPlan::Bypass { x, u, v, near_u, lambda } => {
            let near_v = x.difference(&near_u).copied().collect();
            inst.log.push(Undo::Bypass { u, v, near_u: near_u.into_iter().collect(), near_v });
            for w in x {
                inst.delete_vertex(w)?;
            }
            for _ in 0..lambda {
                inst.graph.add_edge(u, v, Provenance::Synthetic(Transform::PendantBypass))?;
            }
        }
        PendantPlan::Merge(span) => {
            inst.merge(&span)?;
        }
        PendantPlan::Infeasible => return Ok(ReductionOutcome::NoSolution),
    }
    Ok(applied(Rule::Pendant, 0, 0))
}

fn find_pendant(inst: &TermSepInstance) -> Result<Option<PendantPlan>> {
    let verts: Vec<Option<VertexId>> = std::iter::once(None).chain(inst.graph.vertices().map(Some)).collect();
    let mut plan = |x: VertexSet| pendant_plan(inst, x);
    for &u in &verts {
        if let Some(p) = scan_without(inst, u, false, &mut plan)? {
            return Ok(Some(p));
        }
    }
    for &u in &verts[1..] {
        if let Some(p) = scan_without(inst, u, true, &mut plan)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

pub fn lonely_terminal(inst: &mut TermSepInstance) -> Result<ReductionOutcome> {
    let found = inst.unresolved_pairs().into_iter().find_map(|(id, p)| {
        [(p.s, p.t), (p.t, p.s)].into_iter().find(|(iso, _)| inst.graph.degree(*iso) == 0).map(|(iso, other)| (id, iso, other))
    });
    let Some((id, iso, other)) = found else {
        return Ok(ReductionOutcome::NotApplicable);
    };
    let anchor = inst.graph.neighbors(other).next().map(|(w, _)| w);
    inst.log.push_group(vec![
        Undo::Follow { vertices: vec![other], anchor },
        Undo::Opposite { vertex: iso, of: other },
    ]);
    inst.remove_pair(id);
    inst.delete_vertex(iso)?;
    inst.delete_vertex(other)?;
    Ok(applied(Rule::LonelyTerminal, 0, -1))
}

pub fn adjacent_terminals(inst: &mut TermSepInstance) -> Result<ReductionOutcome> {
    let open = inst.open_terminals();
    let found = open
        .iter()
        .find_map(|&t1| inst.graph.neighbors(t1).map(|(w, _)| w).find(|w| open.contains(w)).map(|t2| (t1, t2)));
    let Some((t1, t2)) = found else {
        return Ok(ReductionOutcome::NotApplicable);
    };
    let (p1, p2) = (inst.pair_of(t1).unwrap(), inst.pair_of(t2).unwrap());
    if p1 == p2 {
        inst.log.push_group(vec![Undo::Fixed { vertex: t1, side: Side::A }, Undo::Fixed { vertex: t2, side: Side::B }]);
        inst.remove_pair(p1);
        inst.delete_vertex(t1)?;
        inst.delete_vertex(t2)?;
        inst.k -= 1;
        return Ok(applied(Rule::AdjacentTerminals, -1, -1));
    }
    let s1 = inst.partner(t1).unwrap();
    let s2 = inst.partner(t2).unwrap();
    inst.log.push_group(vec![Undo::Opposite { vertex: t1, of: s1 }, Undo::Opposite { vertex: t2, of: s2 }]);
    inst.remove_pair(p1);
    inst.remove_pair(p2);
    inst.delete_vertex(t1)?;
    inst.delete_vertex(t2)?;
    inst.graph.add_edge(s1, s2, Provenance::Synthetic(Transform::TerminalBridge))?;
    Ok(applied(Rule::AdjacentTerminals, 0, -2))
}

pub fn common_neighbor(inst: &mut TermSepInstance) -> Result<ReductionOutcome> {
    let found = inst.unresolved_pairs().into_iter().find_map(|(id, p)| {
        let a = inst.sole_neighbor(p.s)?;
        (inst.sole_neighbor(p.t) == Some(a)).then_some((id, p.s, p.t, a))
    });
    let Some((id, s, t, a)) = found else {
        return Ok(ReductionOutcome::NotApplicable);
    };
    inst.log.push_group(vec![Undo::Follow { vertices: vec![s], anchor: Some(a) }, Undo::Opposite { vertex: t, of: s }]);
    inst.remove_pair(id);
    inst.delete_vertex(s)?;
    inst.delete_vertex(t)?;
    inst.k -= 1;
    Ok(applied(Rule::CommonNeighbor, -1, -1))
}

pub fn majority_neighbour(inst: &mut TermSepInstance) -> Result<ReductionOutcome> {
    let g = &inst.graph;
    let found = g.vertices().filter(|u| is_free(inst, *u) && g.degree(*u) > 0).find_map(|u| {
        g.neighbors(u)
            .find(|(v, m)| is_free(inst, *v) && 2 * m >= g.degree(u))
            .map(|(v, _)| (u, v))
    });
    let Some((u, v)) = found else {
        return Ok(ReductionOutcome::NotApplicable);
    };
    inst.merge(&[u, v].into())?;
    Ok(applied(Rule::MajorityNeighbour, 0, 0))
}

pub fn excess1_reduction(inst: &mut TermSepInstance) -> Result<ReductionOutcome> {
    for side in [Side::A, Side::B] {
        for ext in enumerate_compact_extensions(inst, 1, side)? {
            let added = ext.added(inst, side);
            if ext.excess == 1 && added.len() > 1 {
                inst.merge(&added)?;
                return Ok(applied(Rule::Excess1, 0, 0));
            }
        }
    }
    Ok(ReductionOutcome::NotApplicable)
}

/// Vertices of an extension whose singleton extension has excess other than 1.
pub fn heavy_part(inst: &TermSepInstance, added: &VertexSet, side: Side) -> Result<VertexSet> {
    let mut d = VertexSet::new();
    for &v in added {
        let mut one = inst.base.side(side).clone();
        one.insert(v);
        if excess(inst, &one, side)? != 1 {
            d.insert(v);
        }
    }
    Ok(d)
}

pub fn excess2_reduction(inst: &mut TermSepInstance) -> Result<ReductionOutcome> {
    for side in [Side::A, Side::B] {
        for ext in enumerate_compact_extensions(inst, 2, side)? {
            if ext.excess != 2 {
                continue;
            }
            let d = heavy_part(inst, &ext.added(inst, side), side)?;
            if d.len() > 1 {
                inst.merge(&d)?;
                return Ok(applied(Rule::Excess2, 0, 0));
            }
        }
    }
    Ok(ReductionOutcome::NotApplicable)
}

/// Applies one rule by priority.
pub fn reduce_once(inst: &mut TermSepInstance) -> Result<ReductionOutcome> {
    match terminator(inst)? {
        ReductionOutcome::NotApplicable => {}
        o => return Ok(o),
    }
    let rules: [fn(&mut TermSepInstance) -> Result<ReductionOutcome>; 8] = [
        boundary,
        pendant,
        lonely_terminal,
        adjacent_terminals,
        common_neighbor,
        majority_neighbour,
        excess1_reduction,
        excess2_reduction,
    ];
    for rule in rules {
        match rule(inst)? {
            ReductionOutcome::NotApplicable => continue,
            o => return Ok(o),
        }
    }
    Ok(ReductionOutcome::NotApplicable)
}

/// Normalises, then applies rules with re-normalisation until none applies.
pub fn reduce_exhaustively(inst: &mut TermSepInstance, log: &mut ReductionLog) -> Result<Reduced> {
    if normalize(inst)? == Normalized::NoSolution {
        return Ok(Reduced::NoSolution);
    }
    loop {
        let before = (measure(inst), inst.graph.vertex_count() as i64, inst.cost2() as i64);
        match reduce_once(inst)? {
            ReductionOutcome::NoSolution => {
                *log.counts.entry(Rule::Terminator).or_default() += 1;
                return Ok(Reduced::NoSolution);
            }
            ReductionOutcome::Solved(sep) => {
                *log.counts.entry(Rule::Terminator).or_default() += 1;
                return Ok(Reduced::Solved(sep));
            }
            ReductionOutcome::NotApplicable => return Ok(Reduced::Open),
            ReductionOutcome::Applied { rule, dk, dpairs } => {
                debug_assert!(measure(inst) < before.0, "{rule} did not shrink the instance");
                *log.counts.entry(rule).or_default() += 1;
                let normal = normalize(inst)?;
                if log.keep_events {
                    log.events.push(ReductionEvent {
                        rule,
                        dk,
                        dv: inst.graph.vertex_count() as i64 - before.1,
                        dpairs,
                        dcost2: inst.cost2() as i64 - before.2,
                    });
                }
                if normal == Normalized::NoSolution {
                    return Ok(Reduced::NoSolution);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::MultiGraph;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn inst(n: usize, edges: &[(u32, u32)], pairs: &[(u32, u32)], a0: &[u32], b0: &[u32], k: i64) -> TermSepInstance {
        let mut g = MultiGraph::with_vertices(n);
        for (i, &(x, y)) in edges.iter().enumerate() {
            g.add_edge(v(x), v(y), Provenance::Original(i)).unwrap();
        }
        TermSepInstance::new(
            g,
            pairs.iter().map(|&(s, t)| (v(s), v(t))).collect(),
            a0.iter().map(|&i| v(i)).collect(),
            b0.iter().map(|&i| v(i)).collect(),
            k,
        )
        .unwrap()
    }

    #[test]
    fn terminator_cases() {
        let i = inst(2, &[(0, 1)], &[], &[], &[], -1);
        assert_eq!(terminator(&i).unwrap(), ReductionOutcome::NoSolution);
        let i = inst(2, &[(0, 1)], &[], &[0, 1], &[], 0);
        assert!(matches!(terminator(&i).unwrap(), ReductionOutcome::Solved(_)));
        let i = inst(4, &[(0, 2), (1, 3), (2, 3)], &[(0, 1)], &[], &[], 1);
        assert_eq!(terminator(&i).unwrap(), ReductionOutcome::NotApplicable);
    }

    #[test]
    fn boundary_cases() {
        let mut i = inst(2, &[(0, 1)], &[], &[0], &[1], 2);
        assert_eq!(boundary(&mut i).unwrap(), applied(Rule::Boundary, -1, 0));
        assert_eq!((i.graph.edge_count(), i.k), (0, 1));
        let mut i = inst(3, &[(0, 2), (1, 2)], &[], &[0], &[1], 2);
        boundary(&mut i).unwrap();
        assert_eq!((i.graph.edge_count(), i.k), (0, 1));
        let mut i = inst(3, &[(0, 2)], &[], &[0], &[1], 2);
        assert_eq!(boundary(&mut i).unwrap(), ReductionOutcome::NotApplicable);
    }

    #[test]
    fn pendant_cases() {
        // isolated free component
        let mut i = inst(4, &[(0, 1), (2, 3)], &[], &[0, 1], &[], 2);
        assert_eq!(pendant(&mut i).unwrap(), applied(Rule::Pendant, 0, 0));
        assert_eq!(i.graph.vertex_count(), 2);

        // path u-x-v with terminals as u and v
        let mut i = inst(5, &[(0, 2), (2, 1), (3, 4)], &[(0, 3), (1, 4)], &[], &[], 2);
        pendant(&mut i).unwrap();
        assert!(!i.graph.contains(v(2)));
        assert_eq!(i.graph.multiplicity(v(0), v(1)), 1);

        // dense blob between u=0 and v=1 (base vertices), k = 1: merge
        let mut edges = vec![];
        for _ in 0..3 {
            edges.extend([(0, 2), (2, 3), (3, 1)]);
        }
        let mut i = inst(4, &edges, &[], &[0], &[], 1);
        pendant(&mut i).unwrap();
        assert_eq!(i.graph.vertex_count(), 1);
        assert_eq!(i.base.a.len(), 1);
    }

    #[test]
    fn terminal_rules() {
        // s isolated, t pendant on 2
        let mut i = inst(4, &[(1, 2), (2, 3)], &[(0, 1)], &[], &[], 1);
        assert_eq!(lonely_terminal(&mut i).unwrap(), applied(Rule::LonelyTerminal, 0, -1));
        assert_eq!((i.graph.vertex_count(), i.pair_count()), (2, 0));

        let mut i = inst(2, &[(0, 1)], &[(0, 1)], &[], &[], 1);
        assert_eq!(adjacent_terminals(&mut i).unwrap(), applied(Rule::AdjacentTerminals, -1, -1));
        assert_eq!((i.k, i.graph.vertex_count()), (0, 0));

        // pairs (0,1), (2,3); 1-3 adjacent
        let mut i = inst(6, &[(1, 3), (0, 4), (2, 5)], &[(0, 1), (2, 3)], &[], &[], 1);
        adjacent_terminals(&mut i).unwrap();
        assert_eq!(i.graph.multiplicity(v(0), v(2)), 1);
        assert_eq!(i.pair_count(), 0);

        let mut i = inst(3, &[(0, 2), (1, 2)], &[(0, 1)], &[], &[], 1);
        assert_eq!(common_neighbor(&mut i).unwrap(), applied(Rule::CommonNeighbor, -1, -1));
        assert_eq!(i.graph.vertex_count(), 1);
        let mut i = inst(4, &[(0, 2), (1, 3)], &[(0, 1)], &[], &[], 1);
        assert_eq!(common_neighbor(&mut i).unwrap(), ReductionOutcome::NotApplicable);
    }

    #[test]
    fn majority_cases() {
        // u=0 with 2 of 3 edges to v=1
        let mut i = inst(3, &[(0, 1), (0, 1), (0, 2)], &[], &[], &[], 1);
        assert_eq!(majority_neighbour(&mut i).unwrap(), applied(Rule::MajorityNeighbour, 0, 0));
        // exactly half
        let mut i = inst(3, &[(0, 1), (0, 2)], &[], &[], &[], 1);
        assert_eq!(majority_neighbour(&mut i).unwrap(), applied(Rule::MajorityNeighbour, 0, 0));
        let mut i = inst(3, &[(0, 1), (0, 2)], &[], &[0, 1, 2], &[], 1);
        assert_eq!(majority_neighbour(&mut i).unwrap(), ReductionOutcome::NotApplicable);
    }

    #[test]
    fn exhaustive_on_reduced_instance_is_fixpoint() {
        let mut i = inst(4, &[(0, 2), (1, 3), (2, 3)], &[(0, 1)], &[], &[], 1);
        let mut log = ReductionLog::recording();
        let r = reduce_exhaustively(&mut i, &mut log).unwrap();
        assert_ne!(r, Reduced::NoSolution);
        let mut j = inst(2, &[(0, 1)], &[], &[], &[], -1);
        assert_eq!(reduce_exhaustively(&mut j, &mut log).unwrap(), Reduced::NoSolution);
    }
}
