//! Classification of unresolved pairs and the step each situation calls for.
//!
//! For a terminal s with partner t, `ext[A]` is the largest minimum cut
//! around A° ∪ {s} that avoids B° and every other open terminal (written A_s),
//! and `ext[B]` is the same for B° ∪ {s} (B_s). Cases are described with a
//! side `o` that plays the role of A°; the mirrored situation is the same
//! code with `o = B`.

use std::fmt;

use crate::error::Result;
use crate::excess::decompose_excess2;
use crate::flow::max_min_cut;
use crate::multigraph::{VertexId, VertexSet};
use crate::relaxation::{min_cost_extension, probe_branch, seed_with, Relaxation};
use crate::termsep::{PairId, Side, TermSepInstance, TerminalSeparation};

use super::potential::{is_good_vector, BranchingVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    TwoPairs,
    Intersection,
    Case00,
    Case10a,
    AntennaDetected,
    Case11a,
    Case11b,
    Case11cI,
    Case11cII,
    Case11cIIA,
    Case11cIIB,
    Case11cIIB1,
    Case11cIIB2,
    Fallback,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::TwoPairs => "two-pairs",
            CaseTag::Intersection => "intersection",
            CaseTag::Case00 => "(0,0)",
            CaseTag::Case10a => "(1,0)a",
            CaseTag::AntennaDetected => "antennas",
            CaseTag::Case11a => "(1,1)a",
            CaseTag::Case11b => "(1,1)b",
            CaseTag::Case11cI => "(1,1)c.i",
            CaseTag::Case11cII => "(1,1)c.ii",
            CaseTag::Case11cIIA => "(1,1)c.ii.A",
            CaseTag::Case11cIIB => "(1,1)c.ii.B",
            CaseTag::Case11cIIB1 => "(1,1)c.ii.B.1",
            CaseTag::Case11cIIB2 => "(1,1)c.ii.B.2",
            CaseTag::Fallback => "fallback",
        }
    }
}

/// A case together with the side that plays A°.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tag {
    pub case: CaseTag,
    pub side: Side,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::A => write!(f, "{}", self.case.name()),
            Side::B => write!(f, "{}~", self.case.name()),
        }
    }
}

/// Something the case analysis rules out happened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Case00,
    Exhausted,
    Structure(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Case00 => write!(f, "case (0,0) on a reduced instance"),
            Violation::Exhausted => write!(f, "no step applies"),
            Violation::Structure(m) => write!(f, "unexpected structure: {m}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Step {
    Branch { seeds: [TerminalSeparation; 2], claimed: BranchingVector, tag: Tag },
    Merge { set: VertexSet, tag: Tag },
    /// Continue with a single extension of (A°, B°).
    Assign { seed: TerminalSeparation, tag: Tag },
    /// Plain branching on a pair after a violation; always correct.
    Fallback { seeds: [TerminalSeparation; 2], violation: Violation },
}

/// How a terminal looks from its own side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TerminalKind {
    Case00,
    /// The side whose extension carries the extra vertex.
    Case10a(Side),
    /// The natural side.
    Antenna(Side),
    Case11a,
    Case11b,
    /// The side whose truncated extension is the base itself.
    Case11c(Side),
    Unclassified,
}

impl TerminalKind {
    pub fn is_11(self) -> bool {
        matches!(self, TerminalKind::Case11a | TerminalKind::Case11b | TerminalKind::Case11c(_))
    }
}

fn ix(side: Side) -> usize {
    match side {
        Side::A => 0,
        Side::B => 1,
    }
}

/// The extremal extensions around one terminal.
#[derive(Clone, Debug)]
pub struct PairView {
    pub pair: PairId,
    pub s: VertexId,
    pub t: VertexId,
    pub s1: Option<VertexId>,
    pub ext: [VertexSet; 2],
    pub excess: [i64; 2],
    /// ext[o] minus ext[o'].
    pub trunc: [VertexSet; 2],
    pub trunc_excess: [i64; 2],
    pub inter: VertexSet,
    /// Edges between ext[A] ∩ ext[B] and the rest of the graph.
    pub inter_to_rest: usize,
}

fn minus(a: &VertexSet, b: &VertexSet) -> VertexSet {
    a.difference(b).copied().collect()
}

fn set(vs: &[VertexId]) -> VertexSet {
    vs.iter().copied().collect()
}

pub fn pair_view(inst: &TermSepInstance, pair: PairId, s: VertexId, t: VertexId) -> Result<Option<PairView>> {
    let g = &inst.graph;
    let open = inst.open_terminals();
    let mut ext: [VertexSet; 2] = Default::default();
    let mut excess = [0i64; 2];
    for side in [Side::A, Side::B] {
        let base = inst.base.side(side);
        let mut src = base.clone();
        src.insert(s);
        let mut sinks = inst.base.side(side.other()).clone();
        sinks.extend(open.iter().copied().filter(|v| *v != s));
        let d0 = g.cut_size(base)? as u64;
        let Some((value, found)) = max_min_cut(g, &src, &sinks, d0 + 2)? else {
            return Ok(None);
        };
        ext[ix(side)] = found;
        excess[ix(side)] = value as i64 - d0 as i64;
    }
    let trunc = [minus(&ext[0], &ext[1]), minus(&ext[1], &ext[0])];
    let mut trunc_excess = [0i64; 2];
    for side in [Side::A, Side::B] {
        let d0 = g.cut_size(inst.base.side(side))? as i64;
        trunc_excess[ix(side)] = g.cut_size(&trunc[ix(side)])? as i64 - d0;
    }
    let inter: VertexSet = ext[0].intersection(&ext[1]).copied().collect();
    let inside: VertexSet = ext[0].union(&ext[1]).copied().collect();
    let inter_to_rest = inter
        .iter()
        .flat_map(|v| g.neighbors(*v))
        .filter(|(w, _)| !inside.contains(w))
        .map(|(_, m)| m)
        .sum();
    Ok(Some(PairView {
        pair,
        s,
        t,
        s1: inst.sole_neighbor(s),
        ext,
        excess,
        trunc,
        trunc_excess,
        inter,
        inter_to_rest,
    }))
}

pub fn kind_of(v: &PairView) -> TerminalKind {
    use TerminalKind::*;
    let te = v.trunc_excess;
    match (v.excess[0], v.excess[1]) {
        (0, 0) => Case00,
        (1, 0) | (0, 1) => {
            let o = if v.excess[0] == 1 { Side::A } else { Side::B };
            match (te[ix(o)], te[ix(o.other())]) {
                (1, 0) => Case10a(o),
                (0, 1) => Antenna(o.other()),
                _ => Unclassified,
            }
        }
        (1, 1) => {
            if v.inter_to_rest == 1 && te == [0, 0] {
                Case11a
            } else if v.inter_to_rest == 0 && te == [1, 1] {
                Case11b
            } else if v.inter_to_rest == 0 && te == [0, 2] {
                Case11c(Side::A)
            } else if v.inter_to_rest == 0 && te == [2, 0] {
                Case11c(Side::B)
            } else {
                Unclassified
            }
        }
        _ => Unclassified,
    }
}

/// Checks the antenna pattern of `s` directly and returns its natural side.
pub fn is_antenna(inst: &TermSepInstance, s: VertexId) -> Result<Option<Side>> {
    let g = &inst.graph;
    let Some(s1) = inst.sole_neighbor(s) else {
        return Ok(None);
    };
    if inst.is_terminal(s1) || inst.base.contains(s1) {
        return Ok(None);
    }
    let others: VertexSet = inst.open_terminals().into_iter().filter(|v| *v != s).collect();
    for natural in [Side::A, Side::B] {
        let near = inst.base.side(natural);
        let far = inst.base.side(natural.other());
        let x = g.edges_to(s1, near);
        if x == 0 || g.edges_to(s1, far) != 0 || g.degree(s1) - x - g.multiplicity(s1, s) != x {
            continue;
        }
        let d_near = g.cut_size(near)? as u64;
        let src: VertexSet = near.iter().copied().chain([s, s1]).collect();
        let mut sinks = far.clone();
        sinks.extend(others.iter().copied());
        match max_min_cut(g, &src, &sinks, d_near + 1)? {
            Some((value, found)) if value == d_near && found == src => {}
            _ => continue,
        }
        let d_far = g.cut_size(far)? as u64;
        let src: VertexSet = far.iter().copied().chain([s]).collect();
        let mut sinks = near.clone();
        sinks.extend(others.iter().copied());
        match max_min_cut(g, &src, &sinks, d_far + 2)? {
            Some((value, found)) if value == d_far + 1 && found == src => return Ok(Some(natural)),
            _ => continue,
        }
    }
    Ok(None)
}

type Found = std::result::Result<Step, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Ok(Err(format!($($msg)*)));
        }
    };
}

struct Cx<'a> {
    inst: &'a TermSepInstance,
}

impl<'a> Cx<'a> {
    fn base(&self, side: Side) -> &VertexSet {
        self.inst.base.side(side)
    }

    fn seed(&self, o: Side, near: &[VertexId], far: &[VertexId]) -> TerminalSeparation {
        seed_with(self.inst, o, near, far)
    }

    /// Excess of `side` in the minimum-cost extension of `seed`.
    fn grow(&self, seed: &TerminalSeparation, side: Side) -> Result<(TerminalSeparation, i64)> {
        let sep = min_cost_extension(self.inst, seed)?;
        let g = &self.inst.graph;
        let ex = g.cut_size(sep.side(side))? as i64 - g.cut_size(self.base(side))? as i64;
        Ok((sep, ex))
    }

    /// Unresolved pairs the minimum-cost extension of `seed` resolves.
    fn resolved(&self, seed: &TerminalSeparation) -> Result<i64> {
        Ok(probe_branch(self.inst, seed)?.resolved as i64)
    }

    fn to(&self, v: VertexId, side: Side) -> i64 {
        self.inst.graph.edges_to(v, self.base(side)) as i64
    }

    fn free(&self, v: VertexId) -> bool {
        !self.inst.is_terminal(v) && !self.inst.base.contains(v)
    }

    /// Neighbours of `v` outside `skip`, with multiplicities.
    fn neighbours_except(&self, v: VertexId, skip: &VertexSet) -> Vec<(VertexId, usize)> {
        self.inst.graph.neighbors(v).filter(|(w, _)| !skip.contains(w)).collect()
    }

    fn touches_other_terminal(&self, v: VertexId, own: VertexId) -> bool {
        self.inst.graph.neighbors(v).any(|(w, _)| w != own && self.inst.is_unresolved_terminal(w))
    }

    fn extra(&self, seeds: &[TerminalSeparation; 2]) -> Result<bool> {
        Ok(self.resolved(&seeds[0])? >= 2 || self.resolved(&seeds[1])? >= 2)
    }

    /// A branch that resolves a second pair is good on that alone, and the
    /// finer claims of the case analysis assume it does not happen.
    fn branch(&self, seeds: [TerminalSeparation; 2], claimed: BranchingVector, case: CaseTag, side: Side) -> Result<Found> {
        let r = [self.resolved(&seeds[0])?, self.resolved(&seeds[1])?];
        let claimed = if r.iter().any(|&x| x >= 2) {
            BranchingVector::new([r[0].max(1), 1, 0], [r[1].max(1), 1, 0])
        } else {
            claimed
        };
        if !is_good_vector(&claimed) {
            return Ok(Err(format!("claimed vector {claimed} is not good")));
        }
        Ok(Ok(Step::Branch { seeds, claimed, tag: Tag { case, side } }))
    }

    fn single(&self, s: &VertexSet) -> Option<VertexId> {
        (s.len() == 1).then(|| *s.iter().next().unwrap())
    }
}

/// Ensures no optimum of a basic branch resolves a second pair.
fn two_pairs(inst: &TermSepInstance) -> Result<Option<Step>> {
    let open = inst.unresolved_pairs();
    let resolved_by = |sep: &TerminalSeparation| open.iter().filter(|(_, p)| sep.contains(p.s)).count();
    for (id, p) in &open {
        let seeds = [seed_with(inst, Side::A, &[p.s], &[p.t]), seed_with(inst, Side::A, &[p.t], &[p.s])];
        for i in 0..2 {
            let relax = Relaxation::solve(inst, &seeds[i])?;
            let mut found = None;
            if resolved_by(&relax.separation()) >= 2 {
                found = Some(seeds.clone());
            }
            for (jd, q) in &open {
                if found.is_some() {
                    break;
                }
                if jd == id {
                    continue;
                }
                for side in [Side::A, Side::B] {
                    if relax.can_assign(q.s, side) {
                        let mut wider = seeds.clone();
                        wider[i].side_mut(side).insert(q.s);
                        wider[i].side_mut(side.other()).insert(q.t);
                        found = Some(wider);
                        break;
                    }
                }
            }
            if let Some(seeds) = found {
                let claimed = BranchingVector::new([1, 1, 0], [2, 1, 0]);
                let claimed = if i == 0 { claimed.swapped() } else { claimed };
                return Ok(Some(Step::Branch { seeds, claimed, tag: Tag { case: CaseTag::TwoPairs, side: Side::A } }));
            }
        }
    }
    Ok(None)
}

fn basic_seeds(inst: &TermSepInstance, s: VertexId, t: VertexId) -> [TerminalSeparation; 2] {
    [seed_with(inst, Side::A, &[s], &[t]), seed_with(inst, Side::A, &[t], &[s])]
}

/// Picks the step for a reduced, maximal instance with an unresolved pair.
pub fn select_step(inst: &TermSepInstance) -> Result<Step> {
    if let Some(step) = two_pairs(inst)? {
        return Ok(step);
    }
    let open = inst.unresolved_pairs();
    let Some(&(_, first)) = open.first() else {
        return Ok(Step::Fallback { seeds: Default::default(), violation: Violation::Exhausted });
    };
    let fallback = |s: VertexId, t: VertexId, violation: Violation| Step::Fallback { seeds: basic_seeds(inst, s, t), violation };

    let mut views = Vec::new();
    for (id, p) in &open {
        for (s, t) in [(p.s, p.t), (p.t, p.s)] {
            let Some(v) = pair_view(inst, *id, s, t)? else {
                return Ok(fallback(p.s, p.t, Violation::Structure(format!("no small cut around {s}"))));
            };
            views.push(v);
        }
    }

    for v in &views {
        let z: VertexSet = v.inter.iter().copied().filter(|x| *x != v.s).collect();
        if z.len() > 1 {
            if z.iter().any(|x| inst.is_terminal(*x) || inst.base.contains(*x)) {
                return Ok(fallback(v.s, v.t, Violation::Structure("intersection holds a terminal".into())));
            }
            return Ok(Step::Merge { set: z, tag: Tag { case: CaseTag::Intersection, side: Side::A } });
        }
    }

    let kinds: Vec<TerminalKind> = views.iter().map(kind_of).collect();
    let kind_of_terminal = |x: VertexId| views.iter().position(|v| v.s == x).map(|i| kinds[i]).unwrap();
    let cx = Cx { inst };
    let settle = |v: &PairView, found: Found| match found {
        Ok(step) => step,
        Err(msg) => fallback(v.s, v.t, Violation::Structure(msg)),
    };

    for (v, k) in views.iter().zip(&kinds) {
        match k {
            TerminalKind::Case00 => return Ok(fallback(v.s, v.t, Violation::Case00)),
            TerminalKind::Unclassified => {
                return Ok(fallback(
                    v.s,
                    v.t,
                    Violation::Structure(format!(
                        "unclassified terminal {}: excess {:?}, truncated {:?}, {} edges to the rest",
                        v.s, v.excess, v.trunc_excess, v.inter_to_rest
                    )),
                ))
            }
            TerminalKind::Antenna(natural)
                if is_antenna(inst, v.s)? != Some(*natural) => {
                    return Ok(fallback(v.s, v.t, Violation::Structure(format!("{} fails the antenna test", v.s))));
                }
            _ => {}
        }
    }
    for (v, k) in views.iter().zip(&kinds) {
        if let TerminalKind::Case10a(o) = k {
            return Ok(settle(v, case_10a(&cx, v, *o)?));
        }
    }
    for (v, k) in views.iter().zip(&kinds) {
        if *k == TerminalKind::Case11a {
            return Ok(settle(v, case_11a(&cx, v, kind_of_terminal(v.t))?));
        }
    }
    for (v, k) in views.iter().zip(&kinds) {
        match k {
            TerminalKind::Case11b => return Ok(settle(v, case_11b(&cx, v, kind_of_terminal(v.t))?)),
            TerminalKind::Case11c(o) => return Ok(settle(v, case_11c(&cx, v, *o, kind_of_terminal(v.t))?)),
            _ => {}
        }
    }
    for (v, k) in views.iter().zip(&kinds) {
        if let (TerminalKind::Antenna(ns), TerminalKind::Antenna(nt)) = (k, kind_of_terminal(v.t)) {
            if *ns != nt {
                return Ok(fallback(v.s, v.t, Violation::Structure("antennas with different natural sides".into())));
            }
            return Ok(settle(v, two_antennas(&cx, v, *ns)?));
        }
    }
    Ok(fallback(first.s, first.t, Violation::Exhausted))
}

fn case_10a(cx: &Cx, v: &PairView, o: Side) -> Result<Found> {
    let g = &cx.inst.graph;
    let (io, ifar) = (ix(o), ix(o.other()));
    let far = o.other();
    let Some(s1) = v.s1 else { return Ok(Err("terminal without a single neighbour".into())) };
    let added = minus(&v.trunc[io], cx.base(o));
    let Some(a) = cx.single(&added) else { return Ok(Err(format!("truncated side adds {} vertices", added.len()))) };
    ensure!(cx.free(a), "extra vertex {a} is not free");
    ensure!(minus(&v.ext[io], cx.base(o)) == set(&[a, v.s, s1]), "extension is not {{a, s, s'}}");
    ensure!(minus(&v.ext[ifar], cx.base(far)) == set(&[v.s, s1]), "far extension is not {{s, s'}}");
    let p = g.multiplicity(a, s1) as i64;
    ensure!(p >= 1, "a is not adjacent to s'");
    ensure!(cx.to(s1, o) == 0 && cx.to(s1, far) == p, "s' has the wrong edges to the bases");
    ensure!(cx.to(a, far) == 0, "a touches the far base");
    let x = cx.to(a, o) - p;
    ensure!(x >= 0, "a has too few edges to its base");
    let mut skip = v.ext[io].clone();
    skip.extend(cx.base(far).iter().copied());
    let out = cx.neighbours_except(a, &skip);
    ensure!(out.iter().map(|(_, m)| *m as i64).sum::<i64>() == x + 1, "a has the wrong number of outside edges");
    if x == 0 {
        let a1 = out[0].0;
        ensure!(cx.free(a1), "outside neighbour of a is not free");
        return Ok(Ok(Step::Merge { set: set(&[a, a1]), tag: Tag { case: CaseTag::Case10a, side: o } }));
    }
    let seeds = [cx.seed(o, &[a], &[]), cx.seed(o, &[], &[a])];
    let claimed = if p == 1 && x == 1 {
        if cx.grow(&seeds[1], far)?.1 >= 2 {
            BranchingVector::new([1, 1, 1], [1, 3, 2])
        } else {
            BranchingVector::new([1, 1, 2], [1, 2, 2])
        }
    } else {
        BranchingVector::new([1, 1, p], [1, 2, p + x])
    };
    cx.branch(seeds, claimed, CaseTag::Case10a, o)
}

fn case_11a(cx: &Cx, v: &PairView, tk: TerminalKind) -> Result<Found> {
    let Some(s1) = v.s1 else { return Ok(Err("terminal without a single neighbour".into())) };
    ensure!(v.inter == set(&[v.s]), "intersection is not {{s}}");
    let seeds = [cx.seed(Side::A, &[v.s, s1], &[v.t]), cx.seed(Side::A, &[v.t], &[v.s, s1])];
    let claimed = match tk {
        k if k.is_11() => BranchingVector::new([1, 3, 0], [1, 3, 0]),
        TerminalKind::Antenna(Side::A) => BranchingVector::new([1, 3, 1], [1, 2, 0]),
        TerminalKind::Antenna(Side::B) => BranchingVector::new([1, 2, 0], [1, 3, 1]),
        k => return Ok(Err(format!("partner has kind {k:?}"))),
    };
    cx.branch(seeds, claimed, CaseTag::Case11a, Side::A)
}

fn case_11b(cx: &Cx, v: &PairView, tk: TerminalKind) -> Result<Found> {
    let g = &cx.inst.graph;
    let Some(s1) = v.s1 else { return Ok(Err("terminal without a single neighbour".into())) };
    let o = if cx.to(s1, Side::A) == 0 {
        Side::A
    } else if cx.to(s1, Side::B) == 0 {
        Side::B
    } else {
        return Ok(Err("s' touches both bases".into()));
    };
    let far = o.other();
    let (Some(a), Some(b)) = (
        cx.single(&minus(&v.trunc[ix(o)], cx.base(o))),
        cx.single(&minus(&v.trunc[ix(far)], cx.base(far))),
    ) else {
        return Ok(Err("truncated extensions are not single vertices".into()));
    };
    ensure!(minus(&v.ext[ix(o)], cx.base(o)) == set(&[a, v.s, s1]), "extension is not {{a, s, s'}}");
    ensure!(minus(&v.ext[ix(far)], cx.base(far)) == set(&[b, v.s, s1]), "extension is not {{b, s, s'}}");
    let p = g.multiplicity(s1, a) as i64;
    ensure!(p >= 1, "s' is not adjacent to a");
    let Some(t1) = cx.inst.sole_neighbor(v.t) else { return Ok(Err("partner without a single neighbour".into())) };
    let tag = Tag { case: CaseTag::Case11b, side: o };
    if t1 == a {
        return Ok(Ok(Step::Assign { seed: cx.seed(o, &[v.t], &[v.s]), tag }));
    }
    if t1 == b {
        return Ok(Ok(Step::Assign { seed: cx.seed(o, &[v.s], &[v.t]), tag }));
    }
    ensure!(t1 != s1, "s and t share their neighbour");
    let seeds = [cx.seed(o, &[v.s, s1], &[v.t, t1]), cx.seed(o, &[v.t, t1], &[v.s, s1])];
    let claimed = match tk {
        TerminalKind::Antenna(n) if n == o => BranchingVector::new([1, 3, p + 1], [1, 1, p]),
        TerminalKind::Antenna(_) => BranchingVector::new([1, 1, p], [1, 3, p + 1]),
        TerminalKind::Case11b => BranchingVector::new([1, 2, p + 1], [1, 2, p + 1]),
        TerminalKind::Case11c(ot) if ot == o => BranchingVector::new([1, 2, p], [1, 2, p + 1]),
        TerminalKind::Case11c(_) => BranchingVector::new([1, 2, p + 1], [1, 2, p]),
        k => return Ok(Err(format!("partner has kind {k:?}"))),
    };
    cx.branch(seeds, claimed, CaseTag::Case11b, o)
}

fn case_11c(cx: &Cx, v: &PairView, o: Side, tk: TerminalKind) -> Result<Found> {
    let g = &cx.inst.graph;
    let far = o.other();
    let Some(s1) = v.s1 else { return Ok(Err("terminal without a single neighbour".into())) };
    let mut heavy = v.ext[ix(far)].clone();
    heavy.remove(&v.s);
    let dec = match decompose_excess2(cx.inst, &heavy, far) {
        Ok(d) => d,
        Err(e) => return Ok(Err(format!("far extension does not decompose: {e}"))),
    };
    ensure!(dec.d_vertex == Some(s1), "heavy vertex is not s'");
    let sigma = dec.sigma as i64;
    ensure!(sigma >= 1, "sigma is zero");
    let Some(t1) = cx.inst.sole_neighbor(v.t) else { return Ok(Err("partner without a single neighbour".into())) };
    ensure!(t1 != s1, "s and t share their neighbour");
    if dec.c_vertices.contains(&t1) {
        return Ok(Ok(Step::Assign { seed: cx.seed(o, &[v.s], &[v.t]), tag: Tag { case: CaseTag::Case11cI, side: o } }));
    }
    let (s, t) = (v.s, v.t);
    let fix = [cx.seed(o, &[s, s1], &[t]), cx.seed(o, &[t], &[s, s1])];
    let near_part = minus(&v.ext[ix(o)], cx.base(o));
    if near_part == set(&[s, s1]) {
        let p = cx.to(s1, o);
        ensure!(p >= 1, "s' has no edge to its base");
        let claimed = match tk {
            TerminalKind::Antenna(n) if n == o => BranchingVector::new([1, 2, 1 + sigma], [1, 1, p]),
            TerminalKind::Antenna(_) => BranchingVector::new([1, 2, sigma], [1, 1, 1 + p]),
            k if k.is_11() => BranchingVector::new([1, 2, sigma], [1, 2, p]),
            k => return Ok(Err(format!("partner has kind {k:?}"))),
        };
        return cx.branch(fix, claimed, CaseTag::Case11cI, o);
    }
    ensure!(near_part == set(&[s]), "near extension is neither {{s}} nor {{s, s'}}");
    match tk {
        k if k.is_11() => cx.branch(fix, BranchingVector::new([1, 3, sigma], [1, 2, 0]), CaseTag::Case11cII, o),
        TerminalKind::Antenna(n) if n == o => natural_near(cx, o, s, t, s1, t1, sigma),
        TerminalKind::Antenna(_) => {
            let tag = |case| Tag { case, side: o };
            if sigma > 1 {
                return cx.branch(fix, BranchingVector::new([1, 2, sigma], [1, 2, 1]), CaseTag::Case11cIIB, o);
            }
            if cx.touches_other_terminal(s1, s) {
                return cx.branch(fix, BranchingVector::new([1, 2, 1], [2, 2, 1]), CaseTag::Case11cIIB, o);
            }
            let y = cx.to(t1, far);
            ensure!(y >= 1, "t' has no edge to its natural side");
            match dec.r() {
                0 => natural_far(cx, o, s, t, s1, t1, y),
                1 => {
                    let c1 = dec.c_vertices[0];
                    ensure!(g.degree(s1) == 3, "s' does not have degree three");
                    let rest = cx.neighbours_except(s1, &set(&[c1, s]));
                    ensure!(rest.len() == 1 && rest[0].1 == 1, "s' has no single further neighbour");
                    let w = rest[0].0;
                    ensure!(!cx.inst.is_terminal(w), "further neighbour of s' is a terminal");
                    Ok(Ok(Step::Merge { set: set(&[s1, w]), tag: tag(CaseTag::Case11cIIB2) }))
                }
                r => Ok(Err(format!("decomposition with sigma 1 has {r} light vertices"))),
            }
        }
        k => Ok(Err(format!("partner has kind {k:?}"))),
    }
}

/// t is an antenna whose natural side is `o`.
fn natural_near(cx: &Cx, o: Side, s: VertexId, t: VertexId, s1: VertexId, t1: VertexId, sigma: i64) -> Result<Found> {
    let g = &cx.inst.graph;
    let far = o.other();
    let tag = Tag { case: CaseTag::Case11cIIA, side: o };
    let x = cx.to(t1, o);
    ensure!(x >= 1, "t' has no edge to its natural side");
    let nt = cx.seed(o, &[t], &[s]);
    let unt = cx.seed(o, &[s, s1], &[t, t1]);
    if x + sigma >= 3 {
        return cx.branch([nt, unt], BranchingVector::new([1, 1, 0], [1, 4, x + sigma]), tag.case, o);
    }
    if cx.extra(&[nt.clone(), unt.clone()])? {
        return cx.branch([nt, unt], BranchingVector::new([1, 1, 0], [1, 5, 2]), tag.case, o);
    }
    let du = cx.grow(&unt, far)?.1;
    if du >= 3 {
        return cx.branch([nt, unt], BranchingVector::new([1, 1, 0], [1, 5, 2]), tag.case, o);
    }
    ensure!(du == 2, "unnatural branch has far excess {du}");
    ensure!(g.degree(t1) == 3, "t' does not have degree three");
    let mut skip = cx.base(o).clone();
    skip.insert(t);
    let rest = cx.neighbours_except(t1, &skip);
    ensure!(rest.len() == 1 && rest[0].1 == 1, "t' has no single further neighbour");
    let v = rest[0].0;
    if v == s1 {
        return Ok(Ok(Step::Assign { seed: nt, tag }));
    }
    ensure!(cx.free(v), "further neighbour of t' is not free");
    let ext = cx.seed(o, &[s, s1], &[t, t1, v]);
    if cx.extra(&[nt.clone(), ext.clone()])? {
        return cx.branch([nt, ext], BranchingVector::new([1, 1, 0], [1, 5, 2]), tag.case, o);
    }
    let (grown, de) = cx.grow(&ext, far)?;
    if de >= 3 {
        return cx.branch([nt, ext], BranchingVector::new([1, 1, 0], [1, 5, 2]), tag.case, o);
    }
    ensure!(de == 2, "extended unnatural branch has far excess {de}");
    let mut bq = grown.side(far).clone();
    bq.remove(&t);
    bq.remove(&t1);
    if bq.contains(&s1) {
        return Ok(Ok(Step::Assign { seed: nt, tag }));
    }
    let dec = match decompose_excess2(cx.inst, &bq, far) {
        Ok(d) => d,
        Err(e) => return Ok(Err(format!("extended far side does not decompose: {e}"))),
    };
    ensure!(dec.d_vertex == Some(v), "heavy vertex of the extended far side is not v");
    let sigma2 = dec.sigma as i64;
    let seeds = [cx.seed(o, &[v], &[]), cx.seed(o, &[], &[v])];
    let claimed = if sigma2 >= 2 {
        BranchingVector::new([1, 2, sigma2], [1, 2, 1])
    } else if cx.grow(&seeds[0], o)?.1 >= 3 {
        BranchingVector::new([1, 3, 1], [1, 2, 1])
    } else {
        BranchingVector::new([1, 2, 1], [1, 2, 2])
    };
    cx.branch(seeds, claimed, tag.case, o)
}

/// t is an antenna whose natural side is opposite to `o`, σ = 1 and the
/// heavy vertex stands alone.
fn natural_far(cx: &Cx, o: Side, s: VertexId, t: VertexId, s1: VertexId, t1: VertexId, y: i64) -> Result<Found> {
    let g = &cx.inst.graph;
    let far = o.other();
    let tag = Tag { case: CaseTag::Case11cIIB1, side: o };
    let tb = cx.seed(o, &[s], &[t, t1]);
    let ta = cx.seed(o, &[t, t1], &[s]);
    if y > 1 {
        return cx.branch([tb, ta], BranchingVector::new([1, 1, 1], [1, 3, y]), tag.case, o);
    }
    ensure!(g.degree(t1) == 3, "t' does not have degree three");
    let mut skip = cx.base(far).clone();
    skip.insert(t);
    let rest = cx.neighbours_except(t1, &skip);
    ensure!(rest.len() == 1 && rest[0].1 == 1, "t' has no single further neighbour");
    let w = rest[0].0;
    if w == s1 {
        return Ok(Ok(Step::Assign { seed: cx.seed(o, &[s], &[t]), tag }));
    }
    ensure!(cx.free(w), "further neighbour of t' is not free");
    if cx.to(w, o) > 0 {
        return cx.branch([tb, ta], BranchingVector::new([1, 1, 2], [1, 3, 1]), tag.case, o);
    }
    let ext = cx.seed(o, &[t, t1, w], &[s]);
    if cx.extra(&[tb.clone(), ext.clone()])? {
        return cx.branch([tb, ext], BranchingVector::new([1, 1, 1], [1, 4, 1]), tag.case, o);
    }
    let de = cx.grow(&ext, o)?.1;
    if de >= 3 {
        return cx.branch([tb, ext], BranchingVector::new([1, 1, 1], [1, 4, 1]), tag.case, o);
    }
    ensure!(de == 2, "extended natural branch has excess {de}");
    let seeds = [cx.seed(o, &[w], &[]), cx.seed(o, &[], &[w])];
    cx.branch(seeds, BranchingVector::new([1, 2, 1], [1, 2, 2]), tag.case, o)
}

fn two_antennas(cx: &Cx, v: &PairView, natural: Side) -> Result<Found> {
    let o = natural.other();
    let (s, t) = (v.s, v.t);
    let (Some(s1), Some(t1)) = (v.s1, cx.inst.sole_neighbor(t)) else {
        return Ok(Err("antenna without a single neighbour".into()));
    };
    ensure!(s1 != t1, "antennas share their neighbour");
    let x = cx.to(s1, natural);
    let y = cx.to(t1, natural);
    let fix_s = [cx.seed(o, &[s, s1], &[t]), cx.seed(o, &[t], &[s, s1])];
    let fix_t = [cx.seed(o, &[s], &[t, t1]), cx.seed(o, &[t, t1], &[s])];
    let case = CaseTag::AntennaDetected;
    if x >= 3 {
        return cx.branch(fix_s, BranchingVector::new([1, 2, x], [1, 1, 1]), case, o);
    }
    if y >= 3 {
        return cx.branch(fix_t, BranchingVector::new([1, 1, 1], [1, 2, y]), case, o);
    }
    if cx.touches_other_terminal(s1, s) {
        return cx.branch(fix_s, BranchingVector::new([1, 2, x], [2, 1, 1]), case, o);
    }
    if cx.touches_other_terminal(t1, t) {
        return cx.branch(fix_t, BranchingVector::new([2, 1, 1], [1, 2, y]), case, o);
    }
    let external = |a: VertexId, own: VertexId| {
        let mut skip = cx.base(natural).clone();
        skip.insert(own);
        cx.neighbours_except(a, &skip)
    };
    for (a, own) in [(s1, s), (t1, t)] {
        let out = external(a, own);
        if out.len() == 1 {
            ensure!(!cx.inst.is_terminal(out[0].0), "external neighbour is a terminal");
            return Ok(Ok(Step::Merge { set: set(&[a, out[0].0]), tag: Tag { case, side: o } }));
        }
    }
    ensure!(x == 2 && y == 2, "antennas with x = {x}, y = {y} and two external neighbours");
    ensure!(external(s1, s).len() == 2 && external(t1, t).len() == 2, "antennas without two external neighbours");
    let claimed = if cx.grow(&fix_s[0], o)?.1 >= 3 {
        BranchingVector::new([1, 3, 2], [1, 1, 1])
    } else {
        BranchingVector::new([1, 2, 2], [1, 1, 2])
    };
    cx.branch(fix_s, claimed, case, o)
}
