//! Edge Bipartization by iterative compression over terminal separation.

use std::collections::{BTreeSet, HashMap};

use crate::branching::{Engine, EngineConfig, Stats};
use crate::error::{Error, Result};
use crate::flow::max_min_cut;
use crate::multigraph::{MultiGraph, Provenance, VertexId, VertexSet};
use crate::oracle::oracle_termsep;
use crate::relaxation::min_cost2;
use crate::termsep::{TermSepInstance, TerminalSeparation};

/// Largest number of unresolved pairs the baseline enumerates.
pub const GUO_PAIR_LIMIT: usize = 25;
/// Largest number of undecided vertices the labelling oracle enumerates.
pub const ORACLE_VERTEX_LIMIT: usize = 22;

/// Deleted edges, as indices of the input graph's edges.
pub type Solution = BTreeSet<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SolverKind {
    #[default]
    Branching,
    Guo,
    Oracle,
}

impl std::str::FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "branching" => Ok(SolverKind::Branching),
            "guo" => Ok(SolverKind::Guo),
            "oracle" => Ok(SolverKind::Oracle),
            _ => Err(Error::Precondition(format!("unknown engine {s:?}"))),
        }
    }
}

/// Solves terminal separation instances with a chosen engine and keeps the
/// branching statistics across calls.
#[derive(Debug, Default)]
pub struct TermSepSolver {
    pub kind: SolverKind,
    pub engine: Engine,
    pub calls: u64,
}

impl TermSepSolver {
    pub fn new(kind: SolverKind, config: EngineConfig) -> Self {
        TermSepSolver { kind, engine: Engine::new(config), calls: 0 }
    }

    pub fn stats(&self) -> &Stats {
        &self.engine.stats
    }

    pub fn solve(&mut self, inst: &TermSepInstance) -> Result<Option<TerminalSeparation>> {
        self.calls += 1;
        match self.kind {
            SolverKind::Branching => self.engine.solve(inst),
            SolverKind::Guo => baseline_guo(inst),
            SolverKind::Oracle => {
                let undecided = inst.graph.vertex_count() - inst.base.a.len() - inst.base.b.len();
                if undecided > ORACLE_VERTEX_LIMIT {
                    return Err(Error::Guard(format!("{undecided} undecided vertices for the oracle")));
                }
                let (cost, sep) = oracle_termsep(inst)?;
                Ok((cost as i64 <= inst.k).then_some(sep))
            }
        }
    }

    /// Cheapest cost of a separation, found by raising the budget from the
    /// relaxation's lower bound.
    pub fn optimum(&mut self, inst: &TermSepInstance) -> Result<(i64, TerminalSeparation)> {
        let mut k = (min_cost2(inst, &inst.base)? as i64 + 1) / 2;
        loop {
            let mut probe = inst.clone();
            probe.k = k;
            if let Some(sep) = self.solve(&probe)? {
                return Ok((k, sep));
            }
            k += 1;
        }
    }
}

/// Best separation over all orientations of the unresolved pairs, one
/// minimum cut per orientation.
pub fn baseline_guo(inst: &TermSepInstance) -> Result<Option<TerminalSeparation>> {
    let open = inst.unresolved_pairs();
    if open.len() > GUO_PAIR_LIMIT {
        return Err(Error::Guard(format!("{} unresolved pairs exceed {GUO_PAIR_LIMIT}", open.len())));
    }
    if inst.k < 0 {
        return Ok(None);
    }
    let g = &inst.graph;
    let all = g.vertex_set();
    let mut best: Option<(u64, TerminalSeparation)> = None;
    for mask in 0u64..1 << open.len() {
        let mut a = inst.base.a.clone();
        let mut b = inst.base.b.clone();
        for (i, (_, p)) in open.iter().enumerate() {
            let (x, y) = if mask >> i & 1 == 0 { (p.s, p.t) } else { (p.t, p.s) };
            a.insert(x);
            b.insert(y);
        }
        let bound = best.as_ref().map_or(inst.k as u64, |(c, _)| c.saturating_sub(1));
        let (value, side) = if b.is_empty() {
            (0, all.clone())
        } else if a.is_empty() {
            (0, VertexSet::new())
        } else {
            match max_min_cut(g, &a, &b, bound)? {
                Some(found) => found,
                None => continue,
            }
        };
        if best.as_ref().is_none_or(|(c, _)| value < *c) {
            let rest: VertexSet = all.difference(&side).copied().collect();
            best = Some((value, TerminalSeparation::new(side, rest)));
        }
    }
    Ok(best.map(|(_, sep)| sep))
}

/// Terminal separation instance equivalent to compressing `x_prime`, with
/// every deleted edge uv replaced by pendant edges us and vt.
pub fn reduce_to_termsep(g: &MultiGraph, k: i64, x_prime: &[(VertexId, VertexId, usize)]) -> Result<TermSepInstance> {
    let mut h = g.clone();
    let mut pairs = Vec::new();
    for &(u, v, id) in x_prime {
        h.remove_edge_with(u, v, Provenance::Original(id))?;
        let s = h.add_vertex();
        let t = h.add_vertex();
        h.add_edge(u, s, Provenance::Terminal(id))?;
        h.add_edge(v, t, Provenance::Terminal(id))?;
        pairs.push((s, t));
    }
    if !h.is_bipartite() {
        return Err(Error::Precondition("graph minus the deletion set is not bipartite".into()));
    }
    TermSepInstance::new(h, pairs, VertexSet::new(), VertexSet::new(), k)
}

/// Input edges cut by an integral separation of a compression instance.
pub fn lift_solution(inst: &TermSepInstance, sep: &TerminalSeparation) -> Result<Solution> {
    if sep.a.len() + sep.b.len() != inst.graph.vertex_count() {
        return Err(Error::InvalidSeparation("separation is not integral".into()));
    }
    let mut out = Solution::new();
    for (u, v, prov) in inst.graph.edges() {
        if sep.label(u) == sep.label(v) {
            continue;
        }
        match prov {
            Provenance::Original(i) | Provenance::Terminal(i) => {
                out.insert(i);
            }
            Provenance::Synthetic(_) => {
                return Err(Error::InvalidSeparation("synthetic edge in a compression instance".into()));
            }
        }
    }
    Ok(out)
}

/// Whether deleting `solution` from `g` leaves a bipartite graph.
pub fn certify(g: &MultiGraph, solution: &Solution) -> bool {
    let mut h = MultiGraph::with_vertices(g.id_bound());
    for (u, v, prov) in g.edges() {
        if let Provenance::Original(i) = prov {
            if solution.contains(&i) {
                continue;
            }
        }
        if h.add_edge(u, v, prov).is_err() {
            return false;
        }
    }
    h.is_bipartite()
}

fn input_edges(g: &MultiGraph) -> Result<Vec<(VertexId, VertexId, usize)>> {
    let mut edges = Vec::new();
    for (u, v, prov) in g.edges() {
        match prov {
            Provenance::Original(i) => edges.push((u, v, i)),
            _ => return Err(Error::InvalidInstance("input edges must be original".into())),
        }
    }
    edges.sort_by_key(|e| e.2);
    Ok(edges)
}

/// Edges joining equal colours of a BFS 2-colouring of a spanning forest.
pub fn initial_deletion_set(g: &MultiGraph) -> Result<Vec<(VertexId, VertexId, usize)>> {
    let mut color: HashMap<VertexId, bool> = HashMap::new();
    for root in g.vertices() {
        if color.contains_key(&root) {
            continue;
        }
        color.insert(root, false);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for (w, _) in g.neighbors(u) {
                if !color.contains_key(&w) {
                    color.insert(w, !color[&u]);
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(input_edges(g)?.into_iter().filter(|(u, v, _)| color[u] == color[v]).collect())
}

/// Finds a set of at most `k` edges whose removal makes `g` bipartite.
pub fn solve_edge_bipartization(g: &MultiGraph, k: i64, solver: &mut TermSepSolver) -> Result<Option<Solution>> {
    if k < 0 {
        return Ok(None);
    }
    let z = initial_deletion_set(g)?;
    let mut current = g.clone();
    for (u, v, id) in &z {
        current.remove_edge_with(*u, *v, Provenance::Original(*id))?;
    }
    let mut x: Vec<(VertexId, VertexId, usize)> = Vec::new();
    for &(u, v, id) in &z {
        current.add_edge(u, v, Provenance::Original(id))?;
        x.push((u, v, id));
        if x.len() as i64 <= k {
            continue;
        }
        match compress(&current, k, &x, solver)? {
            None => return Ok(None),
            Some(sol) => {
                x = input_edges(&current)?.into_iter().filter(|e| sol.contains(&e.2)).collect();
            }
        }
    }
    let solution: Solution = x.iter().map(|e| e.2).collect();
    if !certify(g, &solution) || solution.len() as i64 > k {
        return Err(Error::InvalidSeparation("final deletion set fails certification".into()));
    }
    Ok(Some(solution))
}

/// Drops edges of `x` that close no odd cycle, one at a time. Afterwards
/// every remaining edge joins equal colours of G − x, which the reduction
/// to terminal separation needs.
pub fn restore_redundant(
    g: &MultiGraph,
    x: &[(VertexId, VertexId, usize)],
) -> Result<Vec<(VertexId, VertexId, usize)>> {
    let mut h = g.clone();
    for &(u, v, id) in x {
        h.remove_edge_with(u, v, Provenance::Original(id))?;
    }
    let mut kept = Vec::new();
    for &(u, v, id) in x {
        h.add_edge(u, v, Provenance::Original(id))?;
        if !h.is_bipartite() {
            h.remove_edge_with(u, v, Provenance::Original(id))?;
            kept.push((u, v, id));
        }
    }
    Ok(kept)
}

/// Replaces the deletion set `x_prime` of `g` by one with at most `k` edges.
pub fn compress(
    g: &MultiGraph,
    k: i64,
    x_prime: &[(VertexId, VertexId, usize)],
    solver: &mut TermSepSolver,
) -> Result<Option<Solution>> {
    let x_prime = restore_redundant(g, x_prime)?;
    if x_prime.len() as i64 <= k {
        return Ok(Some(x_prime.iter().map(|e| e.2).collect()));
    }
    let inst = reduce_to_termsep(g, k, &x_prime)?;
    let Some(sep) = solver.solve(&inst)? else {
        return Ok(None);
    };
    let solution = lift_solution(&inst, &sep)?;
    if solution.len() as i64 > k || !certify(g, &solution) {
        return Err(Error::InvalidSeparation("lifted solution fails certification".into()));
    }
    Ok(Some(solution))
}

/// Smallest bipartization set, by trying k = 0, 1, ….
pub fn min_edge_bipartization(g: &MultiGraph, solver: &mut TermSepSolver) -> Result<Solution> {
    let mut k = 0;
    loop {
        if let Some(sol) = solve_edge_bipartization(g, k, solver)? {
            return Ok(sol);
        }
        k += 1;
    }
}

/// Least-squares fit of `log y = c + x log base` over points with y > 0;
/// returns the base, or `None` with fewer than two distinct x values.
pub fn fit_exponential_base(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|p| p.1 > 0.0).map(|&(x, y)| (x, y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if pts.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some((sxy / sxx).exp())
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

    fn c5() -> MultiGraph {
        graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    }

    fn k4() -> MultiGraph {
        graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn small_graphs() {
        for kind in [SolverKind::Branching, SolverKind::Guo, SolverKind::Oracle] {
            let mut s = TermSepSolver::new(kind, EngineConfig::default());
            assert_eq!(solve_edge_bipartization(&graph(3, &[(0, 1), (1, 2)]), 0, &mut s).unwrap(), Some(Solution::new()));
            assert_eq!(solve_edge_bipartization(&c5(), 0, &mut s).unwrap(), None);
            assert_eq!(solve_edge_bipartization(&c5(), 1, &mut s).unwrap().unwrap().len(), 1);
            assert_eq!(solve_edge_bipartization(&k4(), 1, &mut s).unwrap(), None);
            let m = solve_edge_bipartization(&k4(), 2, &mut s).unwrap().unwrap();
            assert_eq!(m.len(), 2);
            assert!(certify(&k4(), &m));
        }
    }

    #[test]
    fn compression_drops_a_redundant_edge() {
        // the triangle needs one deletion; the pendant path edge is never needed
        let g = graph(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        let x = [(VertexId(0), VertexId(1), 0), (VertexId(2), VertexId(3), 3)];
        let mut s = TermSepSolver::default();
        let sol = compress(&g, 1, &x, &mut s).unwrap().unwrap();
        assert_eq!(sol.len(), 1);
        assert!(!sol.contains(&3));
    }

    #[test]
    fn reduction_shape() {
        let g = c5();
        let x = [(VertexId(0), VertexId(1), 0)];
        let inst = reduce_to_termsep(&g, 1, &x).unwrap();
        assert_eq!(inst.unresolved_count(), 1);
        assert_eq!(inst.graph.vertex_count(), 7);
        assert!(reduce_to_termsep(&k4(), 1, &x).is_err());
    }

    #[test]
    fn fit() {
        let pts: Vec<(f64, f64)> = (1..8).map(|k| (k as f64, 3.0 * 1.5f64.powi(k))).collect();
        assert!((fit_exponential_base(&pts).unwrap() - 1.5).abs() < 1e-9);
        assert_eq!(fit_exponential_base(&[(1.0, 2.0)]), None);
    }

    #[test]
    fn guard() {
        let mut g = MultiGraph::with_vertices(1);
        let mut pairs = Vec::new();
        for _ in 0..26 {
            let s = g.add_vertex();
            let t = g.add_vertex();
            pairs.push((s, t));
        }
        let inst = TermSepInstance::new(g, pairs, VertexSet::new(), VertexSet::new(), 3).unwrap();
        assert!(matches!(baseline_guo(&inst), Err(Error::Guard(_))));
    }
}
