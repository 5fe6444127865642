//! Brute-force reference solvers used to validate the fast paths.

use crate::error::{Error, Result};
use crate::multigraph::{MultiGraph, Provenance, VertexId};
use crate::termsep::{Side, TermSepInstance, TerminalSeparation};

/// Minimum number of edges whose deletion leaves `g` bipartite, with a
/// witness given as indices into `g.edges()` order.
pub fn oracle_min_bipartization(g: &MultiGraph) -> Result<(usize, Vec<usize>)> {
    let verts: Vec<VertexId> = g.vertices().collect();
    let n = verts.len();
    if n > 20 {
        return Err(Error::Guard(format!("{n} vertices exceed the bipartition oracle limit of 20")));
    }
    let mut pos = vec![usize::MAX; g.id_bound()];
    for (i, v) in verts.iter().enumerate() {
        pos[v.index()] = i;
    }
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (pos[u.index()], pos[v.index()])).collect();
    let mut best = (usize::MAX, 0u32);
    // vertex 0 stays on side 0
    for mask in 0..(1u32 << n.saturating_sub(1)) {
        let m = mask << 1;
        let mono = edges.iter().filter(|(u, v)| (m >> u) & 1 == (m >> v) & 1).count();
        if mono < best.0 {
            best = (mono, m);
        }
    }
    if edges.is_empty() {
        return Ok((0, Vec::new()));
    }
    let m = best.1;
    let witness = edges
        .iter()
        .enumerate()
        .filter(|(_, (u, v))| (m >> u) & 1 == (m >> v) & 1)
        .map(|(i, _)| i)
        .collect();
    Ok((best.0, witness))
}

/// Same quantity by trying edge subsets in order of size.
pub fn subset_min_bipartization(g: &MultiGraph) -> Result<usize> {
    let edges: Vec<(VertexId, VertexId, Provenance)> = g.edges().collect();
    if edges.len() > 30 {
        return Err(Error::Guard(format!("{} edges exceed the subset oracle limit of 30", edges.len())));
    }
    for size in 0..=edges.len() {
        let mut chosen: Vec<usize> = (0..size).collect();
        loop {
            let mut h = g.clone();
            for &i in &chosen {
                let (u, v, _) = edges[i];
                h.remove_edge(u, v)?;
            }
            if h.is_bipartite() {
                return Ok(size);
            }
            if !next_combination(&mut chosen, edges.len()) {
                break;
            }
        }
    }
    unreachable!("deleting every edge leaves a bipartite graph")
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `f` on every integral separation extending `seed`.
pub fn for_each_integral(
    inst: &TermSepInstance,
    seed: &TerminalSeparation,
    limit: usize,
    mut f: impl FnMut(&TerminalSeparation),
) -> Result<()> {
    inst.check_separation(seed)?;
    let pairs: Vec<_> = inst.pairs().map(|(_, p)| p).filter(|p| !seed.contains(p.s)).collect();
    let free: Vec<VertexId> = inst
        .graph
        .vertices()
        .filter(|v| !seed.contains(*v) && !inst.is_terminal(*v))
        .collect();
    let bits = pairs.len() + free.len();
    if bits > limit {
        return Err(Error::Guard(format!("{bits} free choices exceed the enumeration limit of {limit}")));
    }
    let mut sep = seed.clone();
    for mask in 0u64..(1u64 << bits) {
        sep.a.clone_from(&seed.a);
        sep.b.clone_from(&seed.b);
        for (i, p) in pairs.iter().enumerate() {
            let (x, y) = if (mask >> i) & 1 == 0 { (p.s, p.t) } else { (p.t, p.s) };
            sep.a.insert(x);
            sep.b.insert(y);
        }
        for (j, v) in free.iter().enumerate() {
            let side = if (mask >> (pairs.len() + j)) & 1 == 0 { Side::A } else { Side::B };
            sep.side_mut(side).insert(*v);
        }
        f(&sep);
    }
    Ok(())
}

/// Cheapest integral separation extending (A°, B°), ignoring the budget.
/// Returns the cost and one optimum.
pub fn oracle_termsep(inst: &TermSepInstance) -> Result<(u64, TerminalSeparation)> {
    let mut best: Option<(u64, TerminalSeparation)> = None;
    for_each_integral(inst, &inst.base, 22, |sep| {
        let c = sep.cost2(&inst.graph).unwrap() / 2;
        if best.as_ref().is_none_or(|(b, _)| c < *b) {
            best = Some((c, sep.clone()));
        }
    })?;
    Ok(best.expect("at least one labelling exists"))
}

/// Calls `f` on every {⊥, A, B} labelling extending `seed` that respects
/// the pair discipline.
pub fn for_each_labelling(
    inst: &TermSepInstance,
    seed: &TerminalSeparation,
    limit: usize,
    mut f: impl FnMut(&TerminalSeparation),
) -> Result<()> {
    inst.check_separation(seed)?;
    let pairs: Vec<_> = inst.pairs().map(|(_, p)| p).filter(|p| !seed.contains(p.s)).collect();
    let free: Vec<VertexId> = inst
        .graph
        .vertices()
        .filter(|v| !seed.contains(*v) && !inst.is_terminal(*v))
        .collect();
    let digits = pairs.len() + free.len();
    if digits > limit {
        return Err(Error::Guard(format!("{digits} free choices exceed the enumeration limit of {limit}")));
    }
    let total = 3u64.pow(digits as u32);
    let mut sep = seed.clone();
    for code in 0..total {
        sep.a.clone_from(&seed.a);
        sep.b.clone_from(&seed.b);
        let mut c = code;
        for p in &pairs {
            match c % 3 {
                1 => {
                    sep.a.insert(p.s);
                    sep.b.insert(p.t);
                }
                2 => {
                    sep.a.insert(p.t);
                    sep.b.insert(p.s);
                }
                _ => {}
            }
            c /= 3;
        }
        for v in &free {
            match c % 3 {
                1 => {
                    sep.a.insert(*v);
                }
                2 => {
                    sep.b.insert(*v);
                }
                _ => {}
            }
            c /= 3;
        }
        f(&sep);
    }
    Ok(())
}

/// Minimum 2·cost over all labellings extending `seed`.
pub fn oracle_relaxed_cost2(inst: &TermSepInstance, seed: &TerminalSeparation) -> Result<u64> {
    let mut best = u64::MAX;
    for_each_labelling(inst, seed, 13, |sep| {
        best = best.min(sep.cost2(&inst.graph).unwrap());
    })?;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: u32) -> MultiGraph {
        let mut g = MultiGraph::with_vertices(n as usize);
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(VertexId(u), VertexId(v), Provenance::Original(i)).unwrap();
                i += 1;
            }
        }
        g
    }

    fn petersen() -> MultiGraph {
        let mut g = MultiGraph::with_vertices(10);
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        for (i, (u, v)) in edges.into_iter().enumerate() {
            g.add_edge(VertexId(u), VertexId(v), Provenance::Original(i)).unwrap();
        }
        g
    }

    fn cycle(n: u32) -> MultiGraph {
        let mut g = MultiGraph::with_vertices(n as usize);
        for i in 0..n {
            g.add_edge(VertexId(i), VertexId((i + 1) % n), Provenance::Original(i as usize)).unwrap();
        }
        g
    }

    #[test]
    fn known_optima_agree_across_oracles() {
        for (g, want) in [(cycle(5), 1), (complete(5), 4), (petersen(), 3), (complete(4), 2)] {
            assert_eq!(oracle_min_bipartization(&g).unwrap().0, want);
            assert_eq!(subset_min_bipartization(&g).unwrap(), want);
        }
    }

    #[test]
    fn witness_is_valid() {
        let g = petersen();
        let (size, w) = oracle_min_bipartization(&g).unwrap();
        let edges: Vec<_> = g.edges().collect();
        let mut h = g.clone();
        for i in &w {
            h.remove_edge(edges[*i].0, edges[*i].1).unwrap();
        }
        assert_eq!(w.len(), size);
        assert!(h.is_bipartite());
    }
}
