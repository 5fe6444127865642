//! Seeded instance generators.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::multigraph::{MultiGraph, Provenance, VertexId, VertexSet};
use crate::termsep::TermSepInstance;

/// `m` edges between uniformly random distinct endpoints; repeats allowed.
pub fn random_multigraph<R: Rng>(rng: &mut R, n: usize, m: usize) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(n);
    if n < 2 {
        return g;
    }
    for i in 0..m {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        g.add_edge(VertexId(u as u32), VertexId(v as u32), Provenance::Original(i)).unwrap();
    }
    g
}

/// Random bipartite graph with edge probability `p` across a random
/// bipartition, plus exactly `noise` edges inside the parts.
pub fn planted<R: Rng>(rng: &mut R, n: usize, p: f64, noise: usize) -> MultiGraph {
    let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut pairs_across = Vec::new();
    let mut pairs_within = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if side[u] == side[v] {
                pairs_within.push((u, v));
            } else {
                pairs_across.push((u, v));
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = pairs_across.into_iter().filter(|_| rng.gen_bool(p)).collect();
    pairs_within.shuffle(rng);
    edges.extend(pairs_within.into_iter().take(noise));
    edges.shuffle(rng);
    let mut g = MultiGraph::with_vertices(n);
    for (i, (u, v)) in edges.into_iter().enumerate() {
        g.add_edge(VertexId(u as u32), VertexId(v as u32), Provenance::Original(i)).unwrap();
    }
    g
}

/// Random core graph with `pairs` terminal pairs hanging off it. Terminals
/// attach to a random core vertex, except that with probability `isolated`
/// they stay isolated. With `seeded`, one pair and a few core vertices are
/// pre-assigned.
pub fn random_termsep<R: Rng>(
    rng: &mut R,
    core: usize,
    edges: usize,
    pairs: usize,
    k: i64,
    seeded: bool,
) -> TermSepInstance {
    let mut g = random_multigraph(rng, core, edges);
    let mut pair_list = Vec::new();
    for _ in 0..pairs {
        let s = g.add_vertex();
        let t = g.add_vertex();
        for x in [s, t] {
            if core > 0 && !rng.gen_bool(0.08) {
                let u = VertexId(rng.gen_range(0..core) as u32);
                g.add_edge(x, u, Provenance::Terminal(usize::MAX)).unwrap();
            }
        }
        pair_list.push((s, t));
    }
    let mut a0 = VertexSet::new();
    let mut b0 = VertexSet::new();
    if seeded && core > 0 {
        if let Some(&(s, t)) = pair_list.first() {
            if rng.gen_bool(0.5) {
                a0.insert(s);
                b0.insert(t);
            }
        }
        for v in 0..core {
            match rng.gen_range(0..8) {
                0 => {
                    a0.insert(VertexId(v as u32));
                }
                1 => {
                    b0.insert(VertexId(v as u32));
                }
                _ => {}
            }
        }
    }
    TermSepInstance::new(g, pair_list, a0, b0, k).expect("generator builds valid instances")
}

/// Instances whose terminals mostly hang off a private neighbour `s'` that
/// has as many edges into one base side as into the rest of the graph. This
/// is the shape that drives the rarer branching cases. A terminal attaches
/// directly to the core with probability `plain`.
pub fn antenna_termsep<R: Rng>(rng: &mut R, plain: f64) -> TermSepInstance {
    let nf = rng.gen_range(3..=14);
    let na = rng.gen_range(1..=2);
    let nb = rng.gen_range(1..=2);
    let n = nf + na + nb;
    let mut g = MultiGraph::with_vertices(n);
    let id = |v: usize| VertexId(v as u32);
    let add = |g: &mut MultiGraph, u: VertexId, v: VertexId| {
        let i = g.edge_count();
        g.add_edge(u, v, Provenance::Original(i)).unwrap();
    };
    for _ in 0..rng.gen_range(nf..=2 * nf) {
        let u = rng.gen_range(0..nf);
        let mut v = rng.gen_range(0..nf - 1);
        if v >= u {
            v += 1;
        }
        add(&mut g, id(u), id(v));
    }
    for v in 0..nf {
        if rng.gen_bool(0.5) {
            let b = nf + rng.gen_range(0..na + nb);
            for _ in 0..rng.gen_range(1..=3) {
                add(&mut g, id(v), id(b));
            }
        }
    }
    let a0: VertexSet = (nf..nf + na).map(id).collect();
    let b0: VertexSet = (nf + na..n).map(id).collect();
    let mut pairs = Vec::new();
    for _ in 0..rng.gen_range(1..=6) {
        let s = g.add_vertex();
        let t = g.add_vertex();
        for x in [s, t] {
            if rng.gen_bool(plain) {
                let u = id(rng.gen_range(0..nf));
                g.add_edge(x, u, Provenance::Terminal(usize::MAX)).unwrap();
                continue;
            }
            let s1 = g.add_vertex();
            g.add_edge(x, s1, Provenance::Terminal(usize::MAX)).unwrap();
            let x = rng.gen_range(1..=3);
            let side = if rng.gen_bool(0.5) { nf + rng.gen_range(0..na) } else { nf + na + rng.gen_range(0..nb) };
            for _ in 0..x {
                add(&mut g, s1, id(side));
                let u = id(rng.gen_range(0..nf));
                add(&mut g, s1, u);
            }
        }
        pairs.push((s, t));
    }
    let k = rng.gen_range(0..=14);
    TermSepInstance::new(g, pairs, a0, b0, k).expect("generator builds valid instances")
}
