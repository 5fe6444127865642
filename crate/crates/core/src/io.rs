//! Text formats.
//!
//! Graphs use DIMACS edge syntax with 1-based vertices:
//!
//! ```text
//! c a triangle
//! p edge 3 3
//! e 1 2
//! e 2 3
//! e 3 1
//! ```
//!
//! Terminal separation instances add `t s t` (a pair), `a v` and `b v`
//! (members of A° and B°) and `k n` (the budget).

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::multigraph::{MultiGraph, Provenance, VertexId, VertexSet};
use crate::termsep::TermSepInstance;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

struct Parsed {
    graph: MultiGraph,
    pairs: Vec<(VertexId, VertexId)>,
    a: VertexSet,
    b: VertexSet,
    k: Option<i64>,
}

fn parse(text: &str, termsep: bool) -> Result<Parsed> {
    let mut graph: Option<MultiGraph> = None;
    let mut declared_m = 0usize;
    let mut out = Parsed { graph: MultiGraph::new(), pairs: Vec::new(), a: VertexSet::new(), b: VertexSet::new(), k: None };
    let mut edges = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut words = raw.split_whitespace();
        let Some(kind) = words.next() else { continue };
        let nums: Vec<&str> = words.collect();
        let int = |s: &str| s.parse::<i64>().map_err(|_| parse_err(line, format!("expected an integer, found {s:?}")));
        let arity = |n: usize| {
            if nums.len() == n {
                Ok(())
            } else {
                Err(parse_err(line, format!("{kind:?} takes {n} values, found {}", nums.len())))
            }
        };
        let vertex = |g: &Option<MultiGraph>, s: &str| -> Result<VertexId> {
            let g = g.as_ref().ok_or_else(|| parse_err(line, "vertex before the p line"))?;
            let v = int(s)?;
            if v < 1 || v as usize > g.id_bound() {
                return Err(parse_err(line, format!("vertex {v} out of range 1..={}", g.id_bound())));
            }
            Ok(VertexId(v as u32 - 1))
        };
        match kind {
            "c" => {}
            "p" => {
                if graph.is_some() {
                    return Err(parse_err(line, "second p line"));
                }
                if nums.len() != 3 || nums[0] != "edge" {
                    return Err(parse_err(line, "expected `p edge <n> <m>`"));
                }
                let n = int(nums[1])?;
                let m = int(nums[2])?;
                if n < 0 || m < 0 {
                    return Err(parse_err(line, "negative size"));
                }
                declared_m = m as usize;
                graph = Some(MultiGraph::with_vertices(n as usize));
            }
            "e" => {
                arity(2)?;
                let u = vertex(&graph, nums[0])?;
                let v = vertex(&graph, nums[1])?;
                if u == v {
                    return Err(parse_err(line, "self-loop"));
                }
                graph.as_mut().unwrap().add_edge(u, v, Provenance::Original(edges))?;
                edges += 1;
            }
            "t" | "a" | "b" | "k" if termsep => match kind {
                "t" => {
                    arity(2)?;
                    out.pairs.push((vertex(&graph, nums[0])?, vertex(&graph, nums[1])?));
                }
                "a" => {
                    arity(1)?;
                    out.a.insert(vertex(&graph, nums[0])?);
                }
                "b" => {
                    arity(1)?;
                    out.b.insert(vertex(&graph, nums[0])?);
                }
                _ => {
                    arity(1)?;
                    if out.k.replace(int(nums[0])?).is_some() {
                        return Err(parse_err(line, "second k line"));
                    }
                }
            },
            other => return Err(parse_err(line, format!("unknown line type {other:?}"))),
        }
    }
    let graph = graph.ok_or_else(|| parse_err(0, "missing p line"))?;
    if edges != declared_m {
        return Err(parse_err(0, format!("header declares {declared_m} edges, found {edges}")));
    }
    out.graph = graph;
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    Ok(parse(text, false)?.graph)
}

/// Parses a terminal separation instance; the budget defaults to 0.
pub fn parse_termsep(text: &str) -> Result<TermSepInstance> {
    let p = parse(text, true)?;
    if p.a.intersection(&p.b).next().is_some() {
        return Err(parse_err(0, "a vertex is listed in both a and b"));
    }
    TermSepInstance::new(p.graph, p.pairs, p.a, p.b, p.k.unwrap_or(0))
}

/// Dense renumbering of the live vertices, in id order.
fn numbering(g: &MultiGraph) -> std::collections::BTreeMap<VertexId, usize> {
    g.vertices().enumerate().map(|(i, v)| (v, i + 1)).collect()
}

fn write_edges(g: &MultiGraph, num: &std::collections::BTreeMap<VertexId, usize>, out: &mut String) {
    let mut edges: Vec<(VertexId, VertexId, Provenance)> = g.edges().collect();
    edges.sort_by_key(|e| match e.2 {
        Provenance::Original(i) => (0, i),
        _ => (1, 0),
    });
    writeln!(out, "p edge {} {}", g.vertex_count(), edges.len()).unwrap();
    for (u, v, _) in edges {
        writeln!(out, "e {} {}", num[&u], num[&v]).unwrap();
    }
}

pub fn write_graph(g: &MultiGraph) -> String {
    let mut out = String::new();
    write_edges(g, &numbering(g), &mut out);
    out
}

pub fn write_termsep(inst: &TermSepInstance) -> String {
    let num = numbering(&inst.graph);
    let mut out = String::new();
    write_edges(&inst.graph, &num, &mut out);
    for (_, p) in inst.pairs() {
        writeln!(out, "t {} {}", num[&p.s], num[&p.t]).unwrap();
    }
    for v in &inst.base.a {
        writeln!(out, "a {}", num[v]).unwrap();
    }
    for v in &inst.base.b {
        writeln!(out, "b {}", num[v]).unwrap();
    }
    writeln!(out, "k {}", inst.k).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let text = "c triangle with a double edge\np edge 4 4\ne 1 2\ne 2 3\ne 3 1\ne 1 2\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.multiplicity(VertexId(0), VertexId(1)), 2);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap().edge_count(), 4);
        assert_eq!(write_graph(&parse_graph(&write_graph(&g)).unwrap()), write_graph(&g));
    }

    #[test]
    fn termsep_round_trip() {
        let text = "p edge 5 3\ne 1 2\ne 2 3\ne 4 5\nt 1 3\na 2\nk 1\n";
        let inst = parse_termsep(text).unwrap();
        assert_eq!(inst.pair_count(), 1);
        assert_eq!(inst.k, 1);
        let again = parse_termsep(&write_termsep(&inst)).unwrap();
        assert_eq!(write_termsep(&again), write_termsep(&inst));
    }

    #[test]
    fn diagnostics() {
        let cases = [
            ("p edge 2 1\ne 1 3\n", 2),
            ("p edge 2 1\ne 1 x\n", 2),
            ("e 1 2\n", 1),
            ("p edge 2 1\nq\n", 2),
            ("p edge 2 1\ne 1 1\n", 2),
        ];
        for (text, want) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(matches!(parse_graph("p edge 2 2\ne 1 2\n"), Err(Error::Parse { .. })));
        assert!(parse_termsep("p edge 3 2\ne 1 2\ne 1 3\nt 1 2\n").is_err());
    }
}
