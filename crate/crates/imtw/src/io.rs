//! The PACE-style text formats: `.gr` graphs, `.td` tree decompositions, and
//! the weights file. Vertices are 1-indexed on disk and dense 0-indexed in
//! memory. Emitters write canonical (sorted) output that parses back to the
//! same value.

use crate::bits::VertexSet;
use crate::graph::Graph;
use crate::treedec::TreeDecomposition;
use crate::weights::{w_frac, VertexOrder, VertexWeights, Weight};
use crate::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Grammar: comment lines start with `c`; one header `p tw <n> <m>`; then
/// exactly m lines `<u> <v>` with 1-indexed endpoints. Self-loops, duplicate
/// and reversed duplicate edges are rejected.
pub fn parse_gr(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut expected_edges = 0usize;
    let mut seen_edges = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if g.is_some() {
                return Err(parse_err(lineno, "second header line"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "tw" {
                return Err(parse_err(lineno, "expected `p tw <n> <m>`"));
            }
            let n: usize =
                parts[2].parse().map_err(|_| parse_err(lineno, "bad vertex count"))?;
            expected_edges =
                parts[3].parse().map_err(|_| parse_err(lineno, "bad edge count"))?;
            if n > crate::bits::MAX_VERTICES {
                return Err(parse_err(lineno, format!("at most {} vertices supported", crate::bits::MAX_VERTICES)));
            }
            g = Some(Graph::new(n));
            continue;
        }
        let graph = g.as_mut().ok_or_else(|| parse_err(lineno, "edge before header"))?;
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(lineno, "bad edge endpoint"))?;
        let v: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(lineno, "bad edge endpoint"))?;
        if it.next().is_some() {
            return Err(parse_err(lineno, "trailing tokens on edge line"));
        }
        if u == 0 || v == 0 || u > graph.n() || v > graph.n() {
            return Err(parse_err(lineno, "endpoint out of range"));
        }
        if u == v {
            return Err(parse_err(lineno, "self-loop"));
        }
        if graph.has_edge(u - 1, v - 1) {
            return Err(parse_err(lineno, "duplicate edge"));
        }
        graph.add_edge(u - 1, v - 1).map_err(|e| parse_err(lineno, e.to_string()))?;
        seen_edges += 1;
    }
    let graph = g.ok_or_else(|| parse_err(0, "missing `p tw` header"))?;
    if seen_edges != expected_edges {
        return Err(parse_err(0, format!("header promises {expected_edges} edges, file has {seen_edges}")));
    }
    Ok(graph)
}

pub fn emit_gr(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

/// Grammar: `s td <N> <maxbagsize> <n>`; N lines `b <i> <v...>` with bag ids
/// 1..N; then N-1 tree-edge lines `<i> <j>`.
pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<VertexSet>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('s') {
            if header.is_some() {
                return Err(parse_err(lineno, "second header line"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 5 || parts[0] != "s" || parts[1] != "td" {
                return Err(parse_err(lineno, "expected `s td <N> <maxbagsize> <n>`"));
            }
            let nodes: usize = parts[2].parse().map_err(|_| parse_err(lineno, "bad node count"))?;
            let maxbag: usize = parts[3].parse().map_err(|_| parse_err(lineno, "bad max bag size"))?;
            let n: usize = parts[4].parse().map_err(|_| parse_err(lineno, "bad vertex count"))?;
            if nodes == 0 {
                return Err(parse_err(lineno, "a decomposition needs at least one bag"));
            }
            header = Some((nodes, maxbag, n));
            bags = vec![None; nodes];
            continue;
        }
        let (nodes, maxbag, n) = header.ok_or_else(|| parse_err(lineno, "content before `s td` header"))?;
        if let Some(rest) = line.strip_prefix("b ").or(if line == "b" { Some("") } else { None }) {
            let mut it = rest.split_whitespace();
            let id: usize = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| parse_err(lineno, "bad bag id"))?;
            if id == 0 || id > nodes {
                return Err(parse_err(lineno, "bag id out of range"));
            }
            if bags[id - 1].is_some() {
                return Err(parse_err(lineno, format!("duplicate bag id {id}")));
            }
            let mut bag = VertexSet::EMPTY;
            for tok in it {
                let v: usize = tok.parse().map_err(|_| parse_err(lineno, "bad bag vertex"))?;
                if v == 0 || v > n {
                    return Err(parse_err(lineno, format!("bag vertex {v} out of range 1..{n}")));
                }
                bag.insert(v - 1);
            }
            if bag.len() > maxbag {
                return Err(parse_err(lineno, "bag larger than the declared maximum"));
            }
            bags[id - 1] = Some(bag);
            continue;
        }
        // tree edge
        let mut it = line.split_whitespace();
        let a: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(lineno, "bad tree edge"))?;
        let b: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(lineno, "bad tree edge"))?;
        if it.next().is_some() {
            return Err(parse_err(lineno, "trailing tokens on tree edge line"));
        }
        if a == 0 || b == 0 || a > nodes || b > nodes || a == b {
            return Err(parse_err(lineno, "tree edge endpoint out of range"));
        }
        edges.push((a - 1, b - 1));
    }
    let (nodes, _, _) = header.ok_or_else(|| parse_err(0, "missing `s td` header"))?;
    let bags: Vec<VertexSet> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| parse_err(0, format!("bag {} never defined", i + 1))))
        .collect::<Result<_>>()?;
    if edges.len() != nodes - 1 {
        return Err(parse_err(0, format!("{} tree edges for {} bags", edges.len(), nodes)));
    }
    TreeDecomposition::new(bags, edges).map_err(|e| parse_err(0, e.to_string()))
}

/// `n` is the graph's vertex count, recorded in the header.
pub fn emit_td(td: &TreeDecomposition, n: usize) -> String {
    let maxbag = td.bags().iter().map(|b| b.len()).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.node_count(), maxbag, n);
    for (i, bag) in td.bags().iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for v in bag.iter() {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    let mut es: Vec<(usize, usize)> =
        td.tree_edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    es.sort_unstable();
    for (a, b) in es {
        out.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    out
}

/// Lines `<v> <numerator>[/<denominator>]` with v 1-indexed; unlisted
/// vertices weigh 1; listing a vertex twice is an error.
pub fn parse_weights(text: &str, n: usize) -> Result<VertexWeights> {
    let mut ws: Vec<Weight> = vec![w_frac(1, 1); n];
    let mut seen = vec![false; n];
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut it = line.split_whitespace();
        let v: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(lineno, "bad vertex id"))?;
        if v == 0 || v > n {
            return Err(parse_err(lineno, format!("vertex {v} out of range 1..{n}")));
        }
        if seen[v - 1] {
            return Err(parse_err(lineno, format!("vertex {v} listed twice")));
        }
        seen[v - 1] = true;
        let tok = it.next().ok_or_else(|| parse_err(lineno, "missing weight"))?;
        if it.next().is_some() {
            return Err(parse_err(lineno, "trailing tokens on weight line"));
        }
        let w = match tok.split_once('/') {
            None => {
                let num: i64 = tok.parse().map_err(|_| parse_err(lineno, "bad numerator"))?;
                w_frac(num, 1)
            }
            Some((a, b)) => {
                let num: i64 = a.parse().map_err(|_| parse_err(lineno, "bad numerator"))?;
                let den: i64 = b.parse().map_err(|_| parse_err(lineno, "bad denominator"))?;
                if den == 0 {
                    return Err(parse_err(lineno, "zero denominator"));
                }
                w_frac(num, den)
            }
        };
        ws[v - 1] = w;
    }
    VertexWeights::new(ws, VertexOrder::identity(n))
}

pub fn emit_weights(w: &VertexWeights) -> String {
    let mut out = String::new();
    for v in 0..w.len() {
        let x = w.get(v);
        if *x.denom() == 1 {
            out.push_str(&format!("{} {}\n", v + 1, x.numer()));
        } else {
            out.push_str(&format!("{} {}/{}\n", v + 1, x.numer(), x.denom()));
        }
    }
    out
}

pub fn format_weight(w: &Weight) -> String {
    format!("{}/{}", w.numer(), w.denom())
}

/// 1-indexed ascending vertex list, the `solution` line payload.
pub fn format_solution(x: VertexSet) -> String {
    x.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}
