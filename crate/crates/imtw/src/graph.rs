//! Graph representation and the combinatorial primitives the pipeline and the
//! oracle share: independent sets, induced matchings, the bag measure mu, and
//! exact treewidth by subset dynamic programming.

use crate::bits::{Vertex, VertexSet, MAX_VERTICES};
use crate::{Error, Guards, Result};

/// A simple undirected graph over dense vertex ids 0..n-1. `present` masks
/// the live vertex set so induced subgraphs keep original ids and sets from
/// different contexts compare directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    present: VertexSet,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graphs are limited to {MAX_VERTICES} vertices");
        Graph {
            n,
            present: VertexSet::full(n),
            adj: vec![VertexSet::EMPTY; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Invalid(format!("self-loop at vertex {u}")));
        }
        if !self.present.contains(u) || !self.present.contains(v) {
            return Err(Error::Invalid(format!("edge ({u},{v}) touches a masked vertex")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            Err(Error::OutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Size of the id space (masked vertices included).
    pub fn n(&self) -> usize {
        self.n
    }

    /// The live vertex set.
    pub fn vertex_set(&self) -> VertexSet {
        self.present
    }

    pub fn vertex_count(&self) -> usize {
        self.present.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        self.present.iter()
    }

    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        self.adj[v]
    }

    /// N(s): all neighbors of members of s, minus s itself.
    pub fn neighborhood_of_set(&self, s: VertexSet) -> VertexSet {
        let mut acc = VertexSet::EMPTY;
        for v in s.iter() {
            acc = acc | self.adj[v];
        }
        acc - s
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut es = Vec::new();
        for u in self.present.iter() {
            for v in (self.adj[u] & self.present).iter() {
                if u < v {
                    es.push((u, v));
                }
            }
        }
        es
    }

    pub fn edge_count(&self) -> usize {
        self.present.iter().map(|v| self.adj[v].len()).sum::<usize>() / 2
    }

    /// Are there any edges inside s?
    pub fn has_edge_within(&self, s: VertexSet) -> bool {
        s.iter().any(|v| self.adj[v].intersects(s))
    }

    /// The subgraph induced by x, keeping original vertex ids (masking).
    pub fn induced(&self, x: VertexSet) -> Result<Graph> {
        if !x.is_subset_of(self.present) {
            let bad = (x - self.present).min_elem().unwrap();
            return Err(Error::OutOfRange { vertex: bad, n: self.n });
        }
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for v in x.iter() {
            adj[v] = self.adj[v] & x;
        }
        Ok(Graph { n: self.n, present: x, adj })
    }

    /// Connected component of `start` within `within`.
    pub fn component_of(&self, start: Vertex, within: VertexSet) -> VertexSet {
        debug_assert!(within.contains(start));
        let mut comp = VertexSet::singleton(start);
        let mut frontier = VertexSet::singleton(start);
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next | (self.adj[v] & within);
            }
            next = next - comp;
            comp = comp | next;
            frontier = next;
        }
        comp
    }

    pub fn components(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.min_elem() {
            let c = self.component_of(v, within);
            out.push(c);
            rest = rest - c;
        }
        out
    }

    // --- small named graphs, used all over the tests ---

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i).unwrap();
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0).unwrap();
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }
}

/// True iff g[x] has no edges.
pub fn is_independent_set(g: &Graph, x: VertexSet) -> Result<bool> {
    if !x.is_subset_of(g.vertex_set()) {
        let bad = (x - g.vertex_set()).min_elem().unwrap();
        return Err(Error::OutOfRange { vertex: bad, n: g.n() });
    }
    Ok(!g.has_edge_within(x))
}

/// All inclusion-wise maximal independent sets of g, each once, in ascending
/// bitmask order. Bron-Kerbosch with pivoting on the complement graph.
pub fn maximal_independent_sets(g: &Graph, guards: &Guards) -> Result<Vec<VertexSet>> {
    let verts = g.vertex_set();
    // complement adjacency restricted to present vertices
    let comp: Vec<VertexSet> = (0..g.n())
        .map(|v| {
            if verts.contains(v) {
                (verts - g.neighbors(v)).without(v)
            } else {
                VertexSet::EMPTY
            }
        })
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(&comp, VertexSet::EMPTY, verts, VertexSet::EMPTY, guards, &mut out)?;
    out.sort();
    Ok(out)
}

fn bron_kerbosch(
    adj: &[VertexSet],
    r: VertexSet,
    p: VertexSet,
    x: VertexSet,
    guards: &Guards,
    out: &mut Vec<VertexSet>,
) -> Result<()> {
    if p.is_empty() && x.is_empty() {
        guards.check("maximal independent set count", guards.max_mis_count, out.len() + 1)?;
        out.push(r);
        return Ok(());
    }
    // pivot: element of p|x maximizing |adj & p|
    let pivot = (p | x)
        .iter()
        .max_by_key(|&u| (adj[u] & p).len())
        .unwrap();
    let candidates = p - adj[pivot];
    let mut p = p;
    let mut x = x;
    for v in candidates.iter() {
        bron_kerbosch(adj, r.with(v), p & adj[v], x & adj[v], guards, out)?;
        p.remove(v);
        x.insert(v);
    }
    Ok(())
}

/// A list of edges, meant to be pairwise endpoint-disjoint.
pub type Matching = Vec<(Vertex, Vertex)>;

pub fn is_matching(g: &Graph, m: &Matching) -> bool {
    let mut seen = VertexSet::EMPTY;
    for &(u, v) in m {
        if u == v || !g.has_edge(u, v) || seen.contains(u) || seen.contains(v) {
            return false;
        }
        seen.insert(u);
        seen.insert(v);
    }
    true
}

/// True iff the endpoint set of m induces exactly the edges of m.
pub fn is_induced_matching(g: &Graph, m: &Matching) -> Result<bool> {
    if !is_matching(g, m) {
        return Err(Error::Contract("is_induced_matching called on a non-matching".into()));
    }
    let endpoints: VertexSet = m.iter().flat_map(|&(u, v)| [u, v]).collect();
    let induced_edge_count = g
        .induced(endpoints)?
        .edge_count();
    Ok(induced_edge_count == m.len())
}

/// mu(x): the maximum size of an induced matching all of whose edges touch x.
/// Exhaustive branch-and-bound over edges.
pub fn mu_of_set(g: &Graph, x: VertexSet, guards: &Guards) -> Result<usize> {
    if !x.is_subset_of(g.vertex_set()) {
        let bad = (x - g.vertex_set()).min_elem().unwrap();
        return Err(Error::OutOfRange { vertex: bad, n: g.n() });
    }
    let edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| x.contains(u) || x.contains(v))
        .collect();
    guards.check("edges in mu search", guards.max_mu_edges, edges.len())?;
    let closed: Vec<VertexSet> = edges
        .iter()
        .map(|&(u, v)| g.neighbors(u) | g.neighbors(v) | VertexSet::singleton(u) | VertexSet::singleton(v))
        .collect();
    let mut best = 0;
    mu_rec(&edges, &closed, 0, VertexSet::EMPTY, 0, &mut best);
    Ok(best)
}

fn mu_rec(
    edges: &[(Vertex, Vertex)],
    closed: &[VertexSet],
    i: usize,
    excluded: VertexSet,
    count: usize,
    best: &mut usize,
) {
    if count > *best {
        *best = count;
    }
    if i >= edges.len() || count + (edges.len() - i) <= *best {
        return;
    }
    let (u, v) = edges[i];
    if !excluded.contains(u) && !excluded.contains(v) {
        mu_rec(edges, closed, i + 1, excluded | closed[i], count + 1, best);
    }
    mu_rec(edges, closed, i + 1, excluded, count, best);
}

/// A maximum-size induced submatching of m (exhaustive over subsets of m).
pub fn refine_to_induced_matching(g: &Graph, m: &Matching, guards: &Guards) -> Result<Matching> {
    if !is_matching(g, m) {
        return Err(Error::Contract("refine_to_induced_matching needs a matching".into()));
    }
    guards.check("matching size in refine", 20, m.len())?;
    let mut best: Matching = Vec::new();
    for mask in 0u32..1 << m.len() {
        if (mask.count_ones() as usize) <= best.len() {
            continue;
        }
        let sub: Matching = m
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| *e)
            .collect();
        if is_induced_matching(g, &sub)? {
            best = sub;
        }
    }
    Ok(best)
}

/// Exact treewidth of the live vertex set, by the subset DP over elimination
/// orderings. Returns -1 for the empty graph (width convention).
pub fn treewidth_exact(g: &Graph, guards: &Guards) -> Result<isize> {
    Ok(tw_dp(g, guards)?.0)
}

/// Like `treewidth_exact`, but also returns an optimal elimination ordering
/// (first vertex eliminated first).
pub fn treewidth_with_order(g: &Graph, guards: &Guards) -> Result<(isize, Vec<Vertex>)> {
    tw_dp(g, guards)
}

fn tw_dp(g: &Graph, guards: &Guards) -> Result<(isize, Vec<Vertex>)> {
    let verts: Vec<Vertex> = g.vertices().collect();
    let m = verts.len();
    guards.check("vertices in exact treewidth", guards.max_exact_n, m)?;
    if m == 0 {
        return Ok((-1, Vec::new()));
    }
    let full: usize = (1usize << m) - 1;
    // dp[mask] = best achievable max-Q over orderings eliminating exactly mask first
    let mut dp = vec![u8::MAX; full + 1];
    let mut choice = vec![u8::MAX; full + 1];
    dp[0] = 0;
    for mask in 0usize..=full {
        if dp[mask] == u8::MAX {
            continue;
        }
        let cur = dp[mask];
        let s: VertexSet = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        for (i, &v) in verts.iter().enumerate() {
            if mask >> i & 1 == 1 {
                continue;
            }
            let q = reach_through(g, s, v).len() as u8;
            let nm = mask | 1 << i;
            let val = cur.max(q);
            if val < dp[nm] {
                dp[nm] = val;
                choice[nm] = i as u8;
            }
        }
    }
    // reconstruct the order backwards
    let mut order = Vec::with_capacity(m);
    let mut mask = full;
    while mask != 0 {
        let i = choice[mask] as usize;
        order.push(verts[i]);
        mask &= !(1 << i);
    }
    order.reverse();
    Ok((dp[full] as isize, order))
}

/// Q(s, v): vertices outside s and v reachable from v by paths with all
/// internal vertices in s. This is the elimination neighborhood of v after
/// eliminating s.
pub fn reach_through(g: &Graph, s: VertexSet, v: Vertex) -> VertexSet {
    let comp = g.component_of(v, s.with(v) & g.vertex_set());
    g.neighborhood_of_set(comp) - s
}
