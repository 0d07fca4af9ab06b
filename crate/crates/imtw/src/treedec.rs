//! Tree decompositions: validation against the three defining conditions,
//! width and mu-width measurement, construction from elimination orderings,
//! and decomposition acquisition (trivial single bag, or an exhaustive
//! elimination search minimizing mu-width).

use crate::bits::{Vertex, VertexSet};
use crate::graph::{mu_of_set, reach_through, treewidth_with_order, Graph};
use crate::{Error, FastMap, Guards, Result};

/// An unrooted tree decomposition: one bag per node, tree edges between nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<VertexSet>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Builds a decomposition, checking only that the node graph is a tree.
    /// Bag conditions are checked separately by `validate`.
    pub fn new(bags: Vec<VertexSet>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = bags.len();
        if n == 0 {
            return Err(Error::Invalid("a tree decomposition needs at least one node".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::Invalid(format!(
                "{} nodes need {} tree edges, got {}",
                n,
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Invalid(format!("bad tree edge ({a},{b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        // connectivity (acyclicity follows from the edge count)
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut cnt = 1;
        while let Some(t) = stack.pop() {
            for &s in &adj[t] {
                if !seen[s] {
                    seen[s] = true;
                    cnt += 1;
                    stack.push(s);
                }
            }
        }
        if cnt != n {
            return Err(Error::Invalid("tree edges do not connect all nodes".into()));
        }
        Ok(TreeDecomposition { bags, adj, edges })
    }

    pub fn single_bag(bag: VertexSet) -> Self {
        TreeDecomposition {
            bags: vec![bag],
            adj: vec![Vec::new()],
            edges: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn bag(&self, t: usize) -> VertexSet {
        self.bags[t]
    }

    pub fn set_bag(&mut self, t: usize, bag: VertexSet) {
        self.bags[t] = bag;
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn neighbors(&self, t: usize) -> &[usize] {
        &self.adj[t]
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A graph vertex missing from every bag.
    MissingVertex(Vertex),
    /// A graph edge contained in no bag.
    UncoveredEdge(Vertex, Vertex),
    /// The nodes holding `vertex` split into parts; two witness nodes given.
    Disconnected { vertex: Vertex, node_a: usize, node_b: usize },
    /// A bag mentions a vertex outside the graph's live set.
    ForeignVertex { node: usize, vertex: Vertex },
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            match v {
                Violation::MissingVertex(x) => writeln!(f, "vertex-condition: vertex {x} in no bag")?,
                Violation::UncoveredEdge(u, w) => {
                    writeln!(f, "edge-condition: edge ({u},{w}) in no bag")?
                }
                Violation::Disconnected { vertex, node_a, node_b } => writeln!(
                    f,
                    "connectedness-condition: vertex {vertex} occurs in disconnected nodes {node_a} and {node_b}"
                )?,
                Violation::ForeignVertex { node, vertex } => {
                    writeln!(f, "bag {node} contains foreign vertex {vertex}")?
                }
            }
        }
        Ok(())
    }
}

/// Checks the vertex, edge, and connectedness conditions; invalidity is data,
/// not an error.
pub fn validate(g: &Graph, td: &TreeDecomposition) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut covered = VertexSet::EMPTY;
    for (t, &b) in td.bags.iter().enumerate() {
        covered = covered | b;
        for v in (b - g.vertex_set()).iter() {
            report.violations.push(Violation::ForeignVertex { node: t, vertex: v });
        }
    }
    for v in (g.vertex_set() - covered).iter() {
        report.violations.push(Violation::MissingVertex(v));
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
            report.violations.push(Violation::UncoveredEdge(u, v));
        }
    }
    // connectedness: for each vertex, BFS inside the node set holding it
    for v in g.vertex_set().iter() {
        let holders: Vec<usize> =
            (0..td.node_count()).filter(|&t| td.bags[t].contains(v)).collect();
        if holders.len() <= 1 {
            continue;
        }
        let start = holders[0];
        let mut seen = vec![false; td.node_count()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for &s in td.neighbors(t) {
                if !seen[s] && td.bags[s].contains(v) {
                    seen[s] = true;
                    stack.push(s);
                }
            }
        }
        if let Some(&bad) = holders.iter().find(|&&t| !seen[t]) {
            report.violations.push(Violation::Disconnected { vertex: v, node_a: start, node_b: bad });
        }
    }
    report
}

/// max |bag| - 1; -1 for an all-empty decomposition.
pub fn width(td: &TreeDecomposition) -> isize {
    td.bags.iter().map(|b| b.len() as isize - 1).max().unwrap_or(-1)
}

/// max over bags of mu(bag).
pub fn mu_width(g: &Graph, td: &TreeDecomposition, guards: &Guards) -> Result<usize> {
    let mut best = 0;
    for &b in &td.bags {
        best = best.max(mu_of_set(g, b, guards)?);
    }
    Ok(best)
}

/// The tree decomposition induced by an elimination ordering (first vertex
/// eliminated first): bag(v) = {v} plus the elimination neighborhood of v.
pub fn elimination_decomposition(g: &Graph, order: &[Vertex]) -> TreeDecomposition {
    let m = order.len();
    debug_assert_eq!(m, g.vertex_count());
    if m == 0 {
        return TreeDecomposition::single_bag(VertexSet::EMPTY);
    }
    let mut pos = FastMap::default();
    for (i, &v) in order.iter().enumerate() {
        pos.insert(v, i);
    }
    let mut bags = Vec::with_capacity(m);
    let mut eliminated = VertexSet::EMPTY;
    for &v in order {
        let q = reach_through(g, eliminated, v);
        bags.push(q.with(v));
        eliminated.insert(v);
    }
    // node i attaches to the node of the earliest-eliminated vertex of q
    let mut edges = Vec::with_capacity(m - 1);
    for (i, &v) in order.iter().enumerate() {
        let q = bags[i].without(v);
        match q.iter().map(|u| pos[&u]).min() {
            Some(j) => edges.push((i, j)),
            None => {
                // isolated component: hang onto the next node to keep a tree
                if i + 1 < m {
                    edges.push((i, i + 1));
                }
            }
        }
    }
    TreeDecomposition::new(bags, edges).expect("elimination decomposition is a tree")
}

/// Where a working decomposition comes from when none was supplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcquireSource {
    /// The single-bag decomposition; its mu-width is mu(G).
    Trivial,
    /// Exhaustive subset-DP over elimination orderings minimizing mu-width,
    /// with the treewidth-optimal ordering as a comparison candidate.
    Search,
}

pub fn acquire_decomposition(g: &Graph, source: AcquireSource, guards: &Guards) -> Result<TreeDecomposition> {
    match source {
        AcquireSource::Trivial => Ok(TreeDecomposition::single_bag(g.vertex_set())),
        AcquireSource::Search => {
            let m = g.vertex_count();
            guards.check("vertices in mu-width search", guards.max_search_n, m)?;
            if m == 0 {
                return Ok(TreeDecomposition::single_bag(VertexSet::EMPTY));
            }
            let order = min_mu_elimination_order(g, guards)?;
            let by_mu = elimination_decomposition(g, &order);
            let (_, tw_order) = treewidth_with_order(g, guards)?;
            let by_tw = elimination_decomposition(g, &tw_order);
            let mu_a = mu_width(g, &by_mu, guards)?;
            let mu_b = mu_width(g, &by_tw, guards)?;
            Ok(if mu_b < mu_a { by_tw } else { by_mu })
        }
    }
}

/// Subset DP minimizing, over all elimination orderings, the maximum mu of an
/// elimination bag. Same state space as the treewidth DP, different measure.
fn min_mu_elimination_order(g: &Graph, guards: &Guards) -> Result<Vec<Vertex>> {
    let verts: Vec<Vertex> = g.vertices().collect();
    let m = verts.len();
    let full: usize = (1usize << m) - 1;
    let mut dp = vec![u8::MAX; full + 1];
    let mut choice = vec![u8::MAX; full + 1];
    let mut mu_cache: FastMap<VertexSet, u8> = FastMap::default();
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
            let bag = reach_through(g, s, v).with(v);
            let mu = match mu_cache.get(&bag) {
                Some(&x) => x,
                None => {
                    let x = mu_of_set(g, bag, guards)? as u8;
                    mu_cache.insert(bag, x);
                    x
                }
            };
            let nm = mask | 1 << i;
            let val = cur.max(mu);
            if val < dp[nm] {
                dp[nm] = val;
                choice[nm] = i as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(m);
    let mut mask = full;
    while mask != 0 {
        let i = choice[mask] as usize;
        order.push(verts[i]);
        mask &= !(1 << i);
    }
    order.reverse();
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::treewidth_exact;
    use crate::rng::{random_graph, random_tree_decomposition, Rng};

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().collect()
    }

    #[test]
    fn validate_examples() {
        // P3 with bags {0,1},{1,2} is valid
        let p3 = Graph::path(3);
        let td = TreeDecomposition::new(vec![set(&[0, 1]), set(&[1, 2])], vec![(0, 1)]).unwrap();
        assert!(validate(&p3, &td).is_valid());

        // add edge 0-2 to the graph: edge-condition violation with witness
        let mut g = Graph::path(3);
        g.add_edge(0, 2).unwrap();
        let report = validate(&g, &td);
        assert_eq!(report.violations, vec![Violation::UncoveredEdge(0, 2)]);

        // bags {0},{1},{0} on a path: vertex 0 occurs disconnected
        let g2 = Graph::new(2);
        let td2 =
            TreeDecomposition::new(vec![set(&[0]), set(&[1]), set(&[0])], vec![(0, 1), (1, 2)])
                .unwrap();
        let report = validate(&g2, &td2);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Disconnected { vertex: 0, .. })));
    }

    #[test]
    fn width_examples() {
        let td = TreeDecomposition::single_bag(set(&[0, 1, 2, 3]));
        assert_eq!(width(&td), 3);
        let td = TreeDecomposition::new(vec![set(&[0, 1]), set(&[1, 2])], vec![(0, 1)]).unwrap();
        assert_eq!(width(&td), 1);
        let td = TreeDecomposition::single_bag(VertexSet::EMPTY);
        assert_eq!(width(&td), -1);
    }

    #[test]
    fn mu_width_examples() {
        let guards = Guards::default();
        let c5 = Graph::cycle(5);
        let td = TreeDecomposition::single_bag(c5.vertex_set());
        assert_eq!(mu_width(&c5, &td, &guards).unwrap(), 1);

        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let td = TreeDecomposition::single_bag(g.vertex_set());
        assert_eq!(mu_width(&g, &td, &guards).unwrap(), 2);

        let k33 = Graph::complete_bipartite(3, 3);
        let td = TreeDecomposition::single_bag(k33.vertex_set());
        assert_eq!(mu_width(&k33, &td, &guards).unwrap(), 1);
    }

    #[test]
    fn acquire_examples() {
        let guards = Guards::default();
        let c5 = Graph::cycle(5);
        let td = acquire_decomposition(&c5, AcquireSource::Trivial, &guards).unwrap();
        assert_eq!(td.node_count(), 1);
        assert_eq!(mu_width(&c5, &td, &guards).unwrap(), 1);

        let k33 = Graph::complete_bipartite(3, 3);
        let td = acquire_decomposition(&k33, AcquireSource::Trivial, &guards).unwrap();
        assert_eq!(mu_width(&k33, &td, &guards).unwrap(), 1);

        let p4 = Graph::path(4);
        let td = acquire_decomposition(&p4, AcquireSource::Search, &guards).unwrap();
        assert!(validate(&p4, &td).is_valid());
        assert_eq!(mu_width(&p4, &td, &guards).unwrap(), 1);
    }

    #[test]
    fn elimination_decompositions_are_valid_and_match_width() {
        let guards = Guards::default();
        let mut rng = Rng::new(77);
        for _ in 0..80 {
            let n = rng.range(1, 10);
            let p = *rng.pick(&[20, 40, 60]);
            let g = random_graph(&mut rng, n, p);
            let (tw, order) = treewidth_with_order(&g, &guards).unwrap();
            let td = elimination_decomposition(&g, &order);
            assert!(validate(&g, &td).is_valid(), "invalid for {g:?}");
            assert_eq!(width(&td), tw.max(tw), "width mismatch for {g:?}");
        }
    }

    #[test]
    fn search_beats_or_ties_trivial_on_small_graphs() {
        let guards = Guards::default();
        let mut rng = Rng::new(99);
        for _ in 0..30 {
            let n = rng.range(1, 8);
            let g = random_graph(&mut rng, n, 40);
            let trivial = acquire_decomposition(&g, AcquireSource::Trivial, &guards).unwrap();
            let searched = acquire_decomposition(&g, AcquireSource::Search, &guards).unwrap();
            assert!(validate(&g, &searched).is_valid());
            assert!(
                mu_width(&g, &searched, &guards).unwrap() <= mu_width(&g, &trivial, &guards).unwrap()
                    || width(&searched) <= width(&trivial)
            );
        }
    }

    #[test]
    fn random_padded_decompositions_validate() {
        let mut rng = Rng::new(3);
        for _ in 0..60 {
            let n = rng.range(1, 9);
            let g = random_graph(&mut rng, n, 40);
            let td = random_tree_decomposition(&mut rng, &g);
            assert!(validate(&g, &td).is_valid());
        }
    }

    #[test]
    fn treewidth_of_masked_subgraph() {
        let guards = Guards::default();
        let g = Graph::complete(5).induced(set(&[0, 2, 4])).unwrap();
        assert_eq!(treewidth_exact(&g, &guards).unwrap(), 2);
    }
}
