//! Deterministic seeded randomness for the self-check suites and tests.
//! SplitMix64: identical streams on every platform, no dependencies.

use crate::bits::VertexSet;
use crate::graph::Graph;
use crate::treedec::TreeDecomposition;
use crate::weights::{w_frac, VertexOrder, VertexWeights};

#[derive(Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.wrapping_add(0x9e3779b97f4a7c15))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in 0..bound (bound > 0).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    pub fn range(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        lo + self.below(hi_inclusive - lo + 1)
    }

    /// True with probability num/den.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_u64() % den < num
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.below(xs.len())]
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i + 1);
            xs.swap(i, j);
        }
    }
}

/// G(n, p) with p given in percent.
pub fn random_graph(rng: &mut Rng, n: usize, p_percent: u64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.chance(p_percent, 100) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Exact rational weights in [-5, 5]: numerator in [-5d, 5d] over d in {1,2,3}.
pub fn random_weights(rng: &mut Rng, n: usize) -> VertexWeights {
    let mut ws = Vec::with_capacity(n);
    for _ in 0..n {
        let d = rng.range(1, 3) as i64;
        let num = rng.range(0, (10 * d) as usize) as i64 - 5 * d;
        ws.push(w_frac(num, d));
    }
    VertexWeights::new(ws, VertexOrder::identity(n)).unwrap()
}

pub fn random_subset(rng: &mut Rng, of: VertexSet) -> VertexSet {
    let mut s = VertexSet::EMPTY;
    for v in of.iter() {
        if rng.chance(1, 2) {
            s.insert(v);
        }
    }
    s
}

/// A valid tree decomposition from a random elimination ordering, with the
/// bags optionally padded by a few extra vertices to vary the shapes.
pub fn random_tree_decomposition(rng: &mut Rng, g: &Graph) -> TreeDecomposition {
    let mut order: Vec<usize> = g.vertices().collect();
    rng.shuffle(&mut order);
    let mut td = crate::treedec::elimination_decomposition(g, &order);
    // pad some bags with extra vertices; stays valid (bags only grow, and we
    // extend an existing occurrence region of the vertex)
    let nodes = td.node_count();
    for t in 0..nodes {
        if rng.chance(1, 4) {
            let bag = td.bag(t);
            if let Some(v) = bag.min_elem() {
                // also add v to a neighbor bag to grow its subtree
                let nb: Vec<usize> = td.neighbors(t).to_vec();
                for &s in &nb {
                    if rng.chance(1, 2) {
                        let mut b = td.bag(s);
                        b.insert(v);
                        td.set_bag(s, b);
                    }
                }
            }
        }
    }
    td
}

/// A valid rooted binary tree decomposition for automaton tests: elimination
/// decomposition, rooted at a random node, high-degree nodes split by
/// duplicating bags.
pub fn random_binary_decomposition(
    rng: &mut Rng,
    g: &Graph,
) -> (Vec<VertexSet>, Vec<Vec<usize>>, usize) {
    let td = random_tree_decomposition(rng, g);
    let root = rng.below(td.node_count());
    binarize_rooted(&td, root)
}

/// Roots `td` at `root` and splits nodes with more than two children by
/// duplicate-bag copies. Returns (bags, children, root).
pub fn binarize_rooted(
    td: &TreeDecomposition,
    root: usize,
) -> (Vec<VertexSet>, Vec<Vec<usize>>, usize) {
    let n = td.node_count();
    let mut bags: Vec<VertexSet> = (0..n).map(|t| td.bag(t)).collect();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    // BFS orientation
    let mut seen = vec![false; n];
    let mut queue = vec![root];
    seen[root] = true;
    while let Some(t) = queue.pop() {
        for &s in td.neighbors(t) {
            if !seen[s] {
                seen[s] = true;
                children[t].push(s);
                queue.push(s);
            }
        }
    }
    // split fat nodes
    let mut t = 0;
    while t < bags.len() {
        if children[t].len() > 2 {
            let mut cs = std::mem::take(&mut children[t]);
            let c0 = cs.remove(0);
            let copy = bags.len();
            bags.push(bags[t]);
            children.push(cs);
            children[t] = vec![c0, copy];
        }
        t += 1;
    }
    (bags, children, root)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_stream() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn random_graphs_are_simple() {
        let mut rng = Rng::new(1);
        for _ in 0..50 {
            let n = rng.range(1, 10);
            let g = random_graph(&mut rng, n, 40);
            for v in g.vertices() {
                assert!(!g.neighbors(v).contains(v));
                for u in g.neighbors(v).iter() {
                    assert!(g.neighbors(u).contains(v));
                }
            }
        }
    }

    #[test]
    fn random_decompositions_are_valid() {
        let mut rng = Rng::new(5);
        for _ in 0..60 {
            let n = rng.range(1, 9);
            let g = random_graph(&mut rng, n, 40);
            let td = random_tree_decomposition(&mut rng, &g);
            let report = crate::treedec::validate(&g, &td);
            assert!(report.is_valid(), "invalid random td: {report:?}");
        }
    }

    #[test]
    fn binary_decompositions_are_binary_and_valid() {
        let mut rng = Rng::new(9);
        for _ in 0..60 {
            let n = rng.range(1, 9);
            let g = random_graph(&mut rng, n, 40);
            let (bags, children, root) = random_binary_decomposition(&mut rng, &g);
            for cs in &children {
                assert!(cs.len() <= 2);
            }
            // rebuild an (unrooted) decomposition and validate it
            let mut edges = Vec::new();
            for (t, cs) in children.iter().enumerate() {
                for &c in cs {
                    edges.push((t, c));
                }
            }
            let td = TreeDecomposition::new(bags.clone(), edges).unwrap();
            assert!(crate::treedec::validate(&g, &td).is_valid());
            // all nodes reachable from root
            let mut cnt = 1;
            let mut stack = vec![root];
            let mut seen = vec![false; bags.len()];
            seen[root] = true;
            while let Some(t) = stack.pop() {
                for &c in &children[t] {
                    assert!(!seen[c]);
                    seen[c] = true;
                    cnt += 1;
                    stack.push(c);
                }
            }
            assert_eq!(cnt, bags.len());
        }
    }
}
