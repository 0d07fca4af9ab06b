//! Exact rational vertex weights, the total vertex order, and the
//! lexicographic comparison of vertex sets used to break weight ties.
//!
//! Weights are never floats: optimality and the lexicographic tie-break both
//! require exact comparison.

use crate::bits::{Vertex, VertexSet};
use crate::{Error, Result};
use num_rational::Ratio;
use std::cmp::Ordering;

pub type Weight = Ratio<i64>;

pub fn w_int(n: i64) -> Weight {
    Ratio::from_integer(n)
}

pub fn w_frac(num: i64, den: i64) -> Weight {
    Ratio::new(num, den)
}

/// A total order on vertices, given as a rank permutation. The default order
/// is ascending vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    rank: Vec<usize>,
}

impl VertexOrder {
    pub fn identity(n: usize) -> Self {
        VertexOrder { rank: (0..n).collect() }
    }

    /// `perm[i]` is the vertex at position i (smallest first).
    pub fn from_permutation(perm: &[Vertex]) -> Result<Self> {
        let n = perm.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &v) in perm.iter().enumerate() {
            if v >= n {
                return Err(Error::OutOfRange { vertex: v, n });
            }
            if rank[v] != usize::MAX {
                return Err(Error::Invalid(format!("vertex {v} appears twice in order")));
            }
            rank[v] = pos;
        }
        Ok(VertexOrder { rank })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn rank(&self, v: Vertex) -> usize {
        self.rank[v]
    }

    pub fn cmp(&self, u: Vertex, v: Vertex) -> Ordering {
        self.rank[u].cmp(&self.rank[v])
    }

    /// Members of `s` sorted ascending in this order.
    pub fn sorted(&self, s: VertexSet) -> Vec<Vertex> {
        let mut vs = s.to_vec();
        vs.sort_by_key(|&v| self.rank[v]);
        vs
    }
}

/// `a` is lexicographically larger than `b`: larger cardinality, or equal
/// cardinality and, comparing the ascending-sorted sequences, a larger element
/// at the first position where they differ.
pub fn lex_larger(a: VertexSet, b: VertexSet, order: &VertexOrder) -> bool {
    match a.len().cmp(&b.len()) {
        Ordering::Greater => return true,
        Ordering::Less => return false,
        Ordering::Equal => {}
    }
    let xs = order.sorted(a);
    let ys = order.sorted(b);
    for (x, y) in xs.iter().zip(ys.iter()) {
        match order.cmp(*x, *y) {
            Ordering::Greater => return true,
            Ordering::Less => return false,
            Ordering::Equal => {}
        }
    }
    false
}

/// Per-vertex exact weights together with the vertex order.
#[derive(Debug, Clone)]
pub struct VertexWeights {
    weights: Vec<Weight>,
    order: VertexOrder,
}

impl VertexWeights {
    pub fn new(weights: Vec<Weight>, order: VertexOrder) -> Result<Self> {
        if weights.len() != order.len() {
            return Err(Error::Invalid(format!(
                "{} weights for an order over {} vertices",
                weights.len(),
                order.len()
            )));
        }
        Ok(VertexWeights { weights, order })
    }

    /// All-ones weights with the identity order.
    pub fn unit(n: usize) -> Self {
        VertexWeights {
            weights: vec![w_int(1); n],
            order: VertexOrder::identity(n),
        }
    }

    pub fn from_ints(ws: &[i64]) -> Self {
        VertexWeights {
            weights: ws.iter().map(|&w| w_int(w)).collect(),
            order: VertexOrder::identity(ws.len()),
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn get(&self, v: Vertex) -> Weight {
        self.weights[v]
    }

    pub fn set(&mut self, v: Vertex, w: Weight) {
        self.weights[v] = w;
    }

    pub fn order(&self) -> &VertexOrder {
        &self.order
    }

    pub fn total(&self, s: VertexSet) -> Weight {
        let mut acc = w_int(0);
        for v in s.iter() {
            acc += self.weights[v];
        }
        acc
    }

    /// Ascending (weight, order) sort of a vertex list, so that the heaviest /
    /// order-latest vertices form the suffix.
    pub fn sort_ascending(&self, vs: &mut [Vertex]) {
        vs.sort_by(|&a, &b| {
            self.weights[a]
                .cmp(&self.weights[b])
                .then(self.order.cmp(a, b))
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().collect()
    }

    #[test]
    fn lex_size_clause() {
        let ord = VertexOrder::identity(5);
        assert!(lex_larger(set(&[0, 1]), set(&[2]), &ord));
        assert!(!lex_larger(set(&[2]), set(&[0, 1]), &ord));
    }

    #[test]
    fn lex_first_difference() {
        let ord = VertexOrder::identity(5);
        // sorted [2,3] vs [1,3]: first position 2 > 1
        assert!(lex_larger(set(&[2, 3]), set(&[1, 3]), &ord));
        // sorted [1,4] vs [2,4]: first position 1 < 2
        assert!(!lex_larger(set(&[1, 4]), set(&[2, 4]), &ord));
        assert!(lex_larger(set(&[2, 4]), set(&[1, 4]), &ord));
    }

    #[test]
    fn lex_equal_sets() {
        let ord = VertexOrder::identity(4);
        assert!(!lex_larger(set(&[1, 2]), set(&[1, 2]), &ord));
    }

    #[test]
    fn lex_swap_property() {
        // replacing u by a later vertex v makes the set lex-larger
        let ord = VertexOrder::identity(6);
        let x = set(&[1, 3, 4]);
        let x2 = set(&[3, 4, 5]); // 1 -> 5
        assert!(lex_larger(x2, x, &ord));
    }

    #[test]
    fn lex_is_strict_total_order_on_random_sets() {
        let mut rng = Rng::new(7);
        let ord = VertexOrder::identity(8);
        for _ in 0..2000 {
            let a = VertexSet::from_bits(rng.next_u64() & 0xff);
            let b = VertexSet::from_bits(rng.next_u64() & 0xff);
            if a == b {
                assert!(!lex_larger(a, b, &ord) && !lex_larger(b, a, &ord));
            } else {
                assert!(lex_larger(a, b, &ord) != lex_larger(b, a, &ord));
            }
        }
        // transitivity spot check
        for _ in 0..2000 {
            let a = VertexSet::from_bits(rng.next_u64() & 0xff);
            let b = VertexSet::from_bits(rng.next_u64() & 0xff);
            let c = VertexSet::from_bits(rng.next_u64() & 0xff);
            if lex_larger(a, b, &ord) && lex_larger(b, c, &ord) {
                assert!(lex_larger(a, c, &ord));
            }
        }
    }

    #[test]
    fn respects_custom_order() {
        // order 2 < 0 < 1
        let ord = VertexOrder::from_permutation(&[2, 0, 1]).unwrap();
        // singletons: {1} is larger than {0} is larger than {2}
        assert!(lex_larger(set(&[1]), set(&[0]), &ord));
        assert!(lex_larger(set(&[0]), set(&[2]), &ord));
    }

    #[test]
    fn weight_totals_are_exact() {
        let mut w = VertexWeights::unit(4);
        w.set(0, w_frac(-7, 2));
        w.set(1, w_frac(1, 3));
        let t = w.total(set(&[0, 1, 3]));
        assert_eq!(t, w_frac(-13, 6));
    }

    #[test]
    fn ascending_sort_by_weight_then_order() {
        let mut w = VertexWeights::unit(4);
        w.set(2, w_int(-1));
        w.set(0, w_int(1));
        w.set(1, w_int(1));
        w.set(3, w_int(5));
        let mut vs = vec![0, 1, 2, 3];
        w.sort_ascending(&mut vs);
        assert_eq!(vs, vec![2, 0, 1, 3]);
    }
}
