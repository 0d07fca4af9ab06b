//! Vertex sets as 64-bit masks. Everything in this crate works on graphs with
//! at most 64 vertices, which is far beyond what the exponential-time parts
//! can handle anyway.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

pub const MAX_VERTICES: usize = 64;

pub type Vertex = usize;

/// A set of vertices 0..n-1, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: Vertex) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    /// The full set {0, .., n-1}.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: Vertex) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: Vertex) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: Vertex) {
        debug_assert!(v < MAX_VERTICES);
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: Vertex) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    pub fn without(self, v: Vertex) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn min_elem(self) -> Option<Vertex> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a Vertex>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = BitIter;
    fn into_iter(self) -> BitIter {
        self.iter()
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "}}")
    }
}

/// Iterates set members in ascending order.
pub struct BitIter(u64);

impl Iterator for BitIter {
    type Item = Vertex;
    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// All subsets of `ground` with at most `max_size` elements, in
/// (size, then ascending mask) order. Pushes each subset to `f`; if `f`
/// returns false enumeration stops early.
pub fn for_each_subset_up_to(ground: VertexSet, max_size: usize, f: &mut impl FnMut(VertexSet) -> bool) {
    let elems = ground.to_vec();
    let cap = max_size.min(elems.len());
    // size 0 first, then grow
    let mut chosen: Vec<Vertex> = Vec::with_capacity(cap);
    for size in 0..=cap {
        if !emit_combinations(&elems, size, 0, &mut chosen, f) {
            return;
        }
    }
}

fn emit_combinations(
    elems: &[Vertex],
    size: usize,
    start: usize,
    chosen: &mut Vec<Vertex>,
    f: &mut impl FnMut(VertexSet) -> bool,
) -> bool {
    if chosen.len() == size {
        return f(chosen.iter().collect());
    }
    let need = size - chosen.len();
    for i in start..=elems.len().saturating_sub(need) {
        chosen.push(elems[i]);
        let go_on = emit_combinations(elems, size, i + 1, chosen, f);
        chosen.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// All subsets of `ground` (including empty and full), ascending submask order.
pub fn for_each_subset(ground: VertexSet, f: &mut impl FnMut(VertexSet) -> bool) {
    let m = ground.bits();
    let mut s: u64 = 0;
    loop {
        if !f(VertexSet::from_bits(s)) {
            return;
        }
        if s == m {
            return;
        }
        s = (s.wrapping_sub(m)) & m;
    }
}
