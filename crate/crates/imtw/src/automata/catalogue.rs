//! The shipped automata. Every state has a canonical byte encoding; failed
//! states collapse to one dead encoding so tables stay small.
//!
//! Correctness on arbitrary valid binary decompositions (bags may gain or
//! lose several vertices per edge, the same graph edge may live in many bags)
//! hinges on two facts about valid decompositions: a vertex shared by two
//! sibling subtrees lies in both child bags, and an edge inside a bag was
//! already processed at that bag's own subtree. Forest connectivity is
//! therefore tracked through edges *outside* the current bag only, which
//! makes the join combination double-count-free.

use super::{Automaton, State};
use crate::bits::{Vertex, VertexSet};
use crate::graph::Graph;

/// Union-find over vertex ids 0..64.
struct Dsu {
    parent: [u8; 64],
}

impl Dsu {
    fn new() -> Self {
        let mut parent = [0u8; 64];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        Dsu { parent }
    }

    fn find(&mut self, v: usize) -> usize {
        let mut v = v;
        while self.parent[v] as usize != v {
            let p = self.parent[v] as usize;
            self.parent[v] = self.parent[p];
            v = p;
        }
        v
    }

    /// Returns false if the two were already in one class.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb) as u8;
        true
    }
}

/// Blocks sorted internally and by first member: the canonical partition form.
fn canonical_blocks(dsu: &mut Dsu, ground: VertexSet) -> Vec<Vec<u8>> {
    let mut by_root: Vec<(usize, Vec<u8>)> = Vec::new();
    for v in ground.iter() {
        let r = dsu.find(v);
        match by_root.iter_mut().find(|(root, _)| *root == r) {
            Some((_, block)) => block.push(v as u8),
            None => by_root.push((r, vec![v as u8])),
        }
    }
    let mut blocks: Vec<Vec<u8>> = by_root.into_iter().map(|(_, b)| b).collect();
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

fn encode_blocks(out: &mut Vec<u8>, blocks: &[Vec<u8>]) {
    out.push(blocks.len() as u8);
    for b in blocks {
        out.push(b.len() as u8);
        out.extend_from_slice(b);
    }
}

fn decode_blocks(bytes: &[u8]) -> (Vec<Vec<u8>>, usize) {
    let n = bytes[0] as usize;
    let mut blocks = Vec::with_capacity(n);
    let mut i = 1;
    for _ in 0..n {
        let len = bytes[i] as usize;
        blocks.push(bytes[i + 1..i + 1 + len].to_vec());
        i += 1 + len;
    }
    (blocks, i)
}

fn seed_blocks(dsu: &mut Dsu, blocks: &[Vec<u8>]) -> bool {
    let mut ok = true;
    for b in blocks {
        for w in b.windows(2) {
            ok &= dsu.union(w[0] as usize, w[1] as usize);
        }
    }
    ok
}

fn edges_within(g: &Graph, s: VertexSet) -> Vec<(Vertex, Vertex)> {
    let mut es = Vec::new();
    for u in s.iter() {
        for v in (g.neighbors(u) & s).iter() {
            if u < v {
                es.push((u, v));
            }
        }
    }
    es
}

// ---------------------------------------------------------------------------
// True
// ---------------------------------------------------------------------------

/// Accepts everything. The unit of products.
pub struct AlwaysTrue {
    pub width: usize,
}

impl Automaton for AlwaysTrue {
    fn name(&self) -> String {
        "true".into()
    }
    fn width(&self) -> usize {
        self.width
    }
    fn state_bound(&self) -> Option<u64> {
        Some(1)
    }
    fn leaf(&self, _g: &Graph, _bag: VertexSet) -> State {
        State(vec![0])
    }
    fn step(&self, _g: &Graph, _q: &State, _c: VertexSet, _p: VertexSet) -> State {
        State(vec![0])
    }
    fn join(&self, _g: &Graph, _q1: &State, _q2: &State, _c1: VertexSet, _c2: VertexSet, _p: VertexSet) -> State {
        State(vec![0])
    }
    fn accepting(&self, _q: &State) -> bool {
        true
    }
}

// ---------------------------------------------------------------------------
// Edgeless
// ---------------------------------------------------------------------------

/// Accepts iff the processed graph has no edges. Every edge shows up inside
/// some bag, so a sticky flag suffices.
pub struct Edgeless {
    pub width: usize,
}

const DEAD: u8 = 1;
const OK: u8 = 0;

impl Automaton for Edgeless {
    fn name(&self) -> String {
        "edgeless".into()
    }
    fn width(&self) -> usize {
        self.width
    }
    fn state_bound(&self) -> Option<u64> {
        Some(2)
    }
    fn leaf(&self, g: &Graph, bag: VertexSet) -> State {
        State(vec![if g.has_edge_within(bag) { DEAD } else { OK }])
    }
    fn step(&self, g: &Graph, q: &State, _c: VertexSet, p: VertexSet) -> State {
        State(vec![if q.0[0] == DEAD || g.has_edge_within(p) { DEAD } else { OK }])
    }
    fn join(&self, g: &Graph, q1: &State, q2: &State, _c1: VertexSet, _c2: VertexSet, p: VertexSet) -> State {
        State(vec![
            if q1.0[0] == DEAD || q2.0[0] == DEAD || g.has_edge_within(p) { DEAD } else { OK },
        ])
    }
    fn accepting(&self, q: &State) -> bool {
        q.0[0] == OK
    }
    fn is_dead(&self, q: &State) -> bool {
        q.0[0] == DEAD
    }
}

// ---------------------------------------------------------------------------
// Forest
// ---------------------------------------------------------------------------

/// Accepts iff the processed graph is acyclic. The partition tracks bag
/// connectivity through edges outside the current bag only; bag-internal
/// edges are re-derived from the graph at every node, so seeing the same
/// edge in many bags never manufactures a cycle.
pub struct Forest {
    pub width: usize,
}

struct ForestState {
    blocks: Vec<Vec<u8>>,
}

impl Forest {
    fn fail() -> State {
        State(vec![DEAD])
    }

    fn encode(st: &ForestState) -> State {
        let mut out = vec![OK];
        encode_blocks(&mut out, &st.blocks);
        State(out)
    }

    fn decode(q: &State) -> Option<ForestState> {
        if q.0[0] == DEAD {
            return None;
        }
        let (blocks, _) = decode_blocks(&q.0[1..]);
        Some(ForestState { blocks })
    }
}

impl Automaton for Forest {
    fn name(&self) -> String {
        "forest".into()
    }
    fn width(&self) -> usize {
        self.width
    }
    fn state_bound(&self) -> Option<u64> {
        None
    }

    fn leaf(&self, g: &Graph, bag: VertexSet) -> State {
        let mut dsu = Dsu::new();
        for (u, v) in edges_within(g, bag) {
            if !dsu.union(u, v) {
                return Forest::fail();
            }
        }
        // external connectivity starts empty: all singletons
        let blocks = bag.iter().map(|v| vec![v as u8]).collect();
        Forest::encode(&ForestState { blocks })
    }

    fn step(&self, g: &Graph, q: &State, c: VertexSet, p: VertexSet) -> State {
        let Some(st) = Forest::decode(q) else { return Forest::fail() };
        let fresh = p - c;
        // cycle check: external trees + child bag edges + edges touching the
        // fresh vertices
        let mut dsu = Dsu::new();
        if !seed_blocks(&mut dsu, &st.blocks) {
            return Forest::fail();
        }
        for (u, v) in edges_within(g, c) {
            if !dsu.union(u, v) {
                return Forest::fail();
            }
        }
        for (u, v) in edges_within(g, p) {
            if fresh.contains(u) || fresh.contains(v) {
                if !dsu.union(u, v) {
                    return Forest::fail();
                }
            }
        }
        // new external partition on p: external trees plus child-bag edges
        // that leave p
        let mut ext = Dsu::new();
        seed_blocks(&mut ext, &st.blocks);
        for (u, v) in edges_within(g, c) {
            if !p.contains(u) || !p.contains(v) {
                ext.union(u, v);
            }
        }
        let mut keep = Dsu::new();
        project(&mut ext, c, p, &mut keep);
        Forest::encode(&ForestState { blocks: canonical_blocks(&mut keep, p) })
    }

    fn join(&self, g: &Graph, q1: &State, q2: &State, c1: VertexSet, c2: VertexSet, p: VertexSet) -> State {
        let (Some(s1), Some(s2)) = (Forest::decode(q1), Forest::decode(q2)) else {
            return Forest::fail();
        };
        let mut dsu = Dsu::new();
        if !seed_blocks(&mut dsu, &s1.blocks) || !seed_blocks(&mut dsu, &s2.blocks) {
            return Forest::fail();
        }
        // every distinct bag edge exactly once
        let all = c1 | c2 | p;
        for (u, v) in edges_within(g, all) {
            let in_bags = (c1.contains(u) && c1.contains(v))
                || (c2.contains(u) && c2.contains(v))
                || (p.contains(u) && p.contains(v));
            if in_bags && !dsu.union(u, v) {
                return Forest::fail();
            }
        }
        // external partition on p
        let mut ext = Dsu::new();
        seed_blocks(&mut ext, &s1.blocks);
        seed_blocks(&mut ext, &s2.blocks);
        for (u, v) in edges_within(g, c1 | c2) {
            let in_child = (c1.contains(u) && c1.contains(v)) || (c2.contains(u) && c2.contains(v));
            if in_child && !(p.contains(u) && p.contains(v)) {
                ext.union(u, v);
            }
        }
        let mut keep = Dsu::new();
        project(&mut ext, c1 | c2, p, &mut keep);
        Forest::encode(&ForestState { blocks: canonical_blocks(&mut keep, p) })
    }

    fn accepting(&self, q: &State) -> bool {
        q.0[0] == OK
    }
    fn is_dead(&self, q: &State) -> bool {
        q.0[0] == DEAD
    }
}

/// Copies the connectivity of `src` restricted to `target` into `dst`,
/// connecting target vertices that share a class in src over `ground`.
fn project(src: &mut Dsu, ground: VertexSet, target: VertexSet, dst: &mut Dsu) {
    let members: Vec<usize> = (ground | target).iter().collect();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let (u, v) = (members[i], members[j]);
            if target.contains(u) && target.contains(v) && src.find(u) == src.find(v) {
                dst.union(u, v);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Connected
// ---------------------------------------------------------------------------

/// Accepts iff the processed graph is nonempty and connected. Tracks the full
/// connectivity partition of the bag plus a saturating count of components
/// that lost their last bag vertex (those can never reattach).
pub struct Connected {
    pub width: usize,
}

struct ConnState {
    seen: bool,
    closed: u8, // saturates at 3
    blocks: Vec<Vec<u8>>,
}

impl Connected {
    fn encode(st: &ConnState) -> State {
        let mut out = vec![st.seen as u8, st.closed];
        encode_blocks(&mut out, &st.blocks);
        State(out)
    }
    fn decode(q: &State) -> ConnState {
        let (blocks, _) = decode_blocks(&q.0[2..]);
        ConnState { seen: q.0[0] == 1, closed: q.0[1], blocks }
    }
    fn close_and_project(
        dsu: &mut Dsu,
        ground: VertexSet,
        p: VertexSet,
        closed: u8,
    ) -> (u8, Vec<Vec<u8>>) {
        // classes over ground: those disjoint from p close for good
        let mut roots: Vec<(usize, bool)> = Vec::new(); // (root, touches p)
        for v in ground.iter() {
            let r = dsu.find(v);
            match roots.iter_mut().find(|(root, _)| *root == r) {
                Some((_, touches)) => *touches |= p.contains(v),
                None => roots.push((r, p.contains(v))),
            }
        }
        let newly_closed = roots.iter().filter(|(_, touches)| !touches).count() as u8;
        let closed = (closed + newly_closed).min(3);
        let mut keep = Dsu::new();
        project(dsu, ground, p, &mut keep);
        (closed, canonical_blocks(&mut keep, p))
    }
}

impl Automaton for Connected {
    fn name(&self) -> String {
        "connected".into()
    }
    fn width(&self) -> usize {
        self.width
    }
    fn state_bound(&self) -> Option<u64> {
        None
    }

    fn leaf(&self, g: &Graph, bag: VertexSet) -> State {
        let mut dsu = Dsu::new();
        for (u, v) in edges_within(g, bag) {
            dsu.union(u, v);
        }
        Connected::encode(&ConnState {
            seen: !bag.is_empty(),
            closed: 0,
            blocks: canonical_blocks(&mut dsu, bag),
        })
    }

    fn step(&self, g: &Graph, q: &State, c: VertexSet, p: VertexSet) -> State {
        let st = Connected::decode(q);
        let mut dsu = Dsu::new();
        seed_blocks(&mut dsu, &st.blocks);
        for (u, v) in edges_within(g, p) {
            dsu.union(u, v);
        }
        let (closed, blocks) = Connected::close_and_project(&mut dsu, c | p, p, st.closed);
        Connected::encode(&ConnState { seen: st.seen || !(p - c).is_empty(), closed, blocks })
    }

    fn join(&self, g: &Graph, q1: &State, q2: &State, c1: VertexSet, c2: VertexSet, p: VertexSet) -> State {
        let s1 = Connected::decode(q1);
        let s2 = Connected::decode(q2);
        let mut dsu = Dsu::new();
        seed_blocks(&mut dsu, &s1.blocks);
        seed_blocks(&mut dsu, &s2.blocks);
        for (u, v) in edges_within(g, p) {
            dsu.union(u, v);
        }
        let closed0 = (s1.closed + s2.closed).min(3);
        let (closed, blocks) = Connected::close_and_project(&mut dsu, c1 | c2 | p, p, closed0);
        Connected::encode(&ConnState {
            seen: s1.seen || s2.seen || !(p - (c1 | c2)).is_empty(),
            closed,
            blocks,
        })
    }

    fn accepting(&self, q: &State) -> bool {
        let st = Connected::decode(q);
        st.seen && st.closed as usize + st.blocks.len() == 1
    }

    fn is_dead(&self, q: &State) -> bool {
        let st = Connected::decode(q);
        st.closed >= 2 || (st.closed >= 1 && !st.blocks.is_empty())
    }
}

// ---------------------------------------------------------------------------
// Degree automata
// ---------------------------------------------------------------------------

fn encode_counts(out: &mut Vec<u8>, counts: &[(u8, u8)]) {
    out.push(counts.len() as u8);
    for &(v, c) in counts {
        out.push(v);
        out.push(c);
    }
}

fn decode_counts(bytes: &[u8]) -> Vec<(u8, u8)> {
    let n = bytes[0] as usize;
    (0..n).map(|i| (bytes[1 + 2 * i], bytes[2 + 2 * i])).collect()
}

fn count_of(counts: &[(u8, u8)], v: Vertex) -> u8 {
    counts.iter().find(|&&(x, _)| x as usize == v).map(|&(_, c)| c).unwrap_or(0)
}

/// Shared degree bookkeeping: processed degree of every bag vertex, capped at
/// cap+1. `exceeded` fires as soon as some vertex passes the cap; `short`
/// collects vertices forgotten below the cap (only DegreeExact cares).
struct DegreeCore {
    cap: u8,
}

struct DegState {
    fail: bool,
    counts: Vec<(u8, u8)>, // (vertex, processed degree), sorted by vertex
}

impl DegreeCore {
    fn sat(&self, x: usize) -> u8 {
        (x as u8).min(self.cap + 1)
    }

    fn leaf(&self, g: &Graph, bag: VertexSet) -> DegState {
        let counts: Vec<(u8, u8)> = bag
            .iter()
            .map(|v| (v as u8, self.sat((g.neighbors(v) & bag).len())))
            .collect();
        DegState { fail: false, counts }
    }

    /// Final bag counts: carried-over processed degrees plus every bag edge
    /// whose endpoints never shared a child bag. `seen_together` answers
    /// whether an edge was already processed below.
    fn bag_counts(
        &self,
        g: &Graph,
        p: VertexSet,
        base: &[(u8, u8)],
        seen_together: impl Fn(Vertex, Vertex) -> bool,
        fail: &mut bool,
    ) -> Vec<(u8, u8)> {
        let mut counts: Vec<(u8, usize)> =
            p.iter().map(|v| (v as u8, count_of(base, v) as usize)).collect();
        for (u, v) in edges_within(g, p) {
            if !seen_together(u, v) {
                for &mut (x, ref mut c) in &mut counts {
                    if x as usize == u || x as usize == v {
                        *c += 1;
                    }
                }
            }
        }
        counts
            .into_iter()
            .map(|(v, c)| {
                if c > self.cap as usize {
                    *fail = true;
                }
                (v, self.sat(c))
            })
            .collect()
    }

    /// One-child update. `exact` demands forgotten vertices hit the cap
    /// exactly.
    fn step(&self, g: &Graph, st: &DegState, c: VertexSet, p: VertexSet, exact: bool) -> DegState {
        let mut fail = st.fail;
        for &(v, cnt) in &st.counts {
            let v = v as usize;
            if !p.contains(v) {
                if cnt > self.cap || (exact && cnt != self.cap) {
                    fail = true;
                }
            }
        }
        let counts = self.bag_counts(
            g,
            p,
            &st.counts,
            |u, v| c.contains(u) && c.contains(v),
            &mut fail,
        );
        DegState { fail, counts }
    }

    fn join(
        &self,
        g: &Graph,
        s1: &DegState,
        s2: &DegState,
        c1: VertexSet,
        c2: VertexSet,
        p: VertexSet,
        exact: bool,
    ) -> DegState {
        let mut fail = s1.fail || s2.fail;
        let shared = c1 & c2;
        // merged degree over everything either side has seen; shared vertices
        // had their shared-bag edges counted twice
        let mut merged: Vec<(u8, u8)> = Vec::with_capacity((c1 | c2).len());
        for v in (c1 | c2).iter() {
            let a = count_of(&s1.counts, v) as usize;
            let b = count_of(&s2.counts, v) as usize;
            let cnt = if shared.contains(v) {
                let twice = (g.neighbors(v) & shared).len();
                if a > self.cap as usize || b > self.cap as usize {
                    self.cap as usize + 1
                } else {
                    a + b - twice
                }
            } else {
                a.max(b)
            };
            merged.push((v as u8, self.sat(cnt)));
        }
        for &(v, cnt) in &merged {
            let v = v as usize;
            if !p.contains(v) {
                if cnt > self.cap || (exact && cnt != self.cap) {
                    fail = true;
                }
            }
        }
        let counts = self.bag_counts(
            g,
            p,
            &merged,
            |u, v| (c1.contains(u) && c1.contains(v)) || (c2.contains(u) && c2.contains(v)),
            &mut fail,
        );
        DegState { fail, counts }
    }

    fn encode(st: &DegState) -> State {
        if st.fail {
            return State(vec![DEAD]);
        }
        let mut out = vec![OK];
        encode_counts(&mut out, &st.counts);
        State(out)
    }

    fn decode(q: &State) -> Option<DegState> {
        if q.0[0] == DEAD {
            return None;
        }
        Some(DegState { fail: false, counts: decode_counts(&q.0[1..]) })
    }
}

/// Accepts iff every processed vertex has degree at most d.
pub struct DegreeCap {
    pub width: usize,
    pub d: u8,
}

impl Automaton for DegreeCap {
    fn name(&self) -> String {
        format!("degree-cap:{}", self.d)
    }
    fn width(&self) -> usize {
        self.width
    }
    fn state_bound(&self) -> Option<u64> {
        None
    }
    fn leaf(&self, g: &Graph, bag: VertexSet) -> State {
        let core = DegreeCore { cap: self.d };
        let mut st = core.leaf(g, bag);
        st.fail |= st.counts.iter().any(|&(_, c)| c > self.d);
        DegreeCore::encode(&st)
    }
    fn step(&self, g: &Graph, q: &State, c: VertexSet, p: VertexSet) -> State {
        let core = DegreeCore { cap: self.d };
        match DegreeCore::decode(q) {
            None => State(vec![DEAD]),
            Some(st) => DegreeCore::encode(&core.step(g, &st, c, p, false)),
        }
    }
    fn join(&self, g: &Graph, q1: &State, q2: &State, c1: VertexSet, c2: VertexSet, p: VertexSet) -> State {
        let core = DegreeCore { cap: self.d };
        match (DegreeCore::decode(q1), DegreeCore::decode(q2)) {
            (Some(s1), Some(s2)) => DegreeCore::encode(&core.join(g, &s1, &s2, c1, c2, p, false)),
            _ => State(vec![DEAD]),
        }
    }
    fn accepting(&self, q: &State) -> bool {
        q.0[0] == OK
    }
    fn is_dead(&self, q: &State) -> bool {
        q.0[0] == DEAD
    }
}

/// Accepts iff every processed vertex has degree exactly d. Vertices still in
/// the root bag are checked by the acceptance predicate.
pub struct DegreeExact {
    pub width: usize,
    pub d: u8,
}

impl Automaton for DegreeExact {
    fn name(&self) -> String {
        format!("degree-exact:{}", self.d)
    }
    fn width(&self) -> usize {
        self.width
    }
    fn state_bound(&self) -> Option<u64> {
        None
    }
    fn leaf(&self, g: &Graph, bag: VertexSet) -> State {
        let core = DegreeCore { cap: self.d };
        let mut st = core.leaf(g, bag);
        st.fail |= st.counts.iter().any(|&(_, c)| c > self.d);
        DegreeCore::encode(&st)
    }
    fn step(&self, g: &Graph, q: &State, c: VertexSet, p: VertexSet) -> State {
        let core = DegreeCore { cap: self.d };
        match DegreeCore::decode(q) {
            None => State(vec![DEAD]),
            Some(st) => DegreeCore::encode(&core.step(g, &st, c, p, true)),
        }
    }
    fn join(&self, g: &Graph, q1: &State, q2: &State, c1: VertexSet, c2: VertexSet, p: VertexSet) -> State {
        let core = DegreeCore { cap: self.d };
        match (DegreeCore::decode(q1), DegreeCore::decode(q2)) {
            (Some(s1), Some(s2)) => DegreeCore::encode(&core.join(g, &s1, &s2, c1, c2, p, true)),
            _ => State(vec![DEAD]),
        }
    }
    fn accepting(&self, q: &State) -> bool {
        match DegreeCore::decode(q) {
            None => false,
            Some(st) => st.counts.iter().all(|&(_, c)| c == self.d),
        }
    }
    fn is_dead(&self, q: &State) -> bool {
        q.0[0] == DEAD
    }
}

// ---------------------------------------------------------------------------
// SizeMod
// ---------------------------------------------------------------------------

/// Accepts iff the number of processed vertices is q modulo r.
pub struct SizeMod {
    pub width: usize,
    pub q: u8,
    pub r: u8,
}

impl Automaton for SizeMod {
    fn name(&self) -> String {
        format!("size-mod:{}:{}", self.q, self.r)
    }
    fn width(&self) -> usize {
        self.width
    }
    fn state_bound(&self) -> Option<u64> {
        Some(self.r as u64)
    }
    fn leaf(&self, _g: &Graph, bag: VertexSet) -> State {
        State(vec![(bag.len() % self.r as usize) as u8])
    }
    fn step(&self, _g: &Graph, q: &State, c: VertexSet, p: VertexSet) -> State {
        State(vec![((q.0[0] as usize + (p - c).len()) % self.r as usize) as u8])
    }
    fn join(&self, _g: &Graph, q1: &State, q2: &State, c1: VertexSet, c2: VertexSet, p: VertexSet) -> State {
        let r = self.r as usize;
        let shared = (c1 & c2).len() % r;
        let total = (q1.0[0] as usize + q2.0[0] as usize + (p - (c1 | c2)).len() + r - shared) % r;
        State(vec![total as u8])
    }
    fn accepting(&self, q: &State) -> bool {
        q.0[0] == self.q
    }
}

// ---------------------------------------------------------------------------
// Product
// ---------------------------------------------------------------------------

/// Componentwise product; accepts iff every factor accepts.
pub struct Product {
    pub factors: Vec<Box<dyn Automaton>>,
}

impl Product {
    fn split(q: &State) -> Vec<State> {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < q.0.len() {
            let len = u16::from_le_bytes([q.0[i], q.0[i + 1]]) as usize;
            parts.push(State(q.0[i + 2..i + 2 + len].to_vec()));
            i += 2 + len;
        }
        parts
    }

    fn merge(parts: &[State]) -> State {
        let mut out = Vec::new();
        for p in parts {
            out.extend_from_slice(&(p.0.len() as u16).to_le_bytes());
            out.extend_from_slice(&p.0);
        }
        State(out)
    }
}

impl Automaton for Product {
    fn name(&self) -> String {
        let names: Vec<String> = self.factors.iter().map(|f| f.name()).collect();
        format!("product({})", names.join(","))
    }
    fn width(&self) -> usize {
        self.factors.iter().map(|f| f.width()).min().unwrap_or(0)
    }
    fn state_bound(&self) -> Option<u64> {
        self.factors.iter().map(|f| f.state_bound()).try_fold(1u64, |acc, b| {
            b.and_then(|x| acc.checked_mul(x))
        })
    }
    fn leaf(&self, g: &Graph, bag: VertexSet) -> State {
        Product::merge(&self.factors.iter().map(|f| f.leaf(g, bag)).collect::<Vec<_>>())
    }
    fn step(&self, g: &Graph, q: &State, c: VertexSet, p: VertexSet) -> State {
        let parts = Product::split(q);
        Product::merge(
            &self
                .factors
                .iter()
                .zip(parts.iter())
                .map(|(f, part)| f.step(g, part, c, p))
                .collect::<Vec<_>>(),
        )
    }
    fn join(&self, g: &Graph, q1: &State, q2: &State, c1: VertexSet, c2: VertexSet, p: VertexSet) -> State {
        let p1 = Product::split(q1);
        let p2 = Product::split(q2);
        Product::merge(
            &self
                .factors
                .iter()
                .zip(p1.iter().zip(p2.iter()))
                .map(|(f, (a, b))| f.join(g, a, b, c1, c2, p))
                .collect::<Vec<_>>(),
        )
    }
    fn accepting(&self, q: &State) -> bool {
        self.factors.iter().zip(Product::split(q).iter()).all(|(f, part)| f.accepting(part))
    }
    fn is_dead(&self, q: &State) -> bool {
        self.factors.iter().zip(Product::split(q).iter()).any(|(f, part)| f.is_dead(part))
    }
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

/// The CLI-visible problem presets. Each preset's property implies its
/// treewidth bound, so the shipped automaton decides "property and tw <= w"
/// outright.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Maximum-weight independent set: edgeless, tw <= 0.
    Mwis,
    /// Maximum-weight induced forest: acyclic, tw <= 1.
    Forest,
    /// Maximum-weight induced tree: acyclic and connected, tw <= 1.
    Tree,
    /// Longest (max-weight) induced path, tw <= 1.
    Path,
    /// Longest (max-weight) induced cycle, tw <= 2.
    Cycle,
}

impl Preset {
    pub fn all() -> [Preset; 5] {
        [Preset::Mwis, Preset::Forest, Preset::Tree, Preset::Path, Preset::Cycle]
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Mwis => "mwis",
            Preset::Forest => "forest",
            Preset::Tree => "tree",
            Preset::Path => "path",
            Preset::Cycle => "cycle",
        }
    }

    pub fn from_name(s: &str) -> Option<Preset> {
        match s {
            "mwis" => Some(Preset::Mwis),
            "forest" => Some(Preset::Forest),
            "tree" => Some(Preset::Tree),
            "path" => Some(Preset::Path),
            "cycle" => Some(Preset::Cycle),
            _ => None,
        }
    }

    /// The treewidth bound the preset's property implies.
    pub fn treewidth_bound(self) -> usize {
        match self {
            Preset::Mwis => 0,
            Preset::Forest | Preset::Tree | Preset::Path => 1,
            Preset::Cycle => 2,
        }
    }

    /// Whether the empty vertex set is a feasible solution.
    pub fn accepts_empty(self) -> bool {
        match self {
            Preset::Mwis | Preset::Forest => true,
            Preset::Tree | Preset::Path | Preset::Cycle => false,
        }
    }

    pub fn build(self, width: usize) -> Box<dyn Automaton> {
        match self {
            Preset::Mwis => Box::new(Edgeless { width }),
            Preset::Forest => Box::new(Forest { width }),
            Preset::Tree => Box::new(Product {
                factors: vec![Box::new(Forest { width }), Box::new(Connected { width })],
            }),
            Preset::Path => Box::new(Product {
                factors: vec![
                    Box::new(Forest { width }),
                    Box::new(Connected { width }),
                    Box::new(DegreeCap { width, d: 2 }),
                ],
            }),
            Preset::Cycle => Box::new(Product {
                factors: vec![
                    Box::new(Connected { width }),
                    Box::new(DegreeExact { width, d: 2 }),
                ],
            }),
        }
    }
}

/// Extra product factors reachable from the command line via `--with`.
/// These do not bound treewidth on their own, which is why they only ever
/// ride along with a preset.
pub fn factor_by_name(name: &str, width: usize) -> Option<Box<dyn Automaton>> {
    if let Some(rest) = name.strip_prefix("degree-cap:") {
        let d: u8 = rest.parse().ok()?;
        return Some(Box::new(DegreeCap { width, d }));
    }
    if let Some(rest) = name.strip_prefix("degree-exact:") {
        let d: u8 = rest.parse().ok()?;
        return Some(Box::new(DegreeExact { width, d }));
    }
    if let Some(rest) = name.strip_prefix("size-mod:") {
        let mut it = rest.split(':');
        let q: u8 = it.next()?.parse().ok()?;
        let r: u8 = it.next()?.parse().ok()?;
        if r == 0 || q >= r || it.next().is_some() {
            return None;
        }
        return Some(Box::new(SizeMod { width, q, r }));
    }
    match name {
        "edgeless" => Some(Box::new(Edgeless { width })),
        "forest" => Some(Box::new(Forest { width })),
        "connected" => Some(Box::new(Connected { width })),
        "true" => Some(Box::new(AlwaysTrue { width })),
        _ => None,
    }
}
