//! The table dynamic program over a supernice decomposition. A table entry
//! lives at a DP-tuple (node, bag intersection X_t, inner-bag part B1, topped
//! vertex B2, automaton state q) and stores one best witness pair (X1, X2).
//! Tables are generated forward: children spawn exactly the parent tuples the
//! per-kind case analyses allow, so only reachable states ever exist. Dead
//! automaton states are pruned at insertion.

use crate::automata::{Automaton, State};
use crate::bits::{Vertex, VertexSet};
use crate::supernice::{NodeKind, Supernice};
use crate::weights::{lex_larger, VertexWeights, Weight};
use crate::{Error, FastMap, FastSet, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DpKey {
    pub xt: VertexSet,
    pub b1: VertexSet,
    pub b2: VertexSet,
    pub q: State,
}

#[derive(Debug, Clone)]
pub struct DpEntry {
    pub x1: VertexSet,
    pub x2: VertexSet,
    pub weight: Weight,
}

impl DpEntry {
    pub fn union(&self) -> VertexSet {
        self.x1 | self.x2
    }
}

pub type DpTable = FastMap<DpKey, DpEntry>;

#[derive(Debug, Clone, Default)]
pub struct DpStats {
    pub nodes: usize,
    pub total_entries: usize,
    pub max_entries: usize,
    pub max_inner_bag: usize,
}

pub struct DpOutcome {
    pub best: Option<(VertexSet, Weight)>,
    pub stats: DpStats,
}

/// State interner: tables key states by dense u32 ids, transition results are
/// memoized per (state, bag pair). Deadness is computed once per state.
struct Interner<'a> {
    g: &'a crate::graph::Graph,
    aut: &'a dyn Automaton,
    states: Vec<State>,
    ids: FastMap<State, u32>,
    dead: Vec<bool>,
    leaf_memo: FastMap<u64, u32>,
    step_memo: FastMap<(u32, u64, u64), u32>,
    join_memo: FastMap<(u32, u32, u64, u64), u32>,
}

impl<'a> Interner<'a> {
    fn new(g: &'a crate::graph::Graph, aut: &'a dyn Automaton) -> Self {
        Interner {
            g,
            aut,
            states: Vec::new(),
            ids: FastMap::default(),
            dead: Vec::new(),
            leaf_memo: FastMap::default(),
            step_memo: FastMap::default(),
            join_memo: FastMap::default(),
        }
    }

    fn intern(&mut self, q: State) -> u32 {
        if let Some(&id) = self.ids.get(&q) {
            return id;
        }
        let id = self.states.len() as u32;
        self.dead.push(self.aut.is_dead(&q));
        self.states.push(q.clone());
        self.ids.insert(q, id);
        id
    }

    fn leaf(&mut self, bag: VertexSet) -> u32 {
        if let Some(&id) = self.leaf_memo.get(&bag.bits()) {
            return id;
        }
        let q = self.aut.leaf(self.g, bag);
        let id = self.intern(q);
        self.leaf_memo.insert(bag.bits(), id);
        id
    }

    fn step(&mut self, q: u32, child: VertexSet, parent: VertexSet) -> u32 {
        if child == parent {
            // the trait law: equal bags change nothing
            debug_assert_eq!(
                self.aut.step(self.g, &self.states[q as usize], child, parent),
                self.states[q as usize]
            );
            return q;
        }
        let key = (q, child.bits(), parent.bits());
        if let Some(&id) = self.step_memo.get(&key) {
            return id;
        }
        let out = self.aut.step(self.g, &self.states[q as usize], child, parent);
        let id = self.intern(out);
        self.step_memo.insert(key, id);
        id
    }

    fn join(&mut self, q1: u32, q2: u32, c1: VertexSet, c2: VertexSet) -> u32 {
        // the parent bag is always c1 | c2 at DP joins
        let key = (q1, q2, c1.bits(), c2.bits());
        if let Some(&id) = self.join_memo.get(&key) {
            return id;
        }
        let out = self.aut.join(
            self.g,
            &self.states[q1 as usize],
            &self.states[q2 as usize],
            c1,
            c2,
            c1 | c2,
        );
        let id = self.intern(out);
        self.join_memo.insert(key, id);
        id
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct IKey {
    xt: VertexSet,
    b1: VertexSet,
    b2: VertexSet,
    q: u32,
}

type ITable = FastMap<IKey, DpEntry>;

struct Ctx<'a> {
    g: &'a crate::graph::Graph,
    weights: &'a VertexWeights,
    sn: &'a Supernice,
    fam: Vec<FastSet<VertexSet>>,
    ell: usize,
}

impl<'a> Ctx<'a> {
    /// Keeps the best (weight, lex-larger union, then larger x1 mask) entry.
    /// Returns true when the table changed.
    fn upsert(&self, interner: &Interner, table: &mut ITable, key: IKey, entry: DpEntry) -> bool {
        if interner.dead[key.q as usize] {
            return false;
        }
        debug_assert!(key.b2.len() <= 1);
        debug_assert!((key.b1 | key.b2).len() <= self.ell + 1);
        match table.entry(key) {
            std::collections::hash_map::Entry::Vacant(sl) => {
                sl.insert(entry);
                true
            }
            std::collections::hash_map::Entry::Occupied(mut sl) => {
                let old = sl.get();
                let better = entry.weight > old.weight
                    || (entry.weight == old.weight
                        && (lex_larger(entry.union(), old.union(), self.weights.order())
                            || (entry.union() == old.union()
                                && entry.x1.bits() > old.x1.bits())));
                if better {
                    sl.insert(entry);
                }
                better
            }
        }
    }

    fn in_family(&self, t: usize, xt: VertexSet) -> bool {
        self.fam[t].contains(&xt)
    }

    fn initial(&self, t: usize, interner: &mut Interner) -> ITable {
        let mut table = ITable::default();
        if self.in_family(t, VertexSet::EMPTY) {
            let q = interner.leaf(VertexSet::EMPTY);
            self.upsert(
                interner,
                &mut table,
                IKey { xt: VertexSet::EMPTY, b1: VertexSet::EMPTY, b2: VertexSet::EMPTY, q },
                DpEntry {
                    x1: VertexSet::EMPTY,
                    x2: VertexSet::EMPTY,
                    weight: crate::weights::w_int(0),
                },
            );
        }
        table
    }

    fn introduce(&self, t: usize, v: Vertex, interner: &mut Interner, child: &ITable) -> Result<ITable> {
        let mut table = ITable::default();
        for (k, e) in child {
            if !k.b2.is_empty() {
                return Err(Error::Contract(format!(
                    "topped tuple survives below introduce node {t}"
                )));
            }
            // the introduced vertex stays out
            if self.in_family(t, k.xt) {
                self.upsert(
                    interner,
                    &mut table,
                    IKey { xt: k.xt, b1: k.b1, b2: VertexSet::EMPTY, q: k.q },
                    e.clone(),
                );
            }
            let xt = k.xt.with(v);
            if self.in_family(t, xt) {
                // v joins X1 through B1
                let b1 = k.b1.with(v);
                if b1.len() <= self.ell + 1 {
                    let q = interner.step(k.q, k.b1, b1);
                    self.upsert(
                        interner,
                        &mut table,
                        IKey { xt, b1, b2: VertexSet::EMPTY, q },
                        DpEntry {
                            x1: e.x1.with(v),
                            x2: e.x2,
                            weight: e.weight + self.weights.get(v),
                        },
                    );
                }
                // v joins X2: the bag part outside B1 must stay independent
                if !self.g.neighbors(v).intersects(k.xt - k.b1) {
                    self.upsert(
                        interner,
                        &mut table,
                        IKey { xt, b1: k.b1, b2: VertexSet::EMPTY, q: k.q },
                        DpEntry {
                            x1: e.x1,
                            x2: e.x2.with(v),
                            weight: e.weight + self.weights.get(v),
                        },
                    );
                }
            }
        }
        Ok(table)
    }

    fn forget(&self, t: usize, v: Vertex, interner: &mut Interner, child: &ITable) -> Result<ITable> {
        let mut table = ITable::default();
        for (k, e) in child {
            if k.b2 == VertexSet::singleton(v) {
                // v was topped below and leaves the inner decomposition here
                let xt = k.xt.without(v);
                if self.in_family(t, xt) {
                    let q = interner.step(k.q, k.b1 | k.b2, k.b1);
                    self.upsert(
                        interner,
                        &mut table,
                        IKey { xt, b1: k.b1, b2: VertexSet::EMPTY, q },
                        e.clone(),
                    );
                }
            } else if !k.b2.is_empty() {
                return Err(Error::Contract(format!(
                    "tuple topped with a foreign vertex below forget node {t}"
                )));
            } else if !k.xt.contains(v) {
                // v was never in the solution
                if self.in_family(t, k.xt) {
                    self.upsert(
                        interner,
                        &mut table,
                        IKey { xt: k.xt, b1: k.b1, b2: VertexSet::EMPTY, q: k.q },
                        e.clone(),
                    );
                }
            } else if k.b1.contains(v) {
                // v stays in the inner decomposition through B1
                let xt = k.xt.without(v);
                if self.in_family(t, xt) {
                    self.upsert(
                        interner,
                        &mut table,
                        IKey { xt, b1: k.b1, b2: VertexSet::EMPTY, q: k.q },
                        e.clone(),
                    );
                }
            }
            // a solution vertex in X2 that never topped has no continuation
        }
        Ok(table)
    }

    fn join(&self, t: usize, interner: &mut Interner, left: &ITable, right: &ITable) -> Result<ITable> {
        let mut table = ITable::default();
        let bag = self.sn.bag(t);
        // group the right table by bag intersection
        let mut by_xt: FastMap<VertexSet, Vec<(&IKey, &DpEntry)>> = FastMap::default();
        for (k, e) in right {
            if !k.b2.is_empty() {
                return Err(Error::Contract(format!("topped tuple at join child of {t}")));
            }
            by_xt.entry(k.xt).or_default().push((k, e));
        }
        for (k1, e1) in left {
            if !k1.b2.is_empty() {
                return Err(Error::Contract(format!("topped tuple at join child of {t}")));
            }
            if !self.in_family(t, k1.xt) {
                continue;
            }
            let Some(partners) = by_xt.get(&k1.xt) else { continue };
            for (k2, e2) in partners {
                if k1.b1 & bag != k2.b1 & bag {
                    continue;
                }
                let b1 = k1.b1 | k2.b1;
                if b1.len() > self.ell + 1 {
                    continue;
                }
                let q = interner.join(k1.q, k2.q, k1.b1, k2.b1);
                let x1 = e1.x1 | e2.x1;
                let x2 = e1.x2 | e2.x2;
                debug_assert!(!x1.intersects(x2));
                debug_assert_eq!((e1.union()) & (e2.union()), k1.xt);
                let weight = self.weights.total(x1 | x2);
                self.upsert(
                    interner,
                    &mut table,
                    IKey { xt: k1.xt, b1, b2: VertexSet::EMPTY, q },
                    DpEntry { x1, x2, weight },
                );
            }
        }
        Ok(table)
    }

    /// Returns the new table, or None when the child table is already a
    /// fixed point of this node's transition (identity plus optional drops).
    fn neutral(&self, t: usize, interner: &mut Interner, child: &ITable) -> Result<Option<ITable>> {
        let bag = self.sn.bag(t);
        // identity part: with equal bags the state is unchanged, so the
        // pass-through entries are exactly the child's entries
        let mut table = child.clone();
        for (k, _) in child.iter() {
            if !k.b2.is_empty() {
                return Err(Error::Contract(format!("topped tuple below neutral node {t}")));
            }
            debug_assert!(self.in_family(t, k.xt));
        }
        let mut changed = false;
        // drop one inner vertex that is done: outside the bag and with no
        // neighbor among the scattered bag vertices
        for (k, e) in child {
            for v in (k.b1 - bag).iter() {
                if self.g.neighbors(v).intersects(k.xt - k.b1) {
                    continue;
                }
                let b1 = k.b1.without(v);
                let q = interner.step(k.q, k.b1, b1);
                changed |= self.upsert(
                    interner,
                    &mut table,
                    IKey { xt: k.xt, b1, b2: VertexSet::EMPTY, q },
                    e.clone(),
                );
            }
        }
        Ok(if changed { Some(table) } else { None })
    }

    fn top(&self, t: usize, v: Vertex, interner: &mut Interner, child: &ITable) -> Result<ITable> {
        let mut table = ITable::default();
        for (k, e) in child {
            if !k.b2.is_empty() {
                return Err(Error::Contract(format!("topped tuple below top node {t}")));
            }
            if !self.in_family(t, k.xt) {
                continue;
            }
            // the vertex does not enter the inner decomposition here
            self.upsert(
                interner,
                &mut table,
                IKey { xt: k.xt, b1: k.b1, b2: VertexSet::EMPTY, q: k.q },
                e.clone(),
            );
            // the vertex tops out: it must be a scattered solution vertex and
            // all of its solution neighbors in the stored witness sit in B1
            if k.xt.contains(v)
                && !k.b1.contains(v)
                && k.b1.len() + 1 <= self.ell + 1
                && (self.g.neighbors(v) & e.x1).is_subset_of(k.b1)
            {
                let q = interner.step(k.q, k.b1, k.b1.with(v));
                self.upsert(
                    interner,
                    &mut table,
                    IKey { xt: k.xt, b1: k.b1, b2: VertexSet::singleton(v), q },
                    e.clone(),
                );
            }
        }
        Ok(table)
    }
}

/// Runs the whole dynamic program. `families` holds, per supernice node, the
/// admissible bag intersections. Returns the best solution (or None when no
/// accepting root tuple exists) plus table statistics.
pub fn solve(
    g: &crate::graph::Graph,
    weights: &VertexWeights,
    sn: &Supernice,
    families: &[Vec<VertexSet>],
    aut: &dyn Automaton,
    ell: usize,
) -> Result<DpOutcome> {
    let (best, stats, _) = solve_inner(g, weights, sn, families, aut, ell, false)?;
    Ok(DpOutcome { best, stats })
}

/// Like `solve` but keeps every node's table alive; the auditors in the test
/// suites need them.
pub fn solve_keeping_tables(
    g: &crate::graph::Graph,
    weights: &VertexWeights,
    sn: &Supernice,
    families: &[Vec<VertexSet>],
    aut: &dyn Automaton,
    ell: usize,
) -> Result<(Option<(VertexSet, Weight)>, Vec<Option<DpTable>>)> {
    let (best, _, tables) = solve_inner(g, weights, sn, families, aut, ell, true)?;
    Ok((best, tables))
}

fn solve_inner(
    g: &crate::graph::Graph,
    weights: &VertexWeights,
    sn: &Supernice,
    families: &[Vec<VertexSet>],
    aut: &dyn Automaton,
    ell: usize,
    keep_tables: bool,
) -> Result<(Option<(VertexSet, Weight)>, DpStats, Vec<Option<DpTable>>)> {
    use std::rc::Rc;
    let n = sn.node_count();
    if families.len() != n {
        return Err(Error::Contract(format!(
            "{} families for {} nodes",
            families.len(),
            n
        )));
    }
    if !sn.bag(sn.root()).is_empty() {
        return Err(Error::Contract("supernice root bag must be empty".into()));
    }
    let fam: Vec<FastSet<VertexSet>> =
        families.iter().map(|f| f.iter().copied().collect()).collect();
    let ctx = Ctx { g, weights, sn, fam, ell };
    let mut interner = Interner::new(g, aut);

    let mut tables: Vec<Option<Rc<ITable>>> = (0..n).map(|_| None).collect();
    let mut stats = DpStats { nodes: n, ..DpStats::default() };
    // neutral fixed points, keyed by (table address, bag): long neutral
    // chains pass the same table along untouched
    let mut settled: FastSet<(usize, u64)> = FastSet::default();
    for &t in sn.post_order() {
        let table: Rc<ITable> = match sn.kind(t) {
            NodeKind::Initial => Rc::new(ctx.initial(t, &mut interner)),
            NodeKind::Introduce(v) => {
                let c = sn.children(t)[0];
                Rc::new(ctx.introduce(t, v, &mut interner, tables[c].as_ref().unwrap())?)
            }
            NodeKind::Forget(v) => {
                let c = sn.children(t)[0];
                Rc::new(ctx.forget(t, v, &mut interner, tables[c].as_ref().unwrap())?)
            }
            NodeKind::Join => {
                let (c1, c2) = (sn.children(t)[0], sn.children(t)[1]);
                if sn.kind(c1) != NodeKind::Neutral || sn.kind(c2) != NodeKind::Neutral {
                    return Err(Error::Contract(format!("join node {t} has non-neutral children")));
                }
                Rc::new(ctx.join(
                    t,
                    &mut interner,
                    tables[c1].as_ref().unwrap(),
                    tables[c2].as_ref().unwrap(),
                )?)
            }
            NodeKind::Neutral => {
                let c = tables[sn.children(t)[0]].as_ref().unwrap();
                let cache_key = (Rc::as_ptr(c) as usize, sn.bag(t).bits());
                if settled.contains(&cache_key) {
                    Rc::clone(c)
                } else {
                    match ctx.neutral(t, &mut interner, c)? {
                        Some(fresh) => Rc::new(fresh),
                        None => {
                            settled.insert(cache_key);
                            Rc::clone(c)
                        }
                    }
                }
            }
            NodeKind::Top(v) => {
                let c = sn.children(t)[0];
                Rc::new(ctx.top(t, v, &mut interner, tables[c].as_ref().unwrap())?)
            }
        };
        stats.total_entries += table.len();
        stats.max_entries = stats.max_entries.max(table.len());
        for k in table.keys() {
            stats.max_inner_bag = stats.max_inner_bag.max((k.b1 | k.b2).len());
        }
        if !keep_tables {
            for &c in sn.children(t) {
                tables[c] = None;
            }
        }
        tables[t] = Some(table);
    }

    // extraction at the root: accepting states over the all-empty tuple
    let root_table = tables[sn.root()].as_ref().unwrap();
    let mut best: Option<(VertexSet, Weight)> = None;
    for (k, e) in root_table.iter() {
        if k.xt.is_empty()
            && k.b1.is_empty()
            && k.b2.is_empty()
            && aut.accepting(&interner.states[k.q as usize])
        {
            let better = match &best {
                None => true,
                Some((bx, bw)) => {
                    e.weight > *bw
                        || (e.weight == *bw && lex_larger(e.union(), *bx, weights.order()))
                }
            };
            if better {
                best = Some((e.union(), e.weight));
            }
        }
    }

    // materialize public tables only when a caller wants to audit them
    let public: Vec<Option<DpTable>> = if keep_tables {
        tables
            .iter()
            .map(|slot| {
                slot.as_ref().map(|table| {
                    table
                        .iter()
                        .map(|(k, e)| {
                            (
                                DpKey {
                                    xt: k.xt,
                                    b1: k.b1,
                                    b2: k.b2,
                                    q: interner.states[k.q as usize].clone(),
                                },
                                e.clone(),
                            )
                        })
                        .collect()
                })
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok((best, stats, public))
}

/// Entry-level soundness audit for small runs: every stored witness respects
/// the checkable fitting conditions at its node.
pub fn audit_tables(
    g: &crate::graph::Graph,
    sn: &Supernice,
    families: &[Vec<VertexSet>],
    tables: &[Option<DpTable>],
) -> Vec<String> {
    let mut issues = Vec::new();
    let fam: Vec<FastSet<VertexSet>> =
        families.iter().map(|f| f.iter().copied().collect()).collect();
    for t in 0..sn.node_count() {
        let Some(table) = tables[t].as_ref() else { continue };
        let bag = sn.bag(t);
        let sub = sn.subtree(t);
        for (k, e) in table {
            let x = e.union();
            if !x.is_subset_of(sub) {
                issues.push(format!("node {t}: witness leaves the subtree"));
            }
            if x & bag != k.xt {
                issues.push(format!("node {t}: witness bag intersection mismatch"));
            }
            if e.x1 & bag != k.b1 & bag {
                issues.push(format!("node {t}: x1 and b1 disagree on the bag"));
            }
            if e.x1.intersects(e.x2) {
                issues.push(format!("node {t}: witness parts overlap"));
            }
            if g.has_edge_within(e.x2) {
                issues.push(format!("node {t}: witness x2 not independent"));
            }
            if !k.b1.is_subset_of(e.x1) || !k.b2.is_subset_of(e.x2) {
                issues.push(format!("node {t}: inner bag not inside the witness"));
            }
            if g.has_edge_within(k.xt - k.b1) {
                issues.push(format!("node {t}: invalid tuple stored (bag rest not independent)"));
            }
            if !fam[t].contains(&k.xt) {
                issues.push(format!("node {t}: bag intersection outside the family"));
            }
        }
    }
    issues
}

/// Mechanized completeness walk: for a reference solution with its partition
/// and inner decomposition, the tuple it induces at every node must be in the
/// table with at least the restriction's weight.
pub fn audit_completeness(
    g: &crate::graph::Graph,
    weights: &VertexWeights,
    sn: &Supernice,
    aut: &dyn Automaton,
    tables: &[Option<DpTable>],
    x1: VertexSet,
    x2: VertexSet,
    ibag: &[VertexSet],
) -> Vec<String> {
    let mut issues = Vec::new();
    let x = x1 | x2;
    // automaton states of the inner decomposition, bottom up
    let mut states: Vec<Option<State>> = vec![None; sn.node_count()];
    for &t in sn.post_order() {
        let q = match sn.children(t) {
            [] => aut.leaf(g, ibag[t]),
            [c] => aut.step(g, states[*c].as_ref().unwrap(), ibag[*c], ibag[t]),
            [c1, c2] => aut.join(
                g,
                states[*c1].as_ref().unwrap(),
                states[*c2].as_ref().unwrap(),
                ibag[*c1],
                ibag[*c2],
                ibag[t],
            ),
            _ => unreachable!(),
        };
        states[t] = Some(q);
    }
    for t in 0..sn.node_count() {
        let key = DpKey {
            xt: x & sn.bag(t),
            b1: ibag[t] & x1,
            b2: ibag[t] & x2,
            q: states[t].clone().unwrap(),
        };
        let restriction = x & sn.subtree(t);
        let want = weights.total(restriction);
        match tables[t].as_ref().and_then(|tab| tab.get(&key)) {
            None => issues.push(format!(
                "node {t} ({:?}): induced tuple missing (xt={:?} b1={:?} b2={:?})",
                sn.kind(t),
                key.xt,
                key.b1,
                key.b2
            )),
            Some(e) => {
                if e.weight < want {
                    issues.push(format!(
                        "node {t}: stored weight {} below the reference restriction {}",
                        e.weight, want
                    ));
                }
            }
        }
    }
    issues
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Preset;
    use crate::graph::Graph;
    use crate::inner::{build_inner, ell_bound};
    use crate::oracle::{brute_force_optimal, ProblemSpec};
    use crate::pipeline::propagate_families;
    use crate::rng::{random_graph, random_weights, Rng};
    use crate::signatures::{enumerate_bag_family, FamilyMode};
    use crate::supernice::make_supernice;
    use crate::treedec::{acquire_decomposition, mu_width, AcquireSource};
    use crate::weights::w_int;
    use crate::Guards;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().collect()
    }

    /// Shared setup: working decomposition, measured k, supernice host,
    /// propagated families, automaton.
    struct Setup {
        sn: Supernice,
        families: Vec<Vec<VertexSet>>,
        aut: Box<dyn crate::automata::Automaton>,
        ell: usize,
    }

    fn assemble_on(
        g: &Graph,
        weights: &VertexWeights,
        preset: Preset,
        mode: FamilyMode,
        td: &crate::treedec::TreeDecomposition,
    ) -> Setup {
        let guards = Guards::default();
        let w = preset.treewidth_bound();
        let k = mu_width(g, td, &guards).unwrap();
        let ell = ell_bound(k, w);
        let sig_aut = preset.build((2 * k * (w + 1)).max(w) + 1);
        let per_original: Vec<Vec<VertexSet>> = (0..td.node_count())
            .map(|t| {
                enumerate_bag_family(g, weights, td.bag(t), k, w, sig_aut.as_ref(), mode, &guards)
                    .unwrap()
            })
            .collect();
        let sn = make_supernice(g, td, ell).unwrap();
        let families = propagate_families(td, &per_original, &sn);
        let aut = preset.build(ell);
        Setup { sn, families, aut, ell }
    }

    fn assemble(g: &Graph, weights: &VertexWeights, preset: Preset, mode: FamilyMode) -> Setup {
        let guards = Guards::default();
        let td = acquire_decomposition(g, AcquireSource::Trivial, &guards).unwrap();
        assemble_on(g, weights, preset, mode, &td)
    }

    #[test]
    fn solve_examples() {
        let guards = Guards::default();
        let _ = guards;
        // C5 unit weights, independent set: weight 2
        let g = Graph::cycle(5);
        let weights = VertexWeights::unit(5);
        let s = assemble(&g, &weights, Preset::Mwis, FamilyMode::Bounded);
        let out = solve(&g, &weights, &s.sn, &s.families, s.aut.as_ref(), s.ell).unwrap();
        let (x, wt) = out.best.unwrap();
        assert_eq!(wt, w_int(2));
        assert_eq!(x.len(), 2);

        // K4 under forest: two vertices
        let g = Graph::complete(4);
        let weights = VertexWeights::unit(4);
        let s = assemble(&g, &weights, Preset::Forest, FamilyMode::All);
        let out = solve(&g, &weights, &s.sn, &s.families, s.aut.as_ref(), s.ell).unwrap();
        assert_eq!(out.best.unwrap().1, w_int(2));

        // all-negative weights under mwis: the empty solution, weight 0
        let g = Graph::complete(2);
        let weights = VertexWeights::from_ints(&[-1, -2]);
        let s = assemble(&g, &weights, Preset::Mwis, FamilyMode::Bounded);
        let out = solve(&g, &weights, &s.sn, &s.families, s.aut.as_ref(), s.ell).unwrap();
        assert_eq!(out.best.unwrap(), (VertexSet::EMPTY, w_int(0)));

        // cycle preset on a path: no accepting root tuple
        let g = Graph::path(4);
        let weights = VertexWeights::unit(4);
        let s = assemble(&g, &weights, Preset::Cycle, FamilyMode::All);
        let out = solve(&g, &weights, &s.sn, &s.families, s.aut.as_ref(), s.ell).unwrap();
        assert!(out.best.is_none());
    }

    #[test]
    fn stored_witnesses_fit_their_tuples() {
        let mut rng = Rng::new(2718);
        for round in 0..25 {
            let n = rng.range(2, 7);
            let p = *rng.pick(&[20, 40, 60]);
            let g = random_graph(&mut rng, n, p);
            let weights = random_weights(&mut rng, n);
            let preset = Preset::all()[round % 5];
            let s = assemble(&g, &weights, preset, FamilyMode::All);
            let (_, tables) =
                solve_keeping_tables(&g, &weights, &s.sn, &s.families, s.aut.as_ref(), s.ell)
                    .unwrap();
            let issues = audit_tables(&g, &s.sn, &s.families, &tables);
            assert!(issues.is_empty(), "{issues:?} on {g:?} preset {}", preset.name());
        }
    }

    #[test]
    fn reference_solution_walk_is_in_the_tables() {
        // mechanized completeness: the inner decomposition of the oracle
        // optimum induces a tuple chain that must exist with enough weight;
        // half the rounds use branching hosts so joins are exercised
        let guards = Guards::default();
        let mut rng = Rng::new(3141);
        let mut done = 0;
        let mut joins_seen = 0usize;
        while done < 30 {
            let n = rng.range(2, 7);
            let p = *rng.pick(&[20, 40, 60]);
            let g = random_graph(&mut rng, n, p);
            let weights = random_weights(&mut rng, n);
            let preset = *rng.pick(&[Preset::Mwis, Preset::Forest, Preset::Tree]);
            let spec = ProblemSpec::new(preset);
            let Some((x, _)) = brute_force_optimal(&g, &weights, &spec, &guards).unwrap() else {
                continue;
            };
            done += 1;
            let s = if done % 2 == 0 {
                let td = crate::rng::random_tree_decomposition(&mut rng, &g);
                assemble_on(&g, &weights, preset, FamilyMode::All, &td)
            } else {
                assemble(&g, &weights, preset, FamilyMode::All)
            };
            joins_seen += (0..s.sn.node_count())
                .filter(|&t| s.sn.kind(t) == crate::supernice::NodeKind::Join)
                .count();
            let (best, tables) =
                solve_keeping_tables(&g, &weights, &s.sn, &s.families, s.aut.as_ref(), s.ell)
                    .unwrap();
            let (part, inner) = build_inner(&g, &s.sn, x, spec.w, &guards).unwrap();
            let issues = audit_completeness(
                &g,
                &weights,
                &s.sn,
                s.aut.as_ref(),
                &tables,
                part.x1,
                part.x2,
                &inner.ibag,
            );
            assert!(issues.is_empty(), "{issues:?} for x={x:?} on {g:?}");
            // and the final answer can only be at least as good
            assert!(best.unwrap().1 >= weights.total(x));
        }
        assert!(joins_seen > 0, "no join nodes were exercised");
    }

    #[test]
    fn family_filter_is_respected() {
        // restricting the family at the original bag restricts solutions
        let g = Graph::new(3); // three isolated vertices
        let weights = VertexWeights::unit(3);
        let guards = Guards::default();
        let td = acquire_decomposition(&g, AcquireSource::Trivial, &guards).unwrap();
        let ell = ell_bound(0, 0);
        let sn = make_supernice(&g, &td, ell).unwrap();
        // only allow intersections of size <= 1 with the single original bag
        let per_original = vec![vec![
            VertexSet::EMPTY,
            set(&[0]),
            set(&[1]),
            set(&[2]),
        ]];
        let families = propagate_families(&td, &per_original, &sn);
        let aut = Preset::Mwis.build(ell.max(1));
        let out = solve(&g, &weights, &sn, &families, aut.as_ref(), ell.max(1)).unwrap();
        // without the filter the answer would be weight 3
        assert_eq!(out.best.unwrap().1, w_int(1));
    }
}
