//! Per-bag candidate families. For a bag B, a basic signature (C, S, D)
//! pins the solution's intersection with B down to a set of well-structured
//! dangling vertices; sorting each dangling group by weight and taking
//! suffixes yields a family guaranteed to contain the optimal solution's
//! intersection with B. This module enumerates those families and also
//! constructs a witness signature for a known solution, which the tests use
//! to exercise the structural lemmas directly.

use crate::automata::{neighborhood_state, Automaton, State};
#[cfg(test)]
use crate::automata::Preset;
use crate::bits::{for_each_subset_up_to, Vertex, VertexSet};
use crate::graph::{is_independent_set, maximal_independent_sets, mu_of_set, treewidth_exact, Graph};
use crate::weights::VertexWeights;
use crate::{Error, FastSet, Guards, Result};
use std::collections::BTreeSet;

/// A basic B-signature: C covers the solution's edges at B, S is an
/// enclosing independent-set projection, D kicks excluded S-vertices out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSignature {
    pub c: VertexSet,
    pub s: VertexSet,
    pub d: VertexSet,
    pub b: VertexSet,
}

/// Deduplicated projections {I ∩ B} over all maximal independent sets I of
/// the whole graph. A superset of the maximal independent sets of g[B].
pub fn mis_projections(g: &Graph, b: VertexSet, guards: &Guards) -> Result<Vec<VertexSet>> {
    let mis = maximal_independent_sets(g, guards)?;
    let mut out: BTreeSet<VertexSet> = BTreeSet::new();
    for m in mis {
        out.insert(m & b);
    }
    Ok(out.into_iter().collect())
}

/// The vertices whose membership the basic signature leaves open:
/// S minus N(D) minus C.
pub fn dangling_vertices(g: &Graph, sig: &BasicSignature) -> VertexSet {
    sig.s - g.neighborhood_of_set(sig.d) - sig.d - sig.c
}

/// How a dangling vertex looks to the rest of the solution: its weight sign,
/// its neighborhood trace into C, and (when a state bound is available) the
/// automaton's state on its two-bag neighborhood decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DanglingType {
    pub negative: bool,
    pub trace: VertexSet,
    pub state: Option<State>,
}

/// Partition of the dangling set by type, each group sorted ascending by
/// (weight, vertex order) so the solution's share is a suffix. With no
/// automaton the grouping coarsens to the trace alone, which keeps the
/// suffix structure intact.
pub fn classify_dangling(
    g: &Graph,
    weights: &VertexWeights,
    u: VertexSet,
    c: VertexSet,
    aut: Option<&dyn Automaton>,
) -> Result<Vec<(DanglingType, Vec<Vertex>)>> {
    let mut groups: Vec<(DanglingType, Vec<Vertex>)> = Vec::new();
    for v in u.iter() {
        let trace = g.neighbors(v) & c;
        let ty = DanglingType {
            negative: aut.is_some() && weights.get(v) < crate::weights::w_int(0),
            trace,
            state: match aut {
                Some(a) => Some(neighborhood_state(a, g, v, trace)?),
                None => None,
            },
        };
        match groups.iter_mut().find(|(t, _)| *t == ty) {
            Some((_, members)) => members.push(v),
            None => groups.push((ty, vec![v])),
        }
    }
    for (_, members) in &mut groups {
        weights.sort_ascending(members);
    }
    groups.sort_by(|(_, a), (_, b)| a.cmp(b));
    Ok(groups)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyMode {
    /// Suffix lengths up to max(state bound, w+1) or down to |group| minus
    /// the state bound. Requires the automaton to declare a state bound.
    Bounded,
    /// Every suffix of every group. Always complete; the fallback when no
    /// state bound is available.
    All,
}

/// The suffix lengths to try for one group.
pub fn suffix_lengths(group_len: usize, qbound: Option<usize>, w: usize, mode: FamilyMode) -> Vec<usize> {
    match (mode, qbound) {
        (FamilyMode::All, _) | (FamilyMode::Bounded, None) => (0..=group_len).collect(),
        (FamilyMode::Bounded, Some(qb)) => {
            let lo_cap = qb.max(w + 1);
            let hi_floor = group_len.saturating_sub(qb);
            (0..=group_len).filter(|&l| l <= lo_cap || l >= hi_floor).collect()
        }
    }
}

/// All distinct kick sets N(D) ∩ target over D ⊆ V(G) \ c with |D| <= dmax,
/// by breadth-first union closure over single-vertex contributions.
fn kick_sets(g: &Graph, target: VertexSet, c: VertexSet, dmax: usize) -> Vec<VertexSet> {
    let mut gens: Vec<VertexSet> = Vec::new();
    for d in (g.vertex_set() - c).iter() {
        let k = g.neighbors(d) & target;
        if !gens.contains(&k) {
            gens.push(k);
        }
    }
    let mut all: BTreeSet<VertexSet> = BTreeSet::new();
    all.insert(VertexSet::EMPTY);
    let mut frontier: Vec<VertexSet> = vec![VertexSet::EMPTY];
    for _ in 0..dmax {
        let mut next = Vec::new();
        for &k in &frontier {
            for &gen in &gens {
                let nk = k | gen;
                if all.insert(nk) {
                    next.push(nk);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    all.into_iter().collect()
}

/// The Lemma-style family for one bag: iterate independent-set projections S,
/// covers C with |C| <= 2k(w+1), kick sets reachable with |D| <= k(w+1),
/// group the dangling vertices, and collect every suffix selection. The
/// automaton must decide the target property (its width must cover bags of
/// 2k(w+1)+1 vertices). The completeness contract: the optimal solution X*
/// satisfies X* ∩ B ∈ result.
pub fn enumerate_bag_family(
    g: &Graph,
    weights: &VertexWeights,
    b: VertexSet,
    k: usize,
    w: usize,
    aut: &dyn Automaton,
    mode: FamilyMode,
    guards: &Guards,
) -> Result<Vec<VertexSet>> {
    guards.check("vertices in bag family enumeration", guards.max_exact_n, g.vertex_count())?;
    let climit = 2 * k * (w + 1);
    let dlimit = k * (w + 1);
    let qbound = aut.state_bound().map(|x| x as usize);
    let use_states = matches!(mode, FamilyMode::Bounded) && qbound.is_some();

    let s_list = mis_projections(g, b, guards)?;
    let mut family: BTreeSet<VertexSet> = BTreeSet::new();
    let mut seen: FastSet<Vec<u8>> = FastSet::default();
    let mut err: Option<Error> = None;

    'outer: for &s in &s_list {
        let mut c_result: Result<()> = Ok(());
        for_each_subset_up_to(g.vertex_set(), climit, &mut |c| {
            let cb = c & b;
            let sc = s - c;
            for kick in kick_sets(g, sc, c, dlimit) {
                let u = sc - kick;
                let groups = match classify_dangling(
                    g,
                    weights,
                    u,
                    c,
                    if use_states { Some(aut) } else { None },
                ) {
                    Ok(gs) => gs,
                    Err(e) => {
                        c_result = Err(e);
                        return false;
                    }
                };
                // skip suffix expansion when this (base, grouping) was done
                let mut key: Vec<u8> = cb.bits().to_le_bytes().to_vec();
                for (_, members) in &groups {
                    key.push(255);
                    key.extend(members.iter().map(|&v| v as u8));
                }
                if !seen.insert(key) {
                    continue;
                }
                let lens: Vec<Vec<usize>> = groups
                    .iter()
                    .map(|(_, members)| suffix_lengths(members.len(), qbound, w, mode))
                    .collect();
                let combos: usize = lens.iter().map(|l| l.len()).product();
                if combos > guards.max_selections {
                    c_result = Err(Error::GuardExceeded {
                        what: "suffix selections per signature",
                        limit: guards.max_selections,
                        requested: combos,
                    });
                    return false;
                }
                let mut stack: Vec<(usize, VertexSet)> = vec![(0, cb)];
                while let Some((gi, acc)) = stack.pop() {
                    if gi == groups.len() {
                        family.insert(acc & b);
                        continue;
                    }
                    let members = &groups[gi].1;
                    for &len in &lens[gi] {
                        let chosen: VertexSet =
                            members[members.len() - len..].iter().collect();
                        stack.push((gi + 1, acc | chosen));
                    }
                }
                if family.len() > guards.max_family_size {
                    c_result = Err(Error::GuardExceeded {
                        what: "bag family size",
                        limit: guards.max_family_size,
                        requested: family.len(),
                    });
                    return false;
                }
            }
            true
        });
        if let Err(e) = c_result {
            err = Some(e);
            break 'outer;
        }
    }
    match err {
        Some(e) => Err(e),
        None => Ok(family.into_iter().collect()),
    }
}

/// A witness signature for a known solution x: an exact minimum vertex cover
/// of the solution edges at B, a greedy maximal-independent-set extension,
/// and an inclusion-minimal kick set. Errors when the structural size bounds
/// fail, which would mean a precondition was broken.
pub fn construct_signature_for(
    g: &Graph,
    x: VertexSet,
    b: VertexSet,
    k: usize,
    w: usize,
    guards: &Guards,
) -> Result<BasicSignature> {
    let hx = g.induced(x)?;
    if treewidth_exact(&hx, guards)? > w as isize {
        return Err(Error::Contract(format!("tw(g[{x:?}]) exceeds {w}")));
    }
    if mu_of_set(g, b, guards)? > k {
        return Err(Error::Contract(format!("mu of bag {b:?} exceeds {k}")));
    }

    // C: exact minimum vertex cover of the edges of g[x] incident to b
    let sol_edges: Vec<(Vertex, Vertex)> = hx
        .edges()
        .into_iter()
        .filter(|&(u, v)| b.contains(u) || b.contains(v))
        .collect();
    let endpoints: VertexSet = sol_edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let mut c_opt = None;
    for_each_subset_up_to(endpoints, endpoints.len(), &mut |cand| {
        if sol_edges.iter().all(|&(u, v)| cand.contains(u) || cand.contains(v)) {
            c_opt = Some(cand);
            return false;
        }
        true
    });
    let c = c_opt.unwrap_or(VertexSet::EMPTY);
    if c.len() > 2 * k * (w + 1) {
        return Err(Error::Contract(format!(
            "vertex cover of size {} exceeds 2k(w+1) = {}",
            c.len(),
            2 * k * (w + 1)
        )));
    }

    // S: greedy extension of (x ∩ b) \ c to a maximal independent set of g[b]
    let base = (x & b) - c;
    debug_assert!(is_independent_set(g, base).unwrap());
    let mut s = base;
    for v in b.iter() {
        if !s.contains(v) && !g.neighbors(v).intersects(s) {
            s.insert(v);
        }
    }

    // D: inclusion-minimal subset of x \ c with (s \ c) ∩ N(x \ c) ⊆ N(D)
    let target = (s - c) & g.neighborhood_of_set(x - c);
    let mut d = x - c;
    for v in (x - c).iter() {
        let candidate = d.without(v);
        if target.is_subset_of(g.neighborhood_of_set(candidate)) {
            d = candidate;
        }
    }
    if d.len() > k * (w + 1) {
        return Err(Error::Contract(format!(
            "kick set of size {} exceeds k(w+1) = {}",
            d.len(),
            k * (w + 1)
        )));
    }
    Ok(BasicSignature { c, s, d, b })
}

/// Checks the three defining signature conditions against a known solution.
pub fn signature_is_valid(g: &Graph, sig: &BasicSignature, x: VertexSet) -> bool {
    // 1: C inside X and covering the solution edges at B
    if !sig.c.is_subset_of(x) {
        return false;
    }
    let covers = x.iter().all(|u| {
        (g.neighbors(u) & x).iter().all(|v| {
            let at_b = sig.b.contains(u) || sig.b.contains(v);
            !at_b || sig.c.contains(u) || sig.c.contains(v)
        })
    });
    if !covers {
        return false;
    }
    // 2: S an independent set of g[B] containing (X ∩ B) \ C; maximality
    // keeps it inside the enumerated projections
    if !sig.s.is_subset_of(sig.b)
        || !is_independent_set(g, sig.s).unwrap_or(false)
        || !((x & sig.b) - sig.c).is_subset_of(sig.s)
    {
        return false;
    }
    let maximal = (sig.b - sig.s).iter().all(|v| g.neighbors(v).intersects(sig.s));
    if !maximal {
        return false;
    }
    // 3: D inside X \ C dominating the kicked part of S
    if !sig.d.is_subset_of(x - sig.c) {
        return false;
    }
    let kicked = (sig.s - sig.c) & g.neighborhood_of_set(x - sig.c);
    kicked.is_subset_of(g.neighborhood_of_set(sig.d))
}
