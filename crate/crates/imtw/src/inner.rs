//! Inner tree decompositions: given a supernice host decomposition and a
//! bounded-treewidth solution X, partition X into the high-degree/linked part
//! X1 and the scattered part X2, and build a width-bounded decomposition of
//! g[X] that follows the host node for node. The dynamic program never calls
//! this on unknown sets; it exists as the constructive correctness backbone
//! and as a test oracle.

use crate::bits::{Vertex, VertexSet};
use crate::graph::{treewidth_exact, Graph};
use crate::supernice::{NodeKind, Supernice};
use crate::treedec::{validate, TreeDecomposition};
use crate::{Error, Guards, Result};

/// ell = k (w+1) (5w+6): the sum of the three per-bag component bounds
/// k(w+1)^2, k(w+1)(2w+3), and 2k(w+1)^2. Inner bags carry at most one more
/// vertex (the topped one), so inner width stays at most ell.
pub fn ell_bound(k: usize, w: usize) -> usize {
    k * (w + 1) * (5 * w + 6)
}

/// The split of a solution into its linked part X1 and independent part X2,
/// with the intermediate classes kept for the bound checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionPartition {
    pub x1: VertexSet,
    pub x2: VertexSet,
    /// Degree in g[x] strictly above 2(w+1).
    pub x_high: VertexSet,
    /// The rest of x.
    pub x_low: VertexSet,
    /// Low vertices with a low neighbor.
    pub x_low_linked: VertexSet,
}

/// Exact partition: high-degree vertices and low vertices with low neighbors
/// go to X1, isolated-among-low vertices go to X2.
pub fn partition_solution(g: &Graph, x: VertexSet, w: usize) -> SolutionPartition {
    let threshold = 2 * (w + 1);
    let x_high: VertexSet = x.iter().filter(|&v| (g.neighbors(v) & x).len() > threshold).collect();
    let x_low = x - x_high;
    let x_low_linked: VertexSet =
        x_low.iter().filter(|&v| g.neighbors(v).intersects(x_low)).collect();
    SolutionPartition {
        x1: x_high | x_low_linked,
        x2: x_low - x_low_linked,
        x_high,
        x_low,
        x_low_linked,
    }
}

/// An inner decomposition: one bag per host node, covering g[x1 | x2].
#[derive(Debug, Clone)]
pub struct InnerDecomposition {
    pub ibag: Vec<VertexSet>,
    pub ell: usize,
}

/// outH(t): high vertices of the subtree with a neighbor in bag(t) ∩ X_low.
fn out_high(g: &Graph, sn: &Supernice, part: &SolutionPartition, t: usize) -> VertexSet {
    let low_in_bag = sn.bag(t) & part.x_low;
    part.x_high & sn.subtree(t) & g.neighborhood_of_set(low_in_bag)
}

/// Builds the partition and the inner decomposition for a known solution.
/// The host must be ell-supernice for ell >= ell_bound(mu(host), w); the
/// result passes `verify_inner`.
pub fn build_inner(
    g: &Graph,
    sn: &Supernice,
    x: VertexSet,
    w: usize,
    guards: &Guards,
) -> Result<(SolutionPartition, InnerDecomposition)> {
    let hx = g.induced(x)?;
    if treewidth_exact(&hx, guards)? > w as isize {
        return Err(Error::Contract(format!("tw(g[{x:?}]) exceeds {w}")));
    }
    let part = partition_solution(g, x, w);
    let ell = sn.ell();
    let n = sn.node_count();

    // the raw bags: bag ∩ X1, plus pulled-up high vertices, plus the topped
    // X2 vertex
    let mut raw: Vec<VertexSet> = Vec::with_capacity(n);
    for t in 0..n {
        let mut ib = (sn.bag(t) & part.x1) | out_high(g, sn, &part, t);
        if let Some(v) = sn.top_vertex(t) {
            if part.x2.contains(v) {
                ib.insert(v);
            }
        }
        raw.push(ib);
    }

    // smear: at each forget node, excess vertices leave one per node along
    // the neutral chain above, in ascending order; the forgotten vertex
    // itself leaves at the forget node exactly when it sits in X2
    let mut ibag = raw.clone();
    for t in 0..n {
        let NodeKind::Forget(v) = sn.kind(t) else { continue };
        let c = sn.children(t)[0];
        let target = if part.x2.contains(v) { raw[c].without(v) } else { raw[c] };
        ibag[t] = target;
        let mut drop: Vec<Vertex> = (target - raw[t]).to_vec();
        drop.sort_unstable();
        if drop.len() > ell + 1 {
            return Err(Error::Contract(format!(
                "{} excess vertices at forget node {t}, chain holds {}",
                drop.len(),
                ell + 1
            )));
        }
        let mut cur = t;
        let mut removed = VertexSet::EMPTY;
        for i in 0..ell + 1 {
            let p = sn.parent(cur).ok_or_else(|| {
                Error::Contract(format!("forget node {t} lacks a neutral chain"))
            })?;
            if sn.kind(p) != NodeKind::Neutral {
                return Err(Error::Contract(format!(
                    "node {p} above forget node {t} is {:?}, not neutral",
                    sn.kind(p)
                )));
            }
            if raw[p] != raw[t] {
                return Err(Error::Contract(format!(
                    "raw inner bag changes along the neutral chain at {p}"
                )));
            }
            if i < drop.len() {
                removed.insert(drop[i]);
            }
            ibag[p] = target - removed;
            cur = p;
        }
    }

    let inner = InnerDecomposition { ibag, ell };
    let report = verify_inner(g, sn, &part, &inner, x);
    if !report.is_empty() {
        return Err(Error::Contract(format!(
            "inner decomposition fails verification: {}",
            report.join("; ")
        )));
    }
    Ok((part, inner))
}

/// Checks every structural requirement of the inner decomposition against
/// the host; violations are returned as data, with witnesses.
pub fn verify_inner(
    g: &Graph,
    sn: &Supernice,
    part: &SolutionPartition,
    inner: &InnerDecomposition,
    x: VertexSet,
) -> Vec<String> {
    let mut issues = Vec::new();
    let n = sn.node_count();
    let ibag = &inner.ibag;

    // partition shape
    if part.x1 | part.x2 != x || part.x1.intersects(part.x2) {
        issues.push("x1, x2 do not partition x".into());
    }
    if g.has_edge_within(part.x2) {
        issues.push("x2 is not an independent set".into());
    }
    if part.x1 != part.x_high | part.x_low_linked || part.x2 != part.x_low - part.x_low_linked {
        issues.push("partition fields inconsistent".into());
    }

    // item 1: a tree decomposition of g[x] of width <= ell
    let mut edges = Vec::new();
    for t in 0..n {
        for &c in sn.children(t) {
            edges.push((t, c));
        }
    }
    let gx = match g.induced(x) {
        Ok(h) => h,
        Err(e) => {
            issues.push(format!("x out of range: {e}"));
            return issues;
        }
    };
    match TreeDecomposition::new(ibag.clone(), edges) {
        Err(e) => issues.push(format!("inner bags do not form a tree: {e}")),
        Ok(td) => {
            let report = validate(&gx, &td);
            if !report.is_valid() {
                issues.push(format!("inner decomposition invalid for g[x]: {report}"));
            }
        }
    }
    for t in 0..n {
        if ibag[t].len() > inner.ell + 1 {
            issues.push(format!("inner bag at {t} has {} > ell+1 vertices", ibag[t].len()));
        }
    }

    // item 2: bag ∩ X1 ⊆ ibag ∩ X1 ⊆ subtree ∩ X1
    for t in 0..n {
        if !(sn.bag(t) & part.x1).is_subset_of(ibag[t]) {
            issues.push(format!("node {t}: bag ∩ x1 not inside inner bag"));
        }
        if !(ibag[t] & part.x1).is_subset_of(sn.subtree(t)) {
            issues.push(format!("node {t}: inner bag x1-part leaves the subtree"));
        }
    }

    // item 3: an X2 vertex occurs exactly at its top node
    for v in part.x2.iter() {
        let holders: Vec<usize> = (0..n).filter(|&t| ibag[t].contains(v)).collect();
        if holders.len() != 1 || Some(holders[0]) != sn.top_of(v) {
            issues.push(format!("x2 vertex {v} occurs at {holders:?}, top is {:?}", sn.top_of(v)));
        }
    }

    // item 4: per-kind shape rules
    for t in 0..n {
        match sn.kind(t) {
            NodeKind::Initial => {
                if !ibag[t].is_empty() {
                    issues.push(format!("initial node {t} has nonempty inner bag"));
                }
            }
            NodeKind::Introduce(v) => {
                let c = sn.children(t)[0];
                let ok = ibag[t] == ibag[c] || (ibag[t] == ibag[c].with(v) && !ibag[c].contains(v));
                if !ok {
                    issues.push(format!("introduce rule broken at {t}"));
                }
            }
            NodeKind::Forget(v) => {
                let c = sn.children(t)[0];
                let ok = if part.x2.contains(v) {
                    ibag[c].contains(v) && ibag[t] == ibag[c].without(v)
                } else {
                    ibag[t] == ibag[c]
                };
                if !ok {
                    issues.push(format!("forget rule broken at {t}"));
                }
            }
            NodeKind::Join => {
                let c1 = sn.children(t)[0];
                let c2 = sn.children(t)[1];
                if ibag[t] != ibag[c1] | ibag[c2] {
                    issues.push(format!("join union rule broken at {t}"));
                }
                if ibag[c1] & ibag[c2] != ibag[t] & sn.bag(t) {
                    issues.push(format!("join intersection rule broken at {t}"));
                }
            }
            NodeKind::Neutral => {
                let c = sn.children(t)[0];
                let dropped = ibag[c] - ibag[t];
                let ok = ibag[t].is_subset_of(ibag[c])
                    && dropped.len() <= 1
                    && dropped.is_subset_of(part.x1);
                if !ok {
                    issues.push(format!("neutral rule broken at {t}"));
                }
            }
            NodeKind::Top(v) => {
                let c = sn.children(t)[0];
                let ok = if part.x2.contains(v) {
                    !ibag[c].contains(v) && ibag[t] == ibag[c].with(v)
                } else {
                    ibag[t] == ibag[c]
                };
                if !ok {
                    issues.push(format!("top rule broken at {t}"));
                }
            }
        }
        if sn.parent(t).is_none() && !ibag[t].is_empty() {
            issues.push(format!("root inner bag not empty"));
        }
    }

    // closure property: solution neighbors of the bag's X2 part that live in
    // the subtree and in X1 must already sit in the inner bag
    for t in 0..n {
        let demand = g.neighborhood_of_set(part.x2 & sn.bag(t)) & part.x1 & sn.subtree(t);
        if !demand.is_subset_of(ibag[t]) {
            issues.push(format!("node {t}: x2-neighbor closure broken"));
        }
    }

    issues
}
