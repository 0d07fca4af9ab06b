//! Independent ground truth: exhaustive optimal-solution search over all
//! vertex subsets, and direct property checkers written without reference to
//! decompositions or automata. The solver is validated against this module,
//! so the property logic here must not share code with the automata.

use crate::automata::Preset;
use crate::bits::{Vertex, VertexSet};
use crate::graph::{treewidth_exact, Graph};
use crate::weights::{lex_larger, VertexWeights, Weight};
use crate::{Guards, Result};

/// True iff g[x] has no edges.
pub fn is_edgeless(g: &Graph, x: VertexSet) -> bool {
    !g.has_edge_within(x)
}

/// True iff g[x] is acyclic: DFS with parent tracking.
pub fn is_forest(g: &Graph, x: VertexSet) -> bool {
    let mut visited = VertexSet::EMPTY;
    for start in x.iter() {
        if visited.contains(start) {
            continue;
        }
        // stack of (vertex, parent)
        let mut stack: Vec<(Vertex, Option<Vertex>)> = vec![(start, None)];
        visited.insert(start);
        while let Some((v, parent)) = stack.pop() {
            for u in (g.neighbors(v) & x).iter() {
                if Some(u) == parent {
                    continue;
                }
                if visited.contains(u) {
                    return false;
                }
                visited.insert(u);
                stack.push((u, Some(v)));
            }
        }
    }
    true
}

/// True iff g[x] is nonempty and connected.
pub fn is_connected(g: &Graph, x: VertexSet) -> bool {
    match x.min_elem() {
        None => false,
        Some(v) => g.component_of(v, x) == x,
    }
}

/// True iff g[x] is a cycle: connected, 2-regular, nonempty.
pub fn is_cycle(g: &Graph, x: VertexSet) -> bool {
    is_connected(g, x) && x.iter().all(|v| (g.neighbors(v) & x).len() == 2)
}

/// True iff g[x] is a path; a single vertex counts as a path.
pub fn is_path(g: &Graph, x: VertexSet) -> bool {
    is_connected(g, x) && is_forest(g, x) && max_degree_le(g, x, 2)
}

pub fn max_degree_le(g: &Graph, x: VertexSet, d: usize) -> bool {
    x.iter().all(|v| (g.neighbors(v) & x).len() <= d)
}

/// A problem instance for the oracle: the preset property plus the treewidth
/// budget.
#[derive(Debug, Clone, Copy)]
pub struct ProblemSpec {
    pub preset: Preset,
    pub w: usize,
}

impl ProblemSpec {
    pub fn new(preset: Preset) -> Self {
        ProblemSpec { preset, w: preset.treewidth_bound() }
    }

    pub fn with_w(preset: Preset, w: usize) -> Self {
        ProblemSpec { preset, w }
    }

    /// The direct checker for the preset property on g[x].
    pub fn holds(&self, g: &Graph, x: VertexSet) -> bool {
        match self.preset {
            Preset::Mwis => is_edgeless(g, x),
            Preset::Forest => is_forest(g, x),
            Preset::Tree => is_forest(g, x) && is_connected(g, x),
            Preset::Path => is_path(g, x),
            Preset::Cycle => is_cycle(g, x),
        }
    }
}

/// Everything feasibility_check learned about one candidate set.
#[derive(Debug, Clone)]
pub struct Feasibility {
    pub treewidth: isize,
    pub tw_ok: bool,
    pub property_ok: bool,
    pub weight: Weight,
}

impl Feasibility {
    pub fn ok(&self) -> bool {
        self.tw_ok && self.property_ok
    }
}

/// Audits one candidate set against the ground-truth definition of
/// feasibility: exact treewidth of g[x] within budget, direct property true.
pub fn feasibility_check(
    g: &Graph,
    weights: &VertexWeights,
    spec: &ProblemSpec,
    x: VertexSet,
    guards: &Guards,
) -> Result<Feasibility> {
    let h = g.induced(x)?;
    let tw = treewidth_exact(&h, guards)?;
    Ok(Feasibility {
        treewidth: tw,
        tw_ok: tw <= spec.w as isize,
        property_ok: spec.holds(g, x),
        weight: weights.total(x),
    })
}

/// The optimal solution by exhaustive search: over all subsets x, feasible
/// iff tw(g[x]) <= w and the property holds; maximize weight, break ties by
/// the lexicographic order. None iff no subset is feasible.
pub fn brute_force_optimal(
    g: &Graph,
    weights: &VertexWeights,
    spec: &ProblemSpec,
    guards: &Guards,
) -> Result<Option<(VertexSet, Weight)>> {
    let verts: Vec<Vertex> = g.vertices().collect();
    let m = verts.len();
    guards.check("vertices in brute-force oracle", guards.max_oracle_n, m)?;
    let mut best: Option<(VertexSet, Weight)> = None;
    for mask in 0u64..1u64 << m {
        let x: VertexSet = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        if !spec.holds(g, x) {
            continue;
        }
        let h = g.induced(x)?;
        if treewidth_exact(&h, guards)? > spec.w as isize {
            continue;
        }
        let w = weights.total(x);
        let better = match &best {
            None => true,
            Some((bx, bw)) => {
                w > *bw || (w == *bw && lex_larger(x, *bx, weights.order()))
            }
        };
        if better {
            best = Some((x, w));
        }
    }
    Ok(best)
}
