//! Tree decomposition automata: deterministic bottom-up machines evaluated
//! along rooted binary tree decompositions. A machine of width L sees bags of
//! at most L+1 vertices together with their induced subgraphs, and labels
//! every node with a state; acceptance is a predicate on the root state.
//!
//! Instead of compiling logic formulas, this crate ships a catalogue of
//! hand-written automata (see [`catalogue`]); each preset exactly decides its
//! property on the processed graph, and every preset property implies the
//! preset's treewidth bound.

pub mod catalogue;

use crate::bits::{Vertex, VertexSet};
use crate::graph::Graph;
use crate::supernice::Supernice;
use crate::{Error, Result};

pub use catalogue::{factor_by_name, Preset};

/// Opaque automaton state: a canonical byte encoding, injective on
/// distinguishable states, usable as a table key.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(pub Vec<u8>);

/// The transition contract. `leaf`, `step`, and `join` receive bag vertex
/// sets; the induced subgraphs and the vertex-order restriction are available
/// through the graph reference.
pub trait Automaton {
    fn name(&self) -> String;

    /// Width L: bags passed to this automaton have at most L+1 vertices.
    fn width(&self) -> usize;

    /// Upper bound on the number of reachable states, when one is known.
    /// Partition-based automata return None (their combinatorial bounds are
    /// astronomically loose).
    fn state_bound(&self) -> Option<u64>;

    /// State of a leaf node with the given bag.
    fn leaf(&self, g: &Graph, bag: VertexSet) -> State;

    /// State of a one-child node: child state, child bag, this node's bag.
    /// Law: a step with equal child and parent bags changes nothing, so it
    /// must return the state unchanged. The table engine relies on this.
    fn step(&self, g: &Graph, q: &State, child: VertexSet, parent: VertexSet) -> State;

    /// State of a two-child node.
    fn join(
        &self,
        g: &Graph,
        q1: &State,
        q2: &State,
        child1: VertexSet,
        child2: VertexSet,
        parent: VertexSet,
    ) -> State;

    fn accepting(&self, q: &State) -> bool;

    /// True when no continuation of this state can ever accept. Purely an
    /// optimization hook: tables may drop dead entries.
    fn is_dead(&self, _q: &State) -> bool {
        false
    }
}

/// Bottom-up run over an explicitly rooted binary decomposition given as
/// (bags, children, root). Returns the root state.
pub fn run(
    a: &dyn Automaton,
    g: &Graph,
    bags: &[VertexSet],
    children: &[Vec<usize>],
    root: usize,
) -> Result<State> {
    for (t, b) in bags.iter().enumerate() {
        if b.len() > a.width() + 1 {
            return Err(Error::Invalid(format!(
                "bag {t} has {} vertices, automaton width {} allows {}",
                b.len(),
                a.width(),
                a.width() + 1
            )));
        }
        if children[t].len() > 2 {
            return Err(Error::Invalid(format!("node {t} has more than two children")));
        }
    }
    // iterative post-order
    let mut states: Vec<Option<State>> = vec![None; bags.len()];
    let mut stack = vec![(root, false)];
    while let Some((t, expanded)) = stack.pop() {
        if expanded {
            let q = match children[t].as_slice() {
                [] => a.leaf(g, bags[t]),
                [c] => a.step(g, states[*c].as_ref().unwrap(), bags[*c], bags[t]),
                [c1, c2] => a.join(
                    g,
                    states[*c1].as_ref().unwrap(),
                    states[*c2].as_ref().unwrap(),
                    bags[*c1],
                    bags[*c2],
                    bags[t],
                ),
                _ => unreachable!(),
            };
            states[t] = Some(q);
        } else {
            stack.push((t, true));
            for &c in &children[t] {
                stack.push((c, false));
            }
        }
    }
    Ok(states[root].take().unwrap())
}

pub fn accepts(
    a: &dyn Automaton,
    g: &Graph,
    bags: &[VertexSet],
    children: &[Vec<usize>],
    root: usize,
) -> Result<bool> {
    Ok(a.accepting(&run(a, g, bags, children, root)?))
}

/// Run along a supernice decomposition.
pub fn run_on_supernice(a: &dyn Automaton, g: &Graph, sn: &Supernice) -> Result<State> {
    let bags: Vec<VertexSet> = (0..sn.node_count()).map(|t| sn.bag(t)).collect();
    let children: Vec<Vec<usize>> =
        (0..sn.node_count()).map(|t| sn.children(t).to_vec()).collect();
    run(a, g, &bags, &children, sn.root())
}

/// State of the automaton on the two-node neighborhood decomposition of v:
/// leaf bag nc + v, root bag nc. Used to type dangling vertices.
pub fn neighborhood_state(a: &dyn Automaton, g: &Graph, v: Vertex, nc: VertexSet) -> Result<State> {
    let leaf_bag = nc.with(v);
    if leaf_bag.len() > a.width() + 1 {
        return Err(Error::Invalid(format!(
            "neighborhood bag of vertex {v} exceeds automaton width {}",
            a.width()
        )));
    }
    let q = a.leaf(g, leaf_bag);
    Ok(a.step(g, &q, leaf_bag, nc))
}

/// Acceptance of the single-bag decomposition of g[x], the cheapest way to
/// ask an automaton about one induced subgraph.
pub fn accepts_subset(a: &dyn Automaton, g: &Graph, x: VertexSet) -> Result<bool> {
    let h = g.induced(x)?;
    accepts(a, &h, &[x], &[vec![]], 0)
}
