//! Exact solver for MAXIMUM-WEIGHT INDUCED SUBGRAPH OF BOUNDED TREEWIDTH on
//! graphs that come with a tree decomposition of small induced matching width.
//!
//! The pipeline: measure the induced matching width of the working
//! decomposition, enumerate per-bag candidate families from bag signatures,
//! normalize the decomposition to supernice form, and run a dynamic program
//! over DP-tuples that simultaneously builds the solution and evaluates a
//! tree-decomposition automaton along an inner decomposition of the solution.
//! A brute-force oracle provides independent ground truth at small scale.
//!
//! See the `examples/` directory for one runnable program per capability and
//! `tests/acceptance.rs` for the cross-validation suite.

pub mod automata;
pub mod bits;
pub mod dp;
pub mod graph;
pub mod inner;
pub mod io;
pub mod oracle;
pub mod pipeline;
pub mod rng;
pub mod signatures;
pub mod supernice;
pub mod treedec;
pub mod weights;

pub use bits::{Vertex, VertexSet};
pub use graph::Graph;
pub use weights::{lex_larger, VertexOrder, VertexWeights, Weight};

use std::fmt;

/// Crate-wide error type. Exhaustive routines fail loudly instead of hanging;
/// invalid data is reported with enough context to reproduce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A resource guard for an exponential-time routine was exceeded.
    GuardExceeded {
        what: &'static str,
        limit: usize,
        requested: usize,
    },
    /// A vertex index outside 0..n.
    OutOfRange { vertex: usize, n: usize },
    /// Structurally invalid input (bad tree, bad bag id, ...).
    Invalid(String),
    /// A rooted decomposition that does not classify as supernice.
    NotSupernice { node: usize, reason: String },
    /// Text format error with 1-based line number.
    Parse { line: usize, msg: String },
    /// An internal invariant failed; indicates a bug or a broken precondition.
    Contract(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GuardExceeded { what, limit, requested } => {
                write!(f, "resource guard exceeded for {what}: {requested} > limit {limit}")
            }
            Error::OutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph with {n} vertices")
            }
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
            Error::NotSupernice { node, reason } => {
                write!(f, "node {node} violates supernice shape: {reason}")
            }
            Error::Parse { line, msg } => write!(f, "parse error on line {line}: {msg}"),
            Error::Contract(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

/// Explicit limits for the exhaustive routines. Defaults are conservative:
/// anything beyond them would take unreasonable time, so we error out instead.
#[derive(Debug, Clone)]
pub struct Guards {
    /// Max vertex count for subset-DP treewidth and similar 2^n routines.
    pub max_exact_n: usize,
    /// Max vertex count for the brute-force optimum oracle.
    pub max_oracle_n: usize,
    /// Max vertex count for mu-width-minimizing elimination search.
    pub max_search_n: usize,
    /// Cap on enumerated maximal independent sets.
    pub max_mis_count: usize,
    /// Cap on edges considered by the induced-matching search.
    pub max_mu_edges: usize,
    /// Cap on the size of one enumerated bag family.
    pub max_family_size: usize,
    /// Cap on suffix selections per signature triple.
    pub max_selections: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_exact_n: 20,
            max_oracle_n: 14,
            max_search_n: 12,
            max_mis_count: 200_000,
            max_mu_edges: 96,
            max_family_size: 2_000_000,
            max_selections: 1 << 22,
        }
    }
}

impl Guards {
    pub fn check(&self, what: &'static str, limit: usize, requested: usize) -> Result<()> {
        if requested > limit {
            Err(Error::GuardExceeded { what, limit, requested })
        } else {
            Ok(())
        }
    }
}

/// Small fast hasher for bitset-heavy DP keys (FxHash-style multiply-xor).
/// std's SipHash dominates the profile otherwise.
#[derive(Default, Clone)]
pub struct FastHasher(u64);

impl std::hash::Hasher for FastHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 ^ b as u64).wrapping_mul(0x100000001b3);
        }
    }
    fn write_u64(&mut self, x: u64) {
        self.0 = (self.0.rotate_left(5) ^ x).wrapping_mul(0x517cc1b727220a95);
    }
    fn write_usize(&mut self, x: usize) {
        self.write_u64(x as u64);
    }
}

#[derive(Default, Clone)]
pub struct FastBuild;

impl std::hash::BuildHasher for FastBuild {
    type Hasher = FastHasher;
    fn build_hasher(&self) -> FastHasher {
        FastHasher(0xcbf29ce484222325)
    }
}

pub type FastMap<K, V> = std::collections::HashMap<K, V, FastBuild>;
pub type FastSet<K> = std::collections::HashSet<K, FastBuild>;
