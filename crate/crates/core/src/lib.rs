//! Exact counting, closed-form bounds, and exhaustive search for pattern
//! maximisation in red-blue complete graphs.
//!
//! A *red-blue graph* is a graph in which every edge is coloured red or blue.
//! Given a small red-blue pattern `H` (whose non-edges impose no constraint),
//! this crate computes the number of copies of `H` inside a red-blue complete
//! graph, evaluates the closed-form bounds and extremal values that govern
//! those counts, searches for extremal hosts exhaustively at small orders, and
//! runs the numerical degree/codegree relaxation machinery used to analyse
//! near-extremal structure.
//!
//! The crate is organised around six areas:
//!
//! * [`graph`] — the [`graph::ColouredCompleteGraph`] data type, constructions
//!   (partitioned, Turán-red, seeded quasirandom), and structural assessments
//!   (balance, bipartiteness, quasirandomness).
//! * [`pattern`] — small coloured patterns, quantum (weighted) patterns, and a
//!   registry of the named four-vertex patterns.
//! * [`counting`] — exact counters: a generic embedding counter plus the
//!   specialised antipodal/codegree identities and the alternating-walk DP.
//! * [`formulas`] — closed-form evaluators with exact rational and float
//!   values.
//! * [`search`] — isomorph-free exhaustive generation, brute-force maxima,
//!   edge-flip local search, and extremal-graph classification.
//! * [`relaxation`] — degree-codegree vectors, the equalisation iteration,
//!   pair-function analysis, canonical-pattern scores, and the multipartite
//!   profile optimiser.
//!
//! ```
//! use redblue::{counting, formulas, graph, pattern, Colour};
//!
//! // the balanced partitioned graph on 6 vertices carries 18 alternating
//! // 4-cycles, which is exactly the closed-form maximum
//! let g = graph::construct_partitioned(6, 3, Colour::Red)?;
//! assert_eq!(counting::count_copies(&pattern::rbrb_c4(), &g), 18);
//! assert_eq!(formulas::rbrb_max(6), 18);
//! # Ok::<(), redblue::Error>(())
//! ```

pub mod acceptance;
pub mod counting;
pub mod formulas;
pub mod graph;
pub mod pattern;
pub mod relaxation;
pub mod rng;
pub mod search;

mod canon;

pub use graph::{Colour, ColouredCompleteGraph};
pub use pattern::{PatternGraph, QuantumPattern};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
