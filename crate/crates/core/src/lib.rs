//! Diverse solutions for shortest paths, matroid bases and bipartite
//! matchings.
//!
//! Every problem asks for `k` feasible solutions maximizing the sum of
//! pairwise weighted Hamming distances. Each element is copied `k` times with
//! copy weights `w(e) * (k - 2i + 1)`; a maximum-weight packing of copies then
//! decodes into an optimal family of solutions. Paths and matchings solve the
//! packing with minimum-cost flow, matroid bases with greedy matroid union.

pub mod baseline;
pub mod bench;
pub mod diversity;
pub mod error;
pub mod flow;
pub mod graph;
pub mod matching;
pub mod matroid;
pub mod paths;
pub mod shortest_dag;

pub use error::{Error, ParseError, Result};
