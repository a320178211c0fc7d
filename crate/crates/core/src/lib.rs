//! Size estimation for maximum matchings in fully dynamic graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: the mutable graph, update events, streams and read-only views.
//! * [`oracles`]: exact and Monte-Carlo ground truth (Hopcroft–Karp, blossom,
//!   exhaustive search, greedy expectations, Hall witnesses).
//! * [`greedy`]: local simulation of random greedy maximal matching.
//! * [`maximal`]: a maximal matching maintained under edge updates.
//! * [`edcs`]: edge-degree constrained subgraphs, tight instances and the
//!   tightness analyzer.
//! * [`estimators`]: the query algorithms built on the pieces above.
//! * [`dynamic`]: lazy refreshing, amplification and vertex sparsification.

pub mod dynamic;
pub mod edcs;
pub mod error;
pub mod estimators;
pub mod graph;
pub mod greedy;
pub mod maximal;
pub mod oracles;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{Bipartition, DynamicGraph, EventKind, Side, UpdateEvent, UpdateStream, VertexId};
