//! Simulation laboratory for adaptive adjacency queries on sparse random graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`oracle`] reveals a `G(n, p)` instance lazily, one pair at a time, and
//!   keeps an exact ledger of the queries asked.
//! * [`pathfind`] holds adaptive algorithms that talk to an oracle: the
//!   depth-first long-path finder and spanning-tree component discovery.
//! * [`structure`] analyses fully revealed graphs: components, 2-cores,
//!   longest paths and maximum vertex-disjoint long-path covers of forests.
//! * [`gw`] is the random-tree toolkit (Poisson Galton-Watson trees, Borel
//!   law, uniform labeled trees, diameter counts, random-map bounds).
//! * [`experiments`] wires everything into reproducible, seeded experiments.

pub mod error;
pub mod experiments;
pub mod gw;
pub mod oracle;
pub mod pathfind;
pub mod rng;
pub mod structure;

pub use error::{Error, Result};
pub use oracle::{AdjacencyOracle, Edge, LazyOracle, OracleConfig, RevealedGraph, Vertex};
pub use pathfind::{Path, SearchOutcome};
pub use structure::{CoverObjective, Forest, PathCoverResult, SimpleGraph};
