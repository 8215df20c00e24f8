//! Median sets, pairings and consensus functions on finite graphs.

pub mod benzenoid;
pub mod classify;
pub mod consensus;
pub mod exec;
pub mod graph;
pub mod hypergraph;
pub mod lp;
pub mod median;
pub mod pairing;
pub mod profile;
pub mod tally;

pub use exec::Exec;
pub use graph::{Graph, GraphError, SimpleGraph, Vertex, VertexSet};
pub use profile::{Profile, ProfileBudget};
