//! Skew zero forcing, adjacency nullspaces and their matroids on graphs and
//! hypergraphs.
//!
//! Vertices are `0..n`. Sets of vertices are [`VertexSet`]s; every exact
//! computation is over the rationals.

pub mod completeness;
pub mod error;
pub mod forcing;
pub mod generate;
pub mod graph;
pub mod hypergraph;
pub mod hypernull;
pub mod linalg;
pub mod matching;
pub mod matroid;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::{Graph, GraphReport};
pub use hypergraph::{Hypergraph, HypergraphReport};
pub use vertex_set::VertexSet;
