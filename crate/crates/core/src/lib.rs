//! Identifying codes in digraphs.

pub mod digraph;
pub mod format;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod idcode;
pub mod mincode;
pub mod patterns;
pub mod vertex_set;

pub use digraph::{Digraph, DigraphBuilder, Girth, GraphError};
pub use graph::UndirectedGraph;
pub use vertex_set::VertexSet;
