//! Recognition of 4-Steiner powers and, through a twin reduction, 6-leaf
//! powers. Accepted graphs come with an explicit witness tree.

pub mod chordal;
pub mod cli;
pub mod cliquetree;
pub mod dp;
pub mod error;
pub mod families;
pub mod graph;
pub mod matching;
pub mod sweep;
pub mod testkit;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
pub use tree::{NodeLabel, SteinerTree};
