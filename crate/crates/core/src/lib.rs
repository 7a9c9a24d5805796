//! Canonical codes and isomorphism testing for planar graphs.

pub mod bench;
pub mod blockcut;
pub mod canon;
pub mod code;
pub mod error;
pub mod export;
pub mod generators;
pub mod graph;
pub mod iso;
pub mod planarity;
pub mod spqr;
pub mod tree;
pub mod weinberg;

pub use error::{Error, Result};
pub use graph::{apply_permutation, Graph, Permutation};
