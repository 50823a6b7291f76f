//! Connectivity-preserving graph editing: an exact solver for weighted
//! biconnectivity deletion, a kernel for its unweighted variant, digraph path
//! contraction, reduction generators and brute-force oracles.

pub mod error;
pub mod graph;
pub mod io;
pub mod criticality;
pub mod wbd;
pub mod kernel;
pub mod hardness;
pub mod oracles;
pub mod catalog;

pub use error::{Error, Result};
