//! Construction, exact small-scale testing and certification of
//! (k,p)-planar hybrid graph representations: density bounds with tight
//! constructions, skeleton machinery, exhaustive (k,p)-planarity search,
//! 1-planar counterexample families, the pseudoforestal (2,2)-planarization,
//! and the monotone-3-SAT gadget compiler.

pub mod clustering;
pub mod config;
pub mod density;
pub mod error;
pub mod graph;
pub mod io;
pub mod kpsearch;
pub mod oneplane;
pub mod planarity;
pub mod rotation;

pub use error::{Error, Result};
