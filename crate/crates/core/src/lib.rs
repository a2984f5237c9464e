//! Exact classification of pseudo-symmetric simplicial reflexive polytopes.
//!
//! All arithmetic is over the integers with overflow detection; there is no
//! floating point anywhere in the pipeline.

pub mod error;
pub mod format;
pub mod linalg;
pub mod polytope;
pub mod wirth;

pub use error::{Error, PolytopeError, Result};
pub use linalg::{IntMatrix, RationalVector};
pub use polytope::LatticePolytope;
pub use wirth::WirthMatrix;
pub mod catalog;
pub mod classify;
pub mod cli;
