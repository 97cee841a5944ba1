//! Levelness, Theta rank and related certificates for small matroids.
//!
//! Matroids are stored as explicit basis families on at most 32 elements.
//! The crate computes the facets of base polytopes, vanishing ideals of base
//! configurations, sums-of-squares certificates, Hadamard square roots of
//! slack matrices, and runs exhaustive searches over small matroids.

pub mod bits;
pub mod catalog;
pub mod certificates;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod ideals;
pub mod io;
pub mod iso;
pub mod matroid;

pub use error::{Error, Result};
pub use matroid::Matroid;
