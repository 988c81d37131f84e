//! Discrete (pseudo-)Riemannian geometry on bicovariant group lattices:
//! lattice combinatorics, metric-compatible linear connections, torsion and
//! curvature, Levi-Civita searches, and isometric developments into the
//! tangent space.

pub mod calculus;
pub mod connection;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod metric;
pub mod scalar;
pub mod torsion_curvature;

pub use error::{Error, Result};
