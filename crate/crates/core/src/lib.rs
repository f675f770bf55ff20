//! Exact computations with Jordan superalgebras over ℚ, built around the Kac
//! superalgebra `K10`.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod fixtures;
pub mod identities;
pub mod linear;
pub mod morphism;
pub mod subalgebra;
pub mod verify;

pub use algebra::{Element, SuperAlgebra};
pub use error::{Error, Result};
pub use linear::{Matrix, Scalar, Subspace};
