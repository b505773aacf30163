//! Numerical toolkit for weighted Bergman spaces with doubling weights.

pub mod error;
pub mod geometry;
pub mod operators;
pub mod quadrature;
pub mod spaces;
pub mod special;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use weights::{Weight, WeightProfile};
