//! Radial weights, their tail functionals and numerical classification.

mod family;
mod grid;
mod profile;
mod tables;

pub use family::{GapFn, SampledWeight, Weight, WeightFamily};
pub use grid::{AnalysisGrid, GridPoint};
pub use profile::{Exponents, Log2Check, TailConstants, WeightClass, WeightProfile};
