//! Shared fixtures for the benchmarks.

use bergman_core::weights::{AnalysisGrid, Weight, WeightProfile};

pub fn profile(spec: &str) -> WeightProfile {
    WeightProfile::classify(Weight::parse(spec).expect("valid weight"), &AnalysisGrid::new(12, 8)).expect("classifiable weight")
}
