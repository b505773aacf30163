//! Functionals of weighted composition operators u C_φ and their matrix oracle.

mod functionals;
mod grid;
mod matrix;
mod pushforward_maximal;
mod report;
mod schatten;
mod spec;
mod symbols;

pub use functionals::{
    boundedness_functional, carleson_constant, essential_norm_functional, mixed_exponent, psi_functional, psi_mixed_norm,
    restricted_constant, test_function_integral, MixedNorm, PsiMode, RestrictedReport, DIVERGENCE_FACTOR, LIMSUP_LEVELS,
};
pub use grid::{AGrid, OuterRule};
pub use report::{grows_geometrically, scan_grid, FunctionalReport, LevelRecord};
pub use spec::{GridConfig, OperatorSpec, Scenario};
pub use matrix::{singular_values, toeplitz_matrix, CMatrix, MatrixOracle, DEFAULT_ORACLE_N};
pub use pushforward_maximal::PushforwardMaximal;
pub use schatten::{schatten_functional, SchattenConfig, SchattenReport, SCHATTEN_GROWTH};
pub use symbols::{
    log_weight_constant, exp_weight_condition, dyadic_radii, multiplier_bound_profile, hat_product_sup, blaschke_lower_bound_experiment,
    GridSup, LowerBoundRecord, LowerBoundReport, MultiplierBoundReport,
};
