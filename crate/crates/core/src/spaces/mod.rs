//! Weighted Bergman space objects: test functions, kernels, Taylor operators.

mod kernel;
mod taylor;
mod test_function;

pub use kernel::{kernel_a1_norm, kernel_coefficients, terms_for_radius, KernelSeries, DEFAULT_TERMS};
pub use taylor::{kn_factor, norm_ap, rn_kernel_bound, rn_kernel_sampled, TaylorPolynomial};
pub use test_function::{default_gamma, TestFunction};
