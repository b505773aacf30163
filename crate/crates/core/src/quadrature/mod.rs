//! Integration over the disk, measures and pushforwards.

mod disk;
pub mod gauss;
mod measure;
mod peak;
mod pushforward;
mod region;

pub use disk::{integrate_disk, integrate_disk_measure, DiskQuadrature, Ring};
pub use measure::{Measure, Modulation, Radial};
pub use peak::PeakIntegrator;
pub use pushforward::{pushforward_region, PushforwardCloud, PushforwardSpec};
pub use region::{integrate_region, measure_of_region};
