//! Disk regions, Möbius maps and analytic self-maps.

mod maps;
mod regions;

pub use maps::{
    blaschke_bound, boundary_modulus_profile, parse_complex, poly_compose, poly_mul, AnalyticMap, BlaschkeData,
};
pub use regions::{
    angle_diff, in_carleson_box, in_pseudo_disk, in_stolz, in_tent, mobius, pseudo_disk_euclidean, CarlesonBox,
    DiskPoint, PolarBounds, Region,
};
