use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.norm() < 1.0) {
            return Err(Error::InvalidArgument(format!("{z} is not in the open unit disk")));
        }
        Ok(Self(z))
    }

    pub fn polar(r: f64, theta: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(r, theta))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }
}

impl From<DiskPoint> for Complex64 {
    fn from(p: DiskPoint) -> Self {
        p.0
    }
}

/// Signed angle difference wrapped into (-π, π].
#[inline]
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let mut d = (a - b) % (2.0 * PI);
    if d > PI {
        d -= 2.0 * PI;
    } else if d <= -PI {
        d += 2.0 * PI;
    }
    d
}

/// (a - z)/(1 - āz).
#[inline]
pub fn mobius(a: Complex64, z: Complex64) -> Complex64 {
    (a - z) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

/// Carleson square S(a) over the arc of length 1 - |a| centred at a/|a|,
/// or the whole disk for a = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CarlesonBox {
    WholeDisk,
    Box { center: Complex64 },
}

impl CarlesonBox {
    pub fn new(a: Complex64) -> Self {
        if a == Complex64::new(0.0, 0.0) {
            Self::WholeDisk
        } else {
            Self::Box { center: a }
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            Self::WholeDisk => z.norm() < 1.0,
            Self::Box { center } => in_carleson_box(center, z),
        }
    }
}

/// Membership in S(a): |z| ≥ |a|, |z| < 1 and |arg(a z̄)| ≤ (1 - |a|)/2.
pub fn in_carleson_box(a: Complex64, z: Complex64) -> bool {
    let (ra, rz) = (a.norm(), z.norm());
    if ra == 0.0 {
        return rz < 1.0;
    }
    if rz < ra || rz >= 1.0 {
        return false;
    }
    angle_diff(a.arg(), z.arg()).abs() <= 0.5 * (1.0 - ra)
}

/// Membership in Δ(a, r) = {|(a - z)/(1 - āz)| < r}.
pub fn in_pseudo_disk(a: Complex64, r: f64, z: Complex64) -> bool {
    mobius(a, z).norm() < r
}

/// Euclidean centre and radius of Δ(a, r).
pub fn pseudo_disk_euclidean(a: Complex64, r: f64) -> (Complex64, f64) {
    let a2 = a.norm_sqr();
    let den = 1.0 - r * r * a2;
    (a * ((1.0 - r * r) / den), r * (1.0 - a2) / den)
}

/// Stolz-type region Γ(a) = {z : |arg z - arg a| < (1 - |z|/|a|)/2}, with
/// arg 0 taken equal to arg a.
pub fn in_stolz(a: Complex64, z: Complex64) -> bool {
    let ra = a.norm();
    if ra == 0.0 {
        return false;
    }
    let half = 0.5 * (1.0 - z.norm() / ra);
    let d = if z.norm() == 0.0 { 0.0 } else { angle_diff(z.arg(), a.arg()).abs() };
    d < half
}

/// Tent T(a) = {z : a ∈ Γ(z)}.
pub fn in_tent(a: Complex64, z: Complex64) -> bool {
    in_stolz(z, a)
}

/// Regions over which measures are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Box { center: Complex64 },
    PseudoDisk { center: Complex64, radius: f64 },
    Stolz { vertex: Complex64 },
    Tent { base: Complex64 },
    Disk,
}

/// Polar bounding box: radii in [r_lo, r_hi] and angles within `half_width`
/// of `theta` (`half_width ≥ π` means all angles).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarBounds {
    pub r_lo: f64,
    pub r_hi: f64,
    pub theta: f64,
    pub half_width: f64,
}

impl Region {
    pub fn carleson_box(a: Complex64) -> Self {
        if a.norm() == 0.0 {
            Region::Disk
        } else {
            Region::Box { center: a }
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            Region::Box { center } => in_carleson_box(center, z),
            Region::PseudoDisk { center, radius } => in_pseudo_disk(center, radius, z),
            Region::Stolz { vertex } => in_stolz(vertex, z),
            Region::Tent { base } => in_tent(base, z),
            Region::Disk => z.norm() < 1.0,
        }
    }

    /// A polar box containing the region.
    pub fn bounds(&self) -> PolarBounds {
        match *self {
            Region::Box { center } => {
                let ra = center.norm();
                PolarBounds { r_lo: ra, r_hi: 1.0, theta: center.arg(), half_width: 0.5 * (1.0 - ra) }
            }
            Region::PseudoDisk { center, radius } => {
                let (c, rho) = pseudo_disk_euclidean(center, radius);
                let rc = c.norm();
                let half_width = if rc > rho { (rho / rc).asin() } else { PI };
                PolarBounds { r_lo: (rc - rho).max(0.0), r_hi: (rc + rho).min(1.0), theta: c.arg(), half_width }
            }
            Region::Stolz { vertex } => {
                PolarBounds { r_lo: 0.0, r_hi: vertex.norm(), theta: vertex.arg(), half_width: 0.5 }
            }
            Region::Tent { base } => {
                let rb = base.norm();
                let half_width = if rb == 0.0 { PI } else { 0.5 * (1.0 - rb) };
                PolarBounds { r_lo: rb, r_hi: 1.0, theta: base.arg(), half_width }
            }
            Region::Disk => PolarBounds { r_lo: 0.0, r_hi: 1.0, theta: 0.0, half_width: PI },
        }
    }

    /// Normalized area of the region in closed form, where available.
    pub fn area(&self) -> Option<f64> {
        match *self {
            Region::Box { center } => {
                let ra = center.norm();
                Some((1.0 - ra) * (1.0 - ra * ra) / (2.0 * PI))
            }
            Region::PseudoDisk { center, radius } => {
                let (_, rho) = pseudo_disk_euclidean(center, radius);
                Some(rho * rho)
            }
            Region::Disk => Some(1.0),
            _ => None,
        }
    }
}
