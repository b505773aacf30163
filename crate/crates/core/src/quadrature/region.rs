//! Quadrature rules aligned with region boundaries.
//!
//! Each region is parametrised so that its boundary falls on panel ends:
//! boxes and tents in (x, θ) with x = -ln(1 - r), Stolz regions in (r, θ),
//! and pseudo-hyperbolic disks in local polar coordinates about their
//! Euclidean centre.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{pseudo_disk_euclidean, Region};
use crate::quadrature::gauss::GaussLegendre;
use crate::quadrature::measure::Measure;

const FREEZE_X: f64 = 53.0 * LN_2;
const RADIAL_ORDER: usize = 16;
const ANGULAR_ORDER: usize = 16;
const FINE_CELLS: usize = 24;

/// ∫_region f dμ, atoms included when the region's defining inequality admits them.
pub fn integrate_region<F>(measure: &Measure, region: &Region, mut f: F) -> Result<f64>
where
    F: FnMut(Complex64) -> f64,
{
    let mut total = 0.0;
    if measure.radial().is_some() {
        total += match *region {
            Region::Disk => sector_in_x(measure, 0.0, 0.0, |_| PI, &mut f)?,
            Region::Box { center } => {
                let ra = center.norm();
                let half = 0.5 * (1.0 - ra);
                sector_in_x(measure, -(-ra).ln_1p(), center.arg(), |_| half, &mut f)?
            }
            Region::Tent { base } => {
                let rb = base.norm();
                if rb == 0.0 {
                    sector_in_x(measure, 0.0, 0.0, |_| PI, &mut f)?
                } else {
                    sector_in_x(measure, -(-rb).ln_1p(), base.arg(), |r| 0.5 * (1.0 - rb / r), &mut f)?
                }
            }
            Region::Stolz { vertex } => stolz(measure, vertex, &mut f)?,
            Region::PseudoDisk { center, radius } => pseudo_disk(measure, center, radius, &mut f)?,
        };
    }
    for &(z, m) in measure.atom_list() {
        if region.contains(z) {
            let v = f(z);
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("atom at {z}")));
            }
            total += m * v;
        }
    }
    Ok(total)
}

/// μ(region).
pub fn measure_of_region(measure: &Measure, region: &Region) -> Result<f64> {
    if measure.is_radial() {
        // rotation-invariant measures have closed forms for boxes
        if let Region::Box { center } = *region {
            let ra = center.norm();
            return Ok(measure.radial_sector_mass(1.0 - ra, 1.0 - ra));
        }
        if let Region::Disk = *region {
            return Ok(measure.radial_tail(1.0));
        }
    }
    integrate_region(measure, region, |_| 1.0)
}

fn finite(v: f64, z: Complex64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("z = {z}")))
    }
}

/// Integral over {x ≥ x_lo, |θ - θ_c| ≤ half(r)} in x = -ln(1 - r), with
/// the radial mass beyond 1 - 2^{-53} lumped on the rim.
fn sector_in_x<H, F>(measure: &Measure, x_lo: f64, theta_c: f64, half: H, f: &mut F) -> Result<f64>
where
    H: Fn(f64) -> f64,
    F: FnMut(Complex64) -> f64,
{
    let gr = GaussLegendre::cached(RADIAL_ORDER);
    let ga = GaussLegendre::cached(ANGULAR_ORDER);
    let mut edges = vec![x_lo];
    let mut x = x_lo;
    for _ in 0..FINE_CELLS {
        x += LN_2;
        edges.push(x);
    }
    let mut width = 2.0 * LN_2;
    while x < FREEZE_X {
        x = (x + width).min(FREEZE_X);
        edges.push(x);
        width *= 2.0;
    }
    let angular = |r: f64, f: &mut F| -> Result<f64> {
        let h = half(r).min(PI);
        if h <= 0.0 {
            return Ok(0.0);
        }
        let mut s = 0.0;
        for (t, w) in ga.on(theta_c - h, theta_c + h) {
            let z = Complex64::from_polar(r, t);
            s += w * finite(f(z) * measure.modulation_at(z), z)?;
        }
        Ok(s)
    };
    let mut total = 0.0;
    for e in edges.windows(2) {
        if e[0] >= FREEZE_X {
            break;
        }
        for (x, w) in gr.on(e[0], e[1]) {
            let r = -(-x).exp_m1();
            let dens = measure.gap_factor(x);
            if dens == 0.0 {
                continue;
            }
            total += w * r * dens * angular(r, f)? / PI;
        }
    }
    let gap = (-FREEZE_X).exp();
    let rim_r = 1.0 - gap;
    let h = half(rim_r).min(PI);
    if h > 0.0 {
        // mean of f over the rim arc times the arc's share of the tail mass
        let mean = angular(rim_r, f)? / (2.0 * h);
        total += measure.radial_tail(gap) * (2.0 * h) / (2.0 * PI) * mean;
    }
    Ok(total)
}

fn stolz<F>(measure: &Measure, vertex: Complex64, f: &mut F) -> Result<f64>
where
    F: FnMut(Complex64) -> f64,
{
    let rv = vertex.norm();
    if rv == 0.0 {
        return Ok(0.0);
    }
    let gr = GaussLegendre::cached(RADIAL_ORDER);
    let ga = GaussLegendre::cached(ANGULAR_ORDER);
    let theta = vertex.arg();
    let mut total = 0.0;
    let panels = 4;
    for p in 0..panels {
        let (a, b) = (rv * p as f64 / panels as f64, rv * (p + 1) as f64 / panels as f64);
        for (r, w) in gr.on(a, b) {
            let h = 0.5 * (1.0 - r / rv);
            let mut s = 0.0;
            for (t, wt) in ga.on(theta - h, theta + h) {
                let z = Complex64::from_polar(r, t);
                s += wt * finite(f(z) * measure.density(z), z)?;
            }
            total += w * r * s / PI;
        }
    }
    Ok(total)
}

fn pseudo_disk<F>(measure: &Measure, center: Complex64, radius: f64, f: &mut F) -> Result<f64>
where
    F: FnMut(Complex64) -> f64,
{
    let (c, rho) = pseudo_disk_euclidean(center, radius);
    let gr = GaussLegendre::cached(RADIAL_ORDER);
    let n_theta = 64;
    let mut total = 0.0;
    let panels = 2;
    for p in 0..panels {
        let (a, b) = (rho * p as f64 / panels as f64, rho * (p + 1) as f64 / panels as f64);
        for (s, w) in gr.on(a, b) {
            let mut ring = 0.0;
            for k in 0..n_theta {
                let z = c + Complex64::from_polar(s, 2.0 * PI * k as f64 / n_theta as f64);
                ring += finite(f(z) * measure.density(z), z)?;
            }
            total += w * s * ring * 2.0 / n_theta as f64;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::measure::Modulation;
    use crate::weights::WeightProfile;
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn area_of_box_and_pseudo_disk() {
        let area = Measure::area();
        let b = Region::Box { center: c(0.5, 0.0) };
        let exact = b.area().unwrap();
        assert!((measure_of_region(&area, &b).unwrap() - exact).abs() < 1e-14);
        assert!((integrate_region(&area, &b, |_| 1.0).unwrap() - exact).abs() < 1e-12);
        let d = Region::PseudoDisk { center: c(0.3, 0.6), radius: 0.4 };
        assert!((integrate_region(&area, &d, |_| 1.0).unwrap() / d.area().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weighted_box_mass_is_box_functional() {
        let p = Arc::new(WeightProfile::parse("logpow:alpha=0.5,beta=-1").unwrap());
        let mu = Measure::weighted(p.clone());
        for &ra in &[0.5, 0.9, 0.999] {
            let region = Region::Box { center: Complex64::from_polar(ra, 1.0) };
            let direct = integrate_region(&mu, &region, |_| 1.0).unwrap();
            let exact = p.box_mass(ra);
            assert!((direct / exact - 1.0).abs() < 1e-9, "{ra}: {direct} vs {exact}");
        }
    }

    #[test]
    fn atoms_follow_region_inequalities() {
        let mu = Measure::zero().with_atoms(vec![(c(0.9, 0.0), 0.25), (c(0.5, 0.0), 1.0)]).unwrap();
        let b = Region::Box { center: c(0.9, 0.0) };
        assert_eq!(measure_of_region(&mu, &b).unwrap(), 0.25);
        // rim of S(0.5) is closed: the atom at 0.5 counts
        let b5 = Region::Box { center: c(0.5, 0.0) };
        assert_eq!(measure_of_region(&mu, &b5).unwrap(), 1.25);
        // Δ is open: an atom on its boundary does not count
        let d = Region::PseudoDisk { center: c(0.0, 0.0), radius: 0.5 };
        assert_eq!(measure_of_region(&mu, &d).unwrap(), 0.0);
    }

    #[test]
    fn tent_and_stolz_against_closed_forms() {
        let p = Arc::new(WeightProfile::parse("std:alpha=1").unwrap());
        let mu = Measure::weighted(p.clone());
        let xi = Complex64::from_polar(0.8, -2.0);
        let t = integrate_region(&mu, &Region::Tent { base: xi }, |_| 1.0).unwrap();
        assert!((t / p.tent_mass_gap(0.2) - 1.0).abs() < 1e-9);
        // area of Γ(v): (1/π) ∫_0^{|v|} r (1 - r/|v|) dr = |v|²/(6π)
        let v = c(0.0, 0.7);
        let s = integrate_region(&Measure::area(), &Region::Stolz { vertex: v }, |_| 1.0).unwrap();
        assert!((s - 0.49 / (6.0 * PI)).abs() < 1e-13);
    }

    #[test]
    fn modulated_density_box() {
        let mu = Measure::modulated(Modulation::OnePlusRe);
        let region = Region::Box { center: c(0.6, 0.0) };
        // the r cos θ term contributes (1/π) ∫ r² dr ∫ cos θ dθ
        let h: f64 = 0.2;
        let exact = region.area().unwrap() + (1.0 - 0.6f64.powi(3)) / 3.0 * 2.0 * h.sin() / PI;
        let v = measure_of_region(&mu, &region).unwrap();
        assert!((v - exact).abs() < 1e-12, "{v} vs {exact}");
    }
}
