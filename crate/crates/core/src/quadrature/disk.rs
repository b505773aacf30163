//! Polar product quadrature on the unit disk with dyadic radial cells.
//!
//! Radial cells are `[1 - 2^{-j}, 1 - 2^{-j-1}]`, i.e. unit-length-ln 2 cells in
//! x = -ln(1 - r), each carrying a Gauss-Legendre rule. The angular rule on a
//! cell is the trapezoid rule with `min(base 2^j, cap)` points, exact for
//! trigonometric polynomials below that degree. Beyond the last cell the
//! radial range is covered by doubling panels up to 1 - 2^{-53}, after which
//! the remaining mass of the measure is placed on a rim ring.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::gauss::GaussLegendre;
use crate::quadrature::measure::Measure;

const FREEZE_LEVEL: u32 = 53;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskQuadrature {
    pub levels: u32,
    pub gauss_order: usize,
    pub angular_base: usize,
    pub angular_cap: usize,
}

impl Default for DiskQuadrature {
    fn default() -> Self {
        Self { levels: 10, gauss_order: 12, angular_base: 64, angular_cap: 8192 }
    }
}

/// One radial node with its angular resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ring {
    pub x: f64,
    pub r: f64,
    /// 1 - r, exact
    pub gap: f64,
    /// Radial weight 2 r w_x (area element per unit angle fraction), or 1 on the rim.
    pub weight: f64,
    pub n_theta: usize,
    /// Radial cell index; `levels` for the tail panels.
    pub cell: u32,
    pub rim: bool,
}

impl Ring {
    /// Mass carried by the whole ring for the radial part of `measure`.
    #[inline]
    pub fn mass(&self, measure: &Measure) -> f64 {
        if self.rim {
            measure.radial_tail(self.gap)
        } else {
            self.weight * measure.gap_factor(self.x)
        }
    }

    #[inline]
    pub fn point(&self, k: usize) -> Complex64 {
        Complex64::from_polar(self.r, 2.0 * PI * k as f64 / self.n_theta as f64)
    }
}

impl DiskQuadrature {
    pub fn with_levels(levels: u32) -> Self {
        Self { levels, ..Self::default() }
    }

    pub fn angular_count(&self, cell: u32) -> usize {
        let n = self.angular_base.saturating_mul(1usize << cell.min(40));
        n.min(self.angular_cap).max(1)
    }

    /// Radial nodes for cells `0..levels`, the tail panels and the rim ring.
    pub fn rings(&self) -> Vec<Ring> {
        let gl = GaussLegendre::cached(self.gauss_order);
        let mut out = Vec::new();
        let push = |a: f64, b: f64, cell: u32, n_theta: usize, out: &mut Vec<Ring>| {
            for (x, w) in gl.on(a, b) {
                let gap = (-x).exp();
                let r = -(-x).exp_m1();
                out.push(Ring { x, r, gap, weight: 2.0 * r * w, n_theta, cell, rim: false });
            }
        };
        for j in 0..self.levels {
            push(j as f64 * LN_2, (j + 1) as f64 * LN_2, j, self.angular_count(j), &mut out);
        }
        let n_tail = self.angular_count(self.levels);
        let mut lo = self.levels;
        let mut width = 1;
        while lo < FREEZE_LEVEL {
            let hi = (lo + width).min(FREEZE_LEVEL);
            push(lo as f64 * LN_2, hi as f64 * LN_2, self.levels, n_tail, &mut out);
            lo = hi;
            width *= 2;
        }
        let x = FREEZE_LEVEL as f64 * LN_2;
        out.push(Ring { x, r: 1.0 - 0.5f64.powi(FREEZE_LEVEL as i32), gap: 0.5f64.powi(FREEZE_LEVEL as i32), weight: 1.0, n_theta: n_tail, cell: self.levels, rim: true });
        out
    }

    /// ∫ f dμ over the absolutely continuous part of μ plus the atoms.
    pub fn integrate_measure<F>(&self, measure: &Measure, mut f: F) -> Result<f64>
    where
        F: FnMut(Complex64) -> f64,
    {
        let mut total = 0.0;
        if measure.radial().is_some() {
            for ring in self.rings() {
                let mass = ring.mass(measure);
                if mass == 0.0 {
                    continue;
                }
                let mut s = 0.0;
                for k in 0..ring.n_theta {
                    let z = ring.point(k);
                    let v = f(z) * measure.modulation_at(z);
                    if !v.is_finite() {
                        return Err(Error::NonFinite(format!("z = {z}")));
                    }
                    s += v;
                }
                total += mass * s / ring.n_theta as f64;
            }
        }
        for &(z, m) in measure.atom_list() {
            let v = f(z);
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("atom at {z}")));
            }
            total += m * v;
        }
        Ok(total)
    }

    /// Complex-valued counterpart of [`integrate_measure`](Self::integrate_measure).
    pub fn integrate_measure_complex<F>(&self, measure: &Measure, mut f: F) -> Result<Complex64>
    where
        F: FnMut(Complex64) -> Complex64,
    {
        let mut total = Complex64::new(0.0, 0.0);
        if measure.radial().is_some() {
            for ring in self.rings() {
                let mass = ring.mass(measure);
                if mass == 0.0 {
                    continue;
                }
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..ring.n_theta {
                    let z = ring.point(k);
                    let v = f(z) * measure.modulation_at(z);
                    if !v.is_finite() {
                        return Err(Error::NonFinite(format!("z = {z}")));
                    }
                    s += v;
                }
                total += s * (mass / ring.n_theta as f64);
            }
        }
        for &(z, m) in measure.atom_list() {
            total += f(z) * m;
        }
        Ok(total)
    }
}

/// ∫_D f dA with error estimate |value_J - value_{J-1}|.
pub fn integrate_disk<F>(f: F, quad: &DiskQuadrature) -> Result<(f64, f64)>
where
    F: FnMut(Complex64) -> f64,
{
    integrate_disk_measure(f, &Measure::area(), quad)
}

/// ∫_D f dμ with error estimate |value_J - value_{J-1}|.
pub fn integrate_disk_measure<F>(mut f: F, measure: &Measure, quad: &DiskQuadrature) -> Result<(f64, f64)>
where
    F: FnMut(Complex64) -> f64,
{
    let value = quad.integrate_measure(measure, &mut f)?;
    if quad.levels == 0 {
        return Ok((value, f64::NAN));
    }
    let coarse = DiskQuadrature { levels: quad.levels - 1, ..*quad };
    let prev = coarse.integrate_measure(measure, &mut f)?;
    Ok((value, (value - prev).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::WeightProfile;
    use std::sync::Arc;

    #[test]
    fn area_weights_sum_to_one() {
        for levels in [4, 10, 12] {
            let q = DiskQuadrature::with_levels(levels);
            let total: f64 = q.rings().iter().map(|r| r.mass(&Measure::area())).sum();
            assert!((total - 1.0).abs() < 1e-12, "levels {levels}: {total}");
            assert!(q.rings().iter().all(|r| r.weight > 0.0));
        }
    }

    #[test]
    fn integrates_simple_functions() {
        let q = DiskQuadrature::default();
        let (one, _) = integrate_disk(|_| 1.0, &q).unwrap();
        assert!((one - 1.0).abs() < 1e-12);
        let (sq, err) = integrate_disk(|z| z.norm_sqr(), &q).unwrap();
        assert!((sq - 0.5).abs() < 1e-10 && err < 1e-6);
        assert!(integrate_disk(|_| f64::NAN, &q).is_err());
    }

    #[test]
    fn weight_integral_matches_moment() {
        let p = Arc::new(WeightProfile::parse("std:alpha=2").unwrap());
        let q = DiskQuadrature::default();
        let (v, _) = integrate_disk(|z| (1.0 - z.norm()).powi(2), &q).unwrap();
        assert!((v / (2.0 * p.moment(1)) - 1.0).abs() < 1e-10);
        let mu = Measure::weighted(p.clone());
        let (m, _) = integrate_disk_measure(|_| 1.0, &mu, &q).unwrap();
        assert!((m / (2.0 * p.moment(1)) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn monomials_are_orthogonal() {
        let p = Arc::new(WeightProfile::parse("exp:alpha=0.5,beta=1").unwrap());
        let mu = Measure::weighted(p.clone());
        let q = DiskQuadrature { levels: 6, angular_cap: 64, ..DiskQuadrature::default() };
        for j in 0..=20 {
            for k in 0..=20 {
                let v = q.integrate_measure_complex(&mu, |z| z.powu(j) * z.conj().powu(k)).unwrap();
                if j == k {
                    let exact = 2.0 * p.moment(2 * j as usize + 1);
                    assert!((v.re / exact - 1.0).abs() < 1e-8, "j = {j}");
                } else {
                    assert!(v.norm() < 1e-10);
                }
            }
        }
    }
}
