//! Pushforward measures ν(E) = ∫_{φ^{-1}(E)} |u|^q dμ.
//!
//! Preimages are never formed: a region's ν-mass is the μ-integral of
//! `1_E(φ(z)) |u(z)|^q`. For φ = id this is a region-aligned quadrature; in
//! general the quadrature nodes of μ are mapped forward once and indexed by
//! dyadic distance to the circle and angle, so region queries only visit the
//! images that can lie inside the region's polar bounding box.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{AnalyticMap, Region};
use crate::quadrature::disk::DiskQuadrature;
use crate::quadrature::measure::Measure;
use crate::quadrature::region::integrate_region;

const MAX_LEVEL: usize = 60;

#[derive(Debug, Clone)]
pub struct PushforwardSpec {
    pub u: AnalyticMap,
    pub phi: AnalyticMap,
    pub base: Measure,
    pub q: f64,
}

impl PushforwardSpec {
    pub fn new(u: AnalyticMap, phi: AnalyticMap, base: Measure, q: f64) -> Self {
        Self { u, phi, base, q }
    }

    /// |u(z)|^q.
    #[inline]
    pub fn weight_at(&self, z: Complex64) -> f64 {
        let m = self.u.eval(z).norm();
        if m == 0.0 {
            0.0
        } else {
            m.powf(self.q)
        }
    }

    /// ∫ g dν = ∫ g(φ(z)) |u(z)|^q dμ(z) by direct substitution.
    pub fn integrate(&self, quad: &DiskQuadrature, g: impl Fn(Complex64) -> f64) -> Result<f64> {
        quad.integrate_measure(&self.base, |z| {
            let w = self.weight_at(z);
            if w == 0.0 {
                0.0
            } else {
                g(clamp_to_disk(self.phi.eval(z))) * w
            }
        })
    }
}

#[inline]
fn clamp_to_disk(w: Complex64) -> Complex64 {
    let m = w.norm();
    if m >= 1.0 {
        w * ((1.0 - f64::EPSILON / 2.0) / m)
    } else {
        w
    }
}

#[inline]
fn level_of(r: f64) -> usize {
    let gap = 1.0 - r;
    if gap <= 0.0 {
        return MAX_LEVEL;
    }
    ((-gap.log2()).floor().max(0.0) as usize).min(MAX_LEVEL)
}

#[derive(Debug, Clone, Copy)]
struct CloudPoint {
    theta: f64,
    w: Complex64,
    mass: f64,
}

/// Mapped quadrature nodes of a pushforward measure, bucketed for region queries.
#[derive(Debug, Clone)]
pub struct PushforwardCloud {
    buckets: Vec<Vec<CloudPoint>>,
    total: f64,
}

impl PushforwardCloud {
    pub fn build(spec: &PushforwardSpec, quad: &DiskQuadrature) -> Result<Self> {
        let mut buckets: Vec<Vec<CloudPoint>> = vec![Vec::new(); MAX_LEVEL + 1];
        let mut total = 0.0;
        let mut push = |z: Complex64, mass: f64| -> Result<()> {
            if mass == 0.0 {
                return Ok(());
            }
            if !mass.is_finite() {
                return Err(Error::NonFinite(format!("pushforward weight at {z}")));
            }
            let w = clamp_to_disk(spec.phi.eval(z));
            if !w.is_finite() {
                return Err(Error::NonFinite(format!("symbol value at {z}")));
            }
            buckets[level_of(w.norm())].push(CloudPoint { theta: w.arg(), w, mass });
            total += mass;
            Ok(())
        };
        if spec.base.radial().is_some() {
            for ring in quad.rings() {
                let ring_mass = ring.mass(&spec.base) / ring.n_theta as f64;
                if ring_mass == 0.0 {
                    continue;
                }
                for k in 0..ring.n_theta {
                    let z = ring.point(k);
                    let m = ring_mass * spec.base.modulation_at(z) * spec.weight_at(z);
                    push(z, m)?;
                }
            }
        }
        for &(z, m) in spec.base.atom_list() {
            push(z, m * spec.weight_at(z))?;
        }
        for b in buckets.iter_mut() {
            b.sort_by(|a, c| a.theta.total_cmp(&c.theta));
        }
        Ok(Self { buckets, total })
    }

    pub fn total_mass(&self) -> f64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.buckets.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Calls `visit(w, mass)` for every image point inside `region`.
    pub fn for_each_in<F: FnMut(Complex64, f64)>(&self, region: &Region, mut visit: F) {
        let b = region.bounds();
        let (l_lo, l_hi) = (level_of(b.r_lo), level_of(b.r_hi));
        let ranges: Vec<(f64, f64)> = if b.half_width >= PI {
            vec![(-PI, PI)]
        } else {
            let (lo, hi) = (b.theta - b.half_width, b.theta + b.half_width);
            let wrap = |t: f64| crate::geometry::angle_diff(t, 0.0);
            let (lo_w, hi_w) = (wrap(lo), wrap(hi));
            if lo_w <= hi_w {
                vec![(lo_w, hi_w)]
            } else {
                vec![(lo_w, PI), (-PI, hi_w)]
            }
        };
        for bucket in &self.buckets[l_lo..=l_hi] {
            for &(lo, hi) in &ranges {
                // small slack so points exactly on the wrapped boundary are tested
                let start = bucket.partition_point(|p| p.theta < lo - 1e-12);
                for p in &bucket[start..] {
                    if p.theta > hi + 1e-12 {
                        break;
                    }
                    if region.contains(p.w) {
                        visit(p.w, p.mass);
                    }
                }
            }
        }
    }

    pub fn region_mass(&self, region: &Region) -> f64 {
        let mut s = 0.0;
        self.for_each_in(region, |_, m| s += m);
        s
    }

    /// ∫ g dν over the cloud.
    pub fn integrate(&self, g: impl Fn(Complex64) -> f64) -> f64 {
        self.buckets.iter().flatten().map(|p| g(p.w) * p.mass).sum()
    }
}

/// ν(region) for the pushforward described by `spec`.
pub fn pushforward_region(spec: &PushforwardSpec, region: &Region, quad: &DiskQuadrature) -> Result<f64> {
    if spec.u.is_zero() {
        return Ok(0.0);
    }
    if spec.phi.is_identity() {
        return integrate_region(&spec.base, region, |z| spec.weight_at(z));
    }
    Ok(PushforwardCloud::build(spec, quad)?.region_mass(region))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_multiplier_and_identity() {
        let q = DiskQuadrature::with_levels(6);
        let region = Region::Box { center: c(0.0, 0.7) };
        let zero = PushforwardSpec::new(AnalyticMap::constant(c(0.0, 0.0)), AnalyticMap::identity(), Measure::area(), 2.0);
        assert_eq!(pushforward_region(&zero, &region, &q).unwrap(), 0.0);
        let id = PushforwardSpec::new(AnalyticMap::constant(c(1.0, 0.0)), AnalyticMap::identity(), Measure::area(), 2.0);
        let v = pushforward_region(&id, &region, &q).unwrap();
        assert!((v - region.area().unwrap()).abs() < 1e-13);
    }

    #[test]
    fn square_map_box_mass_against_monte_carlo() {
        let spec = PushforwardSpec::new(
            AnalyticMap::constant(c(1.0, 0.0)),
            AnalyticMap::parse("poly:0,0,1").unwrap(),
            Measure::area(),
            2.0,
        );
        let a = c(0.9, 0.0);
        let region = Region::Box { center: a };
        let quad = DiskQuadrature { levels: 10, angular_base: 256, ..DiskQuadrature::default() };
        let v = pushforward_region(&spec, &region, &quad).unwrap();
        // Monte-Carlo over uniform points of the disk, membership of z² in S(a)
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 4_000_000usize;
        let (mut inside, mut hits) = (0usize, 0usize);
        while inside < n {
            let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if z.norm() < 1.0 {
                inside += 1;
                hits += region.contains(z * z) as usize;
            }
        }
        let p = hits as f64 / n as f64;
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        assert!((v - p).abs() < 3.0 * sigma + 0.01 * p, "cloud {v} vs MC {p} ± {sigma}");
        let closed = 0.01 / (2.0 * PI);
        assert!((v / closed - 1.0).abs() < 0.05, "{v} vs {closed}");
    }

    #[test]
    fn pushforward_consistency_for_continuous_functions() {
        let spec = PushforwardSpec::new(
            AnalyticMap::parse("poly:0.5,0.5").unwrap(),
            AnalyticMap::parse("blaschke:m=1;zeros=0.5").unwrap(),
            Measure::area(),
            2.0,
        );
        let quad = DiskQuadrature::with_levels(8);
        let cloud = PushforwardCloud::build(&spec, &quad).unwrap();
        let gs: [fn(Complex64) -> f64; 5] = [
            |_| 1.0,
            |w| w.norm_sqr(),
            |w| 1.0 + w.re,
            |w| (w.im * 3.0).cos() + 2.0,
            |w| 1.0 / (1.0 + (w - c(0.2, 0.1)).norm_sqr()),
        ];
        for g in gs {
            let via_cloud = cloud.integrate(g);
            let direct = spec.integrate(&quad, g).unwrap();
            assert!((via_cloud / direct - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn region_query_matches_brute_force() {
        let spec = PushforwardSpec::new(
            AnalyticMap::parse("poly:1,0.5").unwrap(),
            AnalyticMap::parse("blaschke:m=1;zeros=0.3+0.2i,-0.6").unwrap(),
            Measure::area(),
            1.0,
        );
        let quad = DiskQuadrature::with_levels(6);
        let cloud = PushforwardCloud::build(&spec, &quad).unwrap();
        let regions = [
            Region::Box { center: Complex64::from_polar(0.8, 3.1) },
            Region::Box { center: Complex64::from_polar(0.95, -3.12) },
            Region::PseudoDisk { center: c(-0.5, 0.4), radius: 0.5 },
            Region::Stolz { vertex: c(0.0, -0.9) },
            Region::Tent { base: c(0.6, 0.6) },
        ];
        for region in regions {
            let fast = cloud.region_mass(&region);
            let brute: f64 = cloud
                .buckets
                .iter()
                .flatten()
                .filter(|p| region.contains(p.w))
                .map(|p| p.mass)
                .sum();
            assert!((fast - brute).abs() <= 1e-14 * brute.max(1.0), "{region:?}");
        }
    }
}
