//! Disk integrals of functions with a sharp peak near the circle.
//!
//! Test-function integrands such as `|1 - ā φ(z)|^{-s}` concentrate where
//! `φ(z)` approaches `a/|a|`, on a scale of `1 - |a|`. The radial rule uses
//! unit cells in x = -ln(1 - r) that extend a few cells past the peak depth;
//! on every ring the angular integral is adaptive Gauss-Kronrod with
//! breakpoints graded geometrically around the minima of a caller-supplied
//! distance function.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::gauss::{adaptive_gk, GaussLegendre};
use crate::quadrature::measure::Measure;

const FREEZE_X: f64 = 53.0 * LN_2;
const GOLDEN: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakIntegrator {
    /// Minimum number of unit cells in x.
    pub levels: u32,
    /// Extra unit cells beyond the peak depth.
    pub extra_cells: u32,
    pub radial_order: usize,
    pub rel_tol: f64,
    pub seed_samples: usize,
    pub max_intervals: usize,
    /// Distances above this are treated as smooth rings.
    pub smooth_distance: f64,
}

impl Default for PeakIntegrator {
    fn default() -> Self {
        Self {
            levels: 10,
            extra_cells: 6,
            radial_order: 12,
            rel_tol: 1e-7,
            seed_samples: 128,
            max_intervals: 400,
            smooth_distance: 0.2,
        }
    }
}

impl PeakIntegrator {
    /// ∫_D g dμ. `dist(z)` should be small exactly where `g` peaks; `peak_x`
    /// is the depth -ln(1 - r) down to which fine cells are required.
    pub fn integrate<G, D>(&self, measure: &Measure, peak_x: f64, g: G, dist: D) -> Result<f64>
    where
        G: Fn(Complex64) -> f64,
        D: Fn(Complex64) -> f64,
    {
        let mut total = 0.0;
        if measure.radial().is_some() {
            let gl = GaussLegendre::cached(self.radial_order);
            let fine = (self.levels as f64).max((peak_x / LN_2).ceil() + self.extra_cells as f64);
            let mut edges: Vec<f64> = (0..=fine as usize).map(|j| j as f64 * LN_2).collect();
            let mut x = fine * LN_2;
            let mut width = 2.0 * LN_2;
            while x < FREEZE_X {
                x = (x + width).min(FREEZE_X);
                edges.push(x);
                width *= 2.0;
            }
            for e in edges.windows(2) {
                for (x, w) in gl.on(e[0], e[1]) {
                    let dens = measure.gap_factor(x);
                    if dens == 0.0 {
                        continue;
                    }
                    let r = -(-x).exp_m1();
                    let ring = self.ring_mean(measure, r, &g, &dist)?;
                    total += 2.0 * r * w * dens * ring;
                }
            }
            let gap = (-FREEZE_X).exp();
            let tail = measure.radial_tail(gap);
            if tail > 0.0 {
                total += tail * self.ring_mean(measure, 1.0 - gap, &g, &dist)?;
            }
        }
        for &(z, m) in measure.atom_list() {
            let v = g(z);
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("atom at {z}")));
            }
            total += m * v;
        }
        if !total.is_finite() {
            return Err(Error::NonFinite("peak integral".into()));
        }
        Ok(total)
    }

    /// (1/2π) ∫ g(re^{iθ}) m(re^{iθ}) dθ.
    fn ring_mean<G, D>(&self, measure: &Measure, r: f64, g: &G, dist: &D) -> Result<f64>
    where
        G: Fn(Complex64) -> f64,
        D: Fn(Complex64) -> f64,
    {
        let n = self.seed_samples;
        let step = 2.0 * PI / n as f64;
        let at = |t: f64| Complex64::from_polar(r, t);
        let d: Vec<f64> = (0..n).map(|k| dist(at(k as f64 * step))).collect();
        let mut breaks = Vec::new();
        let d_min = d.iter().copied().fold(f64::INFINITY, f64::min);
        // the period starts at the sample farthest from every peak
        let start = d
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (k, &v)| if v > acc.1 { (k, v) } else { acc })
            .0 as f64
            * step;
        breaks.push(start);
        breaks.push(start + 2.0 * PI);
        if d_min < self.smooth_distance {
            for k in 0..n {
                let (prev, next) = (d[(k + n - 1) % n], d[(k + 1) % n]);
                if d[k] <= prev && d[k] <= next && d[k] < self.smooth_distance {
                    let (t_star, depth) = golden_min(|t| dist(at(t)), k as f64 * step - step, k as f64 * step + step);
                    let h0 = (depth / 64.0).max(1e-15);
                    let mut h = h0;
                    // place t* in the period [start, start + 2π)
                    let base = start + (t_star - start).rem_euclid(2.0 * PI);
                    breaks.push(base);
                    while h < PI {
                        for cand in [base - h, base + h] {
                            let c = start + (cand - start).rem_euclid(2.0 * PI);
                            breaks.push(c);
                        }
                        h *= 2.0;
                    }
                }
            }
        } else {
            for k in 1..16 {
                breaks.push(start + 2.0 * PI * k as f64 / 16.0);
            }
        }
        breaks.sort_by(f64::total_cmp);
        breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        let mut bad = false;
        let mut f = |t: f64| {
            let z = at(t);
            let v = g(z) * measure.modulation_at(z);
            if !v.is_finite() {
                bad = true;
                return 0.0;
            }
            v
        };
        let (value, _) = adaptive_gk(&breaks, &mut f, self.rel_tol, 0.0, self.max_intervals);
        if bad {
            return Err(Error::NonFinite(format!("ring r = {r}")));
        }
        Ok(value / (2.0 * PI))
    }
}

/// Golden-section minimisation on [a, b]; returns (argmin, min).
fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..60 {
        if (b - a).abs() < 1e-14 {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d);
        }
    }
    let t = 0.5 * (a + b);
    (t, f(t))
}
