//! Box-mass comparisons along Blaschke symbols and the regular-weight
//! inequalities behind the characterisation of bounded multipliers.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{blaschke_bound, boundary_modulus_profile, AnalyticMap};
use crate::weights::WeightProfile;

/// Radii 1 - 2^{-j}(2 - k/s) for j = 1..=levels, plus 0.
pub fn dyadic_radii(levels: u32, sub: u32) -> Vec<f64> {
    let mut out = vec![0.0];
    for j in 1..=levels {
        for k in 0..sub {
            out.push(1.0 - 0.5f64.powi(j as i32) * (2.0 - k as f64 / sub as f64));
        }
    }
    out.retain(|&r| r >= 0.0);
    out.push(1.0 - 0.5f64.powi(levels as i32 + 1));
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplierBoundReport {
    /// sup over the grid of ω(S(φ(z)))/ω(S(z))
    pub ratio_sup: f64,
    pub witness: Complex64,
    /// the same sup over points with |z| or |φ(z)| below δ
    pub inner_sup: f64,
    /// m + 2n(1 + d)/(1 - d)
    pub blaschke_bound: f64,
    /// max/min of ω(S(a))/ω_*(a) on the grid beyond δ
    pub box_star_spread: f64,
    pub b_exp: f64,
    /// max(inner sup, spread · max(2K, (2K)^b)) with K the Blaschke bound
    pub implied_constant: f64,
    /// sup of (ω(S(φ(z)))/ω(S(z)))^{p'-1}
    pub shape_sup: f64,
    /// sup of |u(z)| / (ω(S(φ(z)))/ω(S(z)))^{(p'-1)/p'}
    pub u_over_shape: f64,
}

/// Scans ω(S(φ(z)))/ω(S(z)) over |z| ≤ r_max for a finite Blaschke product φ.
pub fn multiplier_bound_profile(
    u: &AnalyticMap,
    phi: &AnalyticMap,
    profile: &WeightProfile,
    p: f64,
    radii: &[f64],
    angles: usize,
) -> Result<MultiplierBoundReport> {
    if !(p > 1.0) {
        return Err(Error::InvalidArgument(format!("need 1 < p, got {p}")));
    }
    let data = phi.blaschke_data().ok_or_else(|| Error::InvalidMap(format!("{} is not a finite Blaschke product", phi.spec())))?;
    let ex = profile
        .exponents
        .ok_or_else(|| Error::Inconclusive(format!("no monotonicity exponents for '{}'", profile.weight().spec())))?;
    let pp = p / (p - 1.0);
    let bb = blaschke_bound(&data);
    let mut rep = MultiplierBoundReport {
        ratio_sup: 0.0,
        witness: Complex64::new(0.0, 0.0),
        inner_sup: 0.0,
        blaschke_bound: bb,
        box_star_spread: 1.0,
        b_exp: ex.b_exp,
        implied_constant: 0.0,
        shape_sup: 0.0,
        u_over_shape: 0.0,
    };
    let (mut kmin, mut kmax) = (f64::INFINITY, 0.0f64);
    for &r in radii {
        if r >= ex.delta && r < 1.0 {
            let k = profile.box_mass(r) / profile.omega_star(r)?;
            kmin = kmin.min(k);
            kmax = kmax.max(k);
        }
        for t in 0..angles {
            let z = Complex64::from_polar(r, 2.0 * PI * t as f64 / angles as f64);
            let w = phi.eval(z);
            let rw = w.norm().min(1.0 - f64::EPSILON);
            let ratio = profile.box_mass(rw) / profile.box_mass(r);
            if ratio > rep.ratio_sup {
                rep.ratio_sup = ratio;
                rep.witness = z;
            }
            if r < ex.delta || rw < ex.delta {
                rep.inner_sup = rep.inner_sup.max(ratio);
            }
            let shape = ratio.powf(pp - 1.0);
            rep.shape_sup = rep.shape_sup.max(shape);
            rep.u_over_shape = rep.u_over_shape.max(u.eval(z).norm() / shape.powf(1.0 / pp));
            if r == 0.0 {
                break;
            }
        }
    }
    if kmax > 0.0 {
        rep.box_star_spread = kmax / kmin;
    }
    let t = 2.0 * bb;
    rep.implied_constant = rep.inner_sup.max(rep.box_star_spread * t.max(t.powf(ex.b_exp)));
    Ok(rep)
}

/// φ_t(r) = (t - r)/(1 - tr).
fn mobius_real(t: f64, r: f64) -> f64 {
    (t - r) / (1.0 - t * r)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSup {
    pub value: f64,
    pub r: f64,
    pub t: f64,
}

/// sup over grid pairs r ≤ t of ω̂(φ_t(r)) ω̂(r)/ω̂(t).
pub fn hat_product_sup(profile: &WeightProfile, radii: &[f64]) -> GridSup {
    let hat = |s: f64| profile.omega_hat(s.max(0.0));
    let mut best = GridSup { value: 0.0, r: 0.0, t: 0.0 };
    for (i, &t) in radii.iter().enumerate() {
        let ht = hat(t);
        for &r in &radii[..=i] {
            let v = hat(mobius_real(t, r)) * hat(r) / ht;
            if v > best.value {
                best = GridSup { value: v, r, t };
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBoundRecord {
    pub w: f64,
    /// ‖u_w‖_∞^p (1 - |w|)^{2a+4}, identically 1
    pub normalised_sup: f64,
    /// (1 - |w|²)^{-(2a + 2 - b)}
    pub lhs: f64,
    /// 1/((1 - |φ(w)|) ω̂(φ(w)))
    pub rhs: f64,
    pub phi_modulus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerBoundReport {
    pub a: f64,
    pub b: f64,
    pub epsilon: f64,
    pub gap: f64,
    pub records: Vec<LowerBoundRecord>,
    /// min |φ| on circles of the w radii, which must tend to 1
    pub boundary_profile: Vec<f64>,
}

impl LowerBoundReport {
    /// max and min of rhs/lhs over the records.
    pub fn ratio_range(&self) -> (f64, f64) {
        self.records.iter().map(|r| r.rhs / r.lhs).fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }
}

/// Records both sides of (1 - |w|²)^{-(2a+2-b)} ≲ 1/((1 - |φ(w)|) ω̂(φ(w))) along w = |w| > 0 real.
pub fn blaschke_lower_bound_experiment(profile: &WeightProfile, phi: &AnalyticMap, p: f64, w_radii: &[f64]) -> Result<LowerBoundReport> {
    if phi.blaschke_data().is_none() {
        return Err(Error::InvalidMap(format!("{} is not a finite Blaschke product", phi.spec())));
    }
    let (eps, a, b) = profile.tail_exponents();
    let gap = 2.0 * a + 2.0 - b;
    if !(gap > 0.0) {
        return Err(Error::ExponentGapViolated(gap));
    }
    let alpha = 2.0 * (a + 2.0) / p;
    let mut records = Vec::new();
    for &w in w_radii {
        // sup of |1 - w̄ζ|^{-α} over the circle is attained at ζ = w/|w|
        let sup = (0..4096)
            .map(|k| (1.0 - w * Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 4096.0)).norm().powf(-alpha))
            .fold(0.0, f64::max);
        let fw = phi.eval(Complex64::new(w, 0.0)).norm().min(1.0 - f64::EPSILON);
        records.push(LowerBoundRecord {
            w,
            normalised_sup: sup.powf(p) * (1.0 - w).powf(2.0 * a + 4.0),
            lhs: (1.0 - w * w).powf(-gap),
            rhs: 1.0 / ((1.0 - fw) * profile.omega_hat(fw)),
            phi_modulus: fw,
        });
    }
    let boundary_profile = boundary_modulus_profile(phi, w_radii);
    Ok(LowerBoundReport { a, b, epsilon: eps, gap, records, boundary_profile })
}

fn c1_expression(r: f64, t: f64) -> f64 {
    let first = (E * (1.0 - r * t) / ((1.0 - t) * (1.0 + r))).ln();
    let second = (E / (1.0 - r)).ln();
    first * second / (E / (1.0 - t)).ln()
}

/// inf over grid pairs r ≤ t of log(e(1-rt)/((1-t)(1+r))) log(e/(1-r)) / log(e/(1-t)).
pub fn log_weight_constant(radii: &[f64]) -> GridSup {
    let mut best = GridSup { value: f64::INFINITY, r: 0.0, t: 0.0 };
    for (i, &t) in radii.iter().enumerate() {
        for &r in &radii[..=i] {
            let v = c1_expression(r, t);
            if v < best.value {
                best = GridSup { value: v, r, t };
            }
        }
    }
    best
}

/// (log e(1-rt)/((1-t)(1+r)))^α + (log e/(1-r))^α ≥ (log e/(1-t))^α at every grid pair r ≤ t;
/// returns the first violating pair if any.
pub fn exp_weight_condition(alpha: f64, radii: &[f64]) -> Result<Option<(f64, f64)>> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidArgument(format!("need 0 < α ≤ 1, got {alpha}")));
    }
    for (i, &t) in radii.iter().enumerate() {
        for &r in &radii[..=i] {
            let lhs = (E * (1.0 - r * t) / ((1.0 - t) * (1.0 + r))).ln().powf(alpha) + (E / (1.0 - r)).ln().powf(alpha);
            let rhs = (E / (1.0 - t)).ln().powf(alpha);
            if lhs < rhs * (1.0 - 1e-14) {
                return Ok(Some((r, t)));
            }
        }
    }
    Ok(None)
}
