use std::f64::consts::PI;
use std::sync::RwLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::weights::family::Weight;
use crate::weights::grid::{AnalysisGrid, GridPoint};
use crate::weights::tables::RadialTables;

/// Levels forming the tail window used for liminf/limsup estimates.
const TAIL_LEVELS: u32 = 3;
/// Levels below the tail window whose ratio minimum serves as the baseline
/// for the rapid-increase test.
const MID_LEVELS: (u32, u32) = (4, 6);
const GROWTH_THRESHOLD: f64 = 1.5;
const BOUNDED_SPREAD: f64 = 50.0;
const EXPONENT_DELTA: f64 = 0.5;
const EXPONENT_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightClass {
    Regular,
    RapidlyIncreasing,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailConstants {
    /// min of ω̂(r)/((1 - r)ω(r)) over the tail window
    pub a: f64,
    /// max of the same ratio over the tail window
    pub b: f64,
    /// 2A + AB - B
    pub condition_ii_value: f64,
    pub condition_ii: bool,
    /// Window shifted down one level moves A and B by less than 5%.
    pub reliable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Exponents {
    pub a_exp: f64,
    pub b_exp: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Log2Check {
    /// ∫ over x in [2^k, 2^{k+1}] of (1 + x)^2 ω(r)(1 - r) dx
    pub increments: Vec<f64>,
    pub divergent: bool,
}

/// A weight together with its tail tables, cached moments and classification.
#[derive(Debug)]
pub struct WeightProfile {
    weight: Weight,
    tables: RadialTables,
    moments: RwLock<Vec<f64>>,
    grid: AnalysisGrid,
    pub reg_ratio_bounds: (f64, f64),
    pub dd_constant: f64,
    pub class: WeightClass,
    pub tail: TailConstants,
    pub exponents: Option<Exponents>,
}

impl WeightProfile {
    /// Builds the profile on the default 12-level analysis grid.
    pub fn build(weight: Weight) -> Result<Self> {
        Self::classify(weight, &AnalysisGrid::default())
    }

    pub fn parse(spec: &str) -> Result<Self> {
        Self::build(Weight::parse(spec)?)
    }

    pub fn classify(weight: Weight, grid: &AnalysisGrid) -> Result<Self> {
        if grid.levels < 12 {
            return Err(Error::InvalidArgument(format!(
                "classification grid must reach 1 - 2^-12, got {} levels",
                grid.levels
            )));
        }
        let tables = RadialTables::build(&weight)?;
        let mut profile = Self {
            weight,
            tables,
            moments: RwLock::new(Vec::new()),
            grid: *grid,
            reg_ratio_bounds: (f64::NAN, f64::NAN),
            dd_constant: f64::NAN,
            class: WeightClass::Inconclusive,
            tail: TailConstants {
                a: f64::NAN,
                b: f64::NAN,
                condition_ii_value: f64::NAN,
                condition_ii: false,
                reliable: false,
            },
            exponents: None,
        };
        profile.fill_classification();
        Ok(profile)
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn grid(&self) -> &AnalysisGrid {
        &self.grid
    }

    /// ω(r).
    pub fn density(&self, r: f64) -> f64 {
        self.weight.density(r)
    }

    /// ω(r)(1 - r) given the gap t = 1 - r.
    pub fn gap_density(&self, gap: f64) -> f64 {
        self.weight.gap_density(-gap.ln())
    }

    /// ω̂(r) = ∫_r^1 ω(s) ds.
    pub fn omega_hat(&self, r: f64) -> f64 {
        self.omega_hat_gap(1.0 - r)
    }

    /// ω̂ as a function of the gap t = 1 - r, accurate for tiny t.
    pub fn omega_hat_gap(&self, gap: f64) -> f64 {
        if gap <= 0.0 {
            return 0.0;
        }
        if let Some(v) = self.weight.closed_form_hat(gap.min(1.0)) {
            return v;
        }
        self.tables.at(&self.weight, -gap.min(1.0).ln()).0
    }

    /// ∫_r^1 s ω(s) ds.
    pub fn w_integral_gap(&self, gap: f64) -> f64 {
        if gap <= 0.0 {
            return 0.0;
        }
        let (hat, rim, _) = self.tables.at(&self.weight, -gap.min(1.0).ln());
        hat - rim
    }

    /// ∫_r^1 (1 - s) ω(s) ds.
    pub fn rim_integral_gap(&self, gap: f64) -> f64 {
        if gap <= 0.0 {
            return 0.0;
        }
        self.tables.at(&self.weight, -gap.min(1.0).ln()).1
    }

    /// ω_*(r) = ∫_r^1 s ω(s) ln(s/r) ds; r = 0 is the logarithmic singularity.
    pub fn omega_star(&self, r: f64) -> Result<f64> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::InvalidArgument(format!("omega_star needs r in (0, 1], got {r}")));
        }
        Ok(self.omega_star_gap(1.0 - r))
    }

    /// ω_* in terms of the gap; infinite at gap 1.
    pub fn omega_star_gap(&self, gap: f64) -> f64 {
        if gap <= 0.0 {
            return 0.0;
        }
        if gap >= 1.0 {
            return f64::INFINITY;
        }
        let (hat, rim, logs) = self.tables.at(&self.weight, -gap.ln());
        let neg_ln_r = -(-gap).ln_1p();
        (neg_ln_r * (hat - rim) - logs).max(0.0)
    }

    /// ω_n = ∫_0^1 s^n ω(s) ds, cached.
    pub fn moment(&self, n: usize) -> f64 {
        {
            let m = self.moments.read().expect("moment cache poisoned");
            if n < m.len() {
                return m[n];
            }
        }
        let mut m = self.moments.write().expect("moment cache poisoned");
        if n >= m.len() {
            let upto = (2 * n + 1).max(1025);
            *m = self.tables.moments_upto(upto);
        }
        m[n]
    }

    /// Total mass ∫_D ω dA = 2ω_1.
    pub fn disk_mass(&self) -> f64 {
        2.0 * self.moment(1)
    }

    /// ω(S(a)) for |a| = 1 - gap; gap 1 is the whole-disk convention.
    pub fn box_mass_gap(&self, gap: f64) -> f64 {
        if gap >= 1.0 {
            return self.disk_mass();
        }
        gap * self.w_integral_gap(gap) / PI
    }

    pub fn box_mass(&self, a_abs: f64) -> f64 {
        if a_abs <= 0.0 {
            return self.disk_mass();
        }
        self.box_mass_gap(1.0 - a_abs)
    }

    /// ω(T(ξ)) for |ξ| = 1 - gap, where T(ξ) is the tent over ξ.
    pub fn tent_mass_gap(&self, gap: f64) -> f64 {
        if gap >= 1.0 {
            // T(0) is the punctured disk under the arg(0) convention
            return self.disk_mass();
        }
        let (hat, rim, _) = self.tables.at(&self.weight, -gap.ln());
        ((gap * hat - rim) / PI).max(0.0)
    }

    /// ω̂(r)/((1 - r)ω(r)).
    pub fn reg_ratio_gap(&self, gap: f64) -> f64 {
        self.omega_hat_gap(gap) / self.gap_density(gap)
    }

    pub fn is_regular(&self) -> bool {
        self.class == WeightClass::Regular
    }

    pub fn is_rapidly_increasing(&self) -> bool {
        self.class == WeightClass::RapidlyIncreasing
    }

    pub fn tail_constants(&self) -> TailConstants {
        self.tail
    }

    /// Exponents `a = 1/(B + ε) - 1` and `b = 1/(A - ε) - 1`, with ε shrunk
    /// from A/100 until `2a + 2 - b > 0` whenever condition (ii) holds.
    pub fn tail_exponents(&self) -> (f64, f64, f64) {
        let (a_c, b_c) = (self.tail.a, self.tail.b);
        let mut eps = a_c / 100.0;
        for _ in 0..40 {
            if 2.0 / (b_c + eps) + 1.0 - 1.0 / (a_c - eps) > 0.0 {
                break;
            }
            eps /= 2.0;
        }
        (eps, 1.0 / (b_c + eps) - 1.0, 1.0 / (a_c - eps) - 1.0)
    }

    /// Numerical test of ∫_0^1 (log e/(1 - t))^2 ω(t) dt < ∞ through dyadic
    /// increments in x = -ln(1 - t).
    pub fn log2_hypothesis(&self) -> Log2Check {
        let gl = crate::quadrature::gauss::GaussLegendre::cached(16);
        let mut increments = Vec::new();
        let mut lo = 0.0;
        for k in 0..=11 {
            let hi = 2f64.powi(k);
            let pieces = ((hi - lo) / 0.5).ceil().max(1.0) as usize;
            let h = (hi - lo) / pieces as f64;
            let mut sum = 0.0;
            for i in 0..pieces {
                let a = lo + h * i as f64;
                sum += gl.integrate(a, a + h, |x| (1.0 + x).powi(2) * self.weight.gap_density(x));
            }
            increments.push(sum);
            lo = hi;
        }
        let n = increments.len();
        let divergent = (n - 3..n).all(|i| increments[i] >= 0.95 * increments[i - 1]);
        Log2Check { increments, divergent }
    }

    fn fill_classification(&mut self) {
        let pts = self.grid.points();
        let ratios: Vec<(GridPoint, f64)> = pts.iter().map(|p| (*p, self.reg_ratio_gap(p.gap))).collect();
        let lo = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
        self.reg_ratio_bounds = (lo, hi);

        self.dd_constant = pts
            .iter()
            .map(|p| self.omega_hat_gap(p.gap) / self.omega_hat_gap(p.gap / 2.0))
            .fold(0.0, f64::max);

        let window = |first: u32, last: u32| {
            let vals = ratios.iter().filter(|(p, _)| p.level >= first && p.level <= last).map(|r| r.1);
            vals.fold((f64::INFINITY, 0.0f64), |(a, b), v| (a.min(v), b.max(v)))
        };
        let top = self.grid.levels;
        let (a_c, b_c) = window(top + 1 - TAIL_LEVELS, top);
        let (a_s, b_s) = window(top - TAIL_LEVELS, top - 1);
        let (mid_min, _) = window(MID_LEVELS.0, MID_LEVELS.1);

        let growing = a_c >= GROWTH_THRESHOLD * mid_min;
        let decaying = a_c * GROWTH_THRESHOLD < mid_min;
        self.class = if growing {
            WeightClass::RapidlyIncreasing
        } else if !decaying && b_c / a_c < BOUNDED_SPREAD {
            WeightClass::Regular
        } else {
            WeightClass::Inconclusive
        };

        let value = 2.0 * a_c + a_c * b_c - b_c;
        let rel = |x: f64, y: f64| (x - y).abs() / x.abs().max(y.abs());
        self.tail = TailConstants {
            a: a_c,
            b: b_c,
            condition_ii_value: value,
            condition_ii: value > 0.0,
            reliable: rel(a_c, a_s) < 0.05 && rel(b_c, b_s) < 0.05,
        };
        self.exponents = self.find_exponents(&pts);
    }

    /// Bisection for the largest a with ω_*/(1 - r)^a nonincreasing and the
    /// smallest b with ω_*/(1 - r)^b nondecreasing on grid radii r ≥ δ.
    fn find_exponents(&self, pts: &[GridPoint]) -> Option<Exponents> {
        let samples: Vec<(f64, f64)> = pts
            .iter()
            .filter(|p| p.radius() >= EXPONENT_DELTA)
            .map(|p| (p.gap.ln(), self.omega_star_gap(p.gap).ln()))
            .collect();
        if samples.len() < 3 || samples.iter().any(|s| !s.1.is_finite()) {
            return None;
        }
        let a_exp = sup_exponent(&samples, true)? - EXPONENT_MARGIN;
        let b_exp = sup_exponent(&samples, false)? + EXPONENT_MARGIN;
        let ok = a_exp > 1.0
            && a_exp < b_exp
            && monotone(&samples, a_exp, true)
            && monotone(&samples, b_exp, false);
        ok.then_some(Exponents { a_exp, b_exp, delta: EXPONENT_DELTA })
    }
}

const MONO_TOL: f64 = 1e-10;

/// Checks ln ω_* - e ln(1 - r) along increasing r: nonincreasing when
/// `decreasing`, nondecreasing otherwise.
pub(crate) fn monotone(samples: &[(f64, f64)], e: f64, decreasing: bool) -> bool {
    samples.windows(2).all(|w| {
        let f0 = w[0].1 - e * w[0].0;
        let f1 = w[1].1 - e * w[1].0;
        if decreasing {
            f1 <= f0 + MONO_TOL
        } else {
            f1 >= f0 - MONO_TOL
        }
    })
}

/// For `decreasing`, the sup of exponents giving a nonincreasing quotient;
/// otherwise the inf of exponents giving a nondecreasing one.
fn sup_exponent(samples: &[(f64, f64)], decreasing: bool) -> Option<f64> {
    let (mut lo, mut hi) = (0.0, 64.0);
    if decreasing {
        if !monotone(samples, lo, true) {
            return None;
        }
        if monotone(samples, hi, true) {
            return None;
        }
    } else {
        if !monotone(samples, hi, false) {
            return None;
        }
        if monotone(samples, lo, false) {
            return Some(lo);
        }
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let holds = monotone(samples, mid, decreasing);
        if holds == decreasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(if decreasing { lo } else { hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::beta;

    fn profile(spec: &str) -> WeightProfile {
        WeightProfile::parse(spec).unwrap()
    }

    /// Composite Gauss oracle for ω_* directly from its defining integral.
    fn star_oracle(w: impl Fn(f64) -> f64, r: f64) -> f64 {
        let gl = crate::quadrature::gauss::GaussLegendre::new(64);
        let n = 64;
        let h = (1.0 - r) / n as f64;
        (0..n)
            .map(|i| {
                let a = r + h * i as f64;
                gl.integrate(a, a + h, |s| s * w(s) * (s / r).ln())
            })
            .sum()
    }

    #[test]
    fn omega_hat_unit_and_linear() {
        let p = profile("std:alpha=0");
        assert!((p.omega_hat(0.0) - 1.0).abs() < 1e-14);
        assert_eq!(p.omega_hat(1.0), 0.0);
        let p1 = profile("std:alpha=1");
        assert!((p1.omega_hat(0.5) - 0.125).abs() < 1e-15);
        // tables agree with the closed form
        let (hat, _, _) = p1.tables.at(p1.weight(), 2f64.ln());
        assert!((hat - 0.125).abs() < 1e-13);
    }

    #[test]
    fn omega_star_closed_form_for_unit_weight() {
        let p = profile("std:alpha=0");
        let closed = |r: f64| (r * r - 1.0) / 4.0 - r.ln() / 2.0;
        for &r in &[0.1, 0.5, 0.9, 0.999] {
            let v = p.omega_star(r).unwrap();
            assert!((v - closed(r)).abs() <= 1e-12 * closed(r).max(1e-300) + 1e-16, "r = {r}: {v} vs {}", closed(r));
        }
        assert!((p.omega_star(0.5).unwrap() - 0.159_074).abs() < 1e-6);
        assert!((star_oracle(|_| 1.0, 0.5) - closed(0.5)).abs() < 1e-13);
        assert_eq!(p.omega_star(1.0).unwrap(), 0.0);
        assert!(p.omega_star(0.0).is_err());
    }

    #[test]
    fn omega_star_matches_quadrature_oracle() {
        let p = profile("std:alpha=2");
        let oracle = star_oracle(|s| (1.0 - s).powi(2), 0.9);
        let v = p.omega_star(0.9).unwrap();
        assert!((v / oracle - 1.0).abs() < 1e-10, "{v} vs {oracle}");
    }

    #[test]
    fn moments_match_beta_function() {
        for &alpha in &[0.0, 1.0, 2.5, -0.5] {
            let p = WeightProfile::build(Weight::standard(alpha).unwrap()).unwrap();
            for &n in &[0usize, 1, 7, 40, 300] {
                let exact = beta(n as f64 + 1.0, alpha + 1.0);
                assert!((p.moment(n) / exact - 1.0).abs() < 1e-10, "alpha {alpha} n {n}");
            }
            assert!((p.moment(0) - p.omega_hat(0.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn standard_weight_classification() {
        let p = profile("std:alpha=1");
        assert_eq!(p.class, WeightClass::Regular);
        assert!((p.tail.a - 0.5).abs() < 1e-12 && (p.tail.b - 0.5).abs() < 1e-12);
        assert!(p.tail.condition_ii);
        assert!((p.tail.condition_ii_value - 0.75).abs() < 1e-12);
        let e = p.exponents.unwrap();
        assert!(1.0 < e.a_exp && e.a_exp < e.b_exp);
    }

    #[test]
    fn log_power_critical_is_rapidly_increasing() {
        assert_eq!(profile("logpow:alpha=-1,beta=-2").class, WeightClass::RapidlyIncreasing);
        assert_eq!(profile("osc").class, WeightClass::RapidlyIncreasing);
        assert_eq!(profile("exp:alpha=0.5,beta=1").class, WeightClass::Regular);
    }

    #[test]
    fn exponential_with_unit_parameters_satisfies_condition_ii() {
        let p = profile("exp:alpha=1,beta=1");
        assert!(p.tail.condition_ii);
        assert!((p.tail.a - 0.5).abs() < 1e-10);
    }

    #[test]
    fn box_mass_of_area_measure() {
        let p = profile("std:alpha=0");
        let a: f64 = 0.5;
        let exact = (1.0 - a) * (1.0 - a * a) / (2.0 * PI);
        assert!((p.box_mass(a) - exact).abs() < 1e-14);
        assert!((p.box_mass(0.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log2_hypothesis_detects_divergence() {
        assert!(profile("logpow:alpha=-1,beta=-2").log2_hypothesis().divergent);
        assert!(!profile("std:alpha=1").log2_hypothesis().divergent);
        assert!(!profile("logpow:alpha=-1,beta=-4").log2_hypothesis().divergent);
    }
}
