use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{Measure, PeakIntegrator};
use crate::weights::WeightProfile;

/// Smallest shape parameter used by default: the power (γ+1)/p is at least 4.
pub fn default_gamma(p: f64) -> f64 {
    (4.0 * p - 1.0).max(9.0)
}

/// F_{a,p,γ}(z) = ((1 - |a|²)/(1 - āz))^{(γ+1)/p} ω(S(a))^{-1/p}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestFunction {
    pub a: Complex64,
    pub p: f64,
    pub gamma: f64,
    /// ω(S(a)), the whole-disk mass when a = 0
    pub box_mass: f64,
}

impl TestFunction {
    pub fn new(profile: &WeightProfile, a: Complex64, p: f64, gamma: Option<f64>) -> Result<Self> {
        if !(a.norm() < 1.0) {
            return Err(Error::InvalidArgument(format!("centre {a} is not in the disk")));
        }
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::InvalidArgument(format!("exponent p = {p}")));
        }
        let gamma = gamma.unwrap_or_else(|| default_gamma(p));
        if !(gamma > -1.0) || !gamma.is_finite() {
            return Err(Error::InvalidArgument(format!("shape parameter γ = {gamma}")));
        }
        let box_mass = profile.box_mass(a.norm());
        if !(box_mass > 0.0) {
            return Err(Error::InvalidWeight(format!("ω(S(a)) = {box_mass} at a = {a}")));
        }
        Ok(Self { a, p, gamma, box_mass })
    }

    /// Power (γ+1)/p applied to the base (1 - |a|²)/(1 - āz).
    pub fn power(&self) -> f64 {
        (self.gamma + 1.0) / self.p
    }

    /// Principal-branch value at z.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let base = Complex64::new(1.0 - self.a.norm_sqr(), 0.0) / (1.0 - self.a.conj() * z);
        base.powf(self.power()) * self.box_mass.powf(-1.0 / self.p)
    }

    /// |F(w)|^q, evaluated in log space.
    #[inline]
    pub fn abs_pow(&self, w: Complex64, q: f64) -> f64 {
        let ratio = (1.0 - self.a.norm_sqr()) / (1.0 - self.a.conj() * w).norm();
        (q * (self.power() * ratio.ln() - self.box_mass.ln() / self.p)).exp()
    }

    /// |1 - āw|, small exactly where F peaks.
    #[inline]
    pub fn peak_distance(&self, w: Complex64) -> f64 {
        (1.0 - self.a.conj() * w).norm()
    }

    /// Depth -ln(1 - |a|) of the peak.
    pub fn peak_depth(&self) -> f64 {
        -(-self.a.norm()).ln_1p()
    }

    /// ‖F‖_{A_ω^p}.
    pub fn norm(&self, profile: &std::sync::Arc<WeightProfile>, integrator: &PeakIntegrator) -> Result<f64> {
        let mu = Measure::weighted(profile.clone());
        let v = integrator.integrate(&mu, self.peak_depth(), |z| self.abs_pow(z, self.p), |z| self.peak_distance(z))?;
        Ok(v.powf(1.0 / self.p))
    }
}
