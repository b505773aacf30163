//! Reproducing kernels B_z(ζ) = Σ_k (ζ z̄)^k / (2ω_{2k+1}).

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{Measure, PeakIntegrator};
use crate::weights::WeightProfile;

pub const DEFAULT_TERMS: usize = 512;

/// Truncated kernel series anchored at z.
#[derive(Debug, Clone)]
pub struct KernelSeries {
    pub z: Complex64,
    /// coefficients 1/(2ω_{2k+1}) for k = 0..terms
    coeffs: Vec<f64>,
    /// 1/(2ω_{2k_cap+1}) for the largest cached index, used in the tail bound
    cap_coeff: f64,
}

/// Kernel coefficients 1/(2ω_{2k+1}) for k < n.
pub fn kernel_coefficients(profile: &WeightProfile, n: usize) -> Vec<f64> {
    (0..n).map(|k| 0.5 / profile.moment(2 * k + 1)).collect()
}

impl KernelSeries {
    pub fn new(profile: &WeightProfile, z: Complex64, terms: usize) -> Result<Self> {
        if !(z.norm() < 1.0) {
            return Err(Error::InvalidArgument(format!("anchor {z} is not in the disk")));
        }
        if terms == 0 {
            return Err(Error::InvalidArgument("kernel series needs at least one term".into()));
        }
        let coeffs = kernel_coefficients(profile, terms);
        // moments are cached to index 2(2N+1)+1 at least; the coefficient there
        // dominates every retained one
        let k_cap = 2 * terms + 1;
        let cap_coeff = 0.5 / profile.moment(2 * k_cap + 1);
        Ok(Self { z, coeffs, cap_coeff })
    }

    pub fn terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Bound on the dropped remainder for |ζ z̄| ≤ ρ.
    pub fn tail_bound(&self, rho: f64) -> f64 {
        if rho >= 1.0 {
            return f64::INFINITY;
        }
        rho.powi(self.coeffs.len() as i32) * self.cap_coeff / (1.0 - rho)
    }

    /// B_z(ζ) and the bound on its truncation error.
    pub fn eval(&self, zeta: Complex64) -> (Complex64, f64) {
        let t = zeta * self.z.conj();
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        (acc, self.tail_bound(t.norm()))
    }

    /// B_z(ζ), failing when the truncation error may exceed `tol` relative to the value.
    pub fn eval_checked(&self, zeta: Complex64, tol: f64) -> Result<Complex64> {
        let (v, bound) = self.eval(zeta);
        if !(bound <= tol * v.norm()) {
            return Err(Error::TailNotControlled(format!(
                "kernel tail bound {bound:.3e} at |ζz̄| = {:.6}",
                (zeta * self.z.conj()).norm()
            )));
        }
        Ok(v)
    }
}

/// Number of terms that makes ρ^N negligible for anchors with |z| = ρ.
pub fn terms_for_radius(rho: f64) -> usize {
    let need = (40.0 / (1.0 - rho)).ceil() as usize;
    need.max(DEFAULT_TERMS)
}

/// ‖B_z‖_{A_ω^1}.
pub fn kernel_a1_norm(profile: &Arc<WeightProfile>, z: Complex64, integrator: &PeakIntegrator) -> Result<f64> {
    let rz = z.norm();
    if !(rz < 1.0) {
        return Err(Error::InvalidArgument(format!("anchor {z} is not in the disk")));
    }
    let ks = KernelSeries::new(profile, z, terms_for_radius(rz))?;
    if ks.tail_bound(rz) > 1e-8 * ks.coeffs[0] {
        return Err(Error::TailNotControlled(format!("kernel at |z| = {rz}")));
    }
    let mu = Measure::weighted(profile.clone());
    let depth = -(-rz).ln_1p();
    integrator.integrate(&mu, depth, |w| ks.eval(w).0.norm(), |w| (1.0 - z.conj() * w).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::DiskQuadrature;

    #[test]
    fn kernel_matches_standard_closed_form() {
        for alpha in [0.0, 1.0, 2.5] {
            let p = WeightProfile::parse(&format!("std2:alpha={alpha}")).unwrap();
            let z = Complex64::from_polar(0.9, 0.3);
            let ks = KernelSeries::new(&p, z, 200).unwrap();
            for zeta in [Complex64::new(0.0, 0.0), Complex64::from_polar(0.5, 2.0), Complex64::from_polar(0.8 / 0.9, 0.3), Complex64::from_polar(0.88, -1.0)] {
                let exact = (alpha + 1.0) / (1.0 - zeta * z.conj()).powf(alpha + 2.0);
                let (v, bound) = ks.eval(zeta);
                assert!((v - exact).norm() / exact.norm() < 1e-6, "α = {alpha}, ζ = {zeta}");
                assert!(bound < 1e-6 * exact.norm());
            }
        }
    }

    #[test]
    fn tail_bound_covers_doubling() {
        let p = WeightProfile::parse("exp:alpha=0.5,beta=1").unwrap();
        let z = Complex64::from_polar(0.95, 1.0);
        for n in [32, 64, 128] {
            let a = KernelSeries::new(&p, z, n).unwrap();
            let b = KernelSeries::new(&p, z, 2 * n).unwrap();
            let zeta = Complex64::from_polar(0.9, 0.7);
            let (va, bound) = a.eval(zeta);
            let (vb, _) = b.eval(zeta);
            assert!((va - vb).norm() <= bound, "N = {n}");
        }
    }

    #[test]
    fn reproduces_polynomials() {
        let p = Arc::new(WeightProfile::parse("logpow:alpha=1,beta=-1").unwrap());
        let mu = Measure::weighted(p.clone());
        let quad = DiskQuadrature { levels: 8, angular_cap: 512, ..DiskQuadrature::default() };
        let coeffs: Vec<Complex64> = (0..=10).map(|k| Complex64::new((k as f64).cos(), 0.3 * k as f64 - 1.0)).collect();
        let f = |w: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c);
        for z in [Complex64::new(0.0, 0.0), Complex64::from_polar(0.5, 1.0), Complex64::from_polar(0.9, -2.5)] {
            let ks = KernelSeries::new(&p, z, 64).unwrap();
            let inner = quad.integrate_measure_complex(&mu, |w| f(w) * ks.eval(w).0.conj()).unwrap();
            assert!((inner - f(z)).norm() < 1e-6 * f(z).norm().max(1.0), "z = {z}");
        }
    }

    #[test]
    fn a1_norm_of_unweighted_kernel() {
        // ω ≡ 1: ∫ |1 - z̄ζ|^{-2} dA(ζ) = -ln(1 - |z|²)/|z|²
        let p = Arc::new(WeightProfile::parse("unit").unwrap());
        let integ = PeakIntegrator::default();
        let at0 = kernel_a1_norm(&p, Complex64::new(0.0, 0.0), &integ).unwrap();
        assert!((at0 - 1.0).abs() < 1e-10);
        for r in [0.5, 0.9] {
            let v = kernel_a1_norm(&p, Complex64::from_polar(r, 0.2), &integ).unwrap();
            let exact = -(-r * r as f64).ln_1p() / (r * r);
            assert!((v / exact - 1.0).abs() < 1e-6, "{r}: {v} vs {exact}");
        }
    }
}
