use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{DiskQuadrature, Measure};
use crate::weights::WeightProfile;

/// f(z) = Σ f̂_k z^k.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorPolynomial {
    pub coeffs: Vec<Complex64>,
}

impl TaylorPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0)).unwrap_or(0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// K_n f: truncation at degree n for p > 1, Cesàro means for p = 1.
    pub fn apply_kn(&self, n: usize, p: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| c * kn_factor(k, n, p))
            .collect();
        Self { coeffs }
    }

    /// R_n f = f - K_n f.
    pub fn apply_rn(&self, n: usize, p: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| c * (1.0 - kn_factor(k, n, p)))
            .collect();
        Self { coeffs }
    }

    /// ‖f‖_{A_ω^2} from the moments.
    pub fn norm_a2(&self, profile: &WeightProfile) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm_sqr() * 2.0 * profile.moment(2 * k + 1))
            .sum::<f64>()
            .sqrt()
    }
}

/// Multiplier of f̂_k in K_n.
pub fn kn_factor(k: usize, n: usize, p: f64) -> f64 {
    if k > n {
        0.0
    } else if p <= 1.0 {
        1.0 - k as f64 / (n + 1) as f64
    } else {
        1.0
    }
}

/// (∫ |f|^p ω dA)^{1/p} on the disk quadrature.
pub fn norm_ap<F>(f: F, profile: &Arc<WeightProfile>, p: f64, quad: &DiskQuadrature) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(p > 0.0) {
        return Err(Error::InvalidArgument(format!("exponent p = {p}")));
    }
    let mu = Measure::weighted(profile.clone());
    let v = quad.integrate_measure(&mu, |z| f(z).norm().powf(p))?;
    Ok(v.powf(1.0 / p))
}

/// Coefficient-side bound on sup_{|ζ| ≤ 1} |R_n B_w(ζ)| for |w| ≤ r:
/// (1/n) Σ_{k≥1} k r^{k-1} c_k + Σ_{k>n} r^k c_k with c_k = 1/(2ω_{2k+1}).
pub fn rn_kernel_bound(profile: &WeightProfile, n: usize, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) || n == 0 {
        return Err(Error::InvalidArgument(format!("n = {n}, r = {r}")));
    }
    let (mut cesaro, mut tail) = (0.0, 0.0);
    let mut rk = 1.0; // r^{k-1}
    let mut k = 1usize;
    loop {
        let c = 0.5 / profile.moment(2 * k + 1);
        let ces_term = k as f64 * rk * c;
        cesaro += ces_term;
        if k > n {
            tail += rk * r * c;
        }
        if k > n && ces_term < 1e-17 * cesaro {
            break;
        }
        if k > 200_000 {
            return Err(Error::TailNotControlled(format!("kernel remainder at r = {r}")));
        }
        rk *= r;
        k += 1;
    }
    Ok(cesaro / n as f64 + tail)
}

/// Sampled sup of |R_n B_w| on |ζ| = 1 (4096 points), a diagnostic for the bound.
pub fn rn_kernel_sampled(profile: &WeightProfile, n: usize, p: f64, w: Complex64) -> f64 {
    let r = w.norm();
    let mut terms = Vec::new();
    let mut k = 0usize;
    let mut rk = 1.0;
    loop {
        let c = 0.5 / profile.moment(2 * k + 1);
        let f = 1.0 - kn_factor(k, n, p);
        terms.push(w.conj().powu(k as u32) * (c * f));
        if k > n && rk * c < 1e-17 {
            break;
        }
        if k > 100_000 {
            break;
        }
        rk *= r;
        k += 1;
    }
    let poly = TaylorPolynomial::new(terms);
    (0..4096)
        .map(|j| poly.eval(Complex64::from_polar(1.0, 2.0 * PI * j as f64 / 4096.0)).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn truncation_and_cesaro() {
        let f = TaylorPolynomial::new(vec![c(1.0, 0.0), c(2.0, -1.0), c(0.0, 3.0)]);
        assert_eq!(f.apply_kn(2, 2.0), f);
        assert_eq!(f.apply_kn(5, 4.0), f);
        let z = TaylorPolynomial::new(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(z.apply_kn(1, 1.0).coeffs, vec![c(0.0, 0.0), c(0.5, 0.0)]);
        let r = f.apply_rn(1, 2.0);
        assert_eq!(r.coeffs, vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 3.0)]);
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn monomial_norm_matches_moment() {
        let p = Arc::new(WeightProfile::parse("exp:alpha=0.5,beta=1").unwrap());
        let quad = DiskQuadrature::default();
        for k in [0u32, 3, 10] {
            let v = norm_ap(|z| z.powu(k), &p, 2.0, &quad).unwrap();
            let exact = (2.0 * p.moment(2 * k as usize + 1)).sqrt();
            assert!((v / exact - 1.0).abs() < 1e-8, "k = {k}");
        }
        let one = Arc::new(WeightProfile::parse("unit").unwrap());
        for pp in [1.0, 2.0, 3.5] {
            assert!((norm_ap(|_| c(1.0, 0.0), &one, pp, &quad).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn remainder_bound_dominates_sampled_sup() {
        let p = WeightProfile::parse("std:alpha=1").unwrap();
        for n in [1, 5, 20] {
            for pp in [1.0, 2.0] {
                let w = Complex64::from_polar(0.7, 0.4);
                let bound = rn_kernel_bound(&p, n, 0.7).unwrap();
                let sampled = rn_kernel_sampled(&p, n, pp, w);
                assert!(sampled <= bound * (1.0 + 1e-12), "n = {n}: {sampled} > {bound}");
            }
        }
    }

    #[test]
    fn partial_sums_are_uniformly_bounded() {
        let prof = Arc::new(WeightProfile::parse("logpow:alpha=1,beta=-1").unwrap());
        let quad = DiskQuadrature { levels: 6, angular_cap: 512, ..DiskQuadrature::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let deg = rng.gen_range(1..=30);
            let f = TaylorPolynomial::new((0..=deg).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect());
            for &pp in &[1.0, 4.0] {
                let nf = norm_ap(|z| f.eval(z), &prof, pp, &quad).unwrap();
                for n in (1..=30).step_by(3) {
                    let g = f.apply_kn(n, pp);
                    let ng = norm_ap(|z| g.eval(z), &prof, pp, &quad).unwrap();
                    worst = worst.max(ng / nf);
                }
            }
        }
        assert!(worst <= 10.0, "‖K_n f‖/‖f‖ reached {worst}");
    }

    proptest! {
        #[test]
        fn kn_is_homogeneous_and_rn_complements(re in -2.0..2.0f64, im in -2.0..2.0f64, n in 0usize..12, p1 in any::<bool>()) {
            let p = if p1 { 1.0 } else { 2.5 };
            let f = TaylorPolynomial::new((0..10).map(|k| c(k as f64 - 3.0, 1.0 / (k as f64 + 1.0))).collect());
            let s = c(re, im);
            let scaled = TaylorPolynomial::new(f.coeffs.iter().map(|&x| x * s).collect());
            let lhs = scaled.apply_kn(n, p);
            let kn = f.apply_kn(n, p);
            let rn = f.apply_rn(n, p);
            for k in 0..10 {
                prop_assert!((lhs.coeffs[k] - kn.coeffs[k] * s).norm() < 1e-12);
                prop_assert!((kn.coeffs[k] + rn.coeffs[k] - f.coeffs[k]).norm() < 1e-12);
            }
        }

        #[test]
        fn a2_norm_is_homogeneous(scale in 0.01..100.0f64) {
            let p = WeightProfile::parse("std:alpha=0.5").unwrap();
            let f = TaylorPolynomial::new(vec![c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.0)]);
            let g = TaylorPolynomial::new(f.coeffs.iter().map(|&x| x * scale).collect());
            prop_assert!((g.norm_a2(&p) / (scale * f.norm_a2(&p)) - 1.0).abs() < 1e-12);
        }
    }
}
