//! Truncated matrix of u C_φ on the orthonormal monomials e_k = z^k/√(2ω_{2k+1}).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{poly_mul, AnalyticMap};
use crate::quadrature::{DiskQuadrature, Measure};
use crate::weights::WeightProfile;

pub const DEFAULT_ORACLE_N: usize = 64;
const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 80;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    /// A^H A.
    pub fn gram(&self) -> CMatrix {
        let mut g = CMatrix::zeros(self.cols, self.cols);
        for j in 0..self.cols {
            for k in 0..self.cols {
                let s = (0..self.rows).map(|i| self.get(i, j).conj() * self.get(i, k)).sum();
                g.set(j, k, s);
            }
        }
        g
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Singular values, descending, by one-sided Jacobi rotations on columns.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    // work on columns stored contiguously
    let mut cols: Vec<Vec<Complex64>> = (0..m.cols).map(|j| (0..m.rows).map(|i| m.get(i, j)).collect()).collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..cols.len() {
            for j in i + 1..cols.len() {
                let alpha: f64 = cols[i].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[i].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= JACOBI_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let root = (1.0 + zeta * zeta).sqrt();
                let t = if zeta >= 0.0 { 1.0 / (zeta + root) } else { -1.0 / (-zeta + root) };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(j);
                for (a, b) in left[i].iter_mut().zip(right[0].iter_mut()) {
                    let bt = *b * phase.conj();
                    let na = *a * c - bt * s;
                    let nb = *a * s + bt * c;
                    *a = na;
                    *b = nb * phase;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Taylor coefficients of u·φ^k for k < n, each of length `rows`, and
/// whether the expansions were cut off.
fn product_coefficients(u: &AnalyticMap, phi: &AnalyticMap, n: usize) -> (Vec<Vec<Complex64>>, bool) {
    if let (Some(uc), Some(pc)) = (u.polynomial_coefficients(), phi.polynomial_coefficients()) {
        let mut out = Vec::with_capacity(n);
        let mut cur = uc;
        for _ in 0..n {
            out.push(cur.clone());
            cur = poly_mul(&cur, &pc);
        }
        let rows = out.iter().map(Vec::len).max().unwrap_or(1).max(n);
        for v in &mut out {
            v.resize(rows, Complex64::new(0.0, 0.0));
        }
        return (out, false);
    }
    // sampled route on the unit circle; coefficients beyond `rows` are dropped
    let rows = 4 * n;
    let l = (2 * rows).next_power_of_two().max(256);
    let pts: Vec<Complex64> = (0..l).map(|i| Complex64::from_polar(1.0, 2.0 * PI * i as f64 / l as f64)).collect();
    let mut vals: Vec<Complex64> = pts.iter().map(|&z| u.eval(z)).collect();
    let phis: Vec<Complex64> = pts.iter().map(|&z| phi.eval(z)).collect();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let coeffs = (0..rows)
            .map(|j| {
                vals.iter().enumerate().map(|(i, v)| v * Complex64::from_polar(1.0, -2.0 * PI * (i * j % l) as f64 / l as f64)).sum::<Complex64>()
                    / l as f64
            })
            .collect();
        out.push(coeffs);
        for (v, p) in vals.iter_mut().zip(&phis) {
            *v *= p;
        }
    }
    (out, true)
}

/// Matrix of ⟨u C_φ e_k, e_j⟩ for k < N and all rows reached by the expansion.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixOracle {
    pub n: usize,
    #[serde(skip)]
    pub matrix: CMatrix,
    pub singular_values: Vec<f64>,
    /// Rows were cut off (non-polynomial symbols): the compression is approximate.
    pub truncated: bool,
}

impl MatrixOracle {
    pub fn build(u: &AnalyticMap, phi: &AnalyticMap, profile: &WeightProfile, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("oracle size N must be positive".into()));
        }
        let (coeffs, truncated) = product_coefficients(u, phi, n);
        let rows = coeffs[0].len();
        let scale: Vec<f64> = (0..rows).map(|j| (2.0 * profile.moment(2 * j + 1)).sqrt()).collect();
        let mut m = CMatrix::zeros(rows, n);
        for (k, ck) in coeffs.iter().enumerate() {
            for (j, &c) in ck.iter().enumerate() {
                m.set(j, k, c * (scale[j] / scale[k]));
            }
        }
        if m.data.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite("matrix oracle entries".into()));
        }
        let singular_values = singular_values(&m);
        Ok(Self { n, matrix: m, singular_values, truncated })
    }

    pub fn op_norm(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    pub fn schatten(&self, p: f64) -> f64 {
        self.singular_values.iter().map(|s| s.powf(p)).sum::<f64>().powf(1.0 / p)
    }

    /// Σ σ_i² = Σ |M_jk|².
    pub fn hilbert_schmidt_sq(&self) -> f64 {
        self.matrix.frobenius_sq()
    }
}

/// ⟨T_σ e_k, e_j⟩ = ∫ e_k(φ) conj(e_j(φ)) |u|² ω dA for j, k < N, with the
/// angular rule sized to the polynomial degree of the integrand.
pub fn toeplitz_matrix(u: &AnalyticMap, phi: &AnalyticMap, profile: &std::sync::Arc<WeightProfile>, n: usize) -> Result<(CMatrix, bool)> {
    let closure = match (u.degree(), phi.degree()) {
        (Some(du), Some(dp)) if u.polynomial_coefficients().is_some() && phi.polynomial_coefficients().is_some() => Some(du + (n.saturating_sub(1)) * dp),
        _ => None,
    };
    let n_theta = closure.map_or(1024, |d| (2 * d + 2).next_power_of_two().max(64));
    let quad = DiskQuadrature { levels: 12, gauss_order: 16, angular_base: n_theta, angular_cap: n_theta };
    let mu = Measure::weighted(profile.clone());
    let norms: Vec<f64> = (0..n).map(|k| 1.0 / (2.0 * profile.moment(2 * k + 1)).sqrt()).collect();
    let mut g = CMatrix::zeros(n, n);
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for ring in quad.rings() {
        let mass = ring.mass(&mu);
        if mass == 0.0 {
            continue;
        }
        let w = mass / ring.n_theta as f64;
        for t in 0..ring.n_theta {
            let z = ring.point(t);
            let uz = u.eval(z);
            let fz = phi.eval(z);
            let mut pw = uz;
            for (k, vk) in v.iter_mut().enumerate() {
                *vk = pw * norms[k];
                pw *= fz;
            }
            for j in 0..n {
                let cj = v[j].conj() * w;
                let row = &mut g.data[j * n..(j + 1) * n];
                for (gk, vk) in row.iter_mut().zip(&v) {
                    *gk += cj * vk;
                }
            }
        }
    }
    if g.data.iter().any(|z| !z.is_finite()) {
        return Err(Error::NonFinite("Toeplitz matrix entries".into()));
    }
    Ok((g, closure.is_none()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn jacobi_matches_nalgebra_svd() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for (rows, cols) in [(5, 5), (9, 4), (12, 12)] {
            let mut m = CMatrix::zeros(rows, cols);
            for z in &mut m.data {
                *z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            let ours = singular_values(&m);
            let na = nalgebra::DMatrix::from_row_slice(rows, cols, &m.data);
            let mut theirs: Vec<f64> = na.singular_values().iter().copied().collect();
            theirs.sort_by(|a, b| b.total_cmp(a));
            for (a, b) in ours.iter().zip(&theirs) {
                assert!((a - b).abs() < 1e-10, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn identity_and_scaled_identity() {
        let p = WeightProfile::parse("exp:alpha=0.5,beta=1").unwrap();
        let one = AnalyticMap::constant(c(1.0, 0.0));
        let o = MatrixOracle::build(&one, &AnalyticMap::identity(), &p, 16).unwrap();
        assert!(o.singular_values.iter().all(|s| (s - 1.0).abs() < 1e-12));
        let lam = c(0.3, 0.4);
        let o = MatrixOracle::build(&one, &AnalyticMap::polynomial(vec![c(0.0, 0.0), lam]), &p, 12).unwrap();
        for k in 0..12 {
            assert!((o.matrix.get(k, k) - lam.powu(k as u32)).norm() < 1e-14);
            for j in 0..12 {
                if j != k {
                    assert_eq!(o.matrix.get(j, k), c(0.0, 0.0));
                }
            }
        }
        assert!((o.op_norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn shift_entries_are_moment_ratios() {
        let p = WeightProfile::parse("logpow:alpha=1,beta=-1").unwrap();
        let o = MatrixOracle::build(&AnalyticMap::identity(), &AnalyticMap::identity(), &p, 10).unwrap();
        for k in 0..10 {
            let exact = (p.moment(2 * k + 3) / p.moment(2 * k + 1)).sqrt();
            assert!((o.matrix.get(k + 1, k).re - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn toeplitz_equals_gram_of_oracle() {
        let p = Arc::new(WeightProfile::parse("std:alpha=1").unwrap());
        let u = AnalyticMap::parse("poly:0.5,0.5").unwrap();
        let phi = AnalyticMap::parse("poly:0,0,1").unwrap();
        let n = 8;
        let o = MatrixOracle::build(&u, &phi, &p, n).unwrap();
        let (t, approx) = toeplitz_matrix(&u, &phi, &p, n).unwrap();
        assert!(!approx && !o.truncated);
        let diff = t.max_abs_diff(&o.matrix.gram());
        assert!(diff < 1e-6, "{diff}");
        let zero = toeplitz_matrix(&AnalyticMap::constant(c(0.0, 0.0)), &phi, &p, 4).unwrap().0;
        assert!(zero.data.iter().all(|z| z.norm() == 0.0));
        let id = toeplitz_matrix(&AnalyticMap::constant(c(1.0, 0.0)), &AnalyticMap::identity(), &p, 6).unwrap().0;
        for j in 0..6 {
            for k in 0..6 {
                let e = if j == k { 1.0 } else { 0.0 };
                assert!((id.get(j, k) - e).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn blaschke_symbol_uses_sampled_coefficients() {
        let p = WeightProfile::parse("std:alpha=1").unwrap();
        let phi = AnalyticMap::parse("blaschke:m=1;zeros=0.5").unwrap();
        let o = MatrixOracle::build(&AnalyticMap::constant(c(1.0, 0.0)), &phi, &p, 8).unwrap();
        assert!(o.truncated);
        assert!(o.op_norm().is_finite() && o.op_norm() > 0.5);
    }
}
