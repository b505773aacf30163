use std::sync::Arc;

use num_complex::Complex64;

use crate::error::Result;
use crate::quadrature::{DiskQuadrature, Measure};
use crate::spaces::{terms_for_radius, KernelSeries};
use crate::verify::{group, record, Check, VerifyOptions};
use crate::weights::WeightProfile;

const ALPHAS: [f64; 3] = [0.0, 1.0, 2.5];

fn points(r: f64) -> Vec<Complex64> {
    (0..6).map(|k| Complex64::from_polar(r * (k as f64 + 1.0) / 6.0, 1.3 * k as f64 - 2.0)).collect()
}

pub(super) fn run(_opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for alpha in ALPHAS {
        let spec = format!("std2:alpha={alpha}");
        record(&mut out, group::KERNEL, &spec, || kernel_checks(&spec, alpha));
    }
    Ok(out)
}

fn kernel_checks(spec: &str, alpha: f64) -> Result<Vec<Check>> {
    let profile = Arc::new(WeightProfile::parse(spec)?);
    let mut out = Vec::new();

    // |ζ z̄| ≤ 0.8 with both moduli at most √0.8
    let rmax = 0.8f64.sqrt();
    let terms = terms_for_radius(0.8);
    let mut closed = 0.0f64;
    for z in points(rmax) {
        let ks = KernelSeries::new(&profile, z, terms)?;
        for zeta in points(rmax) {
            let exact = (alpha + 1.0) / (1.0 - zeta * z.conj()).powf(alpha + 2.0);
            closed = closed.max((ks.eval(zeta).0 - exact).norm() / exact.norm());
        }
    }
    out.push(Check::at_most(group::KERNEL, format!("{spec}: kernel series vs closed form (max relative error)"), closed, 1e-6));

    let mu = Measure::weighted(profile.clone());
    let quad = DiskQuadrature { levels: 8, angular_cap: 512, ..DiskQuadrature::default() };
    let coeffs: Vec<Complex64> = (0..=10).map(|k| Complex64::new((k as f64).cos(), 0.3 * k as f64 - 1.0)).collect();
    let f = |w: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c);
    let mut repro = 0.0f64;
    for z in [Complex64::new(0.0, 0.0), Complex64::from_polar(0.5, 1.0), Complex64::from_polar(0.9, -2.5)] {
        let ks = KernelSeries::new(&profile, z, 64)?;
        let inner = quad.integrate_measure_complex(&mu, |w| f(w) * ks.eval(w).0.conj())?;
        repro = repro.max((inner - f(z)).norm() / f(z).norm().max(1.0));
    }
    out.push(Check::at_most(group::KERNEL, format!("{spec}: ⟨f, B_z⟩ = f(z) for degree 10 (max error)"), repro, 1e-6));

    let quad = DiskQuadrature { levels: 6, angular_cap: 64, ..DiskQuadrature::default() };
    let mut off = 0.0f64;
    let mut diag = 0.0f64;
    for j in 0..=12u32 {
        for k in 0..=12u32 {
            let v = quad.integrate_measure_complex(&mu, |z| z.powu(j) * z.conj().powu(k))?;
            if j == k {
                diag = diag.max((v.re / (2.0 * profile.moment(2 * j as usize + 1)) - 1.0).abs());
            } else {
                off = off.max(v.norm());
            }
        }
    }
    out.push(Check::at_most(group::KERNEL, format!("{spec}: monomial orthogonality (max |⟨z^j, z^k⟩|)"), off, 1e-10));
    out.push(Check::at_most(group::KERNEL, format!("{spec}: ‖z^k‖² = 2ω_{{2k+1}} (max relative error)"), diag, 1e-8));
    Ok(out)
}
