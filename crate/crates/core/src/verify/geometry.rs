use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::geometry::{blaschke_bound, boundary_modulus_profile, in_pseudo_disk, mobius, pseudo_disk_euclidean, AnalyticMap, Region};
use crate::quadrature::{measure_of_region, Measure};
use crate::verify::{group, record, Check, VerifyOptions};

fn sample_points() -> Vec<Complex64> {
    (0..40).map(|k| Complex64::from_polar(1.0 - 0.9f64.powi(k), 2.4 * k as f64)).collect()
}

pub(super) fn run(_opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let pts = sample_points();

    let mut inv = 0.0f64;
    for &a in &pts {
        for &z in &pts {
            inv = inv.max((mobius(a, mobius(a, z)) - z).norm());
        }
    }
    out.push(Check::at_most(group::GEOMETRY, "Möbius map is an involution (max error)", inv, 1e-9));

    // membership through the Möbius map against the Euclidean disk description
    let mut mismatches = 0usize;
    for &a in &pts {
        let (c, rho) = pseudo_disk_euclidean(a, 0.5);
        for &z in &pts {
            let d = (z - c).norm() - rho;
            if d.abs() > 1e-9 && (d < 0.0) != in_pseudo_disk(a, 0.5, z) {
                mismatches += 1;
            }
        }
    }
    out.push(Check::at_most(group::GEOMETRY, "pseudo-hyperbolic disk membership mismatches", mismatches as f64, 0.0));

    record(&mut out, group::GEOMETRY, "box areas", || {
        let mut worst = 0.0f64;
        for r in [0.3, 0.7, 0.95, 0.999] {
            let region = Region::carleson_box(Complex64::from_polar(r, 1.0));
            let exact = region.area().unwrap_or(f64::NAN);
            worst = worst.max((measure_of_region(&Measure::area(), &region)? / exact - 1.0).abs());
        }
        Ok(vec![Check::at_most(group::GEOMETRY, "Carleson box area by quadrature (max relative error)", worst, 1e-6)])
    });

    record(&mut out, group::GEOMETRY, "Blaschke products", || {
        let phi = AnalyticMap::blaschke(1, vec![Complex64::new(0.3, 0.2), Complex64::new(-0.6, 0.0)], 0.0)?;
        let edge = boundary_modulus_profile(&phi, &[1.0 - 1e-9])[0];
        let data = phi.blaschke_data().expect("constructed as a Blaschke product");
        // (1 - |φ(z)|²)/(1 - |z|²) ≤ K once |z| exceeds the largest zero modulus
        let mut ratio = 0.0f64;
        for k in 1..=12 {
            let r = data.c + (1.0 - data.c) * (1.0 - 0.5f64.powi(k));
            for t in 0..64 {
                let z = Complex64::from_polar(r, 2.0 * PI * t as f64 / 64.0);
                ratio = ratio.max((1.0 - phi.eval(z).norm_sqr()) / (1.0 - r * r));
            }
        }
        Ok(vec![
            Check::within(group::GEOMETRY, "finite Blaschke product has unit modulus at the circle", edge, (1.0 - 1e-6, 1.0 + 1e-12)),
            Check::at_most(group::GEOMETRY, "Blaschke derivative bound m + 2n(1+d)/(1-d) holds", ratio, blaschke_bound(&data)),
        ])
    });
    Ok(out)
}
