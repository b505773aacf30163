use std::sync::Arc;

use num_complex::Complex64;

use crate::error::Result;
use crate::geometry::AnalyticMap;
use crate::operators::{boundedness_functional, essential_norm_functional, AGrid, MatrixOracle, OperatorSpec, DEFAULT_ORACLE_N};
use crate::quadrature::{Measure, PeakIntegrator};
use crate::spaces::TestFunction;
use crate::verify::{group, record, Check, VerifyOptions};
use crate::weights::WeightProfile;

const WEIGHT: &str = "std:alpha=1";

/// (u, φ) pairs with polynomial symbols.
pub(crate) const POLYNOMIAL_SCENARIOS: [(&str, &str); 6] = [
    ("one", "id"),
    ("one", "poly:0,0.5"),
    ("poly:1,0.5", "poly:0.1,0.5"),
    ("poly:0,1", "poly:0,0,1"),
    ("one", "poly:0,0.5,0.3"),
    ("poly:0.5,0,0.5", "poly:0.2,0,0.7"),
];

pub(crate) fn spec(profile: &Arc<WeightProfile>, u: &str, phi: &str, p: f64, q: f64, gamma: Option<f64>) -> Result<OperatorSpec> {
    OperatorSpec::new(
        AnalyticMap::parse(u)?,
        AnalyticMap::parse(phi)?,
        Measure::weighted(profile.clone()),
        profile.clone(),
        p,
        q,
        gamma,
    )
}

pub(super) fn boundedness(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let profile = Arc::new(WeightProfile::parse(WEIGHT)?);
    let integ = PeakIntegrator::default();
    let levels = opts.levels_or(12);
    for p in [1.0, 2.0, 4.0] {
        record(&mut out, group::TEST_FUNCTIONS, &format!("p = {p}"), || test_function_checks(&profile, p, levels, opts, &integ));
    }
    let grid = AGrid::coarse(levels);
    for (u, phi) in POLYNOMIAL_SCENARIOS {
        let name = format!("u = {u}, φ = {phi}");
        record(&mut out, group::BOUNDEDNESS, &name, || {
            let s = spec(&profile, u, phi, 2.0, 2.0, opts.gamma)?;
            let report = boundedness_functional(&s, &grid, &integ)?;
            let oracle = MatrixOracle::build(&s.u, &s.phi, &profile, opts.oracle_n_or(DEFAULT_ORACLE_N))?;
            let ratio = report.value.sqrt() / oracle.op_norm();
            Ok(vec![Check::within(group::BOUNDEDNESS, format!("{name}: functional^(1/2)/σ_1"), ratio, opts.ratio_bracket(10.0))])
        });
    }
    Ok(out)
}

/// ‖F_a‖ on one point per grid level (the norm is rotation invariant) and
/// |F_a|·ω(S(a))^{1/p} on a 5×5 sample of S(a).
fn test_function_checks(profile: &Arc<WeightProfile>, p: f64, levels: u32, opts: &VerifyOptions, integ: &PeakIntegrator) -> Result<Vec<Check>> {
    let (mut nlo, mut nhi) = (f64::INFINITY, 0.0f64);
    let (mut plo, mut phi) = (f64::INFINITY, 0.0f64);
    for j in 0..=levels {
        let a = Complex64::from_polar(AGrid::radius(j), 0.7 * j as f64);
        let tf = TestFunction::new(profile, a, p, opts.gamma)?;
        let norm = tf.norm(profile, integ)?;
        nlo = nlo.min(norm);
        nhi = nhi.max(norm);
        if j == 0 {
            continue;
        }
        let ra = a.norm();
        let scale = profile.box_mass(ra).powf(1.0 / p);
        for s in 0..5 {
            let r = ra + (1.0 - ra) * (s as f64 + 0.5) / 5.0;
            for t in 0..5 {
                let theta = a.arg() + 0.5 * (1.0 - ra) * ((t as f64 + 0.5) / 5.0 - 0.5);
                let v = tf.eval(Complex64::from_polar(r, theta)).norm() * scale;
                plo = plo.min(v);
                phi = phi.max(v);
            }
        }
    }
    let g = TestFunction::new(profile, Complex64::new(0.5, 0.0), p, opts.gamma)?.gamma;
    let label = format!("p = {p}, γ = {g}");
    Ok(vec![
        Check::within(group::TEST_FUNCTIONS, format!("{label}: min ‖F_a‖"), nlo, (0.2, 5.0)),
        Check::within(group::TEST_FUNCTIONS, format!("{label}: max ‖F_a‖"), nhi, (0.2, 5.0)),
        Check::within(group::TEST_FUNCTIONS, format!("{label}: min |F_a(z)|ω(S(a))^(1/p) on S(a)"), plo, (0.05, 20.0)),
        Check::within(group::TEST_FUNCTIONS, format!("{label}: max |F_a(z)|ω(S(a))^(1/p) on S(a)"), phi, (0.05, 20.0)),
    ])
}

pub(super) fn compactness(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let profile = Arc::new(WeightProfile::parse(WEIGHT)?);
    let integ = PeakIntegrator::default();
    let levels = opts.levels_or(12);
    let first = 6.min(levels);
    let grid = AGrid::coarse(levels);
    for (u, phi) in [("one", "poly:0,0.5"), ("poly:1,0.5", "poly:0.1,0.5"), ("one", "poly:0,0.5,0.3")] {
        let name = format!("u = {u}, φ = {phi}");
        record(&mut out, group::COMPACTNESS, &name, || {
            let s = spec(&profile, u, phi, 2.0, 2.0, opts.gamma)?;
            let report = essential_norm_functional(&s, &grid, first, &integ)?;
            let values = report.level_values();
            // largest increase between successive levels
            let rise = values.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
            Ok(vec![
                Check::at_most(group::COMPACTNESS, format!("{name}: tail sup"), report.value, 1e-3),
                Check::at_most(group::COMPACTNESS, format!("{name}: per-level values nonincreasing (max rise)"), rise, 0.0),
            ])
        });
    }
    record(&mut out, group::COMPACTNESS, "identity", || {
        let s = spec(&profile, "one", "id", 2.0, 2.0, opts.gamma)?;
        let report = essential_norm_functional(&s, &grid, first, &integ)?;
        Ok(vec![Check::at_least(group::COMPACTNESS, "u = one, φ = id: tail sup", report.value, 0.2)])
    });
    Ok(out)
}
