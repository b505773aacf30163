use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::Result;
use crate::geometry::Region;
use crate::quadrature::{measure_of_region, Measure};
use crate::verify::{group, record, Check, VerifyOptions};
use crate::weights::{AnalysisGrid, Weight, WeightProfile};

/// Log tolerance for grid monotonicity.
const MONOTONE_TOL: f64 = 1e-10;

/// One weight from each built-in family; the sampled one interpolates (1 - r)^{1/2}.
pub(crate) fn family_representatives() -> Result<Vec<Weight>> {
    let samples: Vec<(f64, f64)> = (0..=48)
        .map(|k| {
            let gap = 0.5f64.powf(k as f64 / 4.0);
            (1.0 - gap, gap.sqrt())
        })
        .filter(|s| s.0 < 1.0)
        .collect();
    Ok(vec![
        Weight::parse("std:alpha=1")?,
        Weight::parse("logpow:alpha=-1,beta=-2")?,
        Weight::parse("exp:alpha=0.5,beta=1")?,
        Weight::parse("osc")?,
        Weight::sampled(samples, "sampled:(1-r)^0.5")?,
    ])
}

pub(super) fn run(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let levels = opts.levels_or(12);
    for weight in family_representatives()? {
        let name = weight.spec().to_string();
        record(&mut out, group::OMEGA_STAR, &name, || omega_star_checks(weight, levels, opts));
    }
    for spec in ["std:alpha=1", "logpow:alpha=-1,beta=-2", "osc"] {
        record(&mut out, group::BOX_MASS, spec, || box_mass_checks(spec, opts));
    }
    Ok(out)
}

fn omega_star_checks(weight: Weight, levels: u32, opts: &VerifyOptions) -> Result<Vec<Check>> {
    let name = weight.spec().to_string();
    let profile = WeightProfile::classify(weight, &AnalysisGrid::new(levels.max(12), 8))?;
    let radii: Vec<f64> = AnalysisGrid::new(levels, 8).points().iter().map(|p| p.radius()).filter(|&r| r >= 0.5).collect();
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    let mut stars = Vec::with_capacity(radii.len());
    for &r in &radii {
        let star = profile.omega_star(r)?;
        let ratio = star / ((1.0 - r) * profile.omega_hat(r));
        lo = lo.min(ratio);
        hi = hi.max(ratio);
        stars.push(star);
    }
    let bracket = opts.ratio_bracket(10.0);
    let mut out = vec![
        Check::within(group::OMEGA_STAR, format!("{name}: min ω_*/((1-r)ω̂)"), lo, bracket),
        Check::within(group::OMEGA_STAR, format!("{name}: max ω_*/((1-r)ω̂)"), hi, bracket),
    ];
    // worst relative increase of ω_* between neighbouring radii
    let rise = stars.windows(2).map(|w| w[1] / w[0] - 1.0).fold(f64::NEG_INFINITY, f64::max);
    out.push(Check::at_most(group::OMEGA_STAR, format!("{name}: ω_* decays on the tail (max relative rise)"), rise, 0.0));

    match profile.exponents {
        None => out.push(Check::holds(group::OMEGA_STAR, format!("{name}: monotonicity exponents found"), false)),
        Some(ex) => {
            out.push(Check::at_least(group::OMEGA_STAR, format!("{name}: b_exp - a_exp"), ex.b_exp - ex.a_exp, f64::MIN_POSITIVE));
            // re-check both quotients independently of the bisection
            let pts: Vec<(f64, f64)> = profile
                .grid()
                .points()
                .iter()
                .filter(|p| p.radius() >= ex.delta)
                .map(|p| (p.gap.ln(), profile.omega_star_gap(p.gap).ln()))
                .collect();
            let worst = |e: f64, sign: f64| {
                pts.windows(2)
                    .map(|w| sign * ((w[1].1 - e * w[1].0) - (w[0].1 - e * w[0].0)))
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            // radii increase along pts, so ln gap decreases
            out.push(Check::at_most(
                group::OMEGA_STAR,
                format!("{name}: ω_*/(1-r)^a nonincreasing (max log rise)"),
                worst(ex.a_exp, 1.0),
                MONOTONE_TOL,
            ));
            out.push(Check::at_most(
                group::OMEGA_STAR,
                format!("{name}: ω_*/(1-r)^b nondecreasing (max log drop)"),
                worst(ex.b_exp, -1.0),
                MONOTONE_TOL,
            ));
        }
    }
    Ok(out)
}

/// ω(S(a)) by region quadrature at 12 radii in [0.5, 0.999] and 8 angles, against ω_*(|a|).
fn box_mass_checks(spec: &str, opts: &VerifyOptions) -> Result<Vec<Check>> {
    let profile = Arc::new(WeightProfile::parse(spec)?);
    let measure = Measure::weighted(profile.clone());
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for k in 0..12 {
        let r = 1.0 - 0.5 * 0.002f64.powf(k as f64 / 11.0);
        let star = profile.omega_star(r)?;
        for t in 0..8 {
            let a = Complex64::from_polar(r, 2.0 * PI * t as f64 / 8.0 + 0.1);
            let ratio = measure_of_region(&measure, &Region::carleson_box(a))? / star;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
    }
    let bracket = opts.ratio_bracket(10.0);
    Ok(vec![
        Check::within(group::BOX_MASS, format!("{spec}: min ω(S(a))/ω_*(a)"), lo, bracket),
        Check::within(group::BOX_MASS, format!("{spec}: max ω(S(a))/ω_*(a)"), hi, bracket),
    ])
}
