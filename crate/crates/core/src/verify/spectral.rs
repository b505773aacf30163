use std::sync::Arc;

use crate::error::Result;
use crate::geometry::AnalyticMap;
use crate::operators::{schatten_functional, toeplitz_matrix, MatrixOracle, SchattenConfig};
use crate::quadrature::DiskQuadrature;
use crate::verify::operators::POLYNOMIAL_SCENARIOS;
use crate::verify::{group, record, Check, VerifyOptions};
use crate::weights::WeightProfile;

/// Toeplitz size; every scenario's closure degree stays below the oracle rows.
const TOEPLITZ_N: usize = 16;
const HS_N: usize = 48;

/// Polynomial symbols with φ(D) inside 0.7 D.
const COMPACT: [(&str, &str); 3] = [("poly:1,0.5", "poly:0.1,0.5"), ("one", "poly:0,0.5"), ("one", "poly:0,0.3,0.3")];

pub(super) fn run(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let profile = Arc::new(WeightProfile::parse("std:alpha=1")?);
    for (u, phi) in POLYNOMIAL_SCENARIOS {
        let name = format!("u = {u}, φ = {phi}");
        record(&mut out, group::SPECTRAL, &name, || {
            let (u, phi) = (AnalyticMap::parse(u)?, AnalyticMap::parse(phi)?);
            let (t, _) = toeplitz_matrix(&u, &phi, &profile, TOEPLITZ_N)?;
            let m = MatrixOracle::build(&u, &phi, &profile, TOEPLITZ_N)?;
            let diff = t.max_abs_diff(&m.matrix.gram());
            Ok(vec![Check::at_most(group::SPECTRAL, format!("{name}: max |T_σ - M*M|"), diff, 1e-6)])
        });
    }

    let quad = DiskQuadrature { levels: 8, angular_cap: 1024, ..DiskQuadrature::default() };
    let cfg = SchattenConfig { levels: opts.levels_or(6), ..SchattenConfig::default() };
    for (u, phi) in COMPACT {
        let name = format!("u = {u}, φ = {phi}");
        record(&mut out, group::SPECTRAL, &name, || {
            let (u, phi) = (AnalyticMap::parse(u)?, AnalyticMap::parse(phi)?);
            let hs = MatrixOracle::build(&u, &phi, &profile, opts.oracle_n_or(HS_N))?.hilbert_schmidt_sq();
            let half = schatten_functional(&u, &phi, &profile, 2.0, 0.5, &cfg, &quad)?;
            let third = schatten_functional(&u, &phi, &profile, 2.0, 0.3, &cfg, &quad)?;
            let spread = (half.value / third.value).max(third.value / half.value);
            Ok(vec![
                Check::within(group::SPECTRAL, format!("{name}: Schatten integral (r = 0.5) / Σσ²"), half.value / hs, opts.ratio_bracket(20.0)),
                Check::at_most(group::SPECTRAL, format!("{name}: r = 0.3 vs r = 0.5 spread"), spread, 100.0),
                Check::holds(group::SPECTRAL, format!("{name}: no divergence flag"), half.flag.is_none() && third.flag.is_none()),
            ])
        });
    }

    record(&mut out, group::SPECTRAL, "identity", || {
        let one = AnalyticMap::constant(1.0.into());
        let cfg = SchattenConfig { levels: 7, angular_base: 4, angular_cap: 16, ..SchattenConfig::default() };
        let rep = schatten_functional(&one, &AnalyticMap::identity(), &profile, 2.0, 0.5, &cfg, &DiskQuadrature::with_levels(4))?;
        Ok(vec![Check::holds(group::SPECTRAL, "identity is flagged as not Schatten class", rep.flag.as_deref() == Some("divergent"))])
    });
    Ok(out)
}
