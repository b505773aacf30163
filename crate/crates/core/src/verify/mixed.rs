use std::sync::Arc;

use crate::error::Result;
use crate::geometry::AnalyticMap;
use crate::operators::{psi_mixed_norm, AGrid, OperatorSpec, OuterRule, PsiMode, PushforwardMaximal};
use crate::quadrature::{DiskQuadrature, Measure, PeakIntegrator};
use crate::verify::{group, record, Check, VerifyOptions};
use crate::weights::WeightProfile;

/// (ω, u, φ, μ, p, q); `None` for μ means ω dA.
const SCENARIOS: [(&str, &str, &str, Option<&str>, f64, f64); 3] = [
    ("unit", "one", "poly:0,0,1", Some("area"), 4.0, 2.0),
    ("std:alpha=1", "poly:1,0.5", "poly:0.1,0.5", None, 2.0, 1.0),
    ("std:alpha=1", "one", "id", None, 3.0, 2.0),
];

/// The equivalence constants grow like ‖F_a‖^p, which at the default γ for
/// p = 4 exceeds 10³ by itself; γ = 4 is admissible for every scenario weight.
const GAMMA: f64 = 4.0;

pub(super) fn run(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let levels = opts.levels_or(6);
    let grid = AGrid::coarse(levels);
    let integ = PeakIntegrator { rel_tol: 1e-6, ..PeakIntegrator::default() };
    let quad = DiskQuadrature::with_levels(levels + 2);
    for (w, u, phi, mu, p, q) in SCENARIOS {
        let name = format!("{w}, u = {u}, φ = {phi}, μ = {}, (p, q) = ({p}, {q})", mu.unwrap_or("ω dA"));
        record(&mut out, group::MIXED, &name, || {
            let profile = Arc::new(WeightProfile::parse(w)?);
            let rule = OuterRule::weighted(&profile, levels, 2, &grid);
            let mu = match mu {
                Some(m) => Measure::parse(m)?,
                None => Measure::weighted(profile.clone()),
            };
            let spec = OperatorSpec::new(AnalyticMap::parse(u)?, AnalyticMap::parse(phi)?, mu, profile.clone(), p, q, Some(opts.gamma.unwrap_or(GAMMA)))?;
            let psi = psi_mixed_norm(&spec, PsiMode::AsPrinted, &rule, &integ)?;
            let pm = PushforwardMaximal::new(&spec, &grid, &quad)?;
            let maximal = pm.maximal_norm(&rule)?;
            let tent = pm.q_norm(&rule)?;
            let bracket = opts.ratio_bracket(100.0);
            let mut checks = vec![
                Check::within(group::MIXED, format!("{name}: ‖Ψ‖/‖M_ω(ν)‖"), psi.value / maximal.value, bracket),
                Check::within(group::MIXED, format!("{name}: ‖Ψ‖/‖Q‖"), psi.value / tent.value, bracket),
                Check::within(group::MIXED, format!("{name}: ‖M_ω(ν)‖/‖Q‖"), maximal.value / tent.value, bracket),
            ];
            let flagged = [&psi, &maximal, &tent].iter().any(|n| n.flag.is_some());
            checks.push(Check::holds(group::MIXED, format!("{name}: no divergence flag"), !flagged));
            Ok(checks)
        });
    }
    Ok(out)
}
