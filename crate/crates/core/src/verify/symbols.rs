use crate::error::Result;
use crate::geometry::AnalyticMap;
use crate::operators::{
    blaschke_lower_bound_experiment, dyadic_radii, exp_weight_condition, hat_product_sup, log_weight_constant, multiplier_bound_profile,
};
use crate::verify::{group, record, Check, VerifyOptions};
use crate::weights::WeightProfile;

const BLASCHKE: [&str; 3] = ["blaschke:m=2", "blaschke:zeros=0.5", "blaschke:m=1;zeros=0.3+0.2i,-0.6"];
const MULTIPLIER_WEIGHTS: [&str; 3] = ["std:alpha=1", "logpow:alpha=1,beta=-1", "exp:alpha=0.5,beta=1"];
/// One weight from each family covered by the regular-weight conditions.
const REGULAR_WEIGHTS: [&str; 2] = ["logpow:alpha=1,beta=-1", "exp:alpha=0.5,beta=1"];

pub(super) fn multipliers(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut radii: Vec<f64> = dyadic_radii(opts.levels_or(9), 4).into_iter().filter(|&r| r <= 0.999).collect();
    radii.push(0.999);
    let one = AnalyticMap::constant(1.0.into());
    for w in MULTIPLIER_WEIGHTS {
        let profile = WeightProfile::parse(w)?;
        for phi in BLASCHKE {
            let name = format!("{w}, φ = {phi}");
            record(&mut out, group::MULTIPLIER, &name, || {
                let rep = multiplier_bound_profile(&one, &AnalyticMap::parse(phi)?, &profile, 2.0, &radii, 16)?;
                Ok(vec![
                    Check::at_most(group::MULTIPLIER, format!("{name}: sup ω(S(φ(z)))/ω(S(z))"), rep.ratio_sup, 1e3),
                    Check::at_most(
                        group::MULTIPLIER,
                        format!("{name}: sup within the implied constant {:.4e}", rep.implied_constant),
                        rep.ratio_sup,
                        rep.implied_constant,
                    ),
                ])
            });
        }
    }
    Ok(out)
}

pub(super) fn lower_bound(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let levels = opts.levels_or(14);
    let fine = dyadic_radii(levels, 2);
    let coarse = dyadic_radii(levels.saturating_sub(4).max(1), 2);
    for w in REGULAR_WEIGHTS {
        record(&mut out, group::REGULAR, w, || {
            let profile = WeightProfile::parse(w)?;
            let sup = hat_product_sup(&profile, &fine);
            let early = hat_product_sup(&profile, &coarse);
            let tail = profile.tail_constants();
            Ok(vec![
                Check::holds(group::REGULAR, format!("{w}: sup ω̂(φ_t(r))ω̂(r)/ω̂(t) = {:.6} is finite", sup.value), sup.value.is_finite()),
                Check::at_most(group::REGULAR, format!("{w}: sup growth over the last four levels"), sup.value / early.value, 2.0),
                Check::at_least(group::REGULAR, format!("{w}: 2A + AB - B"), tail.condition_ii_value, f64::MIN_POSITIVE),
            ])
        });
        record(&mut out, group::LOWER_BOUND, w, || {
            let profile = WeightProfile::parse(w)?;
            let radii: Vec<f64> = (1..=10).map(|j| 1.0 - 0.5f64.powi(j)).collect();
            let mut checks = Vec::new();
            for phi in ["blaschke:m=1", "blaschke:m=2"] {
                let rep = blaschke_lower_bound_experiment(&profile, &AnalyticMap::parse(phi)?, 2.0, &radii)?;
                // only the lower end matters: the inequality bounds lhs by rhs
                let (lo, _) = rep.ratio_range();
                checks.push(Check::at_least(group::LOWER_BOUND, format!("{w}, φ = {phi}: min rhs/lhs"), lo, 1e-2));
                let edge = rep.boundary_profile.last().copied().unwrap_or(0.0);
                checks.push(Check::at_least(group::LOWER_BOUND, format!("{w}, φ = {phi}: min |φ| on the outer circle"), edge, 0.99));
            }
            Ok(checks)
        });
    }
    Ok(out)
}

pub(super) fn log_weights(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let radii = dyadic_radii(opts.levels_or(13), 2);
    let c1 = log_weight_constant(&radii);
    let mut out = vec![Check::at_least(group::REGULAR, "C_1 = inf of the log quotient over the dyadic grid", c1.value, 0.1)];
    for alpha in [0.25, 0.5, 1.0] {
        record(&mut out, group::REGULAR, &format!("α = {alpha}"), || {
            let violation = exp_weight_condition(alpha, &radii)?;
            let name = match violation {
                None => format!("α = {alpha}: exponential-weight inequality at every grid pair"),
                Some((r, t)) => format!("α = {alpha}: exponential-weight inequality fails at r = {r}, t = {t}"),
            };
            Ok(vec![Check::holds(group::REGULAR, name, violation.is_none())])
        });
    }
    Ok(out)
}
