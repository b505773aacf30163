use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use bergman_core::operators::{
    blaschke_lower_bound_experiment, boundedness_functional, carleson_constant, dyadic_radii, essential_norm_functional,
    hat_product_sup, multiplier_bound_profile, psi_mixed_norm, schatten_functional, FunctionalReport, GridSup, LowerBoundReport,
    MatrixOracle, MixedNorm, MultiplierBoundReport, OperatorSpec, OuterRule, PsiMode, PushforwardMaximal, Scenario, SchattenConfig,
    SchattenReport,
};
use bergman_core::quadrature::{DiskQuadrature, PeakIntegrator};
use bergman_core::weights::TailConstants;

use crate::config::RunConfig;
use crate::output::{write_json, Table};
use crate::{Common, Outcome, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Bounded,
    Essnorm,
    Psi,
    Schatten,
    Carleson,
    Multbound,
    /// lower-bound experiment and regular-weight conditions for Blaschke symbols
    #[value(name = "thm6", alias = "lower-bound")]
    LowerBound,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Bounded => "bounded",
            Kind::Essnorm => "essnorm",
            Kind::Psi => "psi",
            Kind::Schatten => "schatten",
            Kind::Carleson => "carleson",
            Kind::Multbound => "multbound",
            Kind::LowerBound => "lower-bound",
        }
    }
}

/// What a kind produced: the JSON body, the headline value and the tables.
struct Computed {
    body: Value,
    value: f64,
    flag: Option<String>,
    levels: Option<Table>,
    plot: Option<Table>,
}

#[derive(Serialize)]
struct BoundedResult<'a> {
    #[serde(flatten)]
    report: &'a FunctionalReport,
    /// σ_1 of the matrix oracle, for p = q = 2
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_op_norm: Option<f64>,
}

#[derive(Serialize)]
struct PsiResult {
    psi: MixedNorm,
    psi_switched_exponent: MixedNorm,
    maximal: MixedNorm,
    tent: MixedNorm,
}

#[derive(Serialize)]
struct SchattenResult {
    #[serde(flatten)]
    report: SchattenReport,
    /// Σσ_i² of the matrix oracle, for p = 2
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_hilbert_schmidt_sq: Option<f64>,
}

#[derive(Serialize)]
struct LowerBoundResult {
    tail: TailConstants,
    hat_product_sup: GridSup,
    experiment: LowerBoundReport,
}

pub fn run(kind: Kind, path: &Path, common: &Common) -> Result<Outcome> {
    let mut scenario = Scenario::load(path)?;
    if let Some(l) = common.levels {
        scenario.grids.levels = l;
    }
    if let Some(n) = common.oracle_n {
        scenario.grids.oracle_n = n;
    }
    if common.gamma.is_some() {
        scenario.gamma = common.gamma;
    }
    let spec = scenario.build()?;
    let mut config = RunConfig::new("functional", kind.name(), common);
    config.scenario = Some(scenario.clone());

    let start = Instant::now();
    let computed = compute(kind, &scenario, &spec)?;
    let mut body = computed.body;
    if common.record_timing {
        if let Value::Object(map) = &mut body {
            map.insert("wall_time_ms".into(), Value::from(start.elapsed().as_secs_f64() * 1e3));
        }
    }
    let mut outside = None;
    if let Some((lo, hi)) = common.bracket {
        let inside = computed.value >= lo && computed.value <= hi;
        if let Value::Object(map) = &mut body {
            map.insert("bracket".into(), serde_json::json!({ "lo": lo, "hi": hi, "pass": inside }));
        }
        if !inside {
            outside = Some(format!("{} = {} outside [{lo}, {hi}]", kind.name(), computed.value));
        }
    }

    let stem = kind.name();
    write_json(&common.out.join(format!("{stem}.json")), &config, &body)?;
    if let Some(t) = &computed.levels {
        t.write(&common.out.join(format!("{stem}_levels.csv")))?;
    }
    if let Some(t) = &computed.plot {
        t.write(&common.out.join(format!("{stem}_plot.csv")))?;
    }
    println!("{stem}: {:e}", computed.value);
    match computed.flag.or(outside) {
        Some(msg) => Ok(Outcome::Flagged(msg)),
        None => Ok(Outcome::Pass),
    }
}

fn level_tables(report: &FunctionalReport) -> (Table, Table) {
    let mut levels = Table::new(&["level", "radius", "value", "witness_re", "witness_im"]);
    let mut plot = Table::new(&["x", "y"]);
    for l in &report.levels {
        levels.push(vec![l.level as f64, l.radius, l.value, l.witness.re, l.witness.im]);
        plot.push(vec![l.radius, l.value]);
    }
    (levels, plot)
}

fn from_report(report: &FunctionalReport, oracle_op_norm: Option<f64>) -> Result<Computed> {
    let (levels, plot) = level_tables(report);
    Ok(Computed {
        body: serde_json::to_value(BoundedResult { report, oracle_op_norm })?,
        value: report.value,
        flag: report.flag.clone(),
        levels: Some(levels),
        plot: Some(plot),
    })
}

fn compute(kind: Kind, scenario: &Scenario, spec: &OperatorSpec) -> Result<Computed> {
    let grids = &scenario.grids;
    let grid = grids.a_grid();
    let integ = PeakIntegrator::default();
    let profile = &spec.profile;
    match kind {
        Kind::Bounded => {
            let report = boundedness_functional(spec, &grid, &integ)?;
            let oracle = if spec.p == 2.0 && spec.q == 2.0 {
                Some(MatrixOracle::build(&spec.u, &spec.phi, profile, grids.oracle_n)?.op_norm())
            } else {
                None
            };
            from_report(&report, oracle)
        }
        Kind::Essnorm => from_report(&essential_norm_functional(spec, &grid, grids.tail_start, &integ)?, None),
        Kind::Carleson => from_report(&carleson_constant(&spec.mu, profile, spec.p, spec.q, &grid)?, None),
        Kind::Psi => {
            let rule = OuterRule::weighted(profile, grids.levels, 2, &grid);
            let quad = DiskQuadrature::with_levels(grids.levels + 2);
            let pm = PushforwardMaximal::new(spec, &grid, &quad)?;
            let res = PsiResult {
                psi: psi_mixed_norm(spec, PsiMode::AsPrinted, &rule, &integ)?,
                psi_switched_exponent: psi_mixed_norm(spec, PsiMode::SwitchedExponent, &rule, &integ)?,
                maximal: pm.maximal_norm(&rule)?,
                tent: pm.q_norm(&rule)?,
            };
            let mut levels = Table::new(&["cell", "psi", "psi_switched", "maximal", "tent"]);
            let mut plot = Table::new(&["x", "y"]);
            for (i, c) in res.psi.cells.iter().enumerate() {
                let at = |n: &MixedNorm| n.cells.get(i).copied().unwrap_or(f64::NAN);
                levels.push(vec![i as f64, *c, at(&res.psi_switched_exponent), at(&res.maximal), at(&res.tent)]);
                plot.push(vec![i as f64, *c]);
            }
            let flag = [&res.psi, &res.maximal, &res.tent].iter().find_map(|n| n.flag.clone());
            Ok(Computed { value: res.psi.value, flag, body: serde_json::to_value(&res)?, levels: Some(levels), plot: Some(plot) })
        }
        Kind::Schatten => {
            let cfg = SchattenConfig { levels: grids.levels, ..SchattenConfig::default() };
            let quad = DiskQuadrature { levels: 8, angular_cap: 1024, ..DiskQuadrature::default() };
            let report = schatten_functional(&spec.u, &spec.phi, profile, spec.p, grids.r, &cfg, &quad)?;
            let oracle = if spec.p == 2.0 {
                let m = MatrixOracle::build(&spec.u, &spec.phi, profile, grids.oracle_n)?;
                (!m.truncated).then(|| m.hilbert_schmidt_sq())
            } else {
                None
            };
            let mut levels = Table::new(&["cell", "value"]);
            let mut plot = Table::new(&["x", "y"]);
            for (j, c) in report.cells.iter().enumerate() {
                levels.push(vec![j as f64, *c]);
                plot.push(vec![1.0 - 0.5f64.powi(j as i32), *c]);
            }
            let (value, flag) = (report.value, report.flag.clone());
            let body = serde_json::to_value(SchattenResult { report, oracle_hilbert_schmidt_sq: oracle })?;
            Ok(Computed { body, value, flag, levels: Some(levels), plot: Some(plot) })
        }
        Kind::Multbound => {
            let mut radii: Vec<f64> = dyadic_radii(grids.levels, 4).into_iter().filter(|&r| r <= 0.999).collect();
            radii.push(0.999);
            let rep: MultiplierBoundReport = multiplier_bound_profile(&spec.u, &spec.phi, profile, spec.p, &radii, 16)?;
            let mut levels = Table::new(&["radius", "ratio_sup"]);
            for &r in &radii {
                let one = multiplier_bound_profile(&spec.u, &spec.phi, profile, spec.p, &[r], 16)?;
                levels.push(vec![r, one.ratio_sup]);
            }
            let plot = Table { header: vec!["x", "y"], rows: levels.rows.clone() };
            Ok(Computed { value: rep.ratio_sup, flag: None, body: serde_json::to_value(&rep)?, levels: Some(levels), plot: Some(plot) })
        }
        Kind::LowerBound => {
            let w_radii: Vec<f64> = (1..=grids.levels).map(|j| 1.0 - 0.5f64.powi(j as i32)).collect();
            let res = LowerBoundResult {
                tail: profile.tail_constants(),
                hat_product_sup: hat_product_sup(profile, &dyadic_radii(grids.levels + 2, 2)),
                experiment: blaschke_lower_bound_experiment(profile, &spec.phi, spec.p, &w_radii)?,
            };
            let mut levels = Table::new(&["w", "lhs", "rhs", "phi_modulus"]);
            let mut plot = Table::new(&["x", "y"]);
            for r in &res.experiment.records {
                levels.push(vec![r.w, r.lhs, r.rhs, r.phi_modulus]);
                plot.push(vec![r.w, r.rhs / r.lhs]);
            }
            Ok(Computed { value: res.hat_product_sup.value, flag: None, body: serde_json::to_value(&res)?, levels: Some(levels), plot: Some(plot) })
        }
    }
}
