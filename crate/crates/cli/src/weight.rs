use serde::Serialize;

use bergman_core::weights::{AnalysisGrid, Exponents, Log2Check, TailConstants, Weight, WeightClass, WeightProfile};

use crate::config::RunConfig;
use crate::output::{write_json, Table};
use crate::{Common, Outcome, Result};

#[derive(Serialize)]
struct WeightReport {
    spec: String,
    class: WeightClass,
    regular: bool,
    rapidly_increasing: bool,
    /// sup over the grid of ω̂(r)/ω̂((1+r)/2) is finite
    doubling: bool,
    dd_constant: f64,
    reg_ratio_bounds: (f64, f64),
    tail: TailConstants,
    exponents: Option<Exponents>,
    log2_hypothesis: Log2Check,
    rows: Vec<Row>,
}

#[derive(Serialize)]
struct Row {
    r: f64,
    omega: f64,
    omega_hat: f64,
    omega_star: f64,
    /// ω̂/((1 - r)ω)
    hat_ratio: f64,
    /// ω_*/((1 - r)ω̂)
    star_ratio: f64,
}

pub fn run(spec: &str, common: &Common) -> Result<Outcome> {
    let weight = Weight::parse(spec)?;
    let grid = AnalysisGrid::new(common.levels.unwrap_or(12), 8);
    let profile = WeightProfile::classify(weight, &grid)?;
    let mut rows = Vec::new();
    let mut table = Table::new(&["r", "omega", "omega_hat", "omega_star", "hat_ratio", "star_ratio"]);
    for p in grid.points() {
        let r = p.radius();
        let omega_hat = profile.omega_hat_gap(p.gap);
        let omega_star = profile.omega_star_gap(p.gap);
        let row = Row {
            r,
            omega: profile.gap_density(p.gap) / p.gap,
            omega_hat,
            omega_star,
            hat_ratio: profile.reg_ratio_gap(p.gap),
            star_ratio: omega_star / (p.gap * omega_hat),
        };
        table.push(vec![row.r, row.omega, row.omega_hat, row.omega_star, row.hat_ratio, row.star_ratio]);
        rows.push(row);
    }
    let report = WeightReport {
        spec: profile.weight().spec().to_string(),
        class: profile.class,
        regular: profile.is_regular(),
        rapidly_increasing: profile.is_rapidly_increasing(),
        doubling: profile.dd_constant.is_finite(),
        dd_constant: profile.dd_constant,
        reg_ratio_bounds: profile.reg_ratio_bounds,
        tail: profile.tail_constants(),
        exponents: profile.exponents,
        log2_hypothesis: profile.log2_hypothesis(),
        rows,
    };
    let config = RunConfig::new("weight", spec, common);
    write_json(&common.out.join("weight.json"), &config, &report)?;
    table.write(&common.out.join("weight.csv"))?;
    println!(
        "{}: class {:?}, A = {:.4}, B = {:.4}, 2A + AB - B = {:.4}",
        report.spec, report.class, report.tail.a, report.tail.b, report.tail.condition_ii_value
    );
    if report.class == WeightClass::Inconclusive {
        return Ok(Outcome::Flagged(format!("classification of '{}' is inconclusive", report.spec)));
    }
    Ok(Outcome::Pass)
}
