use std::time::Instant;

use serde_json::Value;

use bergman_core::verify::{run_suites, Suite, VerifyOptions};

use crate::config::RunConfig;
use crate::output::write_json;
use crate::{Common, Outcome, Result};

pub fn run(suite: &str, common: &Common) -> Result<Outcome> {
    let suites = Suite::parse_list(suite)?;
    let opts = VerifyOptions { levels: common.levels, gamma: common.gamma, oracle_n: common.oracle_n, bracket: common.bracket };
    let start = Instant::now();
    let summary = run_suites(&suites, &opts)?;
    for report in &summary.suites {
        for c in &report.checks {
            println!("{} [{}] {}: {:e} (margin {:e})", if c.pass { "PASS" } else { "FAIL" }, report.suite, c.name, c.value, c.margin);
        }
    }
    let mut body = serde_json::to_value(&summary)?;
    if common.record_timing {
        if let Value::Object(map) = &mut body {
            map.insert("wall_time_ms".into(), Value::from(start.elapsed().as_secs_f64() * 1e3));
        }
    }
    write_json(&common.out.join(format!("verify_{suite}.json")), &RunConfig::new("verify", suite, common), &body)?;
    let failed = summary.checks().filter(|c| !c.pass).count();
    if failed > 0 {
        return Ok(Outcome::Flagged(format!("{failed} check(s) failed")));
    }
    println!("all {} checks passed", summary.checks().count());
    Ok(Outcome::Pass)
}
