use serde::Serialize;

use bergman_core::operators::Scenario;

use crate::Common;

/// Canonical echo of a command line, embedded in every report. Worker count
/// and output paths are left out so identical runs give identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Scenario>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket: Option<(f64, f64)>,
    pub record_timing: bool,
}

impl RunConfig {
    pub fn new(command: &'static str, target: &str, common: &Common) -> Self {
        Self {
            command,
            target: target.to_string(),
            scenario: None,
            gamma: common.gamma,
            levels: common.levels,
            oracle_n: common.oracle_n,
            bracket: common.bracket,
            record_timing: common.record_timing,
        }
    }
}

pub fn parse_bracket(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or_else(|| format!("expected lo,hi, got '{s}'"))?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower bound '{lo}'"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper bound '{hi}'"))?;
    if !(lo <= hi) {
        return Err(format!("empty bracket [{lo}, {hi}]"));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brackets() {
        assert_eq!(parse_bracket("0.1, 10").unwrap(), (0.1, 10.0));
        assert!(parse_bracket("3,1").is_err());
        assert!(parse_bracket("x").is_err());
    }
}
