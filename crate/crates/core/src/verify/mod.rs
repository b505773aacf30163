//! Verification suites: property checks with explicit brackets and margins.
//!
//! Every suite is deterministic and single-threaded, so rerunning with the
//! same options gives byte-identical JSON.

mod geometry;
mod kernels;
mod mixed;
mod operators;
mod spectral;
mod symbols;
mod weights;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Check groups, one per headline property.
pub mod group {
    pub const OMEGA_STAR: &str = "omega-star-comparison";
    pub const BOX_MASS: &str = "box-mass-comparison";
    pub const TEST_FUNCTIONS: &str = "test-function-norms";
    pub const BOUNDEDNESS: &str = "boundedness-vs-oracle";
    pub const COMPACTNESS: &str = "compactness-dichotomy";
    pub const SPECTRAL: &str = "toeplitz-and-schatten";
    pub const MIXED: &str = "mixed-norm-equivalence";
    pub const MULTIPLIER: &str = "multiplier-shape";
    pub const REGULAR: &str = "regular-weight-conditions";
    pub const LOWER_BOUND: &str = "lower-bound-experiment";
    pub const KERNEL: &str = "kernel-oracle";
    pub const GEOMETRY: &str = "geometry";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Weights,
    Geometry,
    Kernels,
    Boundedness,
    Compactness,
    MixedNorms,
    Schatten,
    Multipliers,
    LowerBound,
    LogWeights,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Weights,
        Suite::Geometry,
        Suite::Kernels,
        Suite::Boundedness,
        Suite::Compactness,
        Suite::MixedNorms,
        Suite::Schatten,
        Suite::Multipliers,
        Suite::LowerBound,
        Suite::LogWeights,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Weights => "weights",
            Suite::Geometry => "geometry",
            Suite::Kernels => "kernels",
            Suite::Boundedness => "boundedness",
            Suite::Compactness => "compactness",
            Suite::MixedNorms => "mixed-norms",
            Suite::Schatten => "schatten",
            Suite::Multipliers => "multipliers",
            Suite::LowerBound => "lower-bound",
            Suite::LogWeights => "log-weights",
        }
    }

    /// Parses a suite name or its short alias; `all` expands to every suite.
    pub fn parse_list(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Ok(vec![name.parse()?])
    }

    fn run(self, opts: &VerifyOptions) -> Result<Vec<Check>> {
        match self {
            Suite::Weights => weights::run(opts),
            Suite::Geometry => geometry::run(opts),
            Suite::Kernels => kernels::run(opts),
            Suite::Boundedness => operators::boundedness(opts),
            Suite::Compactness => operators::compactness(opts),
            Suite::MixedNorms => mixed::run(opts),
            Suite::Schatten => spectral::run(opts),
            Suite::Multipliers => symbols::multipliers(opts),
            Suite::LowerBound => symbols::lower_bound(opts),
            Suite::LogWeights => symbols::log_weights(opts),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let suite = match s {
            "weights" => Suite::Weights,
            "geometry" => Suite::Geometry,
            "kernels" => Suite::Kernels,
            "boundedness" | "thm1" => Suite::Boundedness,
            "compactness" | "thm2" => Suite::Compactness,
            "mixed-norms" | "thm3" => Suite::MixedNorms,
            "schatten" | "thm4" => Suite::Schatten,
            "multipliers" | "thm5" => Suite::Multipliers,
            "lower-bound" | "thm6" => Suite::LowerBound,
            "log-weights" | "cor7" => Suite::LogWeights,
            other => return Err(Error::Spec(format!("unknown suite '{other}'"))),
        };
        Ok(suite)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Overrides accepted by every suite. `None` keeps the suite default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_n: Option<usize>,
    /// replaces the comparison bracket of ratio checks
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<(f64, f64)>,
}

impl VerifyOptions {
    fn levels_or(&self, default: u32) -> u32 {
        self.levels.unwrap_or(default)
    }

    fn oracle_n_or(&self, default: usize) -> usize {
        self.oracle_n.unwrap_or(default)
    }

    /// A two-sided factor bracket [1/f, f] unless overridden.
    fn ratio_bracket(&self, factor: f64) -> (f64, f64) {
        self.bracket.unwrap_or((1.0 / factor, factor))
    }
}

/// One assertion: `lo ≤ value ≤ hi`, either bound optional.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub group: String,
    pub name: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lo: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hi: Option<f64>,
    pub pass: bool,
    /// signed distance to the nearest bound; negative when failing
    pub margin: f64,
}

impl Check {
    pub fn new(group: &str, name: impl Into<String>, value: f64, lo: Option<f64>, hi: Option<f64>) -> Self {
        let below = lo.map(|l| value - l);
        let above = hi.map(|h| h - value);
        let pass = !value.is_nan() && below.map_or(true, |d| d >= 0.0) && above.map_or(true, |d| d >= 0.0);
        let margin = match (below, above) {
            (Some(b), Some(a)) => b.min(a),
            (Some(d), None) | (None, Some(d)) => d,
            (None, None) => 0.0,
        };
        // JSON has no NaN or infinities
        let margin = if margin.is_finite() { margin } else { -1.0 };
        Self { group: group.into(), name: name.into(), value, lo, hi, pass, margin }
    }

    pub fn within(group: &str, name: impl Into<String>, value: f64, (lo, hi): (f64, f64)) -> Self {
        Self::new(group, name, value, Some(lo), Some(hi))
    }

    pub fn at_most(group: &str, name: impl Into<String>, value: f64, hi: f64) -> Self {
        Self::new(group, name, value, None, Some(hi))
    }

    pub fn at_least(group: &str, name: impl Into<String>, value: f64, lo: f64) -> Self {
        Self::new(group, name, value, Some(lo), None)
    }

    /// A boolean property, recorded as value 1 (true) or 0 against lo = 1.
    pub fn holds(group: &str, name: impl Into<String>, ok: bool) -> Self {
        Self::new(group, name, if ok { 1.0 } else { 0.0 }, Some(1.0), None)
    }

    /// A computation that errored; recorded as a failing check.
    pub fn errored(group: &str, name: impl Into<String>, err: &Error) -> Self {
        let mut c = Self::holds(group, format!("{}: {err}", name.into()), false);
        c.margin = -1.0;
        c.value = 0.0;
        c
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub version: String,
    pub options: VerifyOptions,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

impl Summary {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.suites.iter().flat_map(|s| s.checks.iter())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Runs the suites in the given order.
pub fn run_suites(suites: &[Suite], opts: &VerifyOptions) -> Result<Summary> {
    let mut reports = Vec::with_capacity(suites.len());
    for &suite in suites {
        let checks = suite.run(opts)?;
        let pass = checks.iter().all(|c| c.pass);
        reports.push(SuiteReport { suite, pass, checks });
    }
    Ok(Summary { version: VERSION.to_string(), options: opts.clone(), pass: reports.iter().all(|r| r.pass), suites: reports })
}

/// Pushes the check produced by `f`, or an errored check if it fails.
fn record(out: &mut Vec<Check>, group: &str, name: &str, f: impl FnOnce() -> Result<Vec<Check>>) {
    match f() {
        Ok(checks) => out.extend(checks),
        Err(e) => out.push(Check::errored(group, name, &e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_margins() {
        let c = Check::within("g", "x", 2.0, (1.0, 5.0));
        assert!(c.pass && c.margin == 1.0);
        let c = Check::at_most("g", "x", 6.0, 5.0);
        assert!(!c.pass && c.margin == -1.0);
        assert!(!Check::within("g", "x", f64::NAN, (0.0, 1.0)).pass);
        assert!(Check::holds("g", "x", true).pass && !Check::holds("g", "x", false).pass);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("thm4".parse::<Suite>().unwrap(), Suite::Schatten);
        assert_eq!(Suite::parse_list("all").unwrap().len(), 10);
        assert!("nope".parse::<Suite>().is_err());
    }
}
