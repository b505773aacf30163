//! Radial weight families and their spec-string syntax.
//!
//! Every family is evaluated through its *gap density*: with `x = -ln(1 - r)`
//! the weight contributes `ω(r)(1 - r)` per unit of `x`, so that
//! `∫_r^1 ω(s) ds = ∫_x^∞ gap_density(y) dy`. Working in `x` keeps the
//! boundary behaviour representable long after `1 - r` underflows.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Gap density supplied by a closure (`x ↦ ω(1 - e^{-x}) e^{-x}`).
pub type GapFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum WeightFamily {
    /// (1 - r)^α, α > -1.
    Standard { alpha: f64 },
    /// (1 - r)^α (log e/(1 - r))^β.
    LogPower { alpha: f64, beta: f64 },
    /// exp(-β (log e/(1 - r))^α).
    Exponential { alpha: f64, beta: f64 },
    /// |sin(log 1/(1 - r))| (1 - r)^{-1} (log e/(1 - r))^β + 1, β < -1.
    OscillatingRi { beta: f64 },
    /// Log-log interpolation of sampled (r, ω(r)) with a fitted power-law tail.
    CustomSampled(SampledWeight),
    /// Arbitrary gap density.
    Analytic { name: String, gap: GapFn },
}

impl fmt::Debug for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Standard { alpha } => write!(f, "Standard({alpha})"),
            Self::LogPower { alpha, beta } => write!(f, "LogPower({alpha}, {beta})"),
            Self::Exponential { alpha, beta } => write!(f, "Exponential({alpha}, {beta})"),
            Self::OscillatingRi { beta } => write!(f, "OscillatingRi({beta})"),
            Self::CustomSampled(s) => write!(f, "CustomSampled({} nodes)", s.xs.len()),
            Self::Analytic { name, .. } => write!(f, "Analytic({name})"),
        }
    }
}

/// Sampled weight: nodes stored as (x, ln ω) with x = -ln(1 - r).
#[derive(Debug, Clone)]
pub struct SampledWeight {
    xs: Vec<f64>,
    log_w: Vec<f64>,
    /// Exponent κ of the tail ω ~ C (1 - r)^κ fitted on the last two nodes.
    tail_exponent: f64,
}

impl SampledWeight {
    pub fn new(mut samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidWeight("sampled weight needs at least two rows".into()));
        }
        for &(r, w) in &samples {
            if !(0.0..1.0).contains(&r) || !r.is_finite() {
                return Err(Error::InvalidWeight(format!("sample radius {r} outside [0, 1)")));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidWeight(format!(
                    "sample value {w} at r = {r} is not positive"
                )));
            }
        }
        samples.sort_by(|a, b| a.0.total_cmp(&b.0));
        samples.dedup_by(|a, b| a.0 == b.0);
        if samples.len() < 2 {
            return Err(Error::InvalidWeight("sampled weight needs two distinct radii".into()));
        }
        let xs: Vec<f64> = samples.iter().map(|s| -(-s.0).ln_1p()).collect();
        let log_w: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
        let n = xs.len();
        // ln ω = ln C + κ ln(1 - r) = ln C - κ x
        let kappa = -(log_w[n - 1] - log_w[n - 2]) / (xs[n - 1] - xs[n - 2]);
        if kappa <= -1.0 {
            return Err(Error::InvalidWeight(format!(
                "fitted tail exponent {kappa:.4} <= -1 is not integrable"
            )));
        }
        Ok(Self { xs, log_w, tail_exponent: kappa })
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split(',').map(str::trim);
            let (Some(a), Some(b)) = (parts.next(), parts.next()) else {
                return Err(Error::InvalidWeight(format!("line {}: expected r,w", lineno + 1)));
            };
            match (a.parse::<f64>(), b.parse::<f64>()) {
                (Ok(r), Ok(w)) => rows.push((r, w)),
                // header row
                _ if lineno == 0 => continue,
                _ => {
                    return Err(Error::InvalidWeight(format!(
                        "line {}: cannot parse '{line}'",
                        lineno + 1
                    )))
                }
            }
        }
        Self::new(rows)
    }

    fn log_density(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.log_w[0];
        }
        if x >= self.xs[n - 1] {
            return self.log_w[n - 1] - self.tail_exponent * (x - self.xs[n - 1]);
        }
        let i = self.xs.partition_point(|&v| v <= x) - 1;
        let t = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        self.log_w[i] + t * (self.log_w[i + 1] - self.log_w[i])
    }
}

/// A positive radial weight on the unit disk.
#[derive(Debug, Clone)]
pub struct Weight {
    family: WeightFamily,
    spec: String,
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.spec)
    }
}

impl Weight {
    pub fn standard(alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::InvalidWeight(format!("standard weight needs alpha > -1, got {alpha}")));
        }
        Ok(Self { family: WeightFamily::Standard { alpha }, spec: format!("std:alpha={alpha}") })
    }

    pub fn log_power(alpha: f64, beta: f64) -> Result<Self> {
        let ok = alpha > -1.0 || (alpha == -1.0 && beta < -1.0);
        if !ok || !beta.is_finite() {
            return Err(Error::InvalidWeight(format!(
                "log-power weight needs alpha > -1, or alpha = -1 with beta < -1; got ({alpha}, {beta})"
            )));
        }
        Ok(Self {
            family: WeightFamily::LogPower { alpha, beta },
            spec: format!("logpow:alpha={alpha},beta={beta}"),
        })
    }

    pub fn exponential(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0) {
            return Err(Error::InvalidWeight(format!(
                "exponential weight needs alpha > 0 and beta > 0; got ({alpha}, {beta})"
            )));
        }
        Ok(Self {
            family: WeightFamily::Exponential { alpha, beta },
            spec: format!("exp:alpha={alpha},beta={beta}"),
        })
    }

    pub fn oscillating(beta: f64) -> Result<Self> {
        if !(beta < -1.0) {
            return Err(Error::InvalidWeight(format!("oscillating weight needs beta < -1, got {beta}")));
        }
        Ok(Self { family: WeightFamily::OscillatingRi { beta }, spec: format!("osc:beta={beta}") })
    }

    pub fn sampled(samples: Vec<(f64, f64)>, label: &str) -> Result<Self> {
        Ok(Self {
            family: WeightFamily::CustomSampled(SampledWeight::new(samples)?),
            spec: label.to_string(),
        })
    }

    /// Weight given directly by its gap density `x ↦ ω(1 - e^{-x}) e^{-x}`.
    pub fn analytic(name: &str, gap: GapFn) -> Self {
        Self { family: WeightFamily::Analytic { name: name.to_string(), gap }, spec: name.to_string() }
    }

    /// (1 - r²)^α, the classical Bergman weight in its symmetric form.
    pub fn disk_power(alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::InvalidWeight(format!("alpha must exceed -1, got {alpha}")));
        }
        let gap: GapFn = Arc::new(move |x: f64| {
            let t = (-x).exp();
            (-(alpha + 1.0) * x).exp() * (2.0 - t).powf(alpha)
        });
        Ok(Self::analytic(&format!("std2:alpha={alpha}"), gap))
    }

    /// Parses `std:alpha=1`, `logpow:alpha=-1,beta=-2`, `exp:alpha=0.5,beta=1`,
    /// `osc`, `osc:beta=-3`, `std2:alpha=2` or `file:<path>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        if kind == "file" {
            let path = Path::new(rest);
            return Ok(Self {
                family: WeightFamily::CustomSampled(SampledWeight::from_csv_path(path)?),
                spec: spec.to_string(),
            });
        }
        let params = parse_params(rest)?;
        let get = |name: &str| -> Result<f64> {
            params
                .iter()
                .find(|(k, _)| k == name)
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::Spec(format!("weight '{spec}' is missing parameter '{name}'")))
        };
        let get_or = |name: &str, default: f64| get(name).unwrap_or(default);
        match kind {
            "std" => Self::standard(get("alpha")?),
            "std2" => Self::disk_power(get("alpha")?),
            "logpow" => Self::log_power(get("alpha")?, get("beta")?),
            "exp" => Self::exponential(get("alpha")?, get("beta")?),
            "osc" => Self::oscillating(get_or("beta", -2.0)),
            "unit" => Self::standard(0.0),
            other => Err(Error::Spec(format!("unknown weight family '{other}'"))),
        }
    }

    pub fn family(&self) -> &WeightFamily {
        &self.family
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    /// ω(r)(1 - r) at r = 1 - e^{-x}.
    pub fn gap_density(&self, x: f64) -> f64 {
        match &self.family {
            WeightFamily::Standard { alpha } => (-(alpha + 1.0) * x).exp(),
            WeightFamily::LogPower { alpha, beta } => {
                (-(alpha + 1.0) * x + beta * (1.0 + x).ln()).exp()
            }
            WeightFamily::Exponential { alpha, beta } => (-beta * (1.0 + x).powf(*alpha) - x).exp(),
            WeightFamily::OscillatingRi { beta } => x.sin().abs() * (1.0 + x).powf(*beta) + (-x).exp(),
            WeightFamily::CustomSampled(s) => (s.log_density(x) - x).exp(),
            WeightFamily::Analytic { gap, .. } => gap(x),
        }
    }

    /// ω(r) for r ∈ [0, 1).
    pub fn density(&self, r: f64) -> f64 {
        let gap = 1.0 - r;
        self.gap_density(-(gap.ln())) / gap
    }

    /// Points in x where the gap density has a derivative jump.
    pub(crate) fn kinks(&self, x_max: f64) -> Vec<f64> {
        match &self.family {
            WeightFamily::OscillatingRi { .. } => {
                let mut k = 1.0;
                let mut out = Vec::new();
                while k * PI < x_max {
                    out.push(k * PI);
                    k += 1.0;
                }
                out
            }
            WeightFamily::CustomSampled(s) => s.xs.iter().copied().filter(|&x| x > 0.0).collect(),
            _ => Vec::new(),
        }
    }

    /// End of the explicitly integrated x-range and the mass beyond it, when
    /// the family has a closed-form far tail.
    pub(crate) fn far_tail(&self) -> Option<(f64, Box<dyn Fn(f64) -> f64 + '_>)> {
        match &self.family {
            WeightFamily::OscillatingRi { beta } => {
                let b = *beta;
                // |sin| averages to 2/π over each period; the zero-mean remainder
                // contributes at second order in the derivative of (1 + y)^β.
                let tail = move |x: f64| 2.0 / PI * (1.0 + x).powf(b + 1.0) / (-b - 1.0) + (-x).exp();
                Some((4096.0 * PI, Box::new(tail)))
            }
            _ => None,
        }
    }

    /// Closed form of ω̂ in terms of the gap 1 - r, where one exists.
    pub(crate) fn closed_form_hat(&self, gap: f64) -> Option<f64> {
        match &self.family {
            WeightFamily::Standard { alpha } => Some(gap.powf(alpha + 1.0) / (alpha + 1.0)),
            WeightFamily::LogPower { alpha, beta } if *alpha == -1.0 => {
                let l = 1.0 - gap.ln();
                Some(l.powf(beta + 1.0) / (-beta - 1.0))
            }
            WeightFamily::LogPower { alpha, beta } if *beta == 0.0 => {
                Some(gap.powf(alpha + 1.0) / (alpha + 1.0))
            }
            _ => None,
        }
    }
}

fn parse_params(rest: &str) -> Result<Vec<(String, f64)>> {
    let mut out = Vec::new();
    for part in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Spec(format!("expected key=value, got '{part}'")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Spec(format!("cannot parse number '{v}'")))?;
        out.push((k.trim().to_string(), v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_builtin_specs() {
        assert!(matches!(
            Weight::parse("std:alpha=1").unwrap().family(),
            WeightFamily::Standard { alpha } if *alpha == 1.0
        ));
        assert!(matches!(
            Weight::parse("logpow:alpha=-1,beta=-2").unwrap().family(),
            WeightFamily::LogPower { .. }
        ));
        assert!(matches!(Weight::parse("osc").unwrap().family(), WeightFamily::OscillatingRi { beta } if *beta == -2.0));
        assert!(Weight::parse("exp:alpha=0.5,beta=1").is_ok());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Weight::parse("std:alpha=-1").is_err());
        assert!(Weight::parse("logpow:alpha=-1,beta=-0.5").is_err());
        assert!(Weight::parse("exp:alpha=0,beta=1").is_err());
        assert!(Weight::parse("nope:alpha=1").is_err());
        assert!(Weight::parse("std:beta=1").is_err());
    }

    #[test]
    fn gap_density_matches_direct_density() {
        for spec in ["std:alpha=1", "logpow:alpha=0.5,beta=-1", "exp:alpha=0.5,beta=1", "osc"] {
            let w = Weight::parse(spec).unwrap();
            for &r in &[0.1, 0.5, 0.9, 0.99] {
                let x = -(1.0f64 - r).ln();
                let direct = w.density(r) * (1.0 - r);
                assert!((direct - w.gap_density(x)).abs() <= 1e-12 * direct.abs().max(1e-300));
                assert!(w.density(r) > 0.0);
            }
        }
    }

    #[test]
    fn sampled_weight_rejects_negative_sample() {
        let err = Weight::sampled(vec![(0.0, 1.0), (0.5, -1.0)], "bad").unwrap_err();
        assert!(matches!(err, Error::InvalidWeight(_)));
    }

    #[test]
    fn sampled_weight_reproduces_power_law() {
        let rows: Vec<(f64, f64)> = (0..20).map(|i| {
            let r = 1.0 - 0.5f64.powi(i);
            (r, (1.0 - r).powf(0.5))
        }).collect();
        let w = Weight::sampled(rows, "s").unwrap();
        for &r in &[0.3, 0.77, 0.999_999_9] {
            let exact = (1.0f64 - r).powf(0.5);
            assert!((w.density(r) / exact - 1.0).abs() < 1e-9, "r = {r}");
        }
    }
}
