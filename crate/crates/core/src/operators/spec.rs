use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::AnalyticMap;
use crate::operators::grid::AGrid;
use crate::quadrature::{Measure, PushforwardSpec};
use crate::spaces::default_gamma;
use crate::weights::WeightProfile;

/// Weighted composition operator u C_φ : A_ω^p → L_μ^q.
#[derive(Debug, Clone)]
pub struct OperatorSpec {
    pub u: AnalyticMap,
    pub phi: AnalyticMap,
    pub mu: Measure,
    pub profile: Arc<WeightProfile>,
    pub p: f64,
    pub q: f64,
    pub gamma: f64,
}

impl OperatorSpec {
    pub fn new(u: AnalyticMap, phi: AnalyticMap, mu: Measure, profile: Arc<WeightProfile>, p: f64, q: f64, gamma: Option<f64>) -> Result<Self> {
        if !(p > 0.0 && p.is_finite() && q > 0.0 && q.is_finite()) {
            return Err(Error::InvalidArgument(format!("exponents p = {p}, q = {q}")));
        }
        phi.validate_self_map()?;
        let gamma = gamma.unwrap_or_else(|| default_gamma(p));
        Ok(Self { u, phi, mu, profile, p, q, gamma })
    }

    /// u ≡ 1, φ = id, μ = ω dA and q = p.
    pub fn identity(profile: Arc<WeightProfile>, p: f64) -> Result<Self> {
        let mu = Measure::weighted(profile.clone());
        Self::new(AnalyticMap::constant(1.0.into()), AnalyticMap::identity(), mu, profile, p, p, None)
    }

    /// ν = pushforward of |u|^q dμ under φ.
    pub fn pushforward(&self) -> PushforwardSpec {
        PushforwardSpec::new(self.u.clone(), self.phi.clone(), self.mu.clone(), self.q)
    }

    /// The same operator with u replaced by c·u.
    pub fn with_scaled_u(&self, c: f64) -> Self {
        Self { u: self.u.scaled(c.into()), ..self.clone() }
    }
}

/// Grid settings carried by a scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    /// finest dyadic level J
    pub levels: u32,
    /// first level of the limsup window
    pub tail_start: u32,
    pub angular_base: usize,
    pub angular_cap: usize,
    /// matrix truncation N
    pub oracle_n: usize,
    /// pseudo-hyperbolic radius for Δ(z, r)
    pub r: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        let g = AGrid::default();
        Self { levels: g.levels, tail_start: 6, angular_base: g.angular_base, angular_cap: g.angular_cap, oracle_n: 64, r: 0.5 }
    }
}

impl GridConfig {
    pub fn a_grid(&self) -> AGrid {
        AGrid { levels: self.levels, angular_base: self.angular_base, angular_cap: self.angular_cap }
    }
}

/// JSON scenario: {weight, u, phi, mu, p, q, gamma, grids}. Maps use the
/// analytic-map spec syntax; `mu` defaults to ω dA.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: String,
    pub weight: String,
    #[serde(default = "one_map")]
    pub u: String,
    #[serde(default = "id_map")]
    pub phi: String,
    #[serde(default)]
    pub mu: Option<String>,
    pub p: f64,
    pub q: f64,
    #[serde(default)]
    pub gamma: Option<f64>,
    #[serde(default)]
    pub grids: GridConfig,
}

fn one_map() -> String {
    "one".into()
}

fn id_map() -> String {
    "id".into()
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn build(&self) -> Result<OperatorSpec> {
        let profile = Arc::new(WeightProfile::parse(&self.weight)?);
        let mu = match &self.mu {
            None => Measure::weighted(profile.clone()),
            Some(s) if s == "warea" => Measure::weighted(profile.clone()),
            Some(s) => Measure::parse(s)?,
        };
        OperatorSpec::new(AnalyticMap::parse(&self.u)?, AnalyticMap::parse(&self.phi)?, mu, profile, self.p, self.q, self.gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_round_trip_and_build() {
        let s = Scenario::from_json(r#"{"weight": "std:alpha=1", "phi": "poly:0,0.5", "p": 2, "q": 2, "grids": {"levels": 8}}"#).unwrap();
        assert_eq!(s.u, "one");
        assert_eq!(s.grids.levels, 8);
        assert_eq!(s.grids.oracle_n, 64);
        let back = Scenario::from_json(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        let spec = s.build().unwrap();
        assert_eq!(spec.gamma, 9.0);
        assert!(Scenario::from_json(r#"{"weight": "std:alpha=1", "p": 2, "q": 2, "bogus": 1}"#).is_err());
        let bad = Scenario { phi: "poly:0,2".into(), ..s };
        assert!(bad.build().is_err());
    }
}
