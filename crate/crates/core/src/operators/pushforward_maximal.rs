//! Maximal-function and tent functionals of the pushforward ν = (|u|^q μ)∘φ^{-1}.

use num_complex::Complex64;

use crate::error::Result;
use crate::geometry::Region;
use crate::operators::functionals::{mixed_exponent, MixedNorm};
use crate::operators::grid::{AGrid, OuterRule};
use crate::operators::spec::OperatorSpec;
use crate::quadrature::{integrate_region, DiskQuadrature, Measure, PushforwardCloud};

/// Evaluators for M_ω(ν) and Q on one operator.
pub struct PushforwardMaximal {
    spec: OperatorSpec,
    /// None for φ = id, where regions are integrated directly
    cloud: Option<PushforwardCloud>,
    /// grid centres with ν(S(a))/ω(S(a))
    box_ratios: Vec<(Complex64, f64)>,
}

impl PushforwardMaximal {
    pub fn new(spec: &OperatorSpec, grid: &AGrid, quad: &DiskQuadrature) -> Result<Self> {
        let push = spec.pushforward();
        let cloud = if spec.phi.is_identity() { None } else { Some(PushforwardCloud::build(&push, quad)?) };
        let mut me = Self { spec: spec.clone(), cloud, box_ratios: Vec::new() };
        let mut ratios = Vec::new();
        for (_, a) in grid.points() {
            let nu = me.nu_of(&Region::carleson_box(a))?;
            ratios.push((a, nu / spec.profile.box_mass(a.norm())));
        }
        me.box_ratios = ratios;
        Ok(me)
    }

    /// ν(region).
    pub fn nu_of(&self, region: &Region) -> Result<f64> {
        self.integrate_nu(region, |_| 1.0)
    }

    /// ∫_region g dν.
    fn integrate_nu<G: Fn(Complex64) -> f64>(&self, region: &Region, g: G) -> Result<f64> {
        if self.spec.u.is_zero() {
            return Ok(0.0);
        }
        match &self.cloud {
            Some(cloud) => {
                let mut s = 0.0;
                cloud.for_each_in(region, |w, m| s += g(w) * m);
                Ok(s)
            }
            None => {
                let q = self.spec.q;
                let u = &self.spec.u;
                integrate_region(&self.spec.mu, region, |z| g(z) * u.eval(z).norm().powf(q))
            }
        }
    }

    /// M_ω(ν)(z): sup of ν(S(a))/ω(S(a)) over grid boxes containing z.
    pub fn maximal(&self, z: Complex64) -> f64 {
        self.box_ratios
            .iter()
            .filter(|(a, _)| Region::carleson_box(*a).contains(z))
            .map(|r| r.1)
            .fold(0.0, f64::max)
    }

    /// Q(z) = ∫_{Γ(z)} dν(ξ)/ω(T(ξ)).
    pub fn q_value(&self, z: Complex64) -> Result<f64> {
        let profile = &self.spec.profile;
        self.integrate_nu(&Region::Stolz { vertex: z }, |xi| 1.0 / profile.tent_mass_gap(1.0 - xi.norm()))
    }

    /// Experimental: Φ_r(z) = ∫_{Γ(z)} ν(Δ(ξ, r))/ω(T(ξ)) dA(ξ)/(1 - |ξ|)².
    pub fn phi_r(&self, z: Complex64, r: f64) -> Result<f64> {
        let profile = &self.spec.profile;
        let mut err = None;
        let v = integrate_region(&Measure::area(), &Region::Stolz { vertex: z }, |xi| {
            let nu = match self.nu_of(&Region::PseudoDisk { center: xi, radius: r }) {
                Ok(v) => v,
                Err(e) => {
                    err.get_or_insert(e);
                    0.0
                }
            };
            nu / profile.tent_mass_gap(1.0 - xi.norm()) / (1.0 - xi.norm()).powi(2)
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(v),
        }
    }

    /// ‖M_ω(ν)‖_{L_ω^{p/(p-q)}}.
    pub fn maximal_norm(&self, rule: &OuterRule) -> Result<MixedNorm> {
        let s = mixed_exponent(self.spec.p, self.spec.q)?;
        let values: Vec<f64> = rule.nodes.iter().map(|&(z, _)| self.maximal(z)).collect();
        Ok(MixedNorm::from_values(rule, &values, s))
    }

    /// ‖Q‖_{L_ω^{p/(p-q)}}.
    pub fn q_norm(&self, rule: &OuterRule) -> Result<MixedNorm> {
        let s = mixed_exponent(self.spec.p, self.spec.q)?;
        let values = rule.nodes.iter().map(|&(z, _)| self.q_value(z)).collect::<Result<Vec<f64>>>()?;
        Ok(MixedNorm::from_values(rule, &values, s))
    }

    /// ‖Φ_r‖_{L_ω^{p/(p-q)}}, experimental.
    pub fn phi_r_norm(&self, rule: &OuterRule, r: f64) -> Result<MixedNorm> {
        let s = mixed_exponent(self.spec.p, self.spec.q)?;
        let values = rule.nodes.iter().map(|&(z, _)| self.phi_r(z, r)).collect::<Result<Vec<f64>>>()?;
        Ok(MixedNorm::from_values(rule, &values, s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::AnalyticMap;
    use crate::weights::WeightProfile;
    use std::sync::Arc;

    fn spec(u: &str, phi: &str, mu: Option<Measure>, p: f64, q: f64) -> OperatorSpec {
        let prof = Arc::new(WeightProfile::parse("std:alpha=1").unwrap());
        let mu = mu.unwrap_or_else(|| Measure::weighted(prof.clone()));
        OperatorSpec::new(AnalyticMap::parse(u).unwrap(), AnalyticMap::parse(phi).unwrap(), mu, prof, p, q, None).unwrap()
    }

    #[test]
    fn weight_measure_has_unit_maximal_function() {
        let s = spec("one", "id", None, 4.0, 2.0);
        let grid = AGrid::coarse(6);
        let pm = PushforwardMaximal::new(&s, &grid, &DiskQuadrature::with_levels(6)).unwrap();
        for z in [Complex64::new(0.1, 0.0), Complex64::from_polar(0.9, 2.0), Complex64::from_polar(0.99, -1.0)] {
            assert!((pm.maximal(z) - 1.0).abs() < 1e-9, "{z}");
        }
    }

    #[test]
    fn zero_multiplier_gives_zero_functionals() {
        let s = spec("zero", "poly:0,0,1", None, 4.0, 2.0);
        let grid = AGrid::coarse(4);
        let pm = PushforwardMaximal::new(&s, &grid, &DiskQuadrature::with_levels(4)).unwrap();
        let z = Complex64::from_polar(0.8, 0.5);
        assert_eq!(pm.maximal(z), 0.0);
        assert_eq!(pm.q_value(z).unwrap(), 0.0);
    }

    #[test]
    fn q_on_identity_matches_cloud_route() {
        // the region-aligned and mapped-cloud routes must agree for φ = id
        let s = spec("poly:1,0.5", "id", None, 4.0, 2.0);
        let grid = AGrid::coarse(3);
        let quad = DiskQuadrature { levels: 10, angular_base: 256, ..DiskQuadrature::default() };
        let direct = PushforwardMaximal::new(&s, &grid, &quad).unwrap();
        let cloud = PushforwardMaximal { cloud: Some(PushforwardCloud::build(&s.pushforward(), &quad).unwrap()), ..PushforwardMaximal::new(&s, &grid, &quad).unwrap() };
        for z in [Complex64::from_polar(0.5, 0.3), Complex64::from_polar(0.9, -2.0)] {
            let (a, b) = (direct.q_value(z).unwrap(), cloud.q_value(z).unwrap());
            assert!((a / b - 1.0).abs() < 0.05, "{z}: {a} vs {b}");
        }
    }
}
