//! Test-function functionals of u C_φ over grids of centres a.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Region;
use crate::operators::grid::{AGrid, OuterRule};
use crate::operators::report::{grows_geometrically, scan_grid, FunctionalReport};
use crate::operators::spec::OperatorSpec;
use crate::quadrature::{measure_of_region, DiskQuadrature, Measure, PeakIntegrator, PushforwardCloud};
use crate::spaces::TestFunction;
use crate::weights::WeightProfile;

/// Growth factor over three successive levels that flags divergence.
pub const DIVERGENCE_FACTOR: f64 = 2.0;
/// Levels in the limsup window.
pub const LIMSUP_LEVELS: usize = 3;

/// Which power of |F_a ∘ φ| enters Ψ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PsiMode {
    /// |F_a(φ)|^p |u|^q
    #[default]
    AsPrinted,
    /// |F_a(φ)|^q |u|^q
    SwitchedExponent,
}

/// ∫_D |F_{a,p,γ}(φ(z))|^power |u(z)|^q dμ(z).
pub fn test_function_integral(spec: &OperatorSpec, a: Complex64, power: f64, integ: &PeakIntegrator) -> Result<f64> {
    if spec.u.is_zero() || spec.mu.is_zero() {
        return Ok(0.0);
    }
    let tf = TestFunction::new(&spec.profile, a, spec.p, Some(spec.gamma))?;
    let q = spec.q;
    let g = |z: Complex64| {
        let m = spec.u.eval(z).norm();
        if m == 0.0 {
            return 0.0;
        }
        tf.abs_pow(spec.phi.eval(z), power) * m.powf(q)
    };
    integ.integrate(&spec.mu, tf.peak_depth(), g, |z| tf.peak_distance(spec.phi.eval(z)))
}

/// sup_a μ(S(a)) / ω(S(a))^{q/p}.
pub fn carleson_constant(mu: &Measure, profile: &WeightProfile, p: f64, q: f64, grid: &AGrid) -> Result<FunctionalReport> {
    scan_grid("carleson", grid, 0, |a| {
        let m = measure_of_region(mu, &Region::carleson_box(a))?;
        Ok(m / profile.box_mass(a.norm()).powf(q / p))
    })
}

/// sup_a ∫_D |F_{a,p,γ}(φ)|^q |u|^q dμ; flagged when level sups keep doubling.
pub fn boundedness_functional(spec: &OperatorSpec, grid: &AGrid, integ: &PeakIntegrator) -> Result<FunctionalReport> {
    let mut report = scan_grid("bounded", grid, 0, |a| test_function_integral(spec, a, spec.q, integ))?;
    if grows_geometrically(&report.level_values(), DIVERGENCE_FACTOR) {
        report.flag = Some("divergent".into());
    }
    Ok(report)
}

/// Tail sup over levels `first..=J`; the value is the max over the last three levels.
pub fn essential_norm_functional(spec: &OperatorSpec, grid: &AGrid, first: u32, integ: &PeakIntegrator) -> Result<FunctionalReport> {
    let mut report = scan_grid("essnorm", grid, first.min(grid.levels), |a| test_function_integral(spec, a, spec.q, integ))?;
    let k = report.levels.len().saturating_sub(LIMSUP_LEVELS);
    if let Some(best) = report.levels[k..].iter().copied().reduce(|x, y| if y.value > x.value { y } else { x }) {
        report.value = best.value;
        report.witness = best.witness;
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RestrictedReport {
    pub r: f64,
    /// sup over |a| > r of ν(S(a))/ω(S(a))^{q/p}
    pub n_r_star: f64,
    /// sup over all a of ν_r(S(a))/ω(S(a))^{q/p}, ν_r = ν restricted to |w| ≥ r
    pub restricted_sup: f64,
    pub witness: Complex64,
}

impl RestrictedReport {
    pub fn ratio(&self) -> f64 {
        if self.restricted_sup == 0.0 {
            0.0
        } else {
            self.restricted_sup / self.n_r_star
        }
    }
}

/// Carleson constants of the pushforward ν and of its restriction to D \ rD.
pub fn restricted_constant(spec: &OperatorSpec, r: f64, grid: &AGrid, quad: &DiskQuadrature) -> Result<RestrictedReport> {
    if !(r > 0.5 && r < 1.0) {
        return Err(Error::InvalidArgument(format!("restriction radius {r} must lie in (1/2, 1)")));
    }
    let cloud = PushforwardCloud::build(&spec.pushforward(), quad)?;
    let mut out = RestrictedReport { r, n_r_star: 0.0, restricted_sup: 0.0, witness: Complex64::new(0.0, 0.0) };
    for (_, a) in grid.points() {
        let region = Region::carleson_box(a);
        let (mut full, mut outer) = (0.0, 0.0);
        cloud.for_each_in(&region, |w, m| {
            full += m;
            if w.norm() >= r {
                outer += m;
            }
        });
        let scale = spec.profile.box_mass(a.norm()).powf(spec.q / spec.p);
        if a.norm() > r {
            out.n_r_star = out.n_r_star.max(full / scale);
        }
        if outer / scale > out.restricted_sup {
            out.restricted_sup = outer / scale;
            out.witness = a;
        }
    }
    Ok(out)
}

/// Ψ(a) = ∫_D |F_{a,p,γ}(φ)|^k |u|^q dμ with k = p as printed or q when switched.
pub fn psi_functional(spec: &OperatorSpec, a: Complex64, mode: PsiMode, integ: &PeakIntegrator) -> Result<f64> {
    let power = match mode {
        PsiMode::AsPrinted => spec.p,
        PsiMode::SwitchedExponent => spec.q,
    };
    test_function_integral(spec, a, power, integ)
}

/// An L_ω^s norm computed on an outer rule, with per-cell contributions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixedNorm {
    pub value: f64,
    pub exponent: f64,
    pub cells: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

impl MixedNorm {
    pub fn from_values(rule: &OuterRule, values: &[f64], s: f64) -> Self {
        let cells = rule.cell_sums(values, s);
        let flag = grows_geometrically(&cells, DIVERGENCE_FACTOR).then(|| "divergent".to_string());
        Self { value: rule.lebesgue_norm(values, s), exponent: s, cells, flag }
    }
}

/// p/(p - q) for q < p.
pub fn mixed_exponent(p: f64, q: f64) -> Result<f64> {
    if !(q < p) {
        return Err(Error::InvalidArgument(format!("mixed norms need q < p (p = {p}, q = {q})")));
    }
    Ok(p / (p - q))
}

/// ‖Ψ‖_{L_ω^{p/(p-q)}}.
pub fn psi_mixed_norm(spec: &OperatorSpec, mode: PsiMode, rule: &OuterRule, integ: &PeakIntegrator) -> Result<MixedNorm> {
    let s = mixed_exponent(spec.p, spec.q)?;
    let values = rule
        .nodes
        .iter()
        .map(|&(a, _)| psi_functional(spec, a, mode, integ))
        .collect::<Result<Vec<f64>>>()?;
    Ok(MixedNorm::from_values(rule, &values, s))
}
