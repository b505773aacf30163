use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::parse_complex;
use crate::weights::WeightProfile;

/// Radial factor of an absolutely continuous measure.
#[derive(Debug, Clone)]
pub enum Radial {
    /// normalized area dA
    Area,
    /// ω dA
    Weighted(Arc<WeightProfile>),
}

/// Built-in nonnegative densities multiplying the radial part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modulation {
    /// 1 + Re z
    OnePlusRe,
    /// |z|²
    AbsSquared,
    /// 1 - |z|²
    Rim,
}

impl Modulation {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "one-plus-re" => Ok(Self::OnePlusRe),
            "abs-squared" => Ok(Self::AbsSquared),
            "rim" => Ok(Self::Rim),
            other => Err(Error::Spec(format!("unknown density '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::OnePlusRe => "one-plus-re",
            Self::AbsSquared => "abs-squared",
            Self::Rim => "rim",
        }
    }

    #[inline]
    pub fn eval(&self, z: Complex64) -> f64 {
        match self {
            Self::OnePlusRe => 1.0 + z.re,
            Self::AbsSquared => z.norm_sqr(),
            Self::Rim => 1.0 - z.norm_sqr(),
        }
    }
}

/// Positive Borel measure: `g(z) ρ(|z|) dA(z)` plus finitely many atoms.
#[derive(Debug, Clone)]
pub struct Measure {
    radial: Option<Radial>,
    modulation: Option<Modulation>,
    atoms: Vec<(Complex64, f64)>,
    spec: String,
}

impl Serialize for Measure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.spec)
    }
}

impl Measure {
    pub fn area() -> Self {
        Self { radial: Some(Radial::Area), modulation: None, atoms: Vec::new(), spec: "area".into() }
    }

    pub fn weighted(profile: Arc<WeightProfile>) -> Self {
        let spec = format!("warea:{}", profile.weight().spec());
        Self { radial: Some(Radial::Weighted(profile)), modulation: None, atoms: Vec::new(), spec }
    }

    pub fn zero() -> Self {
        Self { radial: None, modulation: None, atoms: Vec::new(), spec: "zero".into() }
    }

    pub fn atoms(atoms: Vec<(Complex64, f64)>) -> Result<Self> {
        for &(z, m) in &atoms {
            if !(z.norm() < 1.0) || !(m >= 0.0) || !m.is_finite() {
                return Err(Error::Spec(format!("invalid atom ({z}, {m})")));
            }
        }
        let spec = format!("atoms:{}", atoms.len());
        Ok(Self { radial: None, modulation: None, atoms, spec })
    }

    pub fn modulated(modulation: Modulation) -> Self {
        Self {
            radial: Some(Radial::Area),
            modulation: Some(modulation),
            atoms: Vec::new(),
            spec: format!("density:{}", modulation.name()),
        }
    }

    pub fn with_atoms(mut self, atoms: Vec<(Complex64, f64)>) -> Result<Self> {
        let extra = Measure::atoms(atoms)?;
        self.atoms.extend(extra.atoms);
        self.spec = format!("{}+atoms", self.spec);
        Ok(self)
    }

    /// Parses `area`, `zero`, `warea:<weight spec>`, `density:<name>` or
    /// `atoms:<csv path>` (rows `re,im,mass`).
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        match kind {
            "area" => Ok(Self::area()),
            "zero" => Ok(Self::zero()),
            "warea" => Ok(Self::weighted(Arc::new(WeightProfile::parse(rest)?))),
            "density" => Ok(Self::modulated(Modulation::parse(rest)?)),
            "atoms" => {
                let mut m = Self::atoms(read_atoms(Path::new(rest))?)?;
                m.spec = spec.to_string();
                Ok(m)
            }
            other => Err(Error::Spec(format!("unknown measure kind '{other}'"))),
        }
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn radial(&self) -> Option<&Radial> {
        self.radial.as_ref()
    }

    pub fn modulation(&self) -> Option<Modulation> {
        self.modulation
    }

    pub fn atom_list(&self) -> &[(Complex64, f64)] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.radial.is_none() && self.atoms.iter().all(|a| a.1 == 0.0)
    }

    /// Rotation-invariant absolutely continuous part without atoms.
    pub fn is_radial(&self) -> bool {
        self.modulation.is_none() && self.atoms.is_empty()
    }

    /// ρ(r)(1 - r) at r = 1 - e^{-x}, the radial density per unit x.
    #[inline]
    pub fn gap_factor(&self, x: f64) -> f64 {
        match &self.radial {
            None => 0.0,
            Some(Radial::Area) => (-x).exp(),
            Some(Radial::Weighted(p)) => p.weight().gap_density(x),
        }
    }

    #[inline]
    pub fn modulation_at(&self, z: Complex64) -> f64 {
        self.modulation.map_or(1.0, |m| m.eval(z))
    }

    /// Density with respect to dA.
    pub fn density(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let rho = match &self.radial {
            None => return 0.0,
            Some(Radial::Area) => 1.0,
            Some(Radial::Weighted(p)) => p.density(r),
        };
        rho * self.modulation_at(z)
    }

    /// 2 ∫_r^1 s ρ(s) ds for the radial part, with r = 1 - gap.
    pub fn radial_tail(&self, gap: f64) -> f64 {
        match &self.radial {
            None => 0.0,
            Some(Radial::Area) => {
                let r = 1.0 - gap;
                gap * (1.0 + r)
            }
            Some(Radial::Weighted(p)) => 2.0 * p.w_integral_gap(gap),
        }
    }

    /// Exact mass of the Carleson box over an arc of angular width `width`
    /// for a rotation-invariant measure.
    pub fn radial_sector_mass(&self, gap: f64, width: f64) -> f64 {
        self.radial_tail(gap) * width / (2.0 * std::f64::consts::PI)
    }
}

fn read_atoms(path: &Path) -> Result<Vec<(Complex64, f64)>> {
    let text = std::fs::read_to_string(path)?;
    let mut atoms = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed = match parts.as_slice() {
            [re, im, m] => match (re.parse::<f64>(), im.parse::<f64>(), m.parse::<f64>()) {
                (Ok(re), Ok(im), Ok(m)) => Some((Complex64::new(re, im), m)),
                _ => None,
            },
            [z, m] => match (parse_complex(z), m.parse::<f64>()) {
                (Ok(z), Ok(m)) => Some((z, m)),
                _ => None,
            },
            _ => None,
        };
        match parsed {
            Some(a) => atoms.push(a),
            None if lineno == 0 => continue,
            None => return Err(Error::Spec(format!("atoms line {}: cannot parse '{line}'", lineno + 1))),
        }
    }
    Ok(atoms)
}
