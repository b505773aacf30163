use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const SELF_MAP_SAMPLES: usize = 4096;
const SELF_MAP_TOL: f64 = 1e-12;

/// Holomorphic functions on the disk used as symbols φ and multipliers u.
#[derive(Clone, PartialEq)]
pub enum AnalyticMap {
    /// e^{iθ} z^m Π (|a_k|/a_k)(a_k - z)/(1 - ā_k z)
    Blaschke { m: u32, zeros: Vec<Complex64>, rotation: f64 },
    /// Σ c_k z^k
    Polynomial(Vec<Complex64>),
    /// c0 + c1 z
    Affine(Complex64, Complex64),
    /// (1/(1 - w̄z))^α, principal branch
    ReciprocalPower { w: Complex64, alpha: f64 },
    /// maps applied in list order: list[n-1] ∘ ... ∘ list[0]
    Composition(Vec<AnalyticMap>),
}

impl fmt::Debug for AnalyticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

impl Serialize for AnalyticMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.spec())
    }
}

/// Summary counts of a finite Blaschke product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlaschkeData {
    pub m: u32,
    pub n: u32,
    /// max |a_k|
    pub c: f64,
    /// min |a_k|
    pub d: f64,
}

/// m + 2n(1 + d)/(1 - d), a bound for (1 - |φ(z)|²)/(1 - |z|²) when c < |z| < 1.
pub fn blaschke_bound(data: &BlaschkeData) -> f64 {
    data.m as f64 + 2.0 * data.n as f64 * (1.0 + data.d) / (1.0 - data.d)
}

impl AnalyticMap {
    pub fn identity() -> Self {
        AnalyticMap::Polynomial(vec![ZERO, ONE])
    }

    pub fn constant(c: Complex64) -> Self {
        AnalyticMap::Polynomial(vec![c])
    }

    pub fn polynomial(coeffs: Vec<Complex64>) -> Self {
        AnalyticMap::Polynomial(coeffs)
    }

    /// Finite Blaschke product; zeros at the origin are folded into `m`.
    pub fn blaschke(m: u32, zeros: Vec<Complex64>, rotation: f64) -> Result<Self> {
        let mut m = m;
        let mut kept = Vec::new();
        for a in zeros {
            if !(a.norm() < 1.0) {
                return Err(Error::InvalidMap(format!("Blaschke zero {a} is not inside the disk")));
            }
            if a.norm() == 0.0 {
                m += 1;
            } else {
                kept.push(a);
            }
        }
        Ok(AnalyticMap::Blaschke { m, zeros: kept, rotation })
    }

    pub fn reciprocal_power(w: Complex64, alpha: f64) -> Result<Self> {
        if !(w.norm() < 1.0) || !(alpha > 0.0) {
            return Err(Error::InvalidMap(format!("reciprocal power needs |w| < 1 and alpha > 0, got {w}, {alpha}")));
        }
        Ok(AnalyticMap::ReciprocalPower { w, alpha })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            AnalyticMap::Blaschke { m, zeros, rotation } => {
                let mut v = Complex64::from_polar(1.0, *rotation) * z.powu(*m);
                for &a in zeros {
                    v *= (a.norm() / a) * (a - z) / (ONE - a.conj() * z);
                }
                v
            }
            AnalyticMap::Polynomial(c) => c.iter().rev().fold(ZERO, |acc, &ck| acc * z + ck),
            AnalyticMap::Affine(c0, c1) => c0 + c1 * z,
            AnalyticMap::ReciprocalPower { w, alpha } => (ONE - w.conj() * z).powf(-alpha),
            AnalyticMap::Composition(list) => list.iter().fold(z, |acc, f| f.eval(acc)),
        }
    }

    /// Taylor coefficients when the map is a polynomial.
    pub fn polynomial_coefficients(&self) -> Option<Vec<Complex64>> {
        match self {
            AnalyticMap::Polynomial(c) => {
                let mut c = c.clone();
                while c.len() > 1 && c.last() == Some(&ZERO) {
                    c.pop();
                }
                if c.is_empty() {
                    c.push(ZERO);
                }
                Some(c)
            }
            AnalyticMap::Affine(c0, c1) => {
                AnalyticMap::Polynomial(vec![*c0, *c1]).polynomial_coefficients()
            }
            AnalyticMap::Blaschke { m, zeros, rotation } if zeros.is_empty() => {
                let mut c = vec![ZERO; *m as usize + 1];
                c[*m as usize] = Complex64::from_polar(1.0, *rotation);
                Some(c)
            }
            AnalyticMap::Composition(list) => {
                let mut acc = vec![ZERO, ONE];
                for f in list {
                    let fc = f.polynomial_coefficients()?;
                    acc = poly_compose(&fc, &acc);
                }
                Some(acc)
            }
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.polynomial_coefficients().map(|c| c.len() - 1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.polynomial_coefficients(), Some(c) if c.iter().all(|x| *x == ZERO))
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.polynomial_coefficients(), Some(c) if c.len() == 2 && c[0] == ZERO && c[1] == ONE)
    }

    pub fn blaschke_data(&self) -> Option<BlaschkeData> {
        match self {
            AnalyticMap::Blaschke { m, zeros, .. } => {
                let mods: Vec<f64> = zeros.iter().map(|a| a.norm()).collect();
                let c = mods.iter().copied().fold(0.0, f64::max);
                let d = if mods.is_empty() { 0.0 } else { mods.iter().copied().fold(1.0, f64::min) };
                Some(BlaschkeData { m: *m, n: zeros.len() as u32, c, d })
            }
            AnalyticMap::Polynomial(_) | AnalyticMap::Affine(..) => {
                let c = self.polynomial_coefficients()?;
                let k = c.len() - 1;
                let mono = c[..k].iter().all(|x| *x == ZERO) && (c[k].norm() - 1.0).abs() < 1e-15 && k > 0;
                mono.then_some(BlaschkeData { m: k as u32, n: 0, c: 0.0, d: 0.0 })
            }
            _ => None,
        }
    }

    /// Sampled sup of |φ| on the unit circle.
    pub fn boundary_sup(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|k| self.eval(Complex64::from_polar(1.0, 2.0 * PI * k as f64 / samples as f64)).norm())
            .fold(0.0, f64::max)
    }

    /// Rejects maps that do not send the disk into itself, judged on a
    /// boundary sample for polynomial maps and exactly for the others.
    pub fn validate_self_map(&self) -> Result<()> {
        match self {
            AnalyticMap::Blaschke { .. } => Ok(()),
            AnalyticMap::ReciprocalPower { .. } => {
                Err(Error::InvalidMap("reciprocal powers are multipliers, not self-maps".into()))
            }
            AnalyticMap::Composition(list) => list.iter().try_for_each(|f| f.validate_self_map()),
            _ => {
                let sup = self.boundary_sup(SELF_MAP_SAMPLES);
                if sup > 1.0 + SELF_MAP_TOL {
                    Err(Error::InvalidMap(format!(
                        "{} does not map the disk into itself (boundary sup {sup:.6})",
                        self.spec()
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Multiplies the map by a complex constant.
    pub fn scaled(&self, c: Complex64) -> Self {
        match self.polynomial_coefficients() {
            Some(coeffs) => AnalyticMap::Polynomial(coeffs.into_iter().map(|x| x * c).collect()),
            None => AnalyticMap::Composition(vec![self.clone(), AnalyticMap::Polynomial(vec![ZERO, c])]),
        }
    }

    pub fn spec(&self) -> String {
        match self {
            AnalyticMap::Blaschke { m, zeros, rotation } => {
                let zs: Vec<String> = zeros.iter().map(|z| fmt_complex(*z)).collect();
                let mut s = format!("blaschke:m={m};zeros={}", zs.join(","));
                if *rotation != 0.0 {
                    s.push_str(&format!(";rot={rotation}"));
                }
                s
            }
            AnalyticMap::Polynomial(c) => {
                let cs: Vec<String> = c.iter().map(|z| fmt_complex(*z)).collect();
                format!("poly:{}", cs.join(","))
            }
            AnalyticMap::Affine(c0, c1) => format!("affine:{},{}", fmt_complex(*c0), fmt_complex(*c1)),
            AnalyticMap::ReciprocalPower { w, alpha } => format!("recip:w={};alpha={alpha}", fmt_complex(*w)),
            AnalyticMap::Composition(list) => {
                let parts: Vec<String> = list.iter().map(|f| f.spec()).collect();
                format!("compose:{}", parts.join("|"))
            }
        }
    }

    /// Parses `blaschke:m=1;zeros=0.5,0.3+0.2i`, `poly:0.5,0.5`,
    /// `affine:c0,c1`, `recip:w=0.9;alpha=2`, `id`, `zero`, `const:c` or
    /// `compose:<spec>|<spec>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        match kind {
            "id" => Ok(Self::identity()),
            "zero" => Ok(Self::constant(ZERO)),
            "one" => Ok(Self::constant(ONE)),
            "const" => Ok(Self::constant(parse_complex(rest)?)),
            "poly" => Ok(AnalyticMap::Polynomial(parse_complex_list(rest)?)),
            "affine" => {
                let c = parse_complex_list(rest)?;
                if c.len() != 2 {
                    return Err(Error::Spec(format!("affine map needs two coefficients, got '{rest}'")));
                }
                Ok(AnalyticMap::Affine(c[0], c[1]))
            }
            "blaschke" => {
                let mut m = 0;
                let mut zeros = Vec::new();
                let mut rot = 0.0;
                for part in rest.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                    let (k, v) = part
                        .split_once('=')
                        .ok_or_else(|| Error::Spec(format!("expected key=value in '{part}'")))?;
                    match k.trim() {
                        "m" => m = v.trim().parse().map_err(|_| Error::Spec(format!("bad m '{v}'")))?,
                        "zeros" => zeros = parse_complex_list(v)?,
                        "rot" => rot = v.trim().parse().map_err(|_| Error::Spec(format!("bad rot '{v}'")))?,
                        other => return Err(Error::Spec(format!("unknown Blaschke parameter '{other}'"))),
                    }
                }
                Self::blaschke(m, zeros, rot)
            }
            "recip" => {
                let mut w = None;
                let mut alpha = None;
                for part in rest.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                    let (k, v) = part
                        .split_once('=')
                        .ok_or_else(|| Error::Spec(format!("expected key=value in '{part}'")))?;
                    match k.trim() {
                        "w" => w = Some(parse_complex(v)?),
                        "alpha" => {
                            alpha = Some(v.trim().parse::<f64>().map_err(|_| Error::Spec(format!("bad alpha '{v}'")))?)
                        }
                        other => return Err(Error::Spec(format!("unknown parameter '{other}'"))),
                    }
                }
                match (w, alpha) {
                    (Some(w), Some(a)) => Self::reciprocal_power(w, a),
                    _ => Err(Error::Spec(format!("recip needs w and alpha: '{spec}'"))),
                }
            }
            "compose" => {
                let list = rest.split('|').map(Self::parse).collect::<Result<Vec<_>>>()?;
                Ok(AnalyticMap::Composition(list))
            }
            other => Err(Error::Spec(format!("unknown map kind '{other}'"))),
        }
    }
}

/// Sampled min of |φ| on each circle |z| = r, 4096 angles per radius.
pub fn boundary_modulus_profile(phi: &AnalyticMap, radii: &[f64]) -> Vec<f64> {
    const ANGLES: usize = 4096;
    radii
        .iter()
        .map(|&r| {
            (0..ANGLES)
                .map(|k| phi.eval(Complex64::from_polar(r, 2.0 * PI * k as f64 / ANGLES as f64)).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// Coefficients of f(g(z)).
pub fn poly_compose(f: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    let mut acc = vec![ZERO];
    for &c in f.iter().rev() {
        acc = poly_mul(&acc, g);
        acc[0] += c;
    }
    while acc.len() > 1 && acc.last() == Some(&ZERO) {
        acc.pop();
    }
    acc
}

pub fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == ZERO {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn parse_complex_list(s: &str) -> Result<Vec<Complex64>> {
    let out: Vec<Complex64> =
        s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(parse_complex).collect::<Result<_>>()?;
    if out.is_empty() && !s.trim().is_empty() {
        return Err(Error::Spec(format!("empty coefficient list '{s}'")));
    }
    Ok(out)
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || Error::Spec(format!("cannot parse complex number '{s}'"));
    if s.is_empty() {
        return Err(err());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| err());
    };
    // split at the last sign that is not part of an exponent or leading
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    let parse_im = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| err()),
        }
    };
    match split {
        Some(i) => {
            let re = body[..i].parse::<f64>().map_err(|_| err())?;
            Ok(Complex64::new(re, parse_im(&body[i..])?))
        }
        None => Ok(Complex64::new(0.0, parse_im(body)?)),
    }
}
