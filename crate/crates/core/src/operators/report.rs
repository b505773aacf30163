use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::grid::AGrid;

/// Sup of one grid level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelRecord {
    pub level: u32,
    pub radius: f64,
    pub value: f64,
    pub witness: Complex64,
}

/// Result of a grid scan: the sup, where it was attained and per-level sups.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionalReport {
    pub kind: String,
    pub value: f64,
    pub witness: Complex64,
    pub levels: Vec<LevelRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl FunctionalReport {
    /// Builds a report whose value is the max over `levels`.
    pub fn from_levels(kind: &str, levels: Vec<LevelRecord>) -> Self {
        let best = levels
            .iter()
            .copied()
            .fold(None::<LevelRecord>, |acc, l| match acc {
                Some(b) if b.value >= l.value => Some(b),
                _ => Some(l),
            });
        let (value, witness) = best.map_or((0.0, Complex64::new(0.0, 0.0)), |b| (b.value, b.witness));
        Self { kind: kind.into(), value, witness, levels, flag: None, wall_time_ms: None }
    }

    pub fn level_values(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.value).collect()
    }

    /// Max over the last `n` levels, the limsup estimate.
    pub fn tail(&self, n: usize) -> f64 {
        let k = self.levels.len().saturating_sub(n);
        self.levels[k..].iter().map(|l| l.value).fold(0.0, f64::max)
    }
}

/// Evaluates `f` on every grid point and records the per-level sup.
pub fn scan_grid<F>(kind: &str, grid: &AGrid, first_level: u32, mut f: F) -> Result<FunctionalReport>
where
    F: FnMut(Complex64) -> Result<f64>,
{
    let mut levels = Vec::new();
    for j in first_level..=grid.levels {
        let mut rec = LevelRecord { level: j, radius: AGrid::radius(j), value: 0.0, witness: Complex64::new(0.0, 0.0) };
        let mut first = true;
        for a in grid.level_points(j) {
            let v = f(a)?;
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("{kind} at a = {a}")));
            }
            if first || v > rec.value {
                rec.value = v;
                rec.witness = a;
                first = false;
            }
        }
        levels.push(rec);
    }
    Ok(FunctionalReport::from_levels(kind, levels))
}

/// True when each of the last three steps of `seq` grows by at least `factor`.
pub fn grows_geometrically(seq: &[f64], factor: f64) -> bool {
    let n = seq.len();
    n >= 4 && (n - 3..n).all(|i| seq[i] >= factor * seq[i - 1] && seq[i] > 0.0)
}
