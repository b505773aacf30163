use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::quadrature::gauss::GaussLegendre;
use crate::weights::WeightProfile;

/// Dyadic-radius grid for sups over a ∈ D: level 0 is a = 0, level j ≥ 1 has
/// |a| = 1 - 2^{-j} with min(base 2^j, cap) equally spaced angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AGrid {
    pub levels: u32,
    pub angular_base: usize,
    pub angular_cap: usize,
}

impl Default for AGrid {
    fn default() -> Self {
        Self { levels: 12, angular_base: 64, angular_cap: 4096 }
    }
}

impl AGrid {
    /// A sparse grid for quick scans.
    pub fn coarse(levels: u32) -> Self {
        Self { levels, angular_base: 4, angular_cap: 32 }
    }

    pub fn radius(level: u32) -> f64 {
        1.0 - 0.5f64.powi(level as i32)
    }

    pub fn angular_count(&self, level: u32) -> usize {
        if level == 0 {
            return 1;
        }
        self.angular_base.saturating_mul(1usize << level.min(40)).min(self.angular_cap).max(1)
    }

    pub fn level_points(&self, level: u32) -> Vec<Complex64> {
        if level == 0 {
            return vec![Complex64::new(0.0, 0.0)];
        }
        let r = Self::radius(level);
        let n = self.angular_count(level);
        (0..n).map(|k| Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64)).collect()
    }

    pub fn points(&self) -> Vec<(u32, Complex64)> {
        (0..=self.levels).flat_map(|j| self.level_points(j).into_iter().map(move |a| (j, a))).collect()
    }
}

/// Quadrature nodes for ∫_D g(a) ω(a) dA(a): Gauss nodes per unit cell in
/// x = -ln(1 - |a|) for `levels` cells, trapezoid angles, and the mass beyond
/// the last cell carried by the outermost ring.
#[derive(Debug, Clone)]
pub struct OuterRule {
    pub nodes: Vec<(Complex64, f64)>,
    /// radial cell of each node
    pub cells: Vec<u32>,
    /// index range of the outermost ring inside `nodes`
    pub last_ring: std::ops::Range<usize>,
}

impl OuterRule {
    pub fn weighted(profile: &WeightProfile, levels: u32, radial_order: usize, grid: &AGrid) -> Self {
        let gl = GaussLegendre::cached(radial_order);
        let mut nodes = Vec::new();
        let mut cells = Vec::new();
        let mut last_ring = 0..0;
        for j in 0..levels {
            let n_theta = grid.angular_count(j + 1);
            for (x, w) in gl.on(j as f64 * LN_2, (j + 1) as f64 * LN_2) {
                let r = -(-x).exp_m1();
                let mass = 2.0 * r * w * profile.weight().gap_density(x);
                let start = nodes.len();
                for k in 0..n_theta {
                    let t = 2.0 * PI * (k as f64 + 0.5) / n_theta as f64;
                    nodes.push((Complex64::from_polar(r, t), mass / n_theta as f64));
                    cells.push(j);
                }
                last_ring = start..nodes.len();
            }
        }
        // the remaining mass rides on the last ring: a constant extrapolation
        let rim = 2.0 * profile.w_integral_gap(0.5f64.powi(levels as i32));
        let ring_mass: f64 = nodes[last_ring.clone()].iter().map(|n| n.1).sum();
        if ring_mass > 0.0 {
            let scale = 1.0 + rim / ring_mass;
            for n in &mut nodes[last_ring.clone()] {
                n.1 *= scale;
            }
        }
        Self { nodes, cells, last_ring }
    }

    /// Contribution of each radial cell to ∫ g^s ω dA.
    pub fn cell_sums(&self, values: &[f64], s: f64) -> Vec<f64> {
        let n = self.cells.iter().copied().max().map_or(0, |c| c as usize + 1);
        let mut out = vec![0.0; n];
        for ((node, &c), v) in self.nodes.iter().zip(&self.cells).zip(values) {
            out[c as usize] += v.powf(s) * node.1;
        }
        out
    }

    /// (∫ g^s ω dA)^{1/s}.
    pub fn lebesgue_norm(&self, values: &[f64], s: f64) -> f64 {
        let sum: f64 = self.nodes.iter().zip(values).map(|(n, v)| v.powf(s) * n.1).sum();
        sum.powf(1.0 / s)
    }
}
