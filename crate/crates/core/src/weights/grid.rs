use serde::Serialize;

/// Dyadic analysis grid: gaps `t = 2^{-j}(2 - k/s)` for levels `j = 1..=levels`
/// and `k = 1..=s`, so level `j` fills the radii between `1 - 2^{1-j}` and
/// `1 - 2^{-j}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalysisGrid {
    pub levels: u32,
    pub subpoints: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub level: u32,
    /// 1 - r
    pub gap: f64,
}

impl GridPoint {
    pub fn radius(&self) -> f64 {
        1.0 - self.gap
    }
}

impl Default for AnalysisGrid {
    fn default() -> Self {
        Self { levels: 12, subpoints: 8 }
    }
}

impl AnalysisGrid {
    pub fn new(levels: u32, subpoints: u32) -> Self {
        Self { levels: levels.max(1), subpoints: subpoints.max(1) }
    }

    /// Points ordered by increasing radius.
    pub fn points(&self) -> Vec<GridPoint> {
        let s = self.subpoints as f64;
        (1..=self.levels)
            .flat_map(|j| {
                (1..=self.subpoints).map(move |k| GridPoint {
                    level: j,
                    gap: 0.5f64.powi(j as i32) * (2.0 - k as f64 / s),
                })
            })
            .collect()
    }

    pub fn level_points(&self, level: u32) -> Vec<GridPoint> {
        self.points().into_iter().filter(|p| p.level == level).collect()
    }

    /// Smallest gap on the grid, `2^{-levels}`.
    pub fn min_gap(&self) -> f64 {
        0.5f64.powi(self.levels as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_reaches_last_level_and_is_increasing() {
        let g = AnalysisGrid::default();
        let pts = g.points();
        assert_eq!(pts.len(), 96);
        assert_eq!(pts.last().unwrap().gap, 2f64.powi(-12));
        assert!(pts.windows(2).all(|w| w[1].radius() > w[0].radius()));
        assert!(pts.iter().all(|p| p.gap > 0.0 && p.gap < 1.0));
    }
}
