//! Panel quadrature of the radial tail integrals in the variable x = -ln(1 - r).
//!
//! Three tail integrals are tabulated as suffix sums over panels:
//! `∫_r^1 ω`, `∫_r^1 (1 - s) ω` and `∫_r^1 s ln(1/s) ω`. A query at x adds a
//! fresh Gauss rule over the partial panel to the stored suffix.

use crate::error::{Error, Result};
use crate::quadrature::gauss::GaussLegendre;
use crate::weights::family::Weight;

const NODES_PER_PANEL: usize = 20;
const FINE_END: f64 = 40.0;
const FINE_WIDTH: f64 = 0.25;
const COARSE_END: f64 = 1.2e21; // ~2^70

#[derive(Debug, Clone, Copy, Default)]
struct Tails {
    hat: f64,
    rim: f64,
    logs: f64,
}

impl Tails {
    fn add(self, o: Tails) -> Tails {
        Tails { hat: self.hat + o.hat, rim: self.rim + o.rim, logs: self.logs + o.logs }
    }
}

/// One-minus-s and s ln(1/s) for s = 1 - e^{-x}, both accurate for large x.
#[inline]
fn rim_factors(x: f64) -> (f64, f64, f64) {
    let e = (-x).exp();
    let s = -(-x).exp_m1();
    let neg_log_s = -(-e).ln_1p();
    (s, e, s * neg_log_s)
}

#[derive(Debug)]
pub(crate) struct RadialTables {
    edges: Vec<f64>,
    /// suffix[i] = tail integrals over panels i.. plus the far tail.
    suffix: Vec<Tails>,
    /// Quadrature nodes over all panels: (x, w · gap(x)).
    nodes: Vec<(f64, f64)>,
    /// Mass beyond the last edge, attributed to s = 1 when forming moments.
    far_mass: f64,
}

fn panel_edges(weight: &Weight) -> (Vec<f64>, f64) {
    let far = weight.far_tail().map(|(x, _)| x);
    let end = far.unwrap_or(COARSE_END);
    let mut edges = vec![0.0];
    // geometric grading into x = 0 where s ln(1/s) has a log singularity
    for k in (1..=40).rev() {
        edges.push(FINE_WIDTH * 0.5f64.powi(k));
    }
    let mut x = FINE_WIDTH;
    while x <= FINE_END.min(end) + 1e-12 {
        edges.push(x);
        x += FINE_WIDTH;
    }
    let mut width = 2.0 * FINE_WIDTH;
    let mut last = *edges.last().unwrap();
    while last < end {
        last = (last + width).min(end);
        edges.push(last);
        width *= 2.0;
    }
    for k in weight.kinks(end) {
        edges.push(k);
    }
    edges.sort_by(f64::total_cmp);
    edges.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1e-300));
    // long smooth stretches between kinks still need bounded panels
    let mut refined = vec![edges[0]];
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let max_width = if a < FINE_END { 4.0 * FINE_WIDTH } else { f64::INFINITY };
        let pieces = ((b - a) / max_width).ceil().max(1.0) as usize;
        for i in 1..=pieces {
            refined.push(if i == pieces { b } else { a + (b - a) * i as f64 / pieces as f64 });
        }
    }
    (refined, far.map(|_| end).unwrap_or(f64::NAN))
}

fn panel(weight: &Weight, gl: &GaussLegendre, a: f64, b: f64, nodes: Option<&mut Vec<(f64, f64)>>) -> Tails {
    let mut t = Tails::default();
    let mut sink = nodes;
    for (x, w) in gl.on(a, b) {
        let g = weight.gap_density(x);
        let wg = w * g;
        let (_, one_minus_s, slog) = rim_factors(x);
        t.hat += wg;
        t.rim += wg * one_minus_s;
        t.logs += wg * slog;
        if let Some(v) = sink.as_deref_mut() {
            v.push((x, wg));
        }
    }
    t
}

impl RadialTables {
    pub(crate) fn build(weight: &Weight) -> Result<Self> {
        let gl = GaussLegendre::cached(NODES_PER_PANEL);
        let (edges, far_start) = panel_edges(weight);
        let mut nodes = Vec::with_capacity(edges.len() * NODES_PER_PANEL);
        let mut per_panel = Vec::with_capacity(edges.len());
        for w in edges.windows(2) {
            let t = panel(weight, &gl, w[0], w[1], Some(&mut nodes));
            if !t.hat.is_finite() || t.hat < 0.0 {
                return Err(Error::InvalidWeight(format!(
                    "weight '{}' is not finite on x in [{}, {}]",
                    weight.spec(),
                    w[0],
                    w[1]
                )));
            }
            per_panel.push(t);
        }
        let far_mass = match weight.far_tail() {
            Some((_, f)) => f(far_start),
            None => 0.0,
        };
        let far = Tails { hat: far_mass, rim: 0.0, logs: 0.0 };
        let mut suffix = vec![far; edges.len()];
        for i in (0..per_panel.len()).rev() {
            suffix[i] = suffix[i + 1].add(per_panel[i]);
        }
        let total = suffix[0].hat;
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::InvalidWeight(format!("weight '{}' has no finite positive mass", weight.spec())));
        }
        if weight.far_tail().is_none() {
            // mass in the last few doubling panels must be negligible
            let n = per_panel.len();
            let tail: f64 = per_panel[n - 4..].iter().map(|t| t.hat).sum();
            if tail > 1e-10 * total {
                return Err(Error::InvalidWeight(format!(
                    "weight '{}' does not appear integrable near r = 1",
                    weight.spec()
                )));
            }
        }
        Ok(Self { edges, suffix, nodes, far_mass })
    }

    fn locate(&self, x: f64) -> Option<usize> {
        let n = self.edges.len();
        if x >= self.edges[n - 1] {
            return None;
        }
        Some(self.edges.partition_point(|&e| e <= x).saturating_sub(1))
    }

    fn tails_at(&self, weight: &Weight, x: f64) -> Tails {
        let x = x.max(0.0);
        match self.locate(x) {
            None => {
                if let Some((_, f)) = weight.far_tail() {
                    Tails { hat: f(x), rim: 0.0, logs: 0.0 }
                } else {
                    Tails::default()
                }
            }
            Some(i) => {
                let gl = GaussLegendre::cached(NODES_PER_PANEL);
                let part = if x > self.edges[i] {
                    panel(weight, &gl, x, self.edges[i + 1], None)
                } else {
                    Tails::default()
                };
                let rest = if x > self.edges[i] { self.suffix[i + 1] } else { self.suffix[i] };
                part.add(rest)
            }
        }
    }

    /// (∫_r^1 ω, ∫_r^1 (1 - s) ω, ∫_r^1 s ln(1/s) ω) at r = 1 - e^{-x}.
    pub(crate) fn at(&self, weight: &Weight, x: f64) -> (f64, f64, f64) {
        let t = self.tails_at(weight, x);
        (t.hat, t.rim, t.logs)
    }

    /// ∫_0^1 s^n ω(s) ds for n = 0..=max.
    pub(crate) fn moments_upto(&self, max: usize) -> Vec<f64> {
        let mut acc = vec![0.0; max + 1];
        for &(x, wg) in &self.nodes {
            let s = -(-x).exp_m1();
            let mut p = wg;
            for a in acc.iter_mut() {
                *a += p;
                p *= s;
                if p < 1e-300 {
                    break;
                }
            }
        }
        for a in acc.iter_mut() {
            *a += self.far_mass;
        }
        acc
    }
}
