//! One-dimensional Gauss rules.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the `n`-point rule by Newton iteration on the three-term recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = (n + 1) / 2;
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_and_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Shared cached rule.
    pub fn cached(n: usize) -> Arc<GaussLegendre> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("gauss cache poisoned");
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(GaussLegendre::new(n)))
            .clone()
    }

    /// Nodes and weights mapped to [a, b].
    pub fn on(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.on(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// 15-point Gauss-Kronrod estimate on [a, b]: (kronrod value, |kronrod - gauss|).
pub fn gauss_kronrod_15<F: FnMut(f64) -> f64>(a: f64, b: f64, f: &mut F) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(mid - dx) + f(mid + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * half, ((k - g) * half).abs())
}

/// Globally adaptive Gauss-Kronrod over a set of initial breakpoints.
///
/// Splits the interval with the largest error estimate until the summed error
/// falls below `max(abs_tol, rel_tol * |value|)` or `max_intervals` is reached.
pub fn adaptive_gk<F: FnMut(f64) -> f64>(
    breaks: &[f64],
    f: &mut F,
    rel_tol: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> (f64, f64) {
    let mut pieces: Vec<(f64, f64, f64, f64)> = Vec::with_capacity(breaks.len() * 2);
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let (v, e) = gauss_kronrod_15(w[0], w[1], f);
            pieces.push((w[0], w[1], v, e));
        }
    }
    loop {
        let value: f64 = pieces.iter().map(|p| p.2).sum();
        let err: f64 = pieces.iter().map(|p| p.3).sum();
        if err <= abs_tol.max(rel_tol * value.abs()) || pieces.len() >= max_intervals {
            return (value, err);
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, p)| if p.3 > acc.1 { (i, p.3) } else { acc });
        let (a, b, _, _) = pieces[idx];
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            return (value, err);
        }
        let (v1, e1) = gauss_kronrod_15(a, m, f);
        let (v2, e2) = gauss_kronrod_15(m, b, f);
        pieces[idx] = (a, m, v1, e1);
        pieces.push((m, b, v2, e2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(8);
        // degree 15 is the exactness limit for 8 nodes
        let v = rule.integrate(0.0, 1.0, |x| x.powi(15));
        assert!((v - 1.0 / 16.0).abs() < 1e-15);
        let s: f64 = rule.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn odd_rules_include_origin() {
        let rule = GaussLegendre::new(7);
        assert_eq!(rule.nodes[3], 0.0);
        assert!(rule.weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn kronrod_on_exponential() {
        let (v, e) = gauss_kronrod_15(0.0, 1.0, &mut |x: f64| x.exp());
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-14);
        assert!(e < 1e-10);
    }

    #[test]
    fn adaptive_handles_kink() {
        let (v, _) = adaptive_gk(&[-1.0, 1.0], &mut |x: f64| x.abs().sqrt(), 1e-10, 0.0, 500);
        assert!((v - 4.0 / 3.0).abs() < 1e-8);
    }
}
