use std::io::Write;

use bergman_core::spaces::KernelSeries;
use bergman_core::weights::{AnalysisGrid, Weight, WeightProfile};
use bergman_core::Complex64;
use proptest::prelude::*;

fn unit_profile() -> WeightProfile {
    WeightProfile::classify(Weight::parse("unit").unwrap(), &AnalysisGrid::new(12, 8)).unwrap()
}

#[test]
fn constant_samples_from_file_match_unit_weight() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "r,w").unwrap();
    for i in 0..200 {
        writeln!(file, "{},1", i as f64 / 200.0).unwrap();
    }
    file.flush().unwrap();
    let spec = format!("file:{}", file.path().display());
    let sampled = WeightProfile::classify(Weight::parse(&spec).unwrap(), &AnalysisGrid::new(12, 8)).unwrap();
    for r in [0.0, 0.3, 0.7, 0.9] {
        assert!((sampled.omega_hat(r) - (1.0 - r)).abs() < 1e-6, "r = {r}");
    }
    for n in [1, 3, 9, 33] {
        let want = 1.0 / (n as f64 + 1.0);
        assert!((sampled.moment(n) - want).abs() < 1e-6 * want, "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // for ω ≡ 1 the kernel is 1/(1 - ζz̄)²
    #[test]
    fn unit_kernel_matches_closed_form(r in 0.0..0.85f64, t in 0.0..6.28f64, s in 0.0..0.85f64, u in 0.0..6.28f64) {
        let profile = unit_profile();
        let z = Complex64::from_polar(r, t);
        let zeta = Complex64::from_polar(s, u);
        let (value, bound) = KernelSeries::new(&profile, z, 512).unwrap().eval(zeta);
        let want = 1.0 / (Complex64::new(1.0, 0.0) - zeta * z.conj()).powi(2);
        prop_assert!((value - want).norm() <= 1e-9 * want.norm() + bound);
    }

    #[test]
    fn kernel_is_hermitian(r in 0.0..0.9f64, t in 0.0..6.28f64, s in 0.0..0.9f64, u in 0.0..6.28f64) {
        let profile = WeightProfile::classify(Weight::parse("std:alpha=1").unwrap(), &AnalysisGrid::new(12, 8)).unwrap();
        let z = Complex64::from_polar(r, t);
        let zeta = Complex64::from_polar(s, u);
        let (a, _) = KernelSeries::new(&profile, z, 512).unwrap().eval(zeta);
        let (b, _) = KernelSeries::new(&profile, zeta, 512).unwrap().eval(z);
        prop_assert!((a - b.conj()).norm() <= 1e-12 * a.norm());
    }
}
