use std::f64::consts::PI;

use ellreg::lseries::{
    lprime0, lvalue2_series, lvalue2_theta_integral, theta_integrand, LMethod, QuadConfig, DEFAULT_TERMS,
};
use ellreg::qseries::CurveSpec;

// 30-digit values from an independent multiprecision evaluation of the
// same functional-equation sum.
const REFERENCE: [(u32, f64); 3] = [
    (27, 0.877_646_418_044_873_445_482_852_895_048),
    (32, 0.917_050_635_318_654_988_643_805_524_296),
    (64, 1.023_147_652_072_550_790_048_251_575_61),
];

#[test]
fn series_route_matches_reference() {
    for (n, want) in REFERENCE {
        let r = lvalue2_series(&CurveSpec::new(n).unwrap(), DEFAULT_TERMS).unwrap();
        assert_eq!(r.method, LMethod::Series);
        assert!((r.value - want).abs() < 1e-13, "N={}: {}", n, r.value);
        assert!(r.error_bound > 0.0 && r.error_bound < 1e-12);
        assert!(r.value > 0.0);
    }
}

#[test]
fn routes_agree() {
    for n in [32, 64] {
        let curve = CurveSpec::new(n).unwrap();
        let s = lvalue2_series(&curve, DEFAULT_TERMS).unwrap();
        let i = lvalue2_theta_integral(&curve, &QuadConfig::default()).unwrap();
        let gap = (s.value - i.value).abs();
        assert!(gap <= 1e-8, "N={}: {} vs {}", n, s.value, i.value);
        assert!(gap <= s.error_bound + i.error_bound, "N={}: gap {:e} bounds {:e} {:e}", n, gap, s.error_bound, i.error_bound);
        assert!(i.error_bound <= 1e-9);
    }
}

#[test]
fn more_terms_change_less_than_the_bound() {
    for n in CurveSpec::CONDUCTORS {
        let curve = CurveSpec::new(n).unwrap();
        let a = lvalue2_series(&curve, 500).unwrap();
        let b = lvalue2_series(&curve, 1000).unwrap();
        assert!((a.value - b.value).abs() <= a.error_bound, "N={}", n);
    }
}

#[test]
fn integral_only_for_two_conductors() {
    assert!(lvalue2_theta_integral(&CurveSpec::new(27).unwrap(), &QuadConfig::default()).is_err());
}

#[test]
fn integrand_is_small_far_out() {
    for n in [32, 64] {
        assert!(theta_integrand(n, 15.0, 0.25).unwrap().abs() < 1e-7);
    }
}

#[test]
fn functional_equation_scaling() {
    let c27 = CurveSpec::new(27).unwrap();
    assert!((lprime0(&c27, 1.0) - 27.0 / (4.0 * PI * PI)).abs() < 1e-15);
}
