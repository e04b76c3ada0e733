//! Validates the J0 implementation against an independent double-double
//! oracle (Maclaurin series below 30, truncated Hankel expansion above).

mod support;

use cfas::correlation::bessel_j0;
use support::dd;
use support::rng::SplitMix64;

#[test]
fn oracle_routes_agree_on_overlap() {
    // the two oracle algorithms share nothing but the argument; their
    // agreement over [25, 35] validates both
    let mut x = 25.0;
    while x <= 35.0 {
        let series = dd::j0_series(x);
        let asymp = dd::j0_asymptotic(x);
        assert!(
            (series - asymp).abs() < 1e-15,
            "oracle disagreement at x = {x}: {series} vs {asymp}"
        );
        x += 0.25;
    }
}

#[test]
fn oracle_matches_known_values() {
    assert_eq!(dd::j0_series(0.0), 1.0);
    // first positive root
    assert!(dd::j0_series(2.404825557695773).abs() < 1e-12);
    assert!((dd::j0_series(std::f64::consts::PI) - (-0.304242)).abs() < 1e-6);
}

#[test]
fn implementation_matches_oracle_at_random_points() {
    let mut rng = SplitMix64::new(0x0B_E55E1);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let x = rng.range(-1000.0, 1000.0);
        let got = bessel_j0(x).unwrap();
        let want = dd::j0_oracle(x);
        let err = (got - want).abs();
        worst = worst.max(err);
        assert!(err <= 1e-12, "|J0({x}) error| = {err:.3e}");
    }
    // the implementation is typically far inside the contract
    assert!(worst <= 1e-12, "worst error {worst:.3e}");
}

#[test]
fn implementation_matches_oracle_on_dense_sweep() {
    let mut worst = 0.0_f64;
    let mut x = 0.0;
    while x <= 40.0 {
        let err = (bessel_j0(x).unwrap() - dd::j0_oracle(x)).abs();
        worst = worst.max(err);
        x += 0.01;
    }
    assert!(worst <= 1e-12, "worst sweep error {worst:.3e}");
}
