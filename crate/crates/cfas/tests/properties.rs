//! Property tests for the analytic identities and geometric invariants.

mod support;

use cfas::analytic::{
    chi2_tail, ec_density, eec, hsp_closed_form, lcr, scaled_hsp, scaling_factor,
    scaling_remainders,
};
use cfas::correlation::{bessel_j0, CorrelationModel};
use cfas::geometry::DomainBox;
use proptest::prelude::*;

fn sides_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..4.0f64, 0..=3)
}

/// Conditioning scale of the EEC sum: the sum of term magnitudes. Near a
/// sign change of the total, a relative comparison must be taken against
/// this scale instead of the (vanishing) value.
fn term_scale(domain: &DomainBox, lambda2: f64, u0: f64) -> f64 {
    domain
        .lk_curvatures(lambda2)
        .unwrap()
        .iter()
        .enumerate()
        .map(|(j, l)| (l * ec_density(j, 2, u0).unwrap()).abs())
        .sum()
}

proptest! {
    #[test]
    fn closed_form_agrees_with_general_eec(
        sides in sides_strategy(),
        lambda2 in 0.1..100.0f64,
        u0 in 0.5..40.0f64,
    ) {
        let domain = DomainBox::new(&sides).unwrap();
        let closed = hsp_closed_form(&domain, lambda2, u0).value;
        let general = eec(&domain, lambda2, u0).value;
        let scale = term_scale(&domain, lambda2, u0);
        prop_assert!((closed - general).abs() <= 1e-12 * scale);
        if closed.abs() > 1e-3 * scale {
            prop_assert!((closed - general).abs() <= 1e-12 * closed.abs());
        }
    }

    #[test]
    fn one_dimension_matches_level_crossing_route(
        t1 in 0.0..4.0f64,
        lambda2 in 0.1..100.0f64,
        u0 in 0.5..40.0f64,
    ) {
        let closed = hsp_closed_form(&DomainBox::new([t1]).unwrap(), lambda2, u0).value;
        let route = chi2_tail(2, u0) + t1 * lcr(u0, lambda2);
        prop_assert!((closed - route).abs() <= 1e-14 * route.abs());
    }

    #[test]
    fn scaling_identities_hold(
        sides in prop::collection::vec(0.0..4.0f64, 2..=3),
        lambda2 in 0.1..100.0f64,
        u0 in 0.5..40.0f64,
    ) {
        let domain = DomainBox::new(&sides).unwrap();
        let rem = scaling_remainders(&domain, lambda2, u0).unwrap();
        let scale = term_scale(&domain, lambda2, u0);

        let p1 = hsp_closed_form(&DomainBox::new([sides[0]]).unwrap(), lambda2, u0).value;
        let p2 = hsp_closed_form(&DomainBox::new(&sides[..2]).unwrap(), lambda2, u0).value;
        let rhs = p1 * scaling_factor(sides[1], lambda2, u0) + rem.r2;
        prop_assert!((p2 - rhs).abs() <= 1e-12 * scale.max(p2.abs()));

        if sides.len() == 3 {
            let p3 = hsp_closed_form(&domain, lambda2, u0).value;
            let rhs = p2 * scaling_factor(sides[2], lambda2, u0) + rem.r3.unwrap();
            prop_assert!((p3 - rhs).abs() <= 1e-12 * scale.max(p3.abs()));
        }
    }

    #[test]
    fn remainders_never_positive(
        sides in prop::collection::vec(0.0..4.0f64, 2..=3),
        lambda2 in 0.1..100.0f64,
        u0 in 0.5..40.0f64,
    ) {
        let domain = DomainBox::new(&sides).unwrap();
        let rem = scaling_remainders(&domain, lambda2, u0).unwrap();
        prop_assert!(rem.r2 <= 0.0);
        if let Some(r3) = rem.r3 {
            prop_assert!(r3 <= 0.0);
        }
        // hence the scaling law never undershoots the closed form
        let scaled = scaled_hsp(&domain, lambda2, u0).value;
        let closed = hsp_closed_form(&domain, lambda2, u0).value;
        prop_assert!(scaled >= closed - 1e-12 * closed.abs().max(1.0));
    }

    #[test]
    fn closed_form_increases_in_every_side_beyond_three(
        sides in prop::collection::vec(0.01..4.0f64, 1..=3),
        lambda2 in 0.1..100.0f64,
        u0 in 3.0001..40.0f64,
        grow_axis in 0usize..3,
        bump in 0.01..1.0f64,
    ) {
        let axis = grow_axis % sides.len();
        let base = hsp_closed_form(&DomainBox::new(&sides).unwrap(), lambda2, u0).value;
        let mut grown = sides.clone();
        grown[axis] += bump;
        let bigger = hsp_closed_form(&DomainBox::new(&grown).unwrap(), lambda2, u0).value;
        prop_assert!(bigger > base);
    }

    #[test]
    fn zero_side_reduces_dimension_exactly(
        t1 in 0.0..4.0f64,
        lambda2 in 0.1..100.0f64,
        u0 in 0.5..40.0f64,
    ) {
        let with_zero = hsp_closed_form(&DomainBox::new([t1, 0.0]).unwrap(), lambda2, u0).value;
        let reduced = hsp_closed_form(&DomainBox::new([t1]).unwrap(), lambda2, u0).value;
        prop_assert_eq!(with_zero, reduced);

        let with_zero = hsp_closed_form(&DomainBox::new([t1, 2.0, 0.0]).unwrap(), lambda2, u0).value;
        let reduced = hsp_closed_form(&DomainBox::new([t1, 2.0]).unwrap(), lambda2, u0).value;
        prop_assert_eq!(with_zero, reduced);
    }

    #[test]
    fn intrinsic_volumes_are_symmetric(
        a in 0.0..4.0f64,
        b in 0.0..4.0f64,
        c in 0.0..4.0f64,
    ) {
        let reference = DomainBox::new([a, b, c]).unwrap().intrinsic_volumes();
        for perm in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
            prop_assert_eq!(
                DomainBox::new(perm).unwrap().intrinsic_volumes(),
                reference.clone()
            );
        }
    }

    #[test]
    fn unit_lambda2_keeps_intrinsic_volumes(sides in sides_strategy()) {
        let domain = DomainBox::new(&sides).unwrap();
        prop_assert_eq!(domain.lk_curvatures(1.0).unwrap(), domain.intrinsic_volumes());
    }

    #[test]
    fn bessel_is_even_and_bounded(x in -1000.0..1000.0f64) {
        let plus = bessel_j0(x).unwrap();
        let minus = bessel_j0(-x).unwrap();
        prop_assert_eq!(plus, minus);
        prop_assert!(plus.abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn jakes_correlation_bounded(tau in 0.0..50.0f64) {
        let rho = CorrelationModel::JakesJ0.correlation(tau).unwrap();
        prop_assert!(rho.abs() <= 1.0);
        prop_assert_eq!(CorrelationModel::JakesJ0.correlation(0.0).unwrap(), 1.0);
    }
}
