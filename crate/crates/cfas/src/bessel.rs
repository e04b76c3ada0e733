//! Bessel function of the first kind, order zero.
//!
//! `j0_raw` targets an absolute error below 1e-13 for |x| <= 1000:
//!
//! * |x| < 8: Maclaurin series sum_m (-1)^m (x^2/4)^m / (m!)^2 with
//!   compensated summation. The largest term near x = 8 is ~1.1e2, so the
//!   compensated sum keeps the absolute error near 1e-14.
//! * |x| >= 8: Hankel form sqrt(2/(pi x)) (P(x) cos w - Q(x) sin w) with
//!   w = x - pi/4. A truncated asymptotic series for P and Q stalls around
//!   1e-8 at x = 8, which is not good enough, so P and Q use the Cephes
//!   rational fits in 25/x^2 instead (valid from x = 5 up).

use std::f64::consts::FRAC_PI_4;

/// sqrt(2/pi)
const SQRT_FRAC_2_PI: f64 = 0.7978845608028654;

const PP: [f64; 7] = [
    7.969367292973471e-4,
    8.283523921074408e-2,
    1.239533716464143,
    5.447250030587687,
    8.74716500199817,
    5.303240382353949,
    1.0,
];

const PQ: [f64; 7] = [
    9.244088105588637e-4,
    8.562884743544745e-2,
    1.2535274390105895,
    5.470977403304171,
    8.761908832370695,
    5.306052882353947,
    1.0,
];

const QP: [f64; 8] = [
    -1.1366383889846916e-2,
    -1.2825271867050931,
    -1.9553954425773597e1,
    -9.320601521237683e1,
    -1.7768116798048806e2,
    -1.4707750515495118e2,
    -5.141053267665993e1,
    -6.050143506007285,
];

const QQ: [f64; 7] = [
    6.43178256118178e1,
    8.564300259769806e2,
    3.8824018360540163e3,
    7.240467741956525e3,
    5.930727011873169e3,
    2.0620933166032783e3,
    2.420057402402914e2,
];

/// Horner evaluation, coefficients ordered from the highest degree down.
fn polevl(x: f64, coeffs: &[f64]) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Horner evaluation with an implicit leading coefficient of 1.
fn p1evl(x: f64, coeffs: &[f64]) -> f64 {
    coeffs.iter().fold(1.0, |acc, &c| acc * x + c)
}

fn series(x: f64) -> f64 {
    let q = x * x / 4.0;
    // Neumaier-compensated sum of the alternating series.
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut comp = 0.0_f64;
    for m in 1..=60u32 {
        term *= -q / ((m * m) as f64);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if term.abs() < 1e-18 * sum.abs().max(1e-3) {
            break;
        }
    }
    sum + comp
}

fn hankel(x: f64) -> f64 {
    let w = 5.0 / x;
    let z = 25.0 / (x * x);
    let p = polevl(z, &PP) / polevl(z, &PQ);
    let q = polevl(z, &QP) / p1evl(z, &QQ);
    let xn = x - FRAC_PI_4;
    (p * xn.cos() - w * q * xn.sin()) * SQRT_FRAC_2_PI / x.sqrt()
}

/// J0 for finite inputs. Even in x.
pub(crate) fn j0_raw(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 8.0 {
        series(ax)
    } else {
        hankel(ax)
    }
}
