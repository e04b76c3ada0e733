//! High-SNR probability of the best antenna position.
//!
//! The normalized channel power `X(t) = |h(t)|^2` is a chi-squared field
//! with two degrees of freedom over the movement region, and the HSP is
//! `P(sup X >= u0)`. For high thresholds the expected Euler characteristic
//! (EEC) of the excursion set `{t : X(t) >= u0}` is an asymptotically exact
//! approximation of that probability:
//!
//! ```text
//! EEC = sum_{j=0}^{dim} L_j(A) rho_j(u0)
//! ```
//!
//! with `L_j` the Lipschitz-Killing curvatures of the region and `rho_j` the
//! EC densities of the field. This module provides the EC densities for
//! general chi-squared fields, the dimension-matched closed forms they
//! collapse to for two degrees of freedom, the level-crossing-rate route in
//! one dimension, and the per-dimension scaling law with its exact
//! remainder terms.

use crate::error::{ensure_positive, Error, Result};
use crate::geometry::{elementary_symmetric, DomainBox};
use std::f64::consts::TAU;

/// Link-budget parameters of the Rayleigh channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    beta: f64,
    es: f64,
    sigma2: f64,
}

impl ChannelConfig {
    /// Channel gain `beta`, symbol energy `es` and noise power `sigma2`,
    /// all linear and strictly positive.
    pub fn new(beta: f64, es: f64, sigma2: f64) -> Result<Self> {
        ensure_positive("beta", beta)?;
        ensure_positive("es", es)?;
        ensure_positive("sigma2", sigma2)?;
        Ok(Self { beta, es, sigma2 })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn es(&self) -> f64 {
        self.es
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// Converts a physical SNR threshold `u > 0` to the normalized field
    /// threshold `u0 = 2 sigma^2 u / (beta Es)`.
    pub fn threshold_u0(&self, u: f64) -> Result<f64> {
        ensure_positive("u", u)?;
        Ok(2.0 * self.sigma2 * u / (self.beta * self.es))
    }
}

/// How an HSP value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HspMethod {
    ClosedForm,
    GeneralEec,
    ScalingLaw,
    Simulation,
}

/// An HSP value tagged with its provenance.
///
/// Analytic estimates report the raw approximation, which can exceed 1 (or
/// drop below 0) outside the high-threshold regime; `clamped` flags values
/// above 1 rather than truncating them, since the overshoot indicates where
/// the approximation stops being a probability. Simulation estimates always
/// lie in [0, 1] and carry a 95% confidence interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HspEstimate {
    pub value: f64,
    pub method: HspMethod,
    pub clamped: bool,
    pub ci95: Option<(f64, f64)>,
}

impl HspEstimate {
    fn analytic(value: f64, method: HspMethod) -> Self {
        Self {
            value,
            method,
            clamped: value > 1.0,
            ci95: None,
        }
    }

    /// Wraps an empirical estimate with its 95% confidence interval.
    pub fn simulation(value: f64, ci95: (f64, f64)) -> Self {
        debug_assert!((0.0..=1.0).contains(&value));
        Self {
            value,
            method: HspMethod::Simulation,
            clamped: false,
            ci95: Some(ci95),
        }
    }
}

/// Upper tail `P(chi^2_k >= u0)` of a chi-squared law with `k >= 1` degrees
/// of freedom.
///
/// Even `k` uses the closed-form Erlang sum (for `k = 2` this is exactly
/// `exp(-u0/2)`); odd `k` uses the regularized incomplete gamma function.
pub fn chi2_tail(k: u32, u0: f64) -> f64 {
    debug_assert!(k >= 1, "k must be at least 1");
    debug_assert!(u0.is_finite() && u0 >= 0.0, "u0 must be non-negative");
    let x = u0 / 2.0;
    if k.is_multiple_of(2) {
        // e^{-x} sum_{i<k/2} x^i / i!
        let mut term = 1.0;
        let mut sum = 1.0;
        for i in 1..(k / 2) {
            term *= x / i as f64;
            sum += term;
        }
        (-x).exp() * sum
    } else {
        gamma_q(k as f64 / 2.0, x)
    }
}

/// Euler characteristic density `rho_j(u0)` of a chi-squared field with `k`
/// degrees of freedom, for `j = 0..=3` and `u0 > 0`.
///
/// `rho_0` is the marginal tail. For `j >= 1`:
///
/// ```text
/// rho_j(u0) = u0^{(k-j)/2} e^{-u0/2} / ((2 pi)^{j/2} Gamma(k/2) 2^{(k-2)/2})
///   * sum_{l=0}^{floor((j-1)/2)} sum_{m=0}^{j-1-2l} 1{k >= j-m-2l}
///       C(k-1, j-1-m-2l) (-1)^{j-1+m+l} (j-1)! u0^{m+l} / (m! l! 2^l)
/// ```
///
/// For `k = 2` this reduces to `sqrt(u0/(2 pi)) e^{-u0/2}`,
/// `((u0-1)/(2 pi)) e^{-u0/2}` and `(2 pi)^{-3/2} (u0^{3/2} - 3 u0^{1/2})
/// e^{-u0/2}` for `j = 1, 2, 3`.
pub fn ec_density(j: usize, k: u32, u0: f64) -> Result<f64> {
    if j > 3 {
        return Err(Error::EcDensityIndex(j));
    }
    debug_assert!(k >= 1, "k must be at least 1");
    ensure_positive("u0", u0)?;
    if j == 0 {
        return Ok(chi2_tail(k, u0));
    }

    let kf = f64::from(k);
    let jf = j as f64;
    let denom = TAU.powf(jf / 2.0) * gamma_half(k) * 2f64.powf((kf - 2.0) / 2.0);
    let prefactor = u0.powf((kf - jf) / 2.0) * (-u0 / 2.0).exp() / denom;

    let mut sum = 0.0;
    for l in 0..=((j - 1) / 2) {
        for m in 0..=(j - 1 - 2 * l) {
            // indicator 1{k >= j - m - 2l}
            if (k as usize) < j - m - 2 * l {
                continue;
            }
            let choose = binomial(k - 1, (j - 1 - m - 2 * l) as u32);
            if choose == 0.0 {
                continue;
            }
            let sign = if (j - 1 + m + l).is_multiple_of(2) { 1.0 } else { -1.0 };
            sum += sign * choose * factorial(j - 1) * u0.powi((m + l) as i32)
                / (factorial(m) * factorial(l) * 2f64.powi(l as i32));
        }
    }
    Ok(prefactor * sum)
}

/// Level crossing rate of the chi-squared power process across `u0`, per
/// wavelength: `sqrt(lambda2 u0 / (2 pi)) e^{-u0/2}`.
pub fn lcr(u0: f64, lambda2: f64) -> f64 {
    debug_assert!(u0 > 0.0 && lambda2 > 0.0);
    (lambda2 * u0 / TAU).sqrt() * (-u0 / 2.0).exp()
}

/// HSP via the general EEC sum over the region's Lipschitz-Killing
/// curvatures, with the two-degree-of-freedom EC densities.
pub fn eec(domain: &DomainBox, lambda2: f64, u0: f64) -> HspEstimate {
    assert!(
        lambda2.is_finite() && lambda2 > 0.0,
        "lambda2 must be positive"
    );
    assert!(u0.is_finite() && u0 > 0.0, "u0 must be positive");
    let lk = domain
        .lk_curvatures(lambda2)
        .expect("lambda2 validated above");
    let value = lk
        .iter()
        .enumerate()
        .map(|(j, l)| l * ec_density(j, 2, u0).expect("j <= 3 and u0 > 0"))
        .sum();
    HspEstimate::analytic(value, HspMethod::GeneralEec)
}

pub(crate) fn closed_form_value(sides: &[f64], lambda2: f64, u0: f64) -> f64 {
    let e = elementary_symmetric(sides);
    let p0 = (-u0 / 2.0).exp();
    let s = (lambda2 * u0 / TAU).sqrt();
    match sides.len() {
        0 => p0,
        1 => p0 * (1.0 + s * e[1]),
        2 => p0 * (1.0 + s * e[1] + pair_coeff(lambda2, u0) * e[2]),
        _ => {
            p0 * (1.0
                + s * e[1]
                + pair_coeff(lambda2, u0) * e[2]
                + triple_coeff(lambda2, u0) * e[3])
        }
    }
}

fn pair_coeff(lambda2: f64, u0: f64) -> f64 {
    lambda2 * (u0 - 1.0) / TAU
}

fn triple_coeff(lambda2: f64, u0: f64) -> f64 {
    let root = u0.sqrt();
    (lambda2 / TAU).powf(1.5) * (u0 * root - 3.0 * root)
}

/// HSP via the dimension-matched closed form.
///
/// 0D is the exact Rayleigh tail `e^{-u0/2}`; 1D through 3D multiply it by a
/// polynomial in the side lengths whose coefficients come from the EC
/// densities. Agrees with [`eec`] to floating-point accuracy; the two
/// routes share only the geometry, not the density machinery.
pub fn hsp_closed_form(domain: &DomainBox, lambda2: f64, u0: f64) -> HspEstimate {
    assert!(
        lambda2.is_finite() && lambda2 > 0.0,
        "lambda2 must be positive"
    );
    assert!(u0.is_finite() && u0 > 0.0, "u0 must be positive");
    HspEstimate::analytic(
        closed_form_value(domain.sides(), lambda2, u0),
        HspMethod::ClosedForm,
    )
}

/// Multiplicative HSP gain contributed by one movement dimension of length
/// `T`: `1 + T sqrt(lambda2 u0 / (2 pi))`.
pub fn scaling_factor(t: f64, lambda2: f64, u0: f64) -> f64 {
    debug_assert!(t >= 0.0 && lambda2 > 0.0 && u0 > 0.0);
    1.0 + t * (lambda2 * u0 / TAU).sqrt()
}

/// Exact corrections between the per-dimension scaling law and the closed
/// forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingRemainders {
    /// `P(2) = P(1) * factor(T2) + r2`
    pub r2: f64,
    /// `P(3) = P(2) * factor(T3) + r3`; absent below three dimensions.
    pub r3: Option<f64>,
}

/// Remainder terms of the scaling-law factorization for a 2D or 3D box:
///
/// ```text
/// r2 = -T1 T2 (lambda2 / (2 pi)) e^{-u0/2}
/// r3 = -T3 (lambda2 / (2 pi)) e^{-u0/2}
///        (T1 + T2 + 2 T1 T2 sqrt(lambda2 u0 / (2 pi)))
/// ```
///
/// Both are always `<= 0`, so the scaling law never underestimates the
/// closed form. For the Jakes model (`lambda2 = 2 pi^2`) the leading factor
/// `lambda2 / (2 pi)` is exactly `pi`.
pub fn scaling_remainders(domain: &DomainBox, lambda2: f64, u0: f64) -> Result<ScalingRemainders> {
    if domain.dim() < 2 {
        return Err(Error::RemainderDimension(domain.dim()));
    }
    ensure_positive("lambda2", lambda2)?;
    ensure_positive("u0", u0)?;
    let t = domain.sides();
    let p0 = (-u0 / 2.0).exp();
    let c = lambda2 / TAU;
    let r2 = -(t[0] * t[1]) * c * p0;
    let r3 = (domain.dim() == 3).then(|| {
        -t[2] * c * p0 * (t[0] + t[1] + 2.0 * t[0] * t[1] * (lambda2 * u0 / TAU).sqrt())
    });
    Ok(ScalingRemainders { r2, r3 })
}

/// HSP via the approximate scaling law: the fixed-antenna tail times one
/// [`scaling_factor`] per side, in side order.
pub fn scaled_hsp(domain: &DomainBox, lambda2: f64, u0: f64) -> HspEstimate {
    assert!(
        lambda2.is_finite() && lambda2 > 0.0,
        "lambda2 must be positive"
    );
    assert!(u0.is_finite() && u0 > 0.0, "u0 must be positive");
    let value = domain
        .sides()
        .iter()
        .fold((-u0 / 2.0).exp(), |acc, &t| {
            acc * scaling_factor(t, lambda2, u0)
        });
    HspEstimate::analytic(value, HspMethod::ScalingLaw)
}

/// Gamma(k/2) for integer k >= 1.
fn gamma_half(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        (1..k / 2).map(f64::from).product()
    } else {
        let mut g = std::f64::consts::PI.sqrt();
        let mut a = 0.5;
        while a + 1.0 <= f64::from(k) / 2.0 {
            g *= a;
            a += 1.0;
        }
        g
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn binomial(n: u32, r: u32) -> f64 {
    if r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    let mut acc = 1.0;
    for i in 0..r {
        acc = acc * f64::from(n - i) / f64::from(i + 1);
    }
    acc
}

/// Regularized upper incomplete gamma Q(a, x) for a > 0, x >= 0.
fn gamma_q(a: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - gamma_p_series(a, x)
    } else {
        gamma_q_cf(a, x)
    }
}

fn ln_gamma_half_arg(a: f64) -> f64 {
    // a is k/2 for integer k; walk down to Gamma(1) or Gamma(1/2)
    let mut s = if a.fract() == 0.0 {
        0.0
    } else {
        0.5 * std::f64::consts::PI.ln()
    };
    let mut b = if a.fract() == 0.0 { 1.0 } else { 0.5 };
    while b + 1.0 <= a {
        s += b.ln();
        b += 1.0;
    }
    s
}

fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut term = 1.0 / a;
    let mut sum = term;
    for n in 1..500 {
        term *= x / (a + f64::from(n));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma_half_arg(a)).exp()
}

fn gamma_q_cf(a: f64, x: f64) -> f64 {
    // modified Lentz continued fraction
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -f64::from(i) * (f64::from(i) - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma_half_arg(a)).exp() * h
}
