//! Isotropic spatial correlation models and their second-order properties.
//!
//! The channel is wide-sense stationary with correlation `rho(tau)` over the
//! Euclidean separation `tau` (in wavelengths). Every model here behaves as
//! `rho(tau) ~ 1 - a*tau^2` for small `tau`, which makes the channel
//! mean-square differentiable; `a` is the curvature coefficient and
//! `lambda2 = 2a` is the second spectral moment (the variance of the spatial
//! derivative of the channel).

use crate::bessel::j0_raw;
use crate::error::{ensure_finite, ensure_non_negative, ensure_positive, Error, Result};
use std::f64::consts::{PI, TAU};

/// Isotropic correlation model for the normalized channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CorrelationModel {
    /// Jakes/Clarke model `rho(tau) = J0(2 pi tau)`, curvature `a = pi^2`.
    JakesJ0,
    /// Local quadratic model `rho(tau) = 1 - a tau^2`, valid only while
    /// `a tau^2 <= 1`. Useful to exercise the analytic formulas with an
    /// arbitrary `lambda2`; it is not a valid covariance at long range and
    /// the simulator rejects it.
    QuadraticLocal { a: f64 },
}

impl CorrelationModel {
    /// Local quadratic model with curvature `a > 0`.
    pub fn quadratic_local(a: f64) -> Result<Self> {
        ensure_positive("curvature a", a)?;
        Ok(Self::QuadraticLocal { a })
    }

    /// Curvature coefficient `a` of the small-separation expansion.
    pub fn curvature(&self) -> f64 {
        match self {
            Self::JakesJ0 => PI * PI,
            Self::QuadraticLocal { a } => *a,
        }
    }

    /// Second spectral moment `lambda2 = 2a`.
    pub fn lambda2(&self) -> f64 {
        2.0 * self.curvature()
    }

    /// Evaluates `rho(tau)` at separation `tau >= 0` wavelengths.
    pub fn correlation(&self, tau: f64) -> Result<f64> {
        ensure_non_negative("tau", tau)?;
        match self {
            Self::JakesJ0 => Ok(j0_raw(TAU * tau)),
            Self::QuadraticLocal { a } => {
                let att = a * tau * tau;
                if att > 1.0 {
                    Err(Error::CorrelationRange { a: *a, tau })
                } else {
                    Ok(1.0 - att)
                }
            }
        }
    }
}

/// Bessel function of the first kind, order zero.
///
/// Absolute error stays below 1e-12 for |x| <= 1000.
pub fn bessel_j0(x: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    Ok(j0_raw(x))
}
