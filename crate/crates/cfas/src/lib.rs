//! High-SNR probability (HSP) of a continuous fluid antenna system over
//! spatially correlated Rayleigh fading.
//!
//! An antenna that can move anywhere inside a region sees the channel as a
//! random field; the best achievable SNR is the supremum of a chi-squared
//! field with two degrees of freedom over that region. This crate computes
//! the upper tail of that supremum in 0 to 3 dimensions four ways:
//!
//! * dimension-matched closed forms ([`analytic::hsp_closed_form`]),
//! * the general expected-Euler-characteristic sum ([`analytic::eec`]),
//! * a per-dimension scaling law with exact remainders
//!   ([`analytic::scaled_hsp`]),
//! * Monte Carlo simulation of the correlated complex Gaussian channel on a
//!   grid ([`montecarlo::estimate_hsp`]).
//!
//! It also solves the constrained optimal-shape problem for rectangular and
//! cuboidal regions ([`shapeopt`]).
//!
//! Distances are in wavelengths throughout. The `parallel` feature (on by
//! default) runs replicate loops and grid oracles on rayon; results are
//! bit-identical with or without it.

mod bessel;

pub mod analytic;
pub mod correlation;
pub mod error;
pub mod geometry;
pub mod montecarlo;
pub mod shapeopt;

pub use analytic::{ChannelConfig, HspEstimate, HspMethod};
pub use correlation::CorrelationModel;
pub use error::{Error, Result};
pub use geometry::DomainBox;

/// Second spectral moment of the Jakes model, `2 pi^2`.
pub const JAKES_LAMBDA2: f64 = 19.739208802178716;
