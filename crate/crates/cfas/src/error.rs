//! Crate-wide error type.

/// Errors reported by the cfas library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument that must be finite was NaN or infinite.
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    /// An argument that must be strictly positive was not.
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    /// An argument that must be non-negative was negative.
    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },

    /// The local quadratic correlation model was evaluated outside its
    /// validity range `a * tau^2 <= 1`.
    #[error("quadratic-local model invalid at tau = {tau} (a = {a}: a*tau^2 > 1)")]
    CorrelationRange { a: f64, tau: f64 },

    /// Movement regions are limited to at most three dimensions.
    #[error("domain boxes support 0 to 3 sides, got {0}")]
    TooManyDimensions(usize),

    /// Euler characteristic densities are only provided for j = 0..=3.
    #[error("EC density index j must be 0..=3, got {0}")]
    EcDensityIndex(usize),

    /// Scaling remainders need at least a 2D box.
    #[error("scaling remainders require a 2D or 3D box, got dimension {0}")]
    RemainderDimension(usize),

    /// The requested simulation grid exceeds the configured point cap.
    #[error("grid has {points} points, exceeding the cap of {cap}")]
    GridTooLarge { points: usize, cap: usize },

    /// The quadratic-local model is not a valid covariance at long range
    /// and is rejected by the simulator.
    #[error("model is not a valid covariance over the requested grid; use the Jakes model")]
    InvalidCovarianceModel,

    /// Eigenvalue clamping removed too much spectral mass from the
    /// covariance matrix.
    #[error("covariance clamping removed {removed:.3e} of spectral mass (tolerance {tolerance:.3e}); grid too fine for numerical rank")]
    IllConditioned { removed: f64, tolerance: f64 },

    /// Simulation thresholds must be finite and strictly ascending.
    #[error("thresholds must be finite and strictly ascending")]
    BadThresholds,

    /// At least one replicate is required.
    #[error("replicate count must be at least 1")]
    NoReplicates,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<f64> {
    ensure_finite(name, value)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}

pub(crate) fn ensure_non_negative(name: &'static str, value: f64) -> Result<f64> {
    ensure_finite(name, value)?;
    if value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::Negative { name, value })
    }
}
