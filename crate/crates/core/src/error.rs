use thiserror::Error;

/// Why a coefficient sum `½ Σ |a_n|²` was judged not to have a usable finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceReason {
    /// |a_n|^2 did not decrease over the trailing window.
    NonDecreasing,
    /// Fitted power-law decay |a_n|^2 ~ n^-s with s <= 1.
    SlowDecay,
    /// Finite, but the estimated tail is still above the requested tolerance.
    TailAboveTolerance,
    /// The domain is known to have infinite expected exit time (wedge with p >= 1/2).
    KnownInfinite,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole of the gamma function at {0}")]
    Pole(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("series did not converge after {terms} terms (partial sum {partial}, last estimated error {estimate:e})")]
    NotConverged {
        terms: usize,
        partial: f64,
        estimate: f64,
    },

    #[error("divergence suspected ({reason:?}); partial sum {partial}, tail estimate {tail:e}")]
    DivergenceSuspected {
        reason: DivergenceReason,
        partial: f64,
        tail: f64,
    },

    #[error("point ({x}, {y}) is not interior to the domain")]
    NotInterior { x: f64, y: f64 },

    #[error("domain is not polygonal")]
    NotPolygonal,

    #[error("operation not applicable: {0}")]
    NotApplicable(String),

    #[error("quadrature failed to reach tolerance {tol:e} (estimate {estimate:e})")]
    Quadrature { tol: f64, estimate: f64 },

    #[error("independent evaluation paths disagree: {a} vs {b}")]
    PathDisagreement { a: f64, b: f64 },

    #[error("all {0} Monte Carlo paths hit the step cap (expectation likely infinite)")]
    AllPathsTruncated(usize),

    #[error("cannot parse domain `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
