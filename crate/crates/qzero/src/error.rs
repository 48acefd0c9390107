//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A constructor or operation received a parameter outside its stated range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Index arguments out of range, e.g. k > n in a Gaussian binomial.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// An infinite q-Pochhammer product hit |a q^j| = 1 with a nonzero factor.
    #[error("divergent input: {0}")]
    DivergentInput(String),

    /// The series ratio certificate could not be established within the term cap.
    #[error("series ratio test not certified within {0} terms")]
    NoConvergence(usize),

    /// Order estimation found no usable coefficients (all |c_k| >= 1).
    #[error("order estimate degenerate: no coefficients with 0 < |c_k| < 1 in window")]
    Degenerate,

    /// A truncated infinite sequence cannot supply the terms a window needs.
    #[error("window {window} exceeds the {available} available sequence terms")]
    WindowTooLarge { window: usize, available: usize },

    /// Every entry of a sequence handed to the root oracle is zero.
    #[error("all sequence entries are zero")]
    DegenerateAllZero,

    /// Root polishing failed to reach the residual target.
    #[error("ill-conditioned polynomial: residual target not reached")]
    IllConditioned,

    /// The winding-count rigor inequality failed on every perturbed contour.
    #[error("a zero lies too close to the contour; move the contour")]
    ZeroOnContour,

    /// Fewer bracketed real zeros than requested within the radius limit.
    #[error("located only {found} of {requested} real-axis zeros within the radius limit")]
    NotEnoughZerosFound { found: usize, requested: usize },

    /// theorem2_k0 scanned past its cap without certifying a start index.
    #[error("no admissible start index K found below {0}")]
    HorizonExceeded(usize),

    /// Identity check invoked outside its convergence domain.
    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io failure: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
