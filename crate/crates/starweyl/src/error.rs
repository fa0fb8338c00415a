//! Error taxonomy shared by all layers.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("intertwiners only change the symmetric part; skew parts differ")]
    MismatchedSkew,
    #[error("singular point of the ordering expression: {0}")]
    SingularPoint(String),
    #[error("intertwiner pole: 1 - t(κ'-κ) vanishes")]
    Pole,
    #[error("product diverges in every ordering expression: {0}")]
    Diverges(String),
    #[error("outside the domain of validity: {0}")]
    Domain(String),
    #[error("quadrature failed to converge: {0}")]
    Convergence(String),
    #[error("contour passes too close to a singular point (min distance {min_dist:.3e})")]
    ContourTooClose { min_dist: f64 },
    #[error("truncation level {level} too small for operator degree {degree}")]
    TruncationOverflow { level: usize, degree: usize },
    #[error("series did not converge within the term cap")]
    SeriesCap,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
