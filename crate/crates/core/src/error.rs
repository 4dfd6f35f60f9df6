use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is not monic (leading coefficient {0})")]
    NonMonic(String),

    #[error("degree {degree} is too small, need at least {min}")]
    DegreeTooSmall { degree: usize, min: usize },

    #[error("polynomial is not self-reciprocal")]
    NotReciprocal,

    #[error("polynomial has odd degree {0}")]
    OddDegree(usize),

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("l = {l} must be below d/2 for degree {degree}")]
    BadL { l: usize, degree: usize },

    #[error("exponent must be at least 1")]
    ZeroExponent,

    #[error("matrix dimension must be at least {min}, got {dim}")]
    Dimension { dim: usize, min: usize },

    /// Newton's identities produced a non-integer coefficient. This is a bug,
    /// never a user error.
    #[error("internal error: inexact division by {0} in Newton's identities")]
    InternalInexactDivision(usize),

    #[error("absolute tolerance {0:e} is below the supported minimum 1e-10")]
    ToleranceTooTight(f64),

    #[error("degree {0} is not supported by the grid estimator (use 4, 6, 8, 10 or 12)")]
    BadDegree(usize),

    #[error("grid with m = {0} nodes per axis is too coarse (need m >= 100)")]
    GridTooCoarse(usize),

    #[error("spectral gap surrogate D = {0} is too small (need D >= 1e6)")]
    GapTooSmall(f64),

    #[error("empty range: {from} > {to}")]
    EmptyRange { from: u64, to: u64 },

    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}
