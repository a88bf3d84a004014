use thiserror::Error;

pub type Result<T> = std::result::Result<T, FracError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FracError {
    /// An argument lies outside the domain of the requested function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Quadrature finished without meeting the requested tolerance.
    #[error("tolerance not met: estimated error {achieved:e} exceeds {requested:e}")]
    Tolerance { achieved: f64, requested: f64 },

    /// A series could not be summed to the requested tolerance within the term budget.
    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("size limit exceeded: {points} lattice points > {limit}")]
    SizeLimit { points: u128, limit: u128 },

    /// Richardson extrapolation in the regularization parameter did not settle.
    #[error(
        "extrapolation did not converge (eps = {:e}, {:e}, {:e}; spread {spread:e})",
        eps[0], eps[1], eps[2]
    )]
    NonConvergence { eps: [f64; 3], spread: f64 },
}

pub(crate) fn domain(msg: impl Into<String>) -> FracError {
    FracError::Domain(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> FracError {
    FracError::InvalidParameter(msg.into())
}
