use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The X1 construction degenerates (beta too close to alpha, or a
    /// vanishing denominator in the defining combination).
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    /// Potential-parameter constraint violated.
    #[error("invalid potential parameters: {0}")]
    InvalidParams(String),

    /// Boundary-profile constraint violated.
    #[error("invalid boundary profile: {0}")]
    InvalidProfile(String),

    /// Evaluation at or beyond a wall where the potential diverges.
    #[error("wall singularity: {0}")]
    WallSingularity(String),

    /// Point lies outside the box [0, L(t)].
    #[error("point outside the box: {0}")]
    OutOfBox(String),

    /// Node doubling exhausted without meeting the relative tolerance.
    #[error("quadrature did not converge after {doublings} doublings: last estimates {previous} and {latest}")]
    QuadratureNonConvergence {
        doublings: u32,
        previous: f64,
        latest: f64,
    },

    /// Operation applied to the wrong sector.
    #[error("invalid sector: {0}")]
    InvalidSector(String),
}

pub type Result<T> = std::result::Result<T, Error>;
