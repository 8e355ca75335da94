//! Crate-wide error type with machine-readable codes.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("linear part not of finite order")]
    InfiniteOrder,
    #[error("matrix linear parts require a same-curve surface")]
    MatrixOnProductSurface,
    #[error("surface or curve mismatch: {0}")]
    SurfaceMismatch(String),
    #[error("invalid torsion coordinate: {0}")]
    InvalidTorsion(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("malformed JSON: {0}")]
    BadJson(String),
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotAGroup(_) => "not_a_group",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::InfiniteOrder => "infinite_order",
            Error::MatrixOnProductSurface => "matrix_requires_same_curve",
            Error::SurfaceMismatch(_) => "surface_mismatch",
            Error::InvalidTorsion(_) => "invalid_torsion",
            Error::InvalidScenario(_) => "invalid_scenario",
            Error::BadJson(_) => "bad_json",
            Error::BadParameter(_) => "bad_parameter",
            Error::Precondition(_) => "precondition_violated",
            Error::Internal(_) => "internal",
        }
    }
}
