use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("matrix is not an isometry (deviation {0:e})")]
    NotIsometry(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid factorization scheme: {0}")]
    InvalidScheme(String),

    #[error("channel is not trace preserving (deviation {0:e})")]
    NotTracePreserving(f64),

    #[error("subspace basis is not orthonormal (deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("polynomial system is not homogeneous of a common degree")]
    NotHomogeneous,

    #[error("no exact rational representation for {0}")]
    Irrational(String),

    #[error("Groebner basis computation exceeded the cap of {0} S-pair reductions")]
    GroebnerLimit(usize),

    #[error("exact certification requested but no exact sibling was supplied")]
    MissingExact,
}
