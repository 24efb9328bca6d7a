use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid problem shape: {0}")]
    InvalidShape(String),

    #[error("invalid quantum index: {0}")]
    InvalidIndex(String),

    #[error("poset is not a lattice: {0}")]
    LatticeViolation(String),

    #[error("poset has {size} elements, above the cap of {cap}; raise the cap to continue")]
    PosetTooLarge { size: usize, cap: usize },

    #[error("variable registries differ")]
    RegistryMismatch,

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix does not represent a point of the Pluecker space: {0}")]
    Representation(String),

    #[error("plane is rank deficient (rank {rank}, expected {expected})")]
    DegeneratePlane { rank: usize, expected: usize },

    #[error("invalid parameter schedule: {0}")]
    InvalidSchedule(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("certification unavailable: {0}")]
    CertificationUnavailable(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
