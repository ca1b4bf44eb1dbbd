use thiserror::Error;

/// Errors raised by the engine. Variants tagged "internal consistency" signal
/// bugs in the modelling pipeline (cross-checked identities that must hold for
/// any valid input) rather than bad user data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("sublattice of infinite index: {0}")]
    InfiniteIndex(String),
    #[error("not a positive system: {0}")]
    NotPositiveSystem(String),
    #[error("closure size cap exceeded (cap {0})")]
    SizeCapExceeded(usize),
    #[error("not a root system: {0}")]
    NotARootSystem(String),
    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),
    #[error("invalid involution data: {0}")]
    InvolutionInvalid(String),
    #[error("multiplicity parity violation: {0}")]
    ParityViolation(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("coset counting identity failed: {0}")]
    CountMismatch(String),
    #[error("test character formulas disagree: {0}")]
    FormulaMismatch(String),
    #[error("descendent simple set is empty (anisotropic pair)")]
    EmptySimpleSet,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("exponent pairing is not integral: {0}")]
    NonIntegralExponent(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that indicate an internal cross-check failure
    /// rather than invalid input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::CountMismatch(_) | Error::FormulaMismatch(_) | Error::Internal(_)
        )
    }

    /// Stable machine-readable error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::DependentGenerators => "DependentGenerators",
            Error::InfiniteIndex(_) => "InfiniteIndex",
            Error::NotPositiveSystem(_) => "NotPositiveSystem",
            Error::SizeCapExceeded(_) => "SizeCapExceeded",
            Error::NotARootSystem(_) => "NotARootSystem",
            Error::InvalidRootDatum(_) => "InvalidRootDatum",
            Error::InvolutionInvalid(_) => "InvolutionInvalid",
            Error::ParityViolation(_) => "ParityViolation",
            Error::NoSolution(_) => "NoSolution",
            Error::CountMismatch(_) => "CountMismatch",
            Error::FormulaMismatch(_) => "FormulaMismatch",
            Error::EmptySimpleSet => "EmptySimpleSet",
            Error::BadParameters(_) => "BadParameters",
            Error::NonIntegralExponent(_) => "NonIntegralExponent",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
