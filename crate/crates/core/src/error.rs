use thiserror::Error;

/// Domain errors raised by the algebraic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime (or exceeds 2^63 - 1)")]
    InvalidPrime(u64),
    #[error("scalar must be a positive integer, got {0}")]
    InvalidScalar(u64),
    #[error("exponent or index overflow")]
    Overflow,
    #[error("lattice elements live over different base groups")]
    MismatchedBase,
    #[error("first lattice element is not contained in the second")]
    NotContained,
    #[error("operation requires a torus-free descriptor, found torus rank {0}")]
    NotTorusFree(usize),
    #[error("lattice base row {0} is finite; every base row must be infinite")]
    FiniteBaseRow(usize),
    #[error("dimension {dim} differs from non-Archimedean dimension {dim_na}")]
    DimMismatch { dim: usize, dim_na: usize },
    #[error("invalid characteristic {0}: {1}")]
    InvalidCharacteristic(String, &'static str),
    #[error("invalid lattice element: {0}")]
    InvalidLattice(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
