use thiserror::Error;

/// Errors raised by field arithmetic, polynomial algebra and code construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("field of order {q} exceeds the supported cap {cap}")]
    FieldTooLarge { q: u64, cap: u64 },
    #[error("value {value} is not an element of a field of order {q}")]
    ElementOutOfRange { value: u64, q: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by the zero polynomial")]
    ZeroPolynomialDivisor,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("interpolation needs at least one point")]
    EmptyInterpolation,
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(u32),
    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(usize, usize),
    #[error("residue {index} has degree not below its modulus degree")]
    ResidueDegree { index: usize },
    #[error("enumeration of {size} items exceeds cap {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("partition blocks are not disjoint: {0} appears twice")]
    OverlappingBlocks(u32),
    #[error("partitions do not share the same support")]
    SupportMismatch,
    #[error("polynomial is not constant on block {block}: g({alpha}) != g({beta})")]
    NotGood { block: usize, alpha: u32, beta: u32 },
    #[error("polynomial {index} does not lie in the local encoding space")]
    NotInAlgebra { index: usize },
    #[error("basis polynomials are linearly dependent")]
    DependentBasis,
    #[error("position {0} is out of range")]
    InvalidPosition(usize),
    #[error("block {block} has {available} surviving symbols, {needed} needed")]
    InsufficientSurvivors {
        block: usize,
        needed: usize,
        available: usize,
    },
    #[error("message has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("surviving symbols have rank {rank}, dimension {k} required")]
    Undecodable { rank: usize, k: usize },
    #[error("surviving symbols do not belong to any codeword")]
    Inconsistent,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Failures caused by the received word rather than by the inputs.
    pub fn is_decode_failure(&self) -> bool {
        matches!(
            self,
            Error::InsufficientSurvivors { .. } | Error::Undecodable { .. } | Error::Inconsistent
        )
    }
}
