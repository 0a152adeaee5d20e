use alloc::string::String;

use thiserror::Error;

/// Errors raised by the algebraic kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("monomial order mismatch")]
    OrderMismatch,
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("determinant of size {size} exceeds bound {bound}")]
    DeterminantTooLarge { size: usize, bound: usize },
    #[error("vector length {got} does not match module rank {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("the ideal is maximal (Krull dimension 0)")]
    MaximalIdeal,
    #[error("non-primality witness: ({left}) * ({right}) = 0 modulo the ideal")]
    NotPrime { left: String, right: String },
    #[error("elements belong to different coordinate rings")]
    RingMismatch,
    #[error("denominator is zero in the coordinate ring")]
    ZeroDenominator,
    #[error("invalid index tuple: {0}")]
    InvalidTuple(String),
    #[error("tuple sizes do not match: {0}")]
    TupleSize(String),
    #[error("tuple is singular: {0}")]
    SingularTuple(String),
    #[error("minor size {k} out of range 1..={max}")]
    MinorSizeOutOfRange { k: usize, max: usize },
    #[error("not a derivation of the coordinate ring")]
    NotADerivation,
    #[error("prescribed values extend to no derivation: coefficient on variable {variable} is {element}, not in A")]
    /// `variable` is 1-based, as displayed.
    InclusionFailure { variable: usize, element: String },
    #[error("operator order {order} exceeds bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = core::result::Result<T, Error>;
