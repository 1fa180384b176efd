use thiserror::Error;

use crate::field::Fe;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-monic divisor over polynomial ring")]
    NonMonicDivisor,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("formal degree {n} is smaller than the input degree {deg}")]
    ResultantDegree { n: usize, deg: usize },
    #[error("not coprime / not a point of F_{n}")]
    NotCoprime { n: usize },
    #[error("rejected point: resultant {res} is not a unit")]
    RejectedPoint { res: Fe },
    #[error("rejected path: resultant is not a nonzero constant in T")]
    RejectedPath,
    #[error("laurent expansion needs deg V < deg A")]
    NotProper,
    #[error("zero has no square class")]
    ZeroSquareClass,
    #[error("factorization supported over prime fields only")]
    FactorOverRationals,
    #[error("degenerate symmetric matrix")]
    Degenerate,
    #[error("not a point of S_n(k[T]): determinant is not a nonzero constant")]
    NonConstantDeterminant,
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("enumeration too large: {size} candidates (limit {limit})")]
    Oversize { size: u128, limit: u128 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
