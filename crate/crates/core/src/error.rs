// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of order {p}^{e} is outside the supported range (at most 2^20 elements)")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("encoding {enc} is not an element of a field with {order} elements")]
    InvalidElement { enc: u64, order: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("the all-zero vector is not a projective point")]
    ZeroPoint,
    #[error("not a subfield: {0}")]
    NotSubfield(String),
    #[error("element is not primitive: {0}")]
    NotPrimitive(String),
    #[error("hypothesis violated: {0}")]
    OutOfRange(String),
    #[error("empty point set")]
    EmptyPointSet,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("twisted embedding factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("code carries no cyclic structure")]
    MissingCyclicProvenance,
    #[error("enumeration needs {required} scalar classes but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("code has dimension zero")]
    ZeroDimension,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("{0}")]
    Invalid(String),
}
