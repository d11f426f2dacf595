use thiserror::Error;

use crate::poly::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("polynomials live in different variable contexts")]
    ContextMismatch,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid variable context: {0}")]
    InvalidContext(String),

    #[error("weight ties between terms {first:?} and {second:?}")]
    Tie { first: Vec<u32>, second: Vec<u32> },

    #[error("exponent matrix is singular")]
    SingularExponentMatrix,

    #[error("binomial constant is zero")]
    ZeroConstant,

    #[error("lifting is not generic after {attempts} attempts")]
    DegenerateLifting { attempts: usize },

    #[error("no SAGBI weight found (search budget exhausted: {budget_exhausted})")]
    WeightNotFound { budget_exhausted: bool },

    #[error("weight does not give a SAGBI basis: {0}")]
    UnverifiedWeight(String),

    #[error("system is not square: {equations} equations in {variables} unknowns")]
    NotSquare { equations: usize, variables: usize },

    #[error("degree of the parameterization could not be determined: {0}")]
    DegreeUndetermined(String),

    #[error("every path failed")]
    AllPathsFailed,

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
