use thiserror::Error;

use crate::algebra::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not exactly divisible by the given divisor")]
    NotDivisible,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("series constant term is {constant}, expected +1 or -1")]
    NonUnitConstant { constant: String },
    #[error("no assignment for variable {0}")]
    UnassignedVariable(Var),
    #[error("identity violated at {context}")]
    IdentityViolation { context: String },
    #[error("found {count} non-intersecting configurations at {context}, expected exactly 1")]
    NonUniqueNilp { count: usize, context: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
