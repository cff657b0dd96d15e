//! Error type shared by all hypernil operations.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: operands belong to different number fields")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("minimal polynomial must be monic of degree >= 1")]
    BadMinimalPolynomial,

    #[error("minimal polynomial is reducible over Q: {0}")]
    ReducibleMinimalPolynomial(String),

    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    AmbientMismatch { expected: usize, got: usize },

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("Jacobi identity fails on basis triple ({i}, {j}, {l})")]
    JacobiFailed { i: usize, j: usize, l: usize },

    #[error("Lie algebra is not nilpotent: {0}")]
    NotNilpotent(String),

    #[error("operator '{0}' is not almost complex (square != -Id)")]
    NotAlmostComplex(String),

    #[error("complex structure '{0}' is not integrable")]
    NotIntegrable(String),

    #[error("complex structure '{0}' is not abelian")]
    NotAbelian(String),

    #[error("triple does not satisfy the quaternionic relations")]
    NotQuaternionic,

    #[error("point ({a}, {b}, {c}) is not on the unit sphere")]
    NotOnSphere { a: String, b: String, c: String },

    #[error("subspace is not an ideal of the algebra")]
    NotAnIdeal,

    #[error("subspace is not invariant under the structure operator(s)")]
    NotInvariant,

    #[error("subspace is not rational")]
    NotRational,

    #[error("quotient dimension is odd; cannot carry a complex structure")]
    QuotientNotEven,

    #[error("center is not invariant under the structure operator(s)")]
    CenterNotInvariant,

    #[error("sphere point is not exceptional: closures coincide")]
    NotExceptional,

    #[error("saturation did not stabilize within {0} iterations")]
    IterationCapExceeded(usize),

    #[error("problem file is missing a required structure: {0}")]
    MissingStructure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
