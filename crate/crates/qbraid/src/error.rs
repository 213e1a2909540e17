//! Crate-wide error type.

use crate::scalar::FieldContext;
use thiserror::Error;

/// Errors raised by the arithmetic, linear algebra and analysis layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldContext, FieldContext),
    #[error("cannot coerce {from} into {to}")]
    Coercion { from: FieldContext, to: FieldContext },
    #[error("evaluation point is a pole")]
    PoleAtPoint,
    #[error("q cannot be specialized to zero")]
    ZeroSubstitution,
    #[error("expected a symbolic scalar")]
    NotSymbolic,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("q must be nonzero")]
    ZeroQ,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("q-factorial quotient is not a polynomial")]
    NonPolynomialQuotient,
    #[error("lambda_0 lambda_n q_r q_(n-r) / q_n != lambda_r lambda_(n-r) at r = {r}")]
    CondQViolated { r: usize },
    #[error("lambda_{index} is zero")]
    ZeroLambda { index: usize },
    #[error("expected {expected} lambda values, got {got}")]
    LambdaLength { expected: usize, got: usize },
    #[error("matrix is not unit upper triangular")]
    NotUnitUpperTriangular,
    #[error("({m})!_q vanishes while T^{m} is nonzero")]
    QFactorialZero { m: usize },
    #[error("unsupported dimension n = {0}")]
    UnsupportedDimension(usize),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("diagonal entry {0} is zero")]
    SingularDiagonal(usize),
    #[error("alpha must differ from 0 and 1")]
    AlphaDegenerate,
    #[error("(n)_q does not vanish at this point")]
    NotAReduciblePoint,
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
