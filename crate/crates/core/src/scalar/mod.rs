//! Exact arithmetic substrate: Gaussian rationals, dense matrices over them,
//! and small multivariate polynomials.

mod gauss;
mod matrix;
mod poly;

pub use gauss::{format_rational, parse_rational, FieldOp, GaussRat};
pub use matrix::{ExactMatrix, Rref};
pub use poly::{poly_det, Monomial, MultiPoly, MAX_DEGREE, MAX_VARS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational {0:?}: expected -?digits(/digits)?")]
    BadRational(String),
    #[error("shape mismatch: expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("{0} variables exceeds the polynomial limit of {MAX_VARS}")]
    TooManyVariables(usize),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("total degree {0} exceeds the polynomial limit of {MAX_DEGREE}")]
    DegreeTooHigh(u32),
}
