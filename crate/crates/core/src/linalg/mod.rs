//! Exact scalars (GF(3) and dyadic rationals) and the dense matrix machinery
//! shared by every other module.

mod dyadic;
mod format;
mod gf3;
mod intdet;
mod lift;
mod matrix;
mod modp;
mod subdet;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use thiserror::Error;

pub use dyadic::Dyadic;
pub use format::{Domain, ExactMatrix};
pub use gf3::Gf3;
pub use intdet::{integer_columns, BareissKernel};
pub use lift::dyadic_lift;
pub use matrix::{default_labels, Matrix};
pub use modp::PrimeFieldMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("pivot entry at ({row}, {col}) is zero")]
    ZeroPivot { row: usize, col: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by {0}, which is not a dyadic unit")]
    NonDyadicDivision(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("duplicate column label {0:?}")]
    DuplicateLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: Domain, found: Domain },
}

/// Arithmetic needed by the generic matrix routines.
///
/// `checked_inv` returns `None` for zero and, in the dyadic domain, for any
/// value that is not `±2^k`.
pub trait Scalar:
    Clone + PartialEq + Eq + Hash + Ord + fmt::Debug + fmt::Display + FromStr<Err = LinalgError> + Send + Sync
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn checked_inv(&self) -> Option<Self>;

    /// Reduced row echelon form and pivot columns.
    fn row_reduce(m: &Matrix<Self>) -> Result<(Matrix<Self>, Vec<usize>), LinalgError> {
        matrix::gauss_jordan(m)
    }
}
