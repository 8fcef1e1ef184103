//! Exhaustive search for signed-graphic representations.
//!
//! A representation is a GF(3) matrix with the same row space as the input
//! representation and at most two nonzero entries per column; it is the
//! incidence matrix of a signed graph on one vertex per row. The search grows
//! a basis of "vertex" vectors one at a time, pivoting each new basis vector to
//! the next unit column and pruning with [`satisfies_property1`].

mod col;
mod search;

use std::fmt;

use thiserror::Error;

use crate::linalg::{ExactMatrix, Gf3, Matrix, Scalar};
use crate::matroid::{LinearMatroid, MatroidError};

pub(crate) use col::Col;
pub use search::{
    enumerate_signed_graphic, enumerate_with, step_grow, step_negative_loop, step_new_component, Phase, SearchOptions,
    SearchState, SearchStats,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SgEnumError {
    #[error("column {column} has {count} nonzero entries")]
    TooManyNonzeros { column: String, count: usize },
    #[error("rank {0} is too large for the search")]
    RankTooLarge(usize),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// A signed-graphic representation: one row per vertex, columns in groundset order,
/// at most two nonzeros per column.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SgRepresentation {
    matrix: Matrix<Gf3>,
}

impl SgRepresentation {
    pub fn new(matrix: Matrix<Gf3>) -> Result<Self, SgEnumError> {
        for j in 0..matrix.cols() {
            let count = matrix.column_nonzeros(j);
            if count > 2 {
                return Err(SgEnumError::TooManyNonzeros {
                    column: matrix.labels()[j].clone(),
                    count,
                });
            }
        }
        Ok(SgRepresentation { matrix })
    }

    pub fn matrix(&self) -> &Matrix<Gf3> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<Gf3> {
        self.matrix
    }

    pub fn col_labels(&self) -> &[String] {
        self.matrix.labels()
    }

    /// Vertex names `v1..vr`, one per row.
    pub fn basis_labels(&self) -> Vec<String> {
        (1..=self.matrix.rows()).map(|i| format!("v{i}")).collect()
    }

    /// Least matrix under row permutation and row negation (entries ordered 0 < 1 < -1).
    pub fn canonical(&self) -> SgRepresentation {
        SgRepresentation {
            matrix: canonical_rows(&self.matrix),
        }
    }

    /// The representation in the matrix text format, preceded by a `basis` line.
    pub fn to_text(&self) -> String {
        format!(
            "basis {}\n{}",
            self.basis_labels().join(" "),
            ExactMatrix::Gf3(self.matrix.clone()).to_text()
        )
    }

    pub fn parse_text(text: &str) -> Result<Self, SgEnumError> {
        let body: String = text
            .lines()
            .filter(|l| !l.trim_start().starts_with("basis"))
            .map(|l| format!("{l}\n"))
            .collect();
        let m = ExactMatrix::parse_text(&body).map_err(|e| SgEnumError::Matroid(e.into()))?;
        SgRepresentation::new(m.to_gf3())
    }
}

impl fmt::Debug for SgRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SgRepresentation\n{}", self.matrix.fmt_rows())
    }
}

fn canonical_rows(m: &Matrix<Gf3>) -> Matrix<Gf3> {
    let mut rows: Vec<Vec<u8>> = (0..m.rows())
        .map(|i| {
            let row: Vec<u8> = m.row(i).iter().map(|v| v.residue()).collect();
            match row.iter().find(|&&x| x != 0) {
                Some(2) => row.iter().map(|&x| (3 - x) % 3).collect(),
                _ => row,
            }
        })
        .collect();
    rows.sort();
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| Gf3::new(x as i64)).collect())
        .collect();
    Matrix::from_rows(rows)
        .with_labels(m.labels().to_vec())
        .expect("labels copied from a valid matrix")
}

/// True iff every column with more than two nonzeros among its first `n` entries
/// has a nonzero entry after position `n`.
pub fn satisfies_property1(a: &Matrix<Gf3>, n: usize) -> bool {
    (0..a.cols()).all(|j| {
        let col = a.column(j);
        let head = col.iter().take(n).filter(|v| !v.is_zero()).count();
        head <= 2 || col.iter().skip(n).any(|v| !v.is_zero())
    })
}

/// Quotient by row permutation and row negation; canonical representatives, sorted.
pub fn dedup_representations(reps: impl IntoIterator<Item = SgRepresentation>) -> Vec<SgRepresentation> {
    let mut out: Vec<SgRepresentation> = reps.into_iter().map(|r| r.canonical()).collect();
    out.sort();
    out.dedup();
    out
}

/// A signed-graphic representation of the matroid of `[I | a]`-style input `a`
/// (any GF(3) or dyadic representation), or `None`.
pub fn is_signed_graphic(a: &ExactMatrix) -> Result<Option<SgRepresentation>, SgEnumError> {
    let m = LinearMatroid::new(ExactMatrix::Gf3(a.to_gf3()))?;
    Ok(enumerate_signed_graphic(&m)?.into_iter().next())
}
