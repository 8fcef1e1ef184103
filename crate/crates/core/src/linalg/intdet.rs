//! Fraction-free (Bareiss) elimination on integer-scaled dyadic columns.
//!
//! Scaling a column by a power of two scales every determinant through it by
//! the same power, so rank and "is the determinant `±2^k`" are unaffected.

use num_bigint::BigInt;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use super::{Dyadic, Matrix};

/// Columns of `m`, each multiplied by the least power of two that clears its denominators.
pub fn integer_columns(m: &Matrix<Dyadic>) -> Vec<Vec<BigInt>> {
    (0..m.cols())
        .map(|j| {
            let col = m.column(j);
            let shift = col
                .iter()
                .filter(|v| !num_traits::Zero::is_zero(v.numerator()))
                .map(|v| v.exponent())
                .min()
                .unwrap_or(0)
                .min(0);
            col.iter()
                .map(|v| {
                    if v.numerator().is_zero() {
                        BigInt::zero()
                    } else {
                        v.numerator() << (v.exponent() - shift) as usize
                    }
                })
                .collect()
        })
        .collect()
}

/// Integer column store answering rank and determinant queries on column subsets.
#[derive(Clone, Debug)]
pub struct BareissKernel {
    rows: usize,
    small: Option<Vec<Vec<i128>>>,
    big: Vec<Vec<BigInt>>,
}

impl BareissKernel {
    pub fn new(rows: usize, columns: Vec<Vec<BigInt>>) -> Self {
        let small = columns
            .iter()
            .map(|c| c.iter().map(|v| v.to_i64().map(i128::from)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>();
        BareissKernel {
            rows,
            small,
            big: columns,
        }
    }

    pub fn from_dyadic(m: &Matrix<Dyadic>) -> Self {
        Self::new(m.rows(), integer_columns(m))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.big.len()
    }

    pub fn column(&self, j: usize) -> &[BigInt] {
        &self.big[j]
    }

    pub fn rank_of(&self, cols: &[usize]) -> usize {
        if let Some(small) = &self.small {
            let m = gather(self.rows, cols, |j| &small[j]);
            if let Some((rank, _)) = bareiss(m) {
                return rank;
            }
        }
        let m = gather(self.rows, cols, |j| &self.big[j]);
        bareiss(m).expect("BigInt elimination is exact").0
    }

    /// Determinant of the square submatrix on `cols` (`cols.len()` must equal the row count).
    pub fn det_of(&self, cols: &[usize]) -> BigInt {
        assert_eq!(cols.len(), self.rows, "determinant needs a square selection");
        if let Some(small) = &self.small {
            let m = gather(self.rows, cols, |j| &small[j]);
            if let Some((_, d)) = bareiss(m) {
                return BigInt::from(d);
            }
        }
        let m = gather(self.rows, cols, |j| &self.big[j]);
        bareiss(m).expect("BigInt elimination is exact").1
    }
}

/// True iff `v` is zero or `±2^k`.
pub(crate) fn is_zero_or_power_of_two(v: &BigInt) -> bool {
    if v.is_zero() {
        return true;
    }
    let a = v.abs();
    let tz = a.trailing_zeros().unwrap_or(0);
    (a >> tz as usize).is_one()
}

fn gather<'a, T: Clone + 'a>(rows: usize, cols: &[usize], col: impl Fn(usize) -> &'a Vec<T>) -> Vec<Vec<T>> {
    (0..rows).map(|i| cols.iter().map(|&j| col(j)[i].clone()).collect()).collect()
}

/// Returns `(rank, det)`; `det` is meaningful only for square input and is zero
/// when the matrix is singular. `None` signals overflow.
fn bareiss<T>(mut m: Vec<Vec<T>>) -> Option<(usize, T)>
where
    T: Clone + Zero + One + CheckedMul + CheckedSub + CheckedDiv + std::ops::Neg<Output = T>,
{
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut r = 0;
    let mut negate = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            negate = !negate;
        }
        let pivot = m[r][c].clone();
        for i in r + 1..rows {
            let lead = m[i][c].clone();
            for j in c + 1..cols {
                let a = pivot.checked_mul(&m[i][j])?;
                let b = lead.checked_mul(&m[r][j])?;
                m[i][j] = a.checked_sub(&b)?.checked_div(&prev)?;
            }
            m[i][c] = T::zero();
        }
        prev = pivot;
        r += 1;
    }
    let det = if rows == cols && r == rows && rows > 0 {
        if negate {
            -prev
        } else {
            prev
        }
    } else if rows == 0 && cols == 0 {
        T::one()
    } else {
        T::zero()
    };
    Some((r, det))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        let r = rows.len();
        let c = rows[0].len();
        (0..c).map(|j| (0..r).map(|i| BigInt::from(rows[i][j])).collect()).collect()
    }

    #[test]
    fn determinants() {
        let k = BareissKernel::new(3, big(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]));
        assert_eq!(k.det_of(&[0, 1, 2]), BigInt::from(2));
        assert_eq!(k.det_of(&[1, 0, 2]), BigInt::from(-2));
        let k = BareissKernel::new(2, big(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.det_of(&[0, 1]), BigInt::zero());
        assert_eq!(k.rank_of(&[0, 1]), 1);
        assert_eq!(k.rank_of(&[]), 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let huge = i64::MAX / 2;
        let k = BareissKernel::new(2, big(&[&[huge, huge - 1], &[huge - 3, huge]]));
        let expect = BigInt::from(huge) * BigInt::from(huge) - BigInt::from(huge - 1) * BigInt::from(huge - 3);
        assert_eq!(k.det_of(&[0, 1]), expect);
    }

    #[test]
    fn scaled_columns_are_integral() {
        let m = Matrix::<Dyadic>::from_rows(vec![vec!["1/2^2".parse().unwrap(), "3".parse().unwrap()]]);
        let cols = integer_columns(&m);
        assert_eq!(cols[0][0], BigInt::from(1));
        assert_eq!(cols[1][0], BigInt::from(3));
    }

    #[test]
    fn power_of_two_detection() {
        for (v, ok) in [(0, true), (1, true), (-8, true), (6, false), (3, false), (-1, true)] {
            assert_eq!(is_zero_or_power_of_two(&BigInt::from(v)), ok, "{v}");
        }
    }
}
