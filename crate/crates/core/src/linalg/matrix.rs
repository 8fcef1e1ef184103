use std::collections::HashSet;
use std::fmt;

use super::{LinalgError, Scalar};

/// `e1, e2, ..., en`
pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// Dense row-major matrix with one label per column.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
    labels: Vec<String>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>, labels: Vec<String>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if labels.len() != cols {
            return Err(LinalgError::Shape(format!("{} labels for {cols} columns", labels.len())));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(LinalgError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            labels,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
            labels: default_labels(cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    /// Builds from nested rows with labels `e1..en`. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            labels: default_labels(c),
        }
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(rows: &[&[i64]]) -> Self
    where
        S: From<i64>,
    {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| S::from(v)).collect()).collect())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LinalgError> {
        let m = Matrix::new(self.rows, self.cols, std::mem::take(&mut self.data), labels)?;
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column_nonzeros(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| !self.get(i, j).is_zero()).count()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix<S> {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for i in 0..self.rows {
            for &j in idx {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.rows,
            cols: idx.len(),
            data,
            labels: idx.iter().map(|&j| self.labels[j].clone()).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<S> {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: idx.len(),
            cols: self.cols,
            data,
            labels: self.labels.clone(),
        }
    }

    /// Appends a labeled column.
    pub fn push_column(&self, col: &[S], label: String) -> Result<Matrix<S>, LinalgError> {
        if col.len() != self.rows {
            return Err(LinalgError::Shape(format!(
                "column of length {} for {} rows",
                col.len(),
                self.rows
            )));
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + 1));
        for (i, v) in col.iter().enumerate() {
            data.extend_from_slice(self.row(i));
            data.push(v.clone());
        }
        let mut labels = self.labels.clone();
        labels.push(label);
        Matrix::new(self.rows, self.cols + 1, data, labels)
    }

    /// Horizontal concatenation; labels of `rhs` must not collide.
    pub fn hstack(&self, rhs: &Matrix<S>) -> Result<Matrix<S>, LinalgError> {
        if self.rows != rhs.rows {
            return Err(LinalgError::Shape("row counts differ".into()));
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + rhs.cols));
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(rhs.row(i));
        }
        let mut labels = self.labels.clone();
        labels.extend(rhs.labels.iter().cloned());
        Matrix::new(self.rows, self.cols + rhs.cols, data, labels)
    }

    pub fn transpose(&self) -> Matrix<S> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
            labels: default_labels(self.rows),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn scale_row(&mut self, i: usize, by: &S) {
        for j in 0..self.cols {
            let v = self.get(i, j).mul(by);
            self.set(i, j, v);
        }
    }

    pub fn scale_column(&mut self, j: usize, by: &S) {
        for i in 0..self.rows {
            let v = self.get(i, j).mul(by);
            self.set(i, j, v);
        }
    }

    /// `row[target] -= factor * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &S) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(source, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(target, j).sub(&factor.mul(s));
            self.set(target, j, v);
        }
    }

    /// Reduced row echelon form plus pivot columns in increasing order.
    pub fn rref(&self) -> Result<(Matrix<S>, Vec<usize>), LinalgError> {
        S::row_reduce(self)
    }

    pub fn rank(&self) -> Result<usize, LinalgError> {
        Ok(self.rref()?.1.len())
    }

    /// Pivots on `(pivot_row, pivot_col)` then exchanges rows `pivot_row` and `swap_to_row`.
    ///
    /// The pivot row is scaled by the inverse of the pivot entry and every other
    /// entry of the pivot column is eliminated.
    pub fn pivot_swap(&self, pivot_row: usize, pivot_col: usize, swap_to_row: usize) -> Result<Matrix<S>, LinalgError> {
        let mut m = self.clone();
        m.pivot_swap_in_place(pivot_row, pivot_col, swap_to_row)?;
        Ok(m)
    }

    pub fn pivot_swap_in_place(&mut self, pivot_row: usize, pivot_col: usize, swap_to_row: usize) -> Result<(), LinalgError> {
        let a = self.get(pivot_row, pivot_col).clone();
        if a.is_zero() {
            return Err(LinalgError::ZeroPivot {
                row: pivot_row,
                col: pivot_col,
            });
        }
        let inv = a
            .checked_inv()
            .ok_or_else(|| LinalgError::NonDyadicDivision(a.to_string()))?;
        self.scale_row(pivot_row, &inv);
        for i in 0..self.rows {
            if i == pivot_row {
                continue;
            }
            let f = self.get(i, pivot_col).clone();
            self.add_row_multiple(i, pivot_row, &f);
        }
        self.swap_rows(pivot_row, swap_to_row);
        Ok(())
    }

    /// Entries formatted as in the matrix text format, one row per line.
    pub fn fmt_rows(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [{}]", self.rows, self.cols, self.labels.join(" "))?;
        f.write_str(&self.fmt_rows())
    }
}

/// Gauss-Jordan elimination that only ever divides by invertible entries.
pub(crate) fn gauss_jordan<S: Scalar>(m: &Matrix<S>) -> Result<(Matrix<S>, Vec<usize>), LinalgError> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let mut chosen = None;
        let mut saw_nonzero = None;
        for i in r..a.rows {
            let v = a.get(i, c);
            if v.is_zero() {
                continue;
            }
            saw_nonzero.get_or_insert(v.to_string());
            if v.checked_inv().is_some() {
                chosen = Some(i);
                break;
            }
        }
        let Some(p) = chosen else {
            if let Some(v) = saw_nonzero {
                return Err(LinalgError::NonDyadicDivision(v));
            }
            continue;
        };
        a.swap_rows(r, p);
        a.pivot_swap_in_place(r, c, r)?;
        pivots.push(c);
        r += 1;
    }
    Ok((a, pivots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Dyadic, Gf3};

    #[test]
    fn rref_identity_gf3() {
        let i3 = Matrix::<Gf3>::identity(3);
        let (r, p) = i3.rref().unwrap();
        assert_eq!(r, i3);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rref_swap_and_scale_gf3() {
        let m = Matrix::<Gf3>::from_ints(&[&[0, 2], &[1, 0]]);
        let (r, p) = m.rref().unwrap();
        assert_eq!(r, Matrix::from_ints(&[&[1, 0], &[0, 1]]));
        assert_eq!(p, vec![0, 1]);
        // input untouched
        assert_eq!(*m.get(0, 1), Gf3::new(2));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<Gf3>::zeros(3, 4).rank().unwrap(), 0);
        let twin = Matrix::<Dyadic>::from_ints(&[&[1, 1], &[2, 2], &[0, 0]]);
        assert_eq!(twin.rank().unwrap(), 1);
    }

    #[test]
    fn pivot_swap_on_unit_in_identity_is_noop() {
        let i3 = Matrix::<Dyadic>::identity(3);
        assert_eq!(i3.pivot_swap(1, 1, 1).unwrap(), i3);
    }

    #[test]
    fn pivot_swap_gf3_scales_by_inverse() {
        let m = Matrix::<Gf3>::from_ints(&[&[2, 1]]);
        assert_eq!(m.pivot_swap(0, 0, 0).unwrap(), Matrix::from_ints(&[&[1, 2]]));
    }

    #[test]
    fn pivot_swap_rejects_zero_pivot() {
        let m = Matrix::<Gf3>::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.pivot_swap(0, 0, 0), Err(LinalgError::ZeroPivot { row: 0, col: 0 }));
    }

    #[test]
    fn pivot_swap_matches_growth_panels() {
        // rows: t=0 processed, k=1, s=2; pivot column x = (b, 0, a) with b=1, a=2,
        // followed by y and z rows of A.
        let m = Matrix::<Dyadic>::from_ints(&[&[1, 1, 3, 1], &[0, 0, 5, 7], &[0, 2, 4, 6]]);
        let out = m.pivot_swap(2, 1, 1).unwrap();
        // row k becomes a^{-1} z, row t becomes y - b a^{-1} z, old row k moves to s
        let expect = Matrix::<Dyadic>::from_ints(&[&[1, 0, 1, -2], &[0, 1, 2, 3], &[0, 0, 5, 7]]);
        assert_eq!(out, expect);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let r = Matrix::<Gf3>::new(1, 2, vec![Gf3::ONE, Gf3::ONE], vec!["a".into(), "a".into()]);
        assert_eq!(r, Err(LinalgError::DuplicateLabel("a".into())));
    }
}
