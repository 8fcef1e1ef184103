//! Linear matroids over GF(3) or the dyadic rationals, with a memoized rank oracle.

mod connectivity;
mod iso;

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicU8, Ordering};
use std::sync::Arc;

use thiserror::Error;

use crate::linalg::{BareissKernel, ExactMatrix, LinalgError, Matrix, Scalar};
use crate::util::{indices_of, natural_cmp, subsets_of_size};

pub use iso::{are_isomorphic, element_invariants, ElementInvariants};

/// Largest groundset the bitmask-based oracle accepts.
pub const MAX_ELEMENTS: usize = 24;

/// Masks up to this size get a dense memo table.
const CACHE_LIMIT: usize = 16;
const UNKNOWN: u8 = u8::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("groundsets differ")]
    GroundsetMismatch,
    #[error("groundset of {0} elements exceeds the supported maximum")]
    TooLarge(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A canonical, deduplicated family of element-label sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SubsetFamily {
    sets: Vec<Vec<String>>,
}

impl SubsetFamily {
    pub fn new(sets: impl IntoIterator<Item = Vec<String>>) -> Self {
        let mut sets: Vec<Vec<String>> = sets
            .into_iter()
            .map(|mut s| {
                s.sort_by(|a, b| natural_cmp(a, b));
                s.dedup();
                s
            })
            .collect();
        sets.sort_by(|a, b| {
            a.iter()
                .zip(b.iter())
                .map(|(x, y)| natural_cmp(x, y))
                .find(|o| o.is_ne())
                .unwrap_or(a.len().cmp(&b.len()))
        });
        sets.dedup();
        SubsetFamily { sets }
    }

    pub fn from_masks(labels: &[String], masks: impl IntoIterator<Item = u64>) -> Self {
        Self::new(
            masks
                .into_iter()
                .map(|m| indices_of(m).into_iter().map(|i| labels[i].clone()).collect()),
        )
    }

    pub fn sets(&self) -> &[Vec<String>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: &[&str]) -> bool {
        let mut s: Vec<String> = set.iter().map(|x| x.to_string()).collect();
        s.sort_by(|a, b| natural_cmp(a, b));
        self.sets.contains(&s)
    }
}

impl fmt::Display for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sets.iter().map(|s| format!("{{{}}}", s.join(","))).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug)]
enum Kernel {
    Gf3 { rows: usize, columns: Vec<Vec<u8>> },
    Dyadic(BareissKernel),
}

impl Kernel {
    fn build(rep: &ExactMatrix) -> Kernel {
        match rep {
            ExactMatrix::Gf3(m) => Kernel::Gf3 {
                rows: m.rows(),
                columns: (0..m.cols()).map(|j| m.column(j).iter().map(|v| v.residue()).collect()).collect(),
            },
            ExactMatrix::Dyadic(m) => Kernel::Dyadic(BareissKernel::from_dyadic(m)),
        }
    }

    fn rank_of(&self, cols: &[usize]) -> usize {
        match self {
            Kernel::Gf3 { rows, columns } => gf3_rank(*rows, cols.iter().map(|&j| columns[j].as_slice())),
            Kernel::Dyadic(k) => k.rank_of(cols),
        }
    }
}

/// Rank of a list of GF(3) columns given as residues.
pub(crate) fn gf3_rank<'a>(rows: usize, cols: impl Iterator<Item = &'a [u8]>) -> usize {
    let mut m: Vec<Vec<u8>> = cols.map(|c| c.to_vec()).collect();
    let mut rank = 0;
    for i in 0..rows {
        let Some(p) = (rank..m.len()).find(|&c| m[c][i] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][i];
        for c in rank + 1..m.len() {
            let f = m[c][i];
            if f != 0 {
                let factor = (f * inv) % 3;
                for t in 0..rows {
                    m[c][t] = (m[c][t] + 3 * 3 - factor * m[rank][t]) % 3;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A matroid represented by the columns of an exact matrix with full row rank.
#[derive(Clone)]
pub struct LinearMatroid {
    rep: ExactMatrix,
    rank: usize,
    kernel: Arc<Kernel>,
    cache: Arc<Vec<AtomicU8>>,
}

impl fmt::Debug for LinearMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearMatroid")
            .field("rank", &self.rank)
            .field("rep", &self.rep)
            .finish()
    }
}

impl PartialEq for LinearMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl Eq for LinearMatroid {}

impl LinearMatroid {
    /// Builds the matroid of the columns of `rep`; redundant rows are removed.
    pub fn new(rep: impl Into<ExactMatrix>) -> Result<Self, MatroidError> {
        let rep = rep.into();
        if rep.cols() > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge(rep.cols()));
        }
        let kernel = Kernel::build(&rep);
        let all: Vec<usize> = (0..rep.cols()).collect();
        let rank = kernel.rank_of(&all);
        let (rep, kernel) = if rank < rep.rows() {
            let reduced = drop_zero_rows(&rep.rref()?.0, rank);
            let kernel = Kernel::build(&reduced);
            (reduced, kernel)
        } else {
            (rep, kernel)
        };
        let cache_len = if rep.cols() <= CACHE_LIMIT { 1usize << rep.cols() } else { 0 };
        Ok(LinearMatroid {
            rep,
            rank,
            kernel: Arc::new(kernel),
            cache: Arc::new((0..cache_len).map(|_| AtomicU8::new(UNKNOWN)).collect()),
        })
    }

    pub fn rep(&self) -> &ExactMatrix {
        &self.rep
    }

    pub fn groundset(&self) -> &[String] {
        self.rep.labels()
    }

    pub fn size(&self) -> usize {
        self.rep.cols()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn full_mask(&self) -> u64 {
        if self.size() == 64 {
            u64::MAX
        } else {
            (1u64 << self.size()) - 1
        }
    }

    pub fn element_index(&self, label: &str) -> Result<usize, MatroidError> {
        self.groundset()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| MatroidError::UnknownElement(label.to_string()))
    }

    pub fn mask_of_labels(&self, labels: &[&str]) -> Result<u64, MatroidError> {
        labels
            .iter()
            .try_fold(0u64, |m, l| Ok(m | 1 << self.element_index(l)?))
    }

    pub fn labels_of_mask(&self, mask: u64) -> Vec<String> {
        indices_of(mask).into_iter().map(|i| self.groundset()[i].clone()).collect()
    }

    pub fn rank_of(&self, subset: &[&str]) -> Result<usize, MatroidError> {
        Ok(self.rank_of_mask(self.mask_of_labels(subset)?))
    }

    /// Rank of the column set encoded by `mask` (bit `i` = column `i`).
    pub fn rank_of_mask(&self, mask: u64) -> usize {
        if let Some(slot) = self.cache.get(mask as usize) {
            let v = slot.load(Ordering::Relaxed);
            if v != UNKNOWN {
                return v as usize;
            }
            let r = self.kernel.rank_of(&indices_of(mask));
            slot.store(r as u8, Ordering::Relaxed);
            r
        } else {
            self.kernel.rank_of(&indices_of(mask))
        }
    }

    pub fn is_independent_mask(&self, mask: u64) -> bool {
        self.rank_of_mask(mask) == mask.count_ones() as usize
    }

    pub fn is_basis_mask(&self, mask: u64) -> bool {
        mask.count_ones() as usize == self.rank && self.is_independent_mask(mask)
    }

    pub fn basis_masks(&self) -> Vec<u64> {
        subsets_of_size(self.size(), self.rank)
            .map(|s| crate::util::mask_of(&s))
            .filter(|&m| self.is_basis_mask(m))
            .collect()
    }

    pub fn bases(&self) -> SubsetFamily {
        SubsetFamily::from_masks(self.groundset(), self.basis_masks())
    }

    /// Minimal dependent sets, as masks in increasing order of size.
    pub fn circuit_masks(&self) -> Vec<u64> {
        let mut found: Vec<u64> = Vec::new();
        for k in 1..=(self.rank + 1).min(self.size()) {
            for s in subsets_of_size(self.size(), k) {
                let m = crate::util::mask_of(&s);
                if found.iter().any(|&c| c & m == c) {
                    continue;
                }
                if !self.is_independent_mask(m) {
                    found.push(m);
                }
            }
        }
        found
    }

    pub fn circuits(&self) -> SubsetFamily {
        SubsetFamily::from_masks(self.groundset(), self.circuit_masks())
    }

    pub fn loops(&self) -> u64 {
        (0..self.size()).filter(|&i| self.rank_of_mask(1 << i) == 0).fold(0, |m, i| m | 1 << i)
    }

    pub fn coloops(&self) -> u64 {
        let full = self.full_mask();
        (0..self.size())
            .filter(|&i| self.rank_of_mask(full & !(1 << i)) < self.rank)
            .fold(0, |m, i| m | 1 << i)
    }

    /// No loops and no parallel pairs.
    pub fn is_simple(&self) -> bool {
        if self.loops() != 0 {
            return false;
        }
        subsets_of_size(self.size(), 2).all(|p| self.rank_of_mask(crate::util::mask_of(&p)) == 2)
    }

    /// No coloops and no series pairs.
    pub fn is_cosimple(&self) -> bool {
        let full = self.full_mask();
        if self.coloops() != 0 {
            return false;
        }
        subsets_of_size(self.size(), 2)
            .all(|p| self.rank_of_mask(full & !crate::util::mask_of(&p)) == self.rank)
    }

    /// Standard form: the reduced row echelon form of the representation and its pivot columns.
    pub fn standard_form(&self) -> Result<(ExactMatrix, Vec<usize>), MatroidError> {
        Ok(self.rep.rref()?)
    }

    /// The dual matroid, on the same groundset in the same column order.
    ///
    /// With `[I | D]` in standard form (pivot columns `P`, the rest `Q`) the dual is
    /// represented by the matrix with `-Dᵀ` on `P` and the identity on `Q`.
    pub fn dual(&self) -> Result<LinearMatroid, MatroidError> {
        let (std, pivots) = self.standard_form()?;
        let rep = match std {
            ExactMatrix::Gf3(m) => ExactMatrix::Gf3(dual_matrix(&m, &pivots)),
            ExactMatrix::Dyadic(m) => ExactMatrix::Dyadic(dual_matrix(&m, &pivots)),
        };
        LinearMatroid::new(rep)
    }

    /// Restriction to the columns in `keep` (bitmask), preserving order.
    pub fn restrict_mask(&self, keep: u64) -> Result<LinearMatroid, MatroidError> {
        let idx = indices_of(keep & self.full_mask());
        LinearMatroid::new(select_columns(&self.rep, &idx))
    }

    pub fn delete(&self, e: &str) -> Result<LinearMatroid, MatroidError> {
        let i = self.element_index(e)?;
        self.restrict_mask(self.full_mask() & !(1 << i))
    }

    pub fn delete_index(&self, i: usize) -> Result<LinearMatroid, MatroidError> {
        self.restrict_mask(self.full_mask() & !(1 << i))
    }

    /// Contraction; contracting a loop is the same as deleting it.
    pub fn contract(&self, e: &str) -> Result<LinearMatroid, MatroidError> {
        let i = self.element_index(e)?;
        self.contract_index(i)
    }

    pub fn contract_index(&self, i: usize) -> Result<LinearMatroid, MatroidError> {
        if self.rank_of_mask(1 << i) == 0 {
            return self.delete_index(i);
        }
        let rep = match &self.rep {
            ExactMatrix::Gf3(m) => ExactMatrix::Gf3(contract_matrix(m, i)?),
            ExactMatrix::Dyadic(m) => ExactMatrix::Dyadic(contract_matrix(m, i)?),
        };
        LinearMatroid::new(rep)
    }

    /// Same matroid with new element labels (one per column, in order).
    pub fn relabel(&self, labels: Vec<String>) -> Result<LinearMatroid, MatroidError> {
        let rep = match &self.rep {
            ExactMatrix::Gf3(m) => ExactMatrix::Gf3(m.clone().with_labels(labels)?),
            ExactMatrix::Dyadic(m) => ExactMatrix::Dyadic(m.clone().with_labels(labels)?),
        };
        LinearMatroid::new(rep)
    }

    /// Matroid of the columns taken in the order `perm` (column `perm[j]` becomes column `j`).
    pub fn permute(&self, perm: &[usize]) -> Result<LinearMatroid, MatroidError> {
        LinearMatroid::new(select_columns(&self.rep, perm))
    }

    /// The GF(3) projection of the representation.
    pub fn to_gf3(&self) -> Result<LinearMatroid, MatroidError> {
        LinearMatroid::new(ExactMatrix::Gf3(self.rep.to_gf3()))
    }

    pub fn is_connected(&self) -> bool {
        connectivity::is_connected(self)
    }

    pub fn is_3connected(&self) -> bool {
        connectivity::is_3connected(self)
    }
}

fn drop_zero_rows(m: &ExactMatrix, keep: usize) -> ExactMatrix {
    let idx: Vec<usize> = (0..keep).collect();
    match m {
        ExactMatrix::Gf3(m) => ExactMatrix::Gf3(m.select_rows(&idx)),
        ExactMatrix::Dyadic(m) => ExactMatrix::Dyadic(m.select_rows(&idx)),
    }
}

fn select_columns(m: &ExactMatrix, idx: &[usize]) -> ExactMatrix {
    match m {
        ExactMatrix::Gf3(m) => ExactMatrix::Gf3(m.select_columns(idx)),
        ExactMatrix::Dyadic(m) => ExactMatrix::Dyadic(m.select_columns(idx)),
    }
}

fn dual_matrix<S: Scalar>(std: &Matrix<S>, pivots: &[usize]) -> Matrix<S> {
    let n = std.cols();
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let mut out = Matrix::<S>::zeros(free.len(), n);
    for (row, &q) in free.iter().enumerate() {
        out.set(row, q, S::one());
        for (i, &p) in pivots.iter().enumerate() {
            out.set(row, p, std.get(i, q).neg());
        }
    }
    out.with_labels(std.labels().to_vec()).expect("labels copied from a valid matrix")
}

/// Pivots column `e` to a unit vector and removes that row and column.
fn contract_matrix<S: Scalar>(m: &Matrix<S>, e: usize) -> Result<Matrix<S>, LinalgError> {
    let mut order = vec![e];
    order.extend((0..m.cols()).filter(|&j| j != e));
    let (reduced, pivots) = m.select_columns(&order).rref()?;
    debug_assert_eq!(pivots.first(), Some(&0));
    let rows: Vec<usize> = (1..pivots.len()).collect();
    let cols: Vec<usize> = (1..m.cols()).collect();
    let body = reduced.select_rows(&rows).select_columns(&cols);
    // restore original column order
    let mut back: Vec<usize> = (0..cols.len()).collect();
    back.sort_by_key(|&j| order[j + 1]);
    Ok(body.select_columns(&back))
}

/// True iff both matroids have the same groundset labels and the same bases.
pub fn matroids_equal(a: &LinearMatroid, b: &LinearMatroid) -> Result<bool, MatroidError> {
    if a.groundset() != b.groundset() {
        let mut x = a.groundset().to_vec();
        let mut y = b.groundset().to_vec();
        x.sort();
        y.sort();
        if x != y {
            return Err(MatroidError::GroundsetMismatch);
        }
        let perm: Vec<usize> = a
            .groundset()
            .iter()
            .map(|l| b.element_index(l).expect("same label set"))
            .collect();
        return matroids_equal(a, &b.permute(&perm)?);
    }
    if a.rank() != b.rank() {
        return Ok(false);
    }
    Ok(subsets_of_size(a.size(), a.rank()).all(|s| {
        let m = crate::util::mask_of(&s);
        a.is_basis_mask(m) == b.is_basis_mask(m)
    }))
}

/// Basis masks as a set, for callers comparing many subsets.
pub fn basis_set(m: &LinearMatroid) -> HashSet<u64> {
    m.basis_masks().into_iter().collect()
}
