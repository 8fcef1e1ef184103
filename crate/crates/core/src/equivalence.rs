//! Fundamental-circuit incidence matrices, forest scaling of standard
//! representations, and row-equivalence of signed-graphic representations.
//!
//! A standard representation `[I_r | D]` has its first `r` columns equal to the
//! identity; row `i` is labeled by column `i`. Its associated bipartite graph has
//! one vertex per element, joining row `i` to column `j` of `D` when `D[i][j] != 0`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::linalg::{Dyadic, ExactMatrix, LinalgError, Matrix, Scalar};
use crate::sgenum::SgRepresentation;
use crate::util::natural_cmp;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquivalenceError {
    #[error("column labels differ")]
    LabelMismatch,
    #[error("not in standard form: the first {0} columns are not the identity")]
    NotStandardForm(usize),
    #[error("invalid forest: {0}")]
    InvalidForest(String),
    #[error("target for ({row}, {col}) is zero")]
    ZeroTarget { row: String, col: String },
    #[error("target {target} at ({row}, {col}) is not plus or minus the current entry {current}")]
    UnreachableTarget {
        row: String,
        col: String,
        target: String,
        current: String,
    },
    #[error("the fundamental-circuit incidence matrices differ")]
    SupportMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Support pattern of `D` in a standard representation `[I_r | D]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FundamentalIncidence {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    support: Vec<Vec<bool>>,
}

impl FundamentalIncidence {
    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.support[i][j]
    }

    /// The 0/1 matrix, rows labeled by the basis, columns by the other elements.
    pub fn to_matrix(&self) -> Vec<Vec<u8>> {
        self.support.iter().map(|r| r.iter().map(|&b| u8::from(b)).collect()).collect()
    }

    /// Vertex ids of the bipartite graph: rows `0..r`, then columns `r..n`.
    fn neighbors(&self, v: usize) -> Vec<usize> {
        let r = self.rows();
        if v < r {
            (0..self.cols()).filter(|&j| self.support[v][j]).map(|j| r + j).collect()
        } else {
            (0..r).filter(|&i| self.support[i][v - r]).collect()
        }
    }

    fn label(&self, v: usize) -> &str {
        let r = self.rows();
        if v < r {
            &self.row_labels[v]
        } else {
            &self.col_labels[v - r]
        }
    }

    fn vertex_cmp(&self, a: usize, b: usize) -> Ordering {
        natural_cmp(self.label(a), self.label(b))
    }
}

/// An edge of the associated bipartite graph: row `row` and column `col` of `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForestEdge {
    pub row: usize,
    pub col: usize,
}

/// Forest edges with the value each entry of `D` should take.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestAssignment<S> {
    pub edges: Vec<ForestEdge>,
    pub targets: Vec<S>,
}

impl<S: Scalar> ForestAssignment<S> {
    pub fn new(edges: Vec<ForestEdge>, targets: Vec<S>) -> Result<Self, EquivalenceError> {
        if edges.len() != targets.len() {
            return Err(EquivalenceError::InvalidForest(format!(
                "{} edges but {} targets",
                edges.len(),
                targets.len()
            )));
        }
        Ok(ForestAssignment { edges, targets })
    }

    /// Every target equal to 1.
    pub fn ones(edges: Vec<ForestEdge>) -> Self {
        let targets = vec![S::one(); edges.len()];
        ForestAssignment { edges, targets }
    }

    /// The current entries of `rep` on the forest, so normalizing is the identity.
    pub fn current<T: Scalar>(rep: &Matrix<T>, edges: Vec<ForestEdge>) -> Result<ForestAssignment<T>, EquivalenceError> {
        let r = standard_rank(rep)?;
        let targets = edges.iter().map(|e| rep.get(e.row, r + e.col).clone()).collect();
        Ok(ForestAssignment { edges, targets })
    }
}

/// Number of rows of a matrix whose leading columns form an identity.
fn standard_rank<S: Scalar>(rep: &Matrix<S>) -> Result<usize, EquivalenceError> {
    let r = rep.rows();
    let ok = r <= rep.cols()
        && (0..r).all(|i| (0..r).all(|j| *rep.get(i, j) == if i == j { S::one() } else { S::zero() }));
    if ok {
        Ok(r)
    } else {
        Err(EquivalenceError::NotStandardForm(r))
    }
}

pub fn fundamental_incidence<S: Scalar>(rep: &Matrix<S>) -> Result<FundamentalIncidence, EquivalenceError> {
    let r = standard_rank(rep)?;
    let labels = rep.labels();
    Ok(FundamentalIncidence {
        row_labels: labels[..r].to_vec(),
        col_labels: labels[r..].to_vec(),
        support: (0..r).map(|i| (r..rep.cols()).map(|j| !rep.get(i, j).is_zero()).collect()).collect(),
    })
}

/// `n` minus the number of components of the associated bipartite graph.
pub fn cycle_basis_size(fi: &FundamentalIncidence) -> usize {
    let n = fi.rows() + fi.cols();
    let mut seen = vec![false; n];
    let mut components = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in fi.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    n - components
}

/// Breadth-first spanning forest, roots and neighbors taken in label order.
pub fn spanning_forest(fi: &FundamentalIncidence) -> Vec<ForestEdge> {
    let r = fi.rows();
    let n = r + fi.cols();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| fi.vertex_cmp(a, b));
    let mut seen = vec![false; n];
    let mut edges = Vec::new();
    for &root in &order {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let mut next = fi.neighbors(v);
            next.sort_by(|&a, &b| fi.vertex_cmp(a, b));
            for w in next {
                if !seen[w] {
                    seen[w] = true;
                    let (row, col) = if v < r { (v, w - r) } else { (w, v - r) };
                    edges.push(ForestEdge { row, col });
                    queue.push_back(w);
                }
            }
        }
    }
    edges
}

/// Leaves of the forest in removal order: each step takes the least (by label)
/// vertex of degree 1 and returns it with the index of its edge.
fn peel_order(fi: &FundamentalIncidence, edges: &[ForestEdge]) -> Result<Vec<(usize, usize)>, EquivalenceError> {
    let r = fi.rows();
    let n = r + fi.cols();
    let mut incident: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (k, e) in edges.iter().enumerate() {
        if e.row >= fi.rows() || e.col >= fi.cols() {
            return Err(EquivalenceError::InvalidForest(format!("edge ({}, {}) is out of range", e.row, e.col)));
        }
        if !fi.get(e.row, e.col) {
            return Err(EquivalenceError::InvalidForest(format!(
                "({}, {}) is a zero entry",
                fi.row_labels[e.row], fi.col_labels[e.col]
            )));
        }
        if !incident[e.row].insert(k) || !incident[r + e.col].insert(k) || edges[..k].contains(e) {
            return Err(EquivalenceError::InvalidForest("repeated edge".into()));
        }
    }
    let mut order = Vec::with_capacity(edges.len());
    let mut leaves: Vec<usize> = (0..n).filter(|&v| incident[v].len() == 1).collect();
    while order.len() < edges.len() {
        leaves.retain(|&v| incident[v].len() == 1);
        let Some(&leaf) = leaves.iter().min_by(|&&a, &&b| fi.vertex_cmp(a, b)) else {
            return Err(EquivalenceError::InvalidForest("the edges contain a cycle".into()));
        };
        let k = *incident[leaf].iter().next().expect("degree one");
        let e = edges[k];
        let other = if leaf < r { r + e.col } else { e.row };
        incident[leaf].clear();
        incident[other].remove(&k);
        if incident[other].len() == 1 {
            leaves.push(other);
        }
        order.push((leaf, k));
    }
    Ok(order)
}

/// Scales rows and columns of `D` so each forest entry equals its target.
///
/// Leaves are peeled off in label order and fixed in reverse, each by scaling its
/// own row or column; a row scaling by `t` is undone on the identity by scaling
/// that identity column by `t^-1`, so the result is again `[I_r | D2]`.
pub fn normalize_brylawski<S: Scalar>(rep: &Matrix<S>, fa: &ForestAssignment<S>) -> Result<Matrix<S>, EquivalenceError> {
    let fi = fundamental_incidence(rep)?;
    let r = fi.rows();
    if fa.edges.len() != fa.targets.len() {
        return Err(EquivalenceError::InvalidForest("edge and target counts differ".into()));
    }
    for (e, t) in fa.edges.iter().zip(&fa.targets) {
        if t.is_zero() && e.row < r && e.col < fi.cols() {
            return Err(EquivalenceError::ZeroTarget {
                row: fi.row_labels[e.row].clone(),
                col: fi.col_labels[e.col].clone(),
            });
        }
    }
    let order = peel_order(&fi, &fa.edges)?;
    let mut out = rep.clone();
    for &(leaf, k) in order.iter().rev() {
        let e = fa.edges[k];
        let current = out.get(e.row, r + e.col);
        let inv = current.checked_inv().ok_or_else(|| LinalgError::NonDyadicDivision(current.to_string()))?;
        let t = fa.targets[k].mul(&inv);
        if leaf < r {
            let t_inv = t.checked_inv().ok_or_else(|| LinalgError::NonDyadicDivision(t.to_string()))?;
            out.scale_row(leaf, &t);
            out.scale_column(leaf, &t_inv);
        } else {
            out.scale_column(leaf, &t);
        }
    }
    Ok(out)
}

/// As [`normalize_brylawski`], but only scalings by `±1` are allowed, so every
/// target must be plus or minus the entry it replaces.
pub fn normalize_restricted<S: Scalar>(rep: &Matrix<S>, fa: &ForestAssignment<S>) -> Result<Matrix<S>, EquivalenceError> {
    let fi = fundamental_incidence(rep)?;
    let r = fi.rows();
    for (e, t) in fa.edges.iter().zip(&fa.targets) {
        if e.row >= r || e.col >= fi.cols() {
            continue;
        }
        let current = rep.get(e.row, r + e.col);
        if *t != *current && *t != current.neg() {
            return Err(EquivalenceError::UnreachableTarget {
                row: fi.row_labels[e.row].clone(),
                col: fi.col_labels[e.col].clone(),
                target: t.to_string(),
                current: current.to_string(),
            });
        }
    }
    normalize_brylawski(rep, fa)
}

/// True iff row and column scalings carry one standard representation to the other.
///
/// Both are normalized to all-ones targets on the spanning forest of the first.
pub fn projectively_equivalent<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<bool, EquivalenceError> {
    if a.labels() != b.labels() || a.rows() != b.rows() {
        return Err(EquivalenceError::LabelMismatch);
    }
    let (fa, fb) = (fundamental_incidence(a)?, fundamental_incidence(b)?);
    if fa != fb {
        return Err(EquivalenceError::SupportMismatch);
    }
    let ones = ForestAssignment::ones(spanning_forest(&fa));
    Ok(normalize_brylawski(a, &ones)? == normalize_brylawski(b, &ones)?)
}

/// Reduced row echelon form over the rationals of the `{0, ±1}` integer lift.
///
/// Incidence matrices of signed graphs reduce to binet matrices, whose entries
/// are dyadic, so the result is exact in the dyadic domain.
pub fn rational_rref(rep: &SgRepresentation) -> Result<Matrix<Dyadic>, EquivalenceError> {
    let lifted = rep.matrix().map(|v| Dyadic::from_int(v.lift()));
    let (red, pivots) = lifted.rref()?;
    Ok(red.select_rows(&(0..pivots.len()).collect::<Vec<_>>()))
}

/// The serialized rational row echelon form: equal exactly for row-equivalent representations.
pub fn fingerprint(rep: &SgRepresentation) -> Result<String, EquivalenceError> {
    Ok(ExactMatrix::Dyadic(rational_rref(rep)?).to_flat())
}

/// True iff row operations over the rationals carry the `{0, ±1}` lift of one
/// representation to that of the other, columns in groundset order.
pub fn row_equivalent(a: &SgRepresentation, b: &SgRepresentation) -> Result<bool, EquivalenceError> {
    if a.col_labels() != b.col_labels() {
        return Err(EquivalenceError::LabelMismatch);
    }
    Ok(rational_rref(a)? == rational_rref(b)?)
}

/// A row-equivalence class: member indices (into the input list) and the shared fingerprint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub members: Vec<usize>,
    pub fingerprint: String,
}

/// How the representations of one matroid relate under row-equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Agreement {
    /// Only one representation, so there is no pair to compare.
    Single,
    All,
    None,
    Mixed,
}

/// Classes ordered by their least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub classes: Vec<EquivalenceClass>,
}

impl Partition {
    /// Class sizes, largest first.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.classes.iter().map(|c| c.members.len()).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    pub fn all_equivalent(&self) -> bool {
        self.classes.len() == 1
    }

    pub fn none_equivalent(&self) -> bool {
        self.classes.iter().all(|c| c.members.len() == 1)
    }

    /// `None` for an empty partition.
    pub fn agreement(&self) -> Option<Agreement> {
        let total: usize = self.classes.iter().map(|c| c.members.len()).sum();
        if total == 0 {
            None
        } else if total == 1 {
            Some(Agreement::Single)
        } else if self.all_equivalent() {
            Some(Agreement::All)
        } else if self.none_equivalent() {
            Some(Agreement::None)
        } else {
            Some(Agreement::Mixed)
        }
    }

    /// Text report: a summary line, then per class its size, 1-based members and fingerprint.
    pub fn report(&self) -> String {
        let total: usize = self.classes.iter().map(|c| c.members.len()).sum();
        let sizes: Vec<String> = self.sizes().iter().map(usize::to_string).collect();
        let mut out = format!(
            "representations {total}\nclasses {} sizes {}\n",
            self.classes.len(),
            if sizes.is_empty() { "-".to_string() } else { sizes.join(" ") }
        );
        for (i, c) in self.classes.iter().enumerate() {
            let members: Vec<String> = c.members.iter().map(|m| (m + 1).to_string()).collect();
            out.push_str(&format!(
                "class {} size {} members {}\n  rref {}\n",
                i + 1,
                c.members.len(),
                members.join(" "),
                c.fingerprint
            ));
        }
        out
    }
}

pub fn classify_row_equivalence(reps: &[SgRepresentation]) -> Result<Partition, EquivalenceError> {
    let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, rep) in reps.iter().enumerate() {
        if rep.col_labels() != reps[0].col_labels() {
            return Err(EquivalenceError::LabelMismatch);
        }
        groups.entry(fingerprint(rep)?).or_default().push(i);
    }
    let mut classes: Vec<EquivalenceClass> = groups
        .into_iter()
        .map(|(fingerprint, members)| EquivalenceClass { members, fingerprint })
        .collect();
    classes.sort_by_key(|c| c.members[0]);
    Ok(Partition { classes })
}

#[cfg(test)]
mod tests;
