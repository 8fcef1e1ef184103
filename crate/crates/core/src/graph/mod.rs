//! Signed graphs: incidence matrices, bias-matroid circuits, balance, resigning,
//! blocking pairs and the cylinder flip.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{Gf3, Matrix, Scalar};
use crate::matroid::SubsetFamily;
use crate::sgenum::SgRepresentation;

mod flip;
mod io;

pub use flip::{cylinder_flip, find_splits, lemma_graph, verify_flip, CylinderSplit, Role};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("column {column} has {count} nonzero entries; at most 2 allowed")]
    TooManyNonzeros { column: String, count: usize },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("edge labels differ")]
    LabelMismatch,
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("malformed graph: {0}")]
    Parse(String),
    #[error("graph has {0} edges; at most 24 supported")]
    TooLarge(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    fn bit(self) -> u8 {
        match self {
            Sign::Positive => 0,
            Sign::Negative => 1,
        }
    }
}

/// An edge between vertices `u` and `v` (equal for a loop).
///
/// For a link, `into` records whether each end is oriented into its vertex; a
/// positive edge has exactly one end in, a negative edge both or neither.
/// Loops carry only a sign: a negative loop stands for a half-edge as well.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub label: String,
    pub u: usize,
    pub v: usize,
    into: [bool; 2],
    loop_sign: Sign,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn sign(&self) -> Sign {
        if self.is_loop() {
            self.loop_sign
        } else if self.into[0] != self.into[1] {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// Incidence entries at `u` and `v` (a loop puts its entry on `u`).
    pub fn entries(&self) -> [Gf3; 2] {
        if self.is_loop() {
            let at = if self.loop_sign == Sign::Negative { Gf3::MINUS_ONE } else { Gf3::ZERO };
            return [at, Gf3::ZERO];
        }
        let e = |into: bool| if into { Gf3::ONE } else { Gf3::MINUS_ONE };
        [e(self.into[0]), e(self.into[1])]
    }

    pub fn other_end(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }
}

/// A signed graph with labeled vertices and labeled, oriented edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SignedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl SignedGraph {
    pub fn new(vertices: impl IntoIterator<Item = impl Into<String>>) -> Result<Self, GraphError> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(GraphError::DuplicateLabel(v.clone()));
            }
        }
        Ok(SignedGraph { vertices, edges: Vec::new() })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_labels(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, GraphError> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, label: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.label == label)
    }

    fn check_label(&self, label: &str) -> Result<(), GraphError> {
        if self.edges.iter().any(|e| e.label == label) {
            return Err(GraphError::DuplicateLabel(label.to_string()));
        }
        Ok(())
    }

    /// Adds an edge with the default orientation: a positive edge is oriented from
    /// `v` into `u`, a negative edge into both ends.
    pub fn add_edge(&mut self, label: impl Into<String>, u: &str, v: &str, sign: Sign) -> Result<(), GraphError> {
        let into = match sign {
            Sign::Positive => [true, false],
            Sign::Negative => [true, true],
        };
        self.add_oriented(label, u, v, into, sign)
    }

    /// Adds an edge with explicit end orientations (ignored for loops, which use `sign`).
    pub fn add_oriented(
        &mut self,
        label: impl Into<String>,
        u: &str,
        v: &str,
        into: [bool; 2],
        sign: Sign,
    ) -> Result<(), GraphError> {
        let label = label.into();
        self.check_label(&label)?;
        let (u, v) = (self.vertex_index(u)?, self.vertex_index(v)?);
        self.edges.push(Edge { label, u, v, into, loop_sign: sign });
        Ok(())
    }

    /// `|V| x |E|` incidence matrix over GF(3), rows in vertex order, columns labeled by edge.
    pub fn incidence_matrix(&self) -> Matrix<Gf3> {
        let mut m = Matrix::zeros(self.vertices.len(), self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            let [a, b] = e.entries();
            m.set(e.u, j, a);
            if !e.is_loop() {
                m.set(e.v, j, b);
            }
        }
        m.with_labels(self.edge_labels()).expect("edge labels are distinct")
    }

    /// The signed graph of a matrix with at most two nonzeros per column: one vertex
    /// per row, one edge per column.
    pub fn from_incidence(m: &Matrix<Gf3>, vertices: &[String]) -> Result<Self, GraphError> {
        if vertices.len() != m.rows() {
            return Err(GraphError::Parse(format!("{} vertex names for {} rows", vertices.len(), m.rows())));
        }
        let mut g = SignedGraph::new(vertices.iter().cloned())?;
        for j in 0..m.cols() {
            let label = m.labels()[j].clone();
            let nz: Vec<usize> = (0..m.rows()).filter(|&i| !m.get(i, j).is_zero()).collect();
            match nz.as_slice() {
                [] => g.add_oriented(label, &vertices[0], &vertices[0], [false; 2], Sign::Positive)?,
                [i] => g.add_oriented(label, &vertices[*i], &vertices[*i], [false; 2], Sign::Negative)?,
                [i, k] => {
                    let into = [*m.get(*i, j) == Gf3::ONE, *m.get(*k, j) == Gf3::ONE];
                    let sign = if into[0] != into[1] { Sign::Positive } else { Sign::Negative };
                    g.add_oriented(label, &vertices[*i], &vertices[*k], into, sign)?
                }
                _ => return Err(GraphError::TooManyNonzeros { column: label, count: nz.len() }),
            }
        }
        Ok(g)
    }

    /// The signed graph of a representation: vertices named by its basis labels.
    pub fn from_representation(rep: &SgRepresentation) -> Result<Self, GraphError> {
        Self::from_incidence(rep.matrix(), &rep.basis_labels())
    }

    /// Edge labels of the bias matroid's circuits, from the graph alone.
    ///
    /// A set is independent iff every component of the subgraph it spans has at most
    /// as many edges as vertices and no positive cycle, i.e. is a tree or a tree
    /// plus one edge closing a negative cycle. Circuits are the minimal dependent sets:
    /// positive cycles, two negative cycles sharing one vertex, and handcuffs.
    pub fn circuits(&self) -> Result<SubsetFamily, GraphError> {
        let n = self.edges.len();
        if n > 24 {
            return Err(GraphError::TooLarge(n));
        }
        let labels = self.edge_labels();
        let mut independent = vec![false; 1 << n];
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            independent[mask as usize] = self.rank_of_mask(mask) == mask.count_ones() as usize;
            if !independent[mask as usize] && (0..n).all(|e| mask >> e & 1 == 0 || independent[(mask & !(1 << e)) as usize]) {
                out.push(mask as u64);
            }
        }
        Ok(SubsetFamily::from_masks(&labels, out))
    }

    /// Bias-matroid rank of an edge subset: vertices touched minus balanced components.
    pub fn rank_of_mask(&self, mask: u32) -> usize {
        let mut uf = ParityUnionFind::new(self.vertices.len());
        let mut touched = vec![false; self.vertices.len()];
        let mut unbalanced = vec![false; self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 0 {
                continue;
            }
            touched[e.u] = true;
            touched[e.v] = true;
            if e.is_loop() {
                if e.loop_sign == Sign::Negative {
                    unbalanced[e.u] = true;
                }
            } else if !uf.union(e.u, e.v, e.sign().bit()) {
                unbalanced[e.u] = true;
            }
        }
        let mut bad_roots = BTreeSet::new();
        for v in 0..self.vertices.len() {
            if unbalanced[v] {
                bad_roots.insert(uf.find(v).0);
            }
        }
        let roots: BTreeSet<usize> = (0..self.vertices.len()).filter(|&v| touched[v]).map(|v| uf.find(v).0).collect();
        let vertices = touched.iter().filter(|&&t| t).count();
        vertices - roots.iter().filter(|r| !bad_roots.contains(r)).count()
    }

    /// True iff no cycle (negative loops included) is negative.
    pub fn is_balanced(&self) -> bool {
        self.balanced_without(&[])
    }

    fn balanced_without(&self, removed: &[usize]) -> bool {
        let mut uf = ParityUnionFind::new(self.vertices.len());
        self.edges
            .iter()
            .filter(|e| !removed.iter().any(|&w| e.touches(w)))
            .all(|e| if e.is_loop() { e.loop_sign == Sign::Positive } else { uf.union(e.u, e.v, e.sign().bit()) })
    }

    /// True iff every negative cycle meets `u` or `v` (`u == v` tests a single vertex).
    pub fn is_blocking_pair(&self, u: &str, v: &str) -> Result<bool, GraphError> {
        let (u, v) = (self.vertex_index(u)?, self.vertex_index(v)?);
        Ok(self.balanced_without(&[u, v]))
    }

    /// Resigns around the vertex set `s`: every link with exactly one end in `s`
    /// changes sign (the rows of `s` are negated).
    pub fn resign<S: AsRef<str>>(&self, s: &[S]) -> Result<SignedGraph, GraphError> {
        let set: BTreeSet<usize> = s.iter().map(|v| self.vertex_index(v.as_ref())).collect::<Result<_, _>>()?;
        Ok(self.resign_indices(&set))
    }

    fn resign_indices(&self, set: &BTreeSet<usize>) -> SignedGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            if e.is_loop() {
                continue;
            }
            if set.contains(&e.u) {
                e.into[0] = !e.into[0];
            }
            if set.contains(&e.v) {
                e.into[1] = !e.into[1];
            }
        }
        g
    }

    /// Same vertex names, edge labels, endpoints and signs (orientation ignored).
    pub fn same_signed_graph(&self, other: &SignedGraph) -> bool {
        let key = |g: &SignedGraph| -> BTreeMap<String, (BTreeSet<String>, Sign)> {
            g.edges
                .iter()
                .map(|e| (e.label.clone(), ([g.vertices[e.u].clone(), g.vertices[e.v].clone()].into(), e.sign())))
                .collect()
        };
        let vs = |g: &SignedGraph| g.vertices.iter().cloned().collect::<BTreeSet<_>>();
        vs(self) == vs(other) && key(self) == key(other)
    }

    /// True iff `other` is this graph up to renaming vertices and resigning, with
    /// edges matched by label.
    pub fn switching_equivalent(&self, other: &SignedGraph) -> bool {
        if self.vertices.len() != other.vertices.len() || self.edges.len() != other.edges.len() {
            return false;
        }
        let pairs: Option<Vec<(&Edge, &Edge)>> =
            self.edges.iter().map(|e| other.edge(&e.label).map(|f| (e, f))).collect();
        let Some(pairs) = pairs else { return false };
        let mut map = vec![usize::MAX; self.vertices.len()];
        let mut used = vec![false; other.vertices.len()];
        match_vertices(&pairs, 0, &mut map, &mut used) && {
            // resigning exists iff the sign differences form a cut
            let mut uf = ParityUnionFind::new(self.vertices.len());
            pairs.iter().all(|(e, f)| {
                if e.is_loop() {
                    e.sign() == f.sign()
                } else {
                    uf.union(e.u, e.v, e.sign().bit() ^ f.sign().bit())
                }
            })
        }
    }
}

/// Extends `map` so every edge's endpoints land on its partner's endpoints.
fn match_vertices(pairs: &[(&Edge, &Edge)], at: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    let Some(&(e, f)) = pairs.get(at) else {
        // isolated vertices pair up arbitrarily
        return true;
    };
    let options: Vec<[usize; 2]> = if e.is_loop() != f.is_loop() {
        vec![]
    } else if e.is_loop() {
        vec![[f.u, f.u]]
    } else {
        vec![[f.u, f.v], [f.v, f.u]]
    };
    for [a, b] in options {
        let mut assigned = Vec::new();
        let mut ok = true;
        for (x, y) in [(e.u, a), (e.v, b)] {
            if map[x] == usize::MAX {
                if used[y] {
                    ok = false;
                    break;
                }
                map[x] = y;
                used[y] = true;
                assigned.push(x);
            } else if map[x] != y {
                ok = false;
                break;
            }
        }
        if ok && match_vertices(pairs, at + 1, map, used) {
            return true;
        }
        for x in assigned {
            used[map[x]] = false;
            map[x] = usize::MAX;
        }
    }
    false
}

/// Union-find tracking the parity of each vertex relative to its root.
pub(crate) struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityUnionFind {
    pub(crate) fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), parity: vec![0; n] }
    }

    pub(crate) fn find(&mut self, v: usize) -> (usize, u8) {
        let p = self.parent[v];
        if p == v {
            return (v, 0);
        }
        let (root, par) = self.find(p);
        self.parent[v] = root;
        self.parity[v] ^= par;
        (root, self.parity[v])
    }

    /// Records `parity(a) ^ parity(b) == bit`; false if that contradicts earlier unions.
    pub(crate) fn union(&mut self, a: usize, b: usize, bit: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == bit;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ bit;
        true
    }
}

impl fmt::Display for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

#[cfg(test)]
mod tests;
