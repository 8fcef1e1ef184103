//! Exact-arithmetic toolkit for dyadic and signed-graphic matroids.
//!
//! * [`linalg`]: GF(3) and dyadic scalars, dense matrices, the matrix text format.
//! * [`matroid`]: linear matroids with a memoized rank oracle, minors, duality,
//!   connectivity and isomorphism.
//! * [`generate`]: breadth-first generation of 3-connected dyadic matroids from
//!   the non-Fano matroid and its dual.
//! * [`sgenum`]: exhaustive pivot search for signed-graphic representations.
//! * [`graph`]: signed graphs, resigning, blocking pairs and cylinder flips.
//! * [`equivalence`]: fundamental-circuit incidence, forest scaling and
//!   row-equivalence classification.

pub mod equivalence;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod linalg;
pub mod matroid;
pub mod sample;
pub mod sgenum;
pub mod util;
