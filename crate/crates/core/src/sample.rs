//! Random instances for property checks, driven by a caller-supplied RNG.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{lemma_graph, CylinderSplit, Sign, SignedGraph};
use crate::linalg::{BareissKernel, Dyadic, Matrix, Scalar};

/// A signed graph with `1..=max_vertices` vertices `v0, v1, ...` and
/// `0..=max_edges` edges `e0, e1, ...`; loops and parallel edges allowed,
/// links randomly oriented.
pub fn signed_graph(rng: &mut impl Rng, max_vertices: usize, max_edges: usize) -> SignedGraph {
    let nv = rng.gen_range(1..=max_vertices);
    let ne = rng.gen_range(0..=max_edges);
    let names: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let mut g = SignedGraph::new(names.clone()).expect("distinct names");
    for i in 0..ne {
        let (u, v) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
        let sign = if rng.gen() { Sign::Negative } else { Sign::Positive };
        let flip: bool = rng.gen();
        let into = match sign {
            Sign::Positive => [!flip, flip],
            Sign::Negative => [flip, flip],
        };
        g.add_oriented(format!("e{i}"), &names[u], &names[v], into, sign)
            .expect("vertices exist");
    }
    g
}

/// Each vertex independently with probability one half.
pub fn vertex_subset(rng: &mut impl Rng, g: &SignedGraph) -> Vec<String> {
    g.vertices().iter().filter(|_| rng.gen()).cloned().collect()
}

/// A connected all-positive graph on `names` plus `extra` more vertices:
/// a random spanning tree and up to `chords` further edges.
fn positive_graph(rng: &mut impl Rng, names: &[&str], extra: usize, chords: usize, prefix: &str) -> SignedGraph {
    let mut vertices: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    vertices.extend((0..extra).map(|i| format!("{prefix}x{i}")));
    let mut g = SignedGraph::new(vertices.clone()).expect("distinct names");
    let mut order = vertices.clone();
    order.shuffle(rng);
    let mut pairs: Vec<(String, String)> = (1..order.len())
        .map(|i| (order[i].clone(), order[rng.gen_range(0..i)].clone()))
        .collect();
    for _ in 0..rng.gen_range(0..=chords) {
        let u = vertices.choose(rng).unwrap().clone();
        let v = vertices.choose(rng).unwrap().clone();
        if u != v {
            pairs.push((u, v));
        }
    }
    for (i, (u, v)) in pairs.iter().enumerate() {
        g.add_edge(format!("{prefix}{i}"), u, v, Sign::Positive).expect("vertices exist");
    }
    g
}

/// A glued graph of the flip lemma with its split; when `degenerate`, `s1 == t1`.
pub fn lemma_instance(rng: &mut impl Rng, degenerate: bool) -> (SignedGraph, CylinderSplit) {
    let a = if degenerate { ["a", "b", "a", "d"] } else { ["a", "b", "c", "d"] };
    let h1_names: &[&str] = if degenerate { &["a", "b", "d"] } else { &["a", "b", "c", "d"] };
    let (extra1, extra2) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
    let h1 = positive_graph(rng, h1_names, extra1, 3, "g");
    let h2 = positive_graph(rng, &["w", "x", "y", "z"], extra2, 3, "h");
    lemma_graph(&h1, &h2, a, ["w", "x", "y", "z"], false).expect("terminals exist")
}

/// An `rows x cols` weak dyadic matrix of full row rank with entries in
/// `{0, ±1, ±2, ±1/2}`, by rejection.
pub fn weak_dyadic(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix<Dyadic> {
    let values: Vec<Dyadic> = [(0, 0), (1, 0), (-1, 0), (1, 1), (-1, 1), (1, -1), (-1, -1)]
        .iter()
        .map(|&(n, e)| Dyadic::new(n, e))
        .collect();
    loop {
        let data: Vec<Dyadic> = (0..rows * cols)
            .map(|_| if rng.gen_bool(0.4) { Dyadic::zero() } else { values.choose(rng).unwrap().clone() })
            .collect();
        let m = Matrix::new(rows, cols, data, crate::linalg::default_labels(cols)).expect("shape");
        let all: Vec<usize> = (0..cols).collect();
        if BareissKernel::from_dyadic(&m).rank_of(&all) == rows && m.is_weak_dyadic() {
            return m;
        }
    }
}

/// `m` in reduced row echelon form with its pivot columns moved to the front,
/// keeping their labels.
pub fn standard_form(m: &Matrix<Dyadic>) -> Matrix<Dyadic> {
    let (r, pivots) = m.rref().expect("dyadic elimination");
    let mut order = pivots.clone();
    order.extend((0..m.cols()).filter(|j| !pivots.contains(j)));
    r.select_rows(&(0..pivots.len()).collect::<Vec<_>>()).select_columns(&order)
}

/// For `m = [I | D]`, the matrix `[I | diag(a) D diag(b)]` with random units
/// `a`, `b` of the form `±2^k`, `|k| <= 3`: a row and column scaling of `m`
/// brought back to standard form.
pub fn standard_scaling(rng: &mut impl Rng, m: &Matrix<Dyadic>) -> Matrix<Dyadic> {
    let r = m.rows();
    let mut out = m.clone();
    for i in 0..r {
        let a = Dyadic::unit(rng.gen(), rng.gen_range(-3..=3));
        out.scale_row(i, &a);
        out.scale_column(i, &a.checked_inv().expect("units are invertible"));
    }
    for j in r..m.cols() {
        out.scale_column(j, &Dyadic::unit(rng.gen(), rng.gen_range(-3..=3)));
    }
    out
}
