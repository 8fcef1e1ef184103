//! Lifting a GF(3) representation to a weak dyadic one.

use std::collections::VecDeque;

use num_bigint::BigInt;

use super::intdet::is_zero_or_power_of_two;
use super::{BareissKernel, Dyadic, Gf3, Matrix};
use crate::util::subsets_of_size;

/// Dyadic units `±2^k` with `|k| <= bound` that reduce to `v` mod 3.
fn unit_lifts(v: Gf3, bound: i64) -> Vec<Dyadic> {
    let mut out = Vec::new();
    for k in 0..=bound {
        for e in if k == 0 { vec![0] } else { vec![k, -k] } {
            for negative in [false, true] {
                let d = Dyadic::unit(negative, e);
                if Gf3::new(d.mod_p(3) as i64) == v {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// Columns that are the unit vectors `e_0..e_{r-1}`, one per row, if all are present.
fn identity_columns(m: &Matrix<Gf3>) -> Option<Vec<usize>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols()).find(|&j| {
                (0..m.rows()).all(|t| *m.get(t, j) == if t == i { Gf3::ONE } else { Gf3::ZERO })
            })
        })
        .collect()
}

/// A weak dyadic matrix that reduces to `m` mod 3, or `None` if the search finds none.
///
/// `m` must contain an identity submatrix (after row reduction if necessary; the
/// reduced form is then lifted). Entries on a spanning forest of the support graph
/// are fixed to `±1`; the remaining entries range over `±2^k`, `|k| <= bound`.
pub fn dyadic_lift(m: &Matrix<Gf3>, bound: i64) -> Option<Matrix<Dyadic>> {
    let m = match identity_columns(m) {
        Some(_) => m.clone(),
        None => {
            let (red, pivots) = m.rref().ok()?;
            red.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
        }
    };
    let basis = identity_columns(&m)?;
    let m = &m;
    let (r, n) = (m.rows(), m.cols());
    let others: Vec<usize> = (0..n).filter(|j| !basis.contains(j)).collect();
    // support graph: row vertices 0..r, column vertices r..r+|others|
    let entries: Vec<(usize, usize)> = others
        .iter()
        .flat_map(|&j| (0..r).filter(move |&i| *m.get(i, j) != Gf3::ZERO).map(move |i| (i, j)))
        .collect();
    let forest = bfs_forest(r, &others, &entries);
    let free: Vec<(usize, usize)> = entries.iter().copied().filter(|e| !forest.contains(e)).collect();
    let options: Vec<Vec<Dyadic>> = free.iter().map(|&(i, j)| unit_lifts(*m.get(i, j), bound)).collect();
    let mut lifted: Matrix<Dyadic> = m.map(|v| Dyadic::from_int(v.lift()));
    let mut choice = vec![0usize; free.len()];
    loop {
        for (t, &(i, j)) in free.iter().enumerate() {
            lifted.set(i, j, options[t][choice[t]].clone());
        }
        if is_weak(&lifted) {
            return Some(lifted);
        }
        // odometer
        let mut t = 0;
        loop {
            if t == free.len() {
                return None;
            }
            choice[t] += 1;
            if choice[t] < options[t].len() {
                break;
            }
            choice[t] = 0;
            t += 1;
        }
    }
}

fn is_weak(m: &Matrix<Dyadic>) -> bool {
    let kernel = BareissKernel::from_dyadic(m);
    subsets_of_size(m.cols(), m.rows()).all(|cols| {
        let d: BigInt = kernel.det_of(&cols);
        is_zero_or_power_of_two(&d)
    })
}

fn bfs_forest(r: usize, others: &[usize], entries: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let nodes = r + others.len();
    let col_node = |j: usize| r + others.iter().position(|&o| o == j).expect("column in list");
    let mut adj: Vec<Vec<(usize, (usize, usize))>> = vec![Vec::new(); nodes];
    for &(i, j) in entries {
        adj[i].push((col_node(j), (i, j)));
        adj[col_node(j)].push((i, (i, j)));
    }
    let mut seen = vec![false; nodes];
    let mut forest = Vec::new();
    for start in 0..nodes {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &(v, e) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    forest.push(e);
                    queue.push_back(v);
                }
            }
        }
    }
    forest
}
