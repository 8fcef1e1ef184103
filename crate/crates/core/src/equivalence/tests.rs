use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fixtures::{non_fano, Appendix};
use crate::linalg::Gf3;

fn d(v: i64) -> Dyadic {
    Dyadic::from_int(v)
}

fn reps(a: Appendix) -> Vec<SgRepresentation> {
    a.displayed_reps().into_iter().map(|m| SgRepresentation::new(m).unwrap()).collect()
}

/// Diagonal scalings `rho`, `gamma` with `b[i][j] = rho_i a[i][j] gamma_j` on the
/// support of `D`, found by propagation over the bipartite graph, or `None`.
fn scaling_witness(a: &Matrix<Dyadic>, b: &Matrix<Dyadic>) -> Option<()> {
    let r = a.rows();
    let n = a.cols();
    let q = |x: &Dyadic| x.to_rational();
    // vertex values: rows 0..r, columns r..n
    let mut val: Vec<Option<num_rational::BigRational>> = vec![None; n];
    for start in 0..n {
        if val[start].is_some() {
            continue;
        }
        val[start] = Some(num_rational::BigRational::from_integer(1.into()));
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let cur = val[v].clone().unwrap();
            let pairs: Vec<(usize, usize, usize)> = if v < r {
                (r..n).filter(|&j| !a.get(v, j).is_zero()).map(|j| (v, j, j)).collect()
            } else {
                (0..r).filter(|&i| !a.get(i, v).is_zero()).map(|i| (i, v, i)).collect()
            };
            for (i, j, w) in pairs {
                if b.get(i, j).is_zero() {
                    return None;
                }
                let ratio = q(b.get(i, j)) / q(a.get(i, j));
                let want = &ratio / &cur;
                match &val[w] {
                    None => {
                        val[w] = Some(want);
                        stack.push(w);
                    }
                    Some(x) if *x == want => {}
                    Some(_) => return None,
                }
            }
        }
    }
    Some(())
}

/// The reduced form with its pivot columns moved to the front.
fn standard(m: &Matrix<Dyadic>) -> Matrix<Dyadic> {
    let (red, pivots) = m.rref().unwrap();
    let order: Vec<usize> = pivots.iter().copied().chain((0..m.cols()).filter(|j| !pivots.contains(j))).collect();
    red.select_columns(&order)
}

fn random_scaling(m: &Matrix<Dyadic>, rng: &mut ChaCha8Rng) -> Matrix<Dyadic> {
    let r = m.rows();
    let mut out = m.clone();
    let unit = |rng: &mut ChaCha8Rng| Dyadic::unit(rng.gen(), rng.gen_range(-3..=3));
    for i in 0..r {
        let t = unit(rng);
        out.scale_row(i, &t);
        out.scale_column(i, &t.checked_inv().unwrap());
    }
    for j in r..m.cols() {
        out.scale_column(j, &unit(rng));
    }
    out
}

#[test]
fn non_fano_incidence_and_cycle_rank() {
    let fi = fundamental_incidence(&non_fano()).unwrap();
    assert_eq!(fi.to_matrix(), vec![vec![0, 1, 1, 1], vec![1, 0, 1, 1], vec![1, 1, 0, 1]]);
    assert_eq!(cycle_basis_size(&fi), 6);
    let forest = spanning_forest(&fi);
    assert_eq!(forest.len(), 6);
    assert!(peel_order(&fi, &forest).is_ok());
}

#[test]
fn degenerate_incidences() {
    let zero = Matrix::<Gf3>::identity(2).hstack(&Matrix::zeros(2, 3).with_labels(vec!["a".into(), "b".into(), "c".into()]).unwrap()).unwrap();
    let fi = fundamental_incidence(&zero).unwrap();
    assert_eq!(cycle_basis_size(&fi), 0);
    assert!(spanning_forest(&fi).is_empty());
    let mut single = zero.clone();
    single.set(1, 3, Gf3::ONE);
    assert_eq!(cycle_basis_size(&fundamental_incidence(&single).unwrap()), 1);
    // a path e0 - b - e1 - c
    let path = Matrix::<Gf3>::from_ints(&[&[1, 0, 1, 0], &[0, 1, 1, 1]]);
    let fi = fundamental_incidence(&path).unwrap();
    assert_eq!(spanning_forest(&fi).len(), 3);
    assert!(matches!(fundamental_incidence(&Matrix::<Gf3>::from_ints(&[&[0, 1]])), Err(EquivalenceError::NotStandardForm(1))));
}

#[test]
fn scaling_leaves_incidence_unchanged() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = non_fano();
    let scaled = random_scaling(&m, &mut rng);
    assert_eq!(fundamental_incidence(&m).unwrap(), fundamental_incidence(&scaled).unwrap());
}

#[test]
fn single_entry_normalizations() {
    let m = Matrix::from_rows(vec![vec![d(1), d(2)]]);
    let e = vec![ForestEdge { row: 0, col: 0 }];
    let out = normalize_brylawski(&m, &ForestAssignment::ones(e.clone())).unwrap();
    assert_eq!(out, Matrix::from_rows(vec![vec![d(1), d(1)]]));
    let neg = ForestAssignment::new(e.clone(), vec![d(-2)]).unwrap();
    assert_eq!(normalize_restricted(&m, &neg).unwrap(), Matrix::from_rows(vec![vec![d(1), d(-2)]]));
    assert!(matches!(
        normalize_restricted(&m, &ForestAssignment::ones(e.clone())),
        Err(EquivalenceError::UnreachableTarget { .. })
    ));
    let zero = ForestAssignment::new(e, vec![d(0)]).unwrap();
    assert!(matches!(normalize_brylawski(&m, &zero), Err(EquivalenceError::ZeroTarget { .. })));
}

#[test]
fn invalid_forests_are_rejected() {
    let m = non_fano();
    let zero_entry = ForestAssignment::ones(vec![ForestEdge { row: 0, col: 0 }]);
    assert!(matches!(normalize_brylawski(&m, &zero_entry), Err(EquivalenceError::InvalidForest(_))));
    // e1-e6-e2-e7-e1 is a cycle
    let cycle = ForestAssignment::ones(vec![
        ForestEdge { row: 0, col: 2 },
        ForestEdge { row: 1, col: 2 },
        ForestEdge { row: 1, col: 3 },
        ForestEdge { row: 0, col: 3 },
    ]);
    assert!(matches!(normalize_brylawski(&m, &cycle), Err(EquivalenceError::InvalidForest(_))));
    assert!(ForestAssignment::new(vec![ForestEdge { row: 0, col: 1 }], Vec::<Dyadic>::new()).is_err());
}

#[test]
fn non_fano_over_gf3_all_ones() {
    let m = non_fano().map(|v| Gf3::new(v.mod_p(3) as i64));
    let forest = spanning_forest(&fundamental_incidence(&m).unwrap());
    let ones = ForestAssignment::ones(forest.clone());
    let out = normalize_brylawski(&m, &ones).unwrap();
    for e in &forest {
        assert_eq!(*out.get(e.row, 3 + e.col), Gf3::ONE);
    }
    assert_eq!(normalize_brylawski(&out, &ones).unwrap(), out);
}

#[test]
fn normalization_is_unique_across_scalings() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for a in [Appendix::A, Appendix::B, Appendix::C] {
        let m = standard(&a.matrix());
        let forest = spanning_forest(&fundamental_incidence(&m).unwrap());
        let targets: Vec<Dyadic> = forest.iter().map(|_| Dyadic::unit(rng.gen(), rng.gen_range(-2..=2))).collect();
        let fa = ForestAssignment::new(forest.clone(), targets.clone()).unwrap();
        let canon = normalize_brylawski(&m, &fa).unwrap();
        for (e, t) in forest.iter().zip(&targets) {
            assert_eq!(canon.get(e.row, m.rows() + e.col), t);
        }
        assert!(scaling_witness(&m, &canon).is_some());
        for _ in 0..50 {
            let scaled = random_scaling(&m, &mut rng);
            assert_eq!(normalize_brylawski(&scaled, &fa).unwrap(), canon);
            assert!(projectively_equivalent(&m, &scaled).unwrap());
        }
    }
}

#[test]
fn projective_equivalence_needs_equal_support() {
    let m = non_fano();
    let mut other = m.clone();
    other.set(0, 3, d(1));
    assert!(matches!(projectively_equivalent(&m, &other), Err(EquivalenceError::SupportMismatch)));
    let mut changed = m.clone();
    changed.set(2, 6, d(-1));
    assert!(!projectively_equivalent(&m, &changed).unwrap());
}

#[test]
fn appendix_row_equivalence_classes() {
    let b = reps(Appendix::B);
    assert!(row_equivalent(&b[0], &b[1]).unwrap());
    let c = reps(Appendix::C);
    assert!(!row_equivalent(&c[0], &c[1]).unwrap());
    let mut sizes = Vec::new();
    for a in Appendix::ALL {
        sizes.push(classify_row_equivalence(&reps(a)).unwrap().sizes());
    }
    assert_eq!(sizes, vec![vec![9, 1, 1], vec![15], vec![1, 1, 1]]);
}

#[test]
fn report_lists_every_member_once() {
    let p = classify_row_equivalence(&reps(Appendix::A)).unwrap();
    let text = p.report();
    assert!(text.starts_with("representations 11\nclasses 3 sizes 9 1 1\n"));
    assert_eq!(text.matches("  rref ").count(), 3);
    let empty = classify_row_equivalence(&[]).unwrap();
    assert!(empty.report().contains("classes 0 sizes -"));
}

#[test]
fn row_permutation_and_negation_keep_the_class() {
    let a = reps(Appendix::A)[0].matrix().clone();
    let mut b = a.select_rows(&[5, 4, 3, 2, 1, 0]);
    b.scale_row(2, &Gf3::MINUS_ONE);
    let (a, b) = (SgRepresentation::new(a).unwrap(), SgRepresentation::new(b).unwrap());
    assert!(row_equivalent(&a, &b).unwrap());
    let relabeled = SgRepresentation::new(a.matrix().clone().with_labels((0..10).map(|i| format!("x{i}")).collect()).unwrap()).unwrap();
    assert!(matches!(row_equivalent(&a, &relabeled), Err(EquivalenceError::LabelMismatch)));
}

fn arb_sg(rows: usize, cols: usize) -> impl Strategy<Value = SgRepresentation> {
    prop::collection::vec((0..rows, 0..rows, 0u8..3, 0u8..3), cols).prop_map(move |cols_spec| {
        let mut m = Matrix::<Gf3>::zeros(rows, cols_spec.len());
        for (j, (u, v, a, b)) in cols_spec.into_iter().enumerate() {
            m.set(u, j, Gf3::new(a as i64));
            if v != u {
                m.set(v, j, Gf3::new(b as i64));
            }
        }
        SgRepresentation::new(m).unwrap()
    })
}

proptest! {
    #[test]
    fn row_equivalence_is_an_equivalence(a in arb_sg(3, 5), b in arb_sg(3, 5), c in arb_sg(3, 5)) {
        prop_assert!(row_equivalent(&a, &a).unwrap());
        prop_assert_eq!(row_equivalent(&a, &b).unwrap(), row_equivalent(&b, &a).unwrap());
        if row_equivalent(&a, &b).unwrap() && row_equivalent(&b, &c).unwrap() {
            prop_assert!(row_equivalent(&a, &c).unwrap());
        }
    }

    #[test]
    fn restricted_accepts_exactly_signed_targets(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = standard(&Appendix::A.matrix());
        let forest = spanning_forest(&fundamental_incidence(&m).unwrap());
        let r = m.rows();
        let mut admissible = true;
        let targets: Vec<Dyadic> = forest
            .iter()
            .map(|e| {
                let cur = m.get(e.row, r + e.col).clone();
                match rng.gen_range(0..3) {
                    0 => cur,
                    1 => cur.neg(),
                    _ => {
                        let t = Dyadic::unit(rng.gen(), rng.gen_range(-3..=3));
                        admissible &= t == cur || t == cur.neg();
                        t
                    }
                }
            })
            .collect();
        let fa = ForestAssignment::new(forest, targets).unwrap();
        let out = normalize_restricted(&m, &fa);
        prop_assert_eq!(out.is_ok(), admissible);
        if let Ok(out) = out {
            // every scaling was by a sign, so entries keep their absolute values
            for i in 0..r {
                for j in 0..m.cols() {
                    prop_assert_eq!(out.get(i, j).abs(), m.get(i, j).abs());
                }
            }
        }
    }
}
