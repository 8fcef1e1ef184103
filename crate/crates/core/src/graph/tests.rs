use proptest::prelude::*;

use super::flip::lemma_graph;
use super::*;
use crate::fixtures::Appendix;
use crate::matroid::LinearMatroid;

fn graph(vertices: &[&str], edges: &[(&str, &str, &str, Sign)]) -> SignedGraph {
    let mut g = SignedGraph::new(vertices.iter().copied()).unwrap();
    for &(label, u, v, sign) in edges {
        g.add_edge(label, u, v, sign).unwrap();
    }
    g
}

use Sign::{Negative as N, Positive as P};

fn matroid_circuits(g: &SignedGraph) -> SubsetFamily {
    LinearMatroid::new(g.incidence_matrix()).unwrap().circuits()
}

#[test]
fn incidence_case_table() {
    let g = graph(&["u", "v"], &[("a", "u", "v", P), ("b", "v", "v", N), ("c", "u", "u", P)]);
    let m = g.incidence_matrix();
    assert_eq!(m.column(0), vec![Gf3::ONE, Gf3::MINUS_ONE]);
    assert_eq!(m.column(1), vec![Gf3::ZERO, Gf3::MINUS_ONE]);
    assert_eq!(m.column(2), vec![Gf3::ZERO, Gf3::ZERO]);
}

#[test]
fn identity_gives_negative_loops() {
    let g = SignedGraph::from_incidence(&Matrix::<Gf3>::identity(2), &["x".into(), "y".into()]).unwrap();
    assert!(g.edges().iter().all(|e| e.is_loop() && e.sign() == N));
    assert_eq!(g.edges()[1].u, 1);
}

#[test]
fn equal_entries_make_a_negative_edge() {
    let m = Matrix::<Gf3>::from_ints(&[&[1, 1, -1], &[1, -1, -1]]);
    let g = SignedGraph::from_incidence(&m, &["x".into(), "y".into()]).unwrap();
    let signs: Vec<Sign> = g.edges().iter().map(Edge::sign).collect();
    assert_eq!(signs, vec![N, P, N]);
    assert_eq!(g.incidence_matrix(), m);
}

#[test]
fn dense_column_is_rejected() {
    let m = Matrix::<Gf3>::from_ints(&[&[1], &[1], &[1]]);
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    assert!(matches!(SignedGraph::from_incidence(&m, &names), Err(GraphError::TooManyNonzeros { count: 3, .. })));
}

#[test]
fn small_circuits() {
    let loops = graph(&["w"], &[("a", "w", "w", N), ("b", "w", "w", N)]);
    assert_eq!(loops.circuits().unwrap().sets(), &[vec!["a".to_string(), "b".to_string()]]);

    let triangle = graph(&["x", "y", "z"], &[("a", "x", "y", N), ("b", "y", "z", P), ("c", "z", "x", P)]);
    assert!(triangle.circuits().unwrap().is_empty());

    let digon = graph(&["x", "y"], &[("a", "x", "y", N), ("b", "x", "y", N)]);
    assert_eq!(digon.circuits().unwrap().len(), 1);

    let handcuff = graph(
        &["x", "y"],
        &[("a", "x", "x", N), ("b", "x", "y", P), ("c", "y", "y", N)],
    );
    assert_eq!(handcuff.circuits().unwrap().sets(), &[vec!["a".to_string(), "b".to_string(), "c".to_string()]]);
    assert_eq!(handcuff.circuits().unwrap(), matroid_circuits(&handcuff));
}

#[test]
fn balance_and_blocking() {
    let positive = graph(&["x", "y", "z"], &[("a", "x", "y", P), ("b", "y", "z", P), ("c", "z", "x", P)]);
    assert!(positive.is_balanced());
    assert!(positive.is_blocking_pair("x", "y").unwrap());

    let looped = graph(&["w", "x", "y"], &[("a", "w", "w", N), ("b", "x", "y", P)]);
    assert!(!looped.is_balanced());
    assert!(looped.is_blocking_pair("w", "x").unwrap());
    assert!(looped.is_blocking_pair("w", "w").unwrap());
    assert!(!looped.is_blocking_pair("x", "y").unwrap());
}

#[test]
fn resign_path() {
    let g = graph(&["u", "v", "w"], &[("uv", "u", "v", N), ("vw", "v", "w", P)]);
    let h = g.resign(&["v"]).unwrap();
    assert_eq!(h.edge("uv").unwrap().sign(), P);
    assert_eq!(h.edge("vw").unwrap().sign(), N);
    assert_eq!(h.resign(&["v"]).unwrap(), g);
}

#[test]
fn json_and_dot() {
    let g = graph(&["u", "v"], &[("e2", "u", "v", N), ("e1", "u", "v", P), ("e3", "v", "v", N)]);
    let text = g.to_json();
    assert_eq!(SignedGraph::from_json(&text).unwrap().incidence_matrix(), {
        // serialization sorts edges by label
        let order = [1, 0, 2];
        g.incidence_matrix().select_columns(&order)
    });
    let dot = g.to_dot();
    assert!(dot.contains("\"u\" -- \"v\" [label=\"e2\", style=dashed]"));
    assert!(dot.find("e1").unwrap() < dot.find("e2").unwrap());
    assert!(SignedGraph::from_json("{\"vertices\": [\"u\"], \"edges\": [{\"label\": \"a\", \"ends\": [], \"sign\": \"+\"}]}").is_err());
}

#[test]
fn switching_equivalence_ignores_names_and_resigning() {
    let g = graph(&["u", "v", "w"], &[("a", "u", "v", N), ("b", "v", "w", P), ("c", "w", "u", P)]);
    let renamed = graph(&["1", "2", "3"], &[("a", "2", "3", P), ("b", "3", "1", N), ("c", "1", "2", P)]);
    assert!(g.switching_equivalent(&renamed));
    let unbalanced_differently = graph(&["1", "2", "3"], &[("a", "2", "3", N), ("b", "3", "1", N), ("c", "1", "2", P)]);
    assert!(!g.switching_equivalent(&unbalanced_differently));
}

/// Two positive 4-cycles glued per the flip lemma.
fn lemma_pair(degenerate: bool) -> (SignedGraph, SignedGraph, CylinderSplit, CylinderSplit) {
    let h1 = graph(
        &["a", "b", "c", "d", "p"],
        &[("1", "a", "b", P), ("2", "b", "c", P), ("3", "c", "d", P), ("4", "d", "p", P), ("5", "p", "a", P), ("6", "a", "c", P)],
    );
    let h2 = graph(
        &["w", "x", "y", "z", "q"],
        &[("7", "w", "x", P), ("8", "x", "q", P), ("9", "q", "y", P), ("10", "y", "z", P), ("11", "z", "w", P), ("12", "q", "w", P)],
    );
    let a = if degenerate { ["a", "b", "a", "d"] } else { ["a", "b", "c", "d"] };
    let (g, split) = lemma_graph(&h1, &h2, a, ["w", "x", "y", "z"], false).unwrap();
    let (crossed, back) = lemma_graph(&h1, &h2, a, ["w", "x", "y", "z"], true).unwrap();
    (g, crossed, split, back)
}

#[test]
fn flip_matches_crossed_lemma_graph() {
    for degenerate in [false, true] {
        let (g, crossed, split, back_split) = lemma_pair(degenerate);
        let flipped = cylinder_flip(&g, &split).unwrap();
        assert!(flipped.same_signed_graph(&crossed), "degenerate = {degenerate}");
        assert!(verify_flip(&g, &flipped).unwrap());
        assert_eq!(matroid_circuits(&g), matroid_circuits(&flipped));
        // flipping twice restores the circuits
        let back = cylinder_flip(&flipped, &back_split).unwrap();
        assert_eq!(back.circuits().unwrap(), g.circuits().unwrap());
    }
}

#[test]
fn flip_rejects_bad_splits() {
    let (g, _, split, _) = lemma_pair(false);
    let mut not_blocking = split.clone();
    not_blocking.t1 = "p".into();
    assert!(matches!(cylinder_flip(&g, &not_blocking), Err(GraphError::InvalidSplit(_))));
    let mut leaky = split.clone();
    leaky.h2.remove("8");
    assert!(matches!(cylinder_flip(&g, &leaky), Err(GraphError::InvalidSplit(_))));
    let (dg, _, dsplit, _) = lemma_pair(true);
    let mut no_roles = dsplit.clone();
    no_roles.roles.clear();
    assert!(matches!(cylinder_flip(&dg, &no_roles), Err(GraphError::InvalidSplit(_))));
}

#[test]
fn verify_flip_detects_a_sign_change() {
    let g = graph(&["x", "y", "z"], &[("a", "x", "y", P), ("b", "y", "z", P), ("c", "z", "x", P), ("d", "x", "x", N)]);
    let mut h = graph(&["x", "y", "z"], &[("a", "x", "y", N), ("b", "y", "z", P), ("c", "z", "x", P), ("d", "x", "x", N)]);
    assert!(!verify_flip(&g, &h).unwrap());
    h = graph(&["x"], &[("a", "x", "x", P)]);
    assert!(matches!(verify_flip(&g, &h), Err(GraphError::LabelMismatch)));
}

#[test]
fn worked_example_pair_is_one_flip_apart() {
    let reps = Appendix::B.displayed_reps();
    let names: Vec<String> = (1..=6).map(|i| format!("v{i}")).collect();
    let omega = SignedGraph::from_incidence(&reps[0], &names).unwrap();
    let omega2 = SignedGraph::from_incidence(&reps[1], &names).unwrap();
    let splits = find_splits(&omega);
    let hit = splits
        .iter()
        .find(|s| cylinder_flip(&omega, s).unwrap().switching_equivalent(&omega2));
    let split = hit.unwrap_or_else(|| panic!("none of {} splits works", splits.len()));
    assert!(verify_flip(&omega, &cylinder_flip(&omega, split).unwrap()).unwrap());
}

fn arb_graph() -> impl Strategy<Value = SignedGraph> {
    (1usize..=8, 0usize..=12).prop_flat_map(|(nv, ne)| {
        prop::collection::vec((0..nv, 0..nv, any::<bool>(), any::<bool>()), ne).prop_map(move |es| {
            let names: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
            let mut g = SignedGraph::new(names.clone()).unwrap();
            for (i, (u, v, neg, flip)) in es.into_iter().enumerate() {
                let sign = if neg { N } else { P };
                let into = match (sign, flip) {
                    (P, f) => [!f, f],
                    (N, f) => [f, f],
                };
                g.add_oriented(format!("e{i}"), &names[u], &names[v], into, sign).unwrap();
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn circuits_match_linear_algebra(g in arb_graph()) {
        prop_assert_eq!(g.circuits().unwrap(), matroid_circuits(&g));
    }

    #[test]
    fn resigning_keeps_circuits(g in arb_graph(), set in prop::collection::vec(any::<bool>(), 8)) {
        let s: Vec<String> = g.vertices().iter().zip(&set).filter(|(_, &b)| b).map(|(v, _)| v.clone()).collect();
        prop_assert_eq!(g.resign(&s).unwrap().circuits().unwrap(), g.circuits().unwrap());
    }

    #[test]
    fn incidence_round_trip(g in arb_graph()) {
        let back = SignedGraph::from_incidence(&g.incidence_matrix(), g.vertices()).unwrap();
        prop_assert_eq!(back.incidence_matrix(), g.incidence_matrix());
        prop_assert!(SignedGraph::from_json(&g.to_json()).unwrap().same_signed_graph(&g));
    }
}
