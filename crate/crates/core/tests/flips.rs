use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sigrep::fixtures::Appendix;
use sigrep::graph::{cylinder_flip, find_splits, verify_flip, SignedGraph};
use sigrep::sample;

fn appendix_graph(a: Appendix, i: usize) -> SignedGraph {
    let rep = &a.displayed_reps()[i];
    let names: Vec<String> = (1..=rep.rows()).map(|k| format!("v{k}")).collect();
    SignedGraph::from_incidence(rep, &names).unwrap()
}

#[test]
fn every_split_of_the_worked_example_keeps_the_matroid() {
    let g = appendix_graph(Appendix::B, 0);
    let splits = find_splits(&g);
    assert!(!splits.is_empty());
    for s in &splits {
        let f = cylinder_flip(&g, s).unwrap();
        assert!(verify_flip(&g, &f).unwrap(), "{s:?}");
    }
}

#[test]
fn worked_example_reaches_the_second_representation() {
    let g = appendix_graph(Appendix::B, 0);
    let target = appendix_graph(Appendix::B, 1);
    assert!(find_splits(&g)
        .iter()
        .any(|s| cylinder_flip(&g, s).unwrap().switching_equivalent(&target)));
}

#[test]
fn json_round_trip_after_a_flip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..50 {
        let (g, split) = sample::lemma_instance(&mut rng, i % 2 == 0);
        let f = cylinder_flip(&g, &split).unwrap();
        let back = SignedGraph::from_json(&f.to_json()).unwrap();
        assert!(back.same_signed_graph(&f));
        assert!(verify_flip(&g, &back).unwrap());
    }
}
