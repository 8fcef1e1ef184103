use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sigrep::fixtures::Appendix;
use sigrep::generate::{write_catalog, CatalogEntry, Move, Seed};
use sigrep::graph::{find_splits, verify_flip, Role, SignedGraph};
use sigrep::matroid::LinearMatroid;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigrep")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name).to_string_lossy().into_owned()
}

#[test]
fn missing_and_malformed_input_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reps");
    let o = run(&["reps", "/nonexistent/matrix.txt", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1 2\n3\n").unwrap();
    let o = run(&["reps", bad.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["generate", "--max-size", "13"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn too_small_exponent_bound_exits_with_3() {
    let o = run(&["generate", "--max-size", "9", "--exponent-bound", "0"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["generate", "--max-size", "9", "--exponent-bound", "0", "--no-bound-check"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn matroid_without_representation_exits_with_1() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["reps", &data("p8.txt"), "--out", dir.path().join("p8").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reps_writes_matrices_graphs_and_partition() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c");
    let o = run(&["reps", &data("appendix_c_dyadic.txt"), "--out", out.to_str().unwrap(), "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3 representations; row-equivalence class sizes 1 1 1");
    for i in 1..=3 {
        let json = fs::read_to_string(out.join(format!("rep_{i:02}.json"))).unwrap();
        let g = SignedGraph::from_json(&json).unwrap();
        assert_eq!(g.edges().len(), 9);
        assert!(out.join(format!("rep_{i:02}.txt")).exists());
    }
    assert!(fs::read_to_string(out.join("partition.txt")).unwrap().contains("sizes 1 1 1"));
}

#[test]
fn census_of_an_empty_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = dir.path().join("empty.txt");
    fs::write(&catalog, write_catalog(&[])).unwrap();
    let o = run(&["census", catalog.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("all 0 / none 0 / mixed 0"));
}

#[test]
fn census_of_a_single_entry() {
    let dir = tempfile::tempdir().unwrap();
    let m = LinearMatroid::new(Appendix::C.matrix()).unwrap();
    let entry = CatalogEntry::new(m, Seed::NonFano, vec![Move::Ext, Move::Ext]);
    let catalog = dir.path().join("one.txt");
    let table = dir.path().join("table.txt");
    fs::write(&catalog, write_catalog(std::slice::from_ref(&entry))).unwrap();
    let o = run(&["census", catalog.to_str().unwrap(), "--out", table.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("all 0 / none 1 / mixed 0"), "{text}");
    assert!(text.contains("matroids with two or more representations: 1"));
    let table = fs::read_to_string(table).unwrap();
    assert!(table.contains(&format!("{} 9 5 3 3 none", entry.id)), "{table}");
}

fn role_name(r: Role) -> &'static str {
    match r {
        Role::S1 => "S1",
        Role::S2 => "S2",
        Role::T1 => "T1",
        Role::T2 => "T2",
    }
}

#[test]
fn flip_with_an_explicit_split() {
    let dir = tempfile::tempdir().unwrap();
    let rep = &Appendix::B.displayed_reps()[0];
    let names: Vec<String> = (1..=rep.rows()).map(|k| format!("v{k}")).collect();
    let g = SignedGraph::from_incidence(rep, &names).unwrap();
    let graph = dir.path().join("g.json");
    fs::write(&graph, g.to_json()).unwrap();
    let split = find_splits(&g).into_iter().next().expect("the example has a split");
    let terminals = [&split.s1, &split.s2, &split.t1, &split.t2].map(String::as_str).join(",");
    let h2: Vec<&str> = split.h2.iter().map(String::as_str).collect();
    let h2 = h2.join(",");
    let mut args = vec!["flip".to_string(), graph.to_str().unwrap().into(), "--terminals".into(), terminals, "--h2".into(), h2];
    for ((label, end), role) in &split.roles {
        args.push("--role".into());
        args.push(format!("{label}:{end}:{}", role_name(*role)));
    }
    let o = Command::new(env!("CARGO_BIN_EXE_sigrep")).args(&args).output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let flipped = SignedGraph::from_json(&stdout(&o)).unwrap();
    assert!(verify_flip(&g, &flipped).unwrap());

    // the same flip found automatically
    let auto = run(&["flip", graph.to_str().unwrap(), "--terminals", &args[3]]);
    assert!(auto.status.success());
    assert!(verify_flip(&g, &SignedGraph::from_json(&stdout(&auto)).unwrap()).unwrap());
}

#[test]
fn flip_rejects_a_bad_role() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let mut g = SignedGraph::new(["a", "b"]).unwrap();
    g.add_edge("e1", "a", "b", sigrep::graph::Sign::Positive).unwrap();
    fs::write(&graph, g.to_json()).unwrap();
    let o = run(&["flip", graph.to_str().unwrap(), "--terminals", "a,b,a,b", "--h2", "e1", "--role", "e1:7:S1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", "siggraph", "--seed", "9"]);
    let b = run(&["verify", "siggraph", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).lines().all(|l| l.contains(": pass")));
}
