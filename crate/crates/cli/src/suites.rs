//! Randomized property suites for `sigrep verify`.

use anyhow::Result;
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sigrep::equivalence::{
    fundamental_incidence, normalize_brylawski, normalize_restricted, row_equivalent, spanning_forest,
    ForestAssignment,
};
use sigrep::generate::whittle_check;
use sigrep::graph::{cylinder_flip, verify_flip, SignedGraph};
use sigrep::linalg::{Dyadic, ExactMatrix, Gf3, Matrix, Scalar};
use sigrep::matroid::{matroids_equal, LinearMatroid};
use sigrep::sample;
use sigrep::sgenum::{enumerate_signed_graphic, enumerate_with, SearchOptions, SgRepresentation};

use crate::VerificationFailed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Linalg,
    Matroid,
    Siggraph,
    Equivalence,
    All,
}

type Check = fn(&mut ChaCha8Rng, usize) -> Result<(), String>;

fn checks(suite: Suite) -> Vec<(&'static str, &'static str, usize, Check)> {
    let all: Vec<(&'static str, &'static str, usize, Check)> = vec![
        ("linalg", "text-round-trip", 200, text_round_trip),
        ("linalg", "rref-idempotent", 200, rref_idempotent),
        ("linalg", "mod-3-and-5-bases", 200, projections),
        ("matroid", "dual-involution", 100, dual_involution),
        ("matroid", "dual-bases-complement", 100, dual_bases),
        ("matroid", "minor-duality", 100, minor_duality),
        ("siggraph", "circuits-match-incidence", 500, circuits_match),
        ("siggraph", "resign-keeps-circuits", 1000, resign_keeps),
        ("siggraph", "lemma-flip", 120, lemma_flip),
        ("siggraph", "enumeration-finds-incidence", 100, enumeration_finds_incidence),
        ("siggraph", "pruning-keeps-output", 60, pruning_keeps_output),
        ("equivalence", "normalization-unique", 200, normalization_unique),
        ("equivalence", "restricted-targets", 200, restricted_targets),
        ("equivalence", "row-operations", 200, row_operations),
    ];
    let name = match suite {
        Suite::All => return all,
        Suite::Linalg => "linalg",
        Suite::Matroid => "matroid",
        Suite::Siggraph => "siggraph",
        Suite::Equivalence => "equivalence",
    };
    all.into_iter().filter(|c| c.0 == name).collect()
}

pub fn run(suite: Suite, seed: u64) -> Result<()> {
    let mut failed = 0;
    for (i, (group, name, cases, check)) in checks(suite).into_iter().enumerate() {
        // one stream per check, so suites give the same results alone or together
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let outcome = (0..cases).try_for_each(|case| check(&mut rng, case).map_err(|e| format!("case {case}: {e}")));
        match outcome {
            Ok(()) => println!("{group}/{name}: pass ({cases} cases)"),
            Err(e) => {
                failed += 1;
                println!("{group}/{name}: FAIL {e}");
            }
        }
    }
    if failed > 0 {
        return Err(VerificationFailed(format!("{failed} checks failed")).into());
    }
    Ok(())
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn random_dyadic(rng: &mut ChaCha8Rng) -> Matrix<Dyadic> {
    let r = rng.gen_range(1..=4);
    let n = rng.gen_range(r..=7);
    sample::weak_dyadic(rng, r, n)
}

fn random_matroid(rng: &mut ChaCha8Rng) -> LinearMatroid {
    LinearMatroid::new(ExactMatrix::Gf3(ExactMatrix::Dyadic(random_dyadic(rng)).to_gf3())).expect("small matrix")
}

fn text_round_trip(rng: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
    let m = ExactMatrix::Dyadic(random_dyadic(rng));
    let flat = ExactMatrix::parse_flat(&m.to_flat()).map_err(|e| e.to_string())?;
    let text = ExactMatrix::parse_text(&m.to_text()).map_err(|e| e.to_string())?;
    ensure(flat == m && text == m, || format!("{} does not round-trip", m.to_flat()))
}

fn rref_idempotent(rng: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
    let m = random_dyadic(rng);
    let (r, p) = m.rref().map_err(|e| e.to_string())?;
    let (r2, p2) = r.rref().map_err(|e| e.to_string())?;
    ensure(r == r2 && p == p2, || "rref changes a reduced matrix".into())
}

fn projections(rng: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
    let m = random_dyadic(rng);
    ensure(whittle_check(&m), || format!("{} loses bases mod 3 or 5", ExactMatrix::Dyadic(m.clone()).to_flat()))
}

fn dual_involution(rng: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
    let m = random_matroid(rng);
    let dd = m.dual().and_then(|d| d.dual()).map_err(|e| e.to_string())?;
    ensure(matroids_equal(&m, &dd).map_err(|e| e.to_string())?, || "M** differs from M".into())
}

fn dual_bases(rng: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
    let m = random_matroid(rng);
    let d = m.dual().map_err(|e| e.to_string())?;
    let full = m.full_mask();
    let mut expect: Vec<u64> = m.basis_masks().iter().map(|b| full & !b).collect();
    let mut got = d.basis_masks();
    expect.sort_unstable();
    got.sort_unstable();
    ensure(expect == got, || "dual bases are not the complements".into())
}

fn minor_duality(rng: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
    let m = random_matroid(rng);
    let e = rng.gen_range(0..m.size());
    let err = |x: sigrep::matroid::MatroidError| x.to_string();
    let a = m.delete_index(e).and_then(|x| x.dual()).map_err(err)?;
    let b = m.dual().and_then(|x| x.contract_index(e)).map_err(err)?;
    ensure(matroids_equal(&a, &b).map_err(err)?, || format!("(M\\{e})* differs from M*/{e}"))
}

fn graph_circuits_vs_matroid(g: &SignedGraph) -> Result<bool, String> {
    let m = LinearMatroid::new(g.incidence_matrix()).map_err(|e| e.to_string())?;
    Ok(g.circuits().map_err(|e| e.to_string())? == m.circuits())
}

fn circuits_match(rng: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
    let g = sample::signed_graph(rng, 8, 12);
    ensure(graph_circuits_vs_matroid(&g)?, || format!("circuits differ on {}", g.to_json()))
}

fn resign_keeps(rng: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
    let g = sample::signed_graph(rng, 8, 12);
    let s = sample::vertex_subset(rng, &g);
    let h = g.resign(&s).map_err(|e| e.to_string())?;
    ensure(h.circuits().ok() == g.circuits().ok(), || format!("resigning {s:?} changes {}", g.to_json()))
}

fn lemma_flip(rng: &mut ChaCha8Rng, case: usize) -> Result<(), String> {
    let (g, split) = sample::lemma_instance(rng, case.is_multiple_of(4));
    let f = cylinder_flip(&g, &split).map_err(|e| format!("{e} on {}", g.to_json()))?;
    ensure(verify_flip(&g, &f).map_err(|e| e.to_string())?, || format!("flip changes {}", g.to_json()))
}

fn enumeration_finds_incidence(rng: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
    loop {
        let g = sample::signed_graph(rng, 5, 10);
        let a = g.incidence_matrix();
        if a.cols() == 0 || a.rank().map_err(|e| e.to_string())? < a.rows() {
            continue;
        }
        let m = LinearMatroid::new(a.clone()).map_err(|e| e.to_string())?;
        // disconnected matroids have very many representations
        if !m.is_connected() {
            continue;
        }
        let reps = enumerate_signed_graphic(&m).map_err(|e| e.to_string())?;
        let own = SgRepresentation::new(a).map_err(|e| e.to_string())?.canonical();
        return ensure(reps.contains(&own), || format!("incidence matrix of {} not found", g.to_json()));
    }
}

fn pruning_keeps_output(rng: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
    let r = rng.gen_range(1..=3);
    let n = rng.gen_range(r..=6);
    let m = LinearMatroid::new(ExactMatrix::Gf3(ExactMatrix::Dyadic(sample::weak_dyadic(rng, r, n)).to_gf3()))
        .map_err(|e| e.to_string())?;
    let fast = enumerate_with(&m, SearchOptions::default()).map_err(|e| e.to_string())?.0;
    let slow = enumerate_with(&m, SearchOptions { prune: false, memo: false }).map_err(|e| e.to_string())?.0;
    ensure(fast == slow, || format!("pruning changes the output on {:?}", m.rep()))
}

/// A random `[I | D]` over the dyadics.
fn random_standard(rng: &mut ChaCha8Rng) -> Matrix<Dyadic> {
    let r = rng.gen_range(2..=4);
    let n = rng.gen_range(r + 1..=8);
    sample::standard_form(&sample::weak_dyadic(rng, r, n))
}

fn normalization_unique(rng: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
    let m = random_standard(rng);
    let forest = spanning_forest(&fundamental_incidence(&m).map_err(|e| e.to_string())?);
    let ones = ForestAssignment::ones(forest);
    let canon = normalize_brylawski(&m, &ones).map_err(|e| e.to_string())?;
    let again = normalize_brylawski(&canon, &ones).map_err(|e| e.to_string())?;
    let scaled = normalize_brylawski(&sample::standard_scaling(rng, &m), &ones).map_err(|e| e.to_string())?;
    ensure(again == canon && scaled == canon, || {
        format!("normalization of {} is not unique", ExactMatrix::Dyadic(m.clone()).to_flat())
    })
}

fn restricted_targets(rng: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
    let m = random_standard(rng);
    let forest = spanning_forest(&fundamental_incidence(&m).map_err(|e| e.to_string())?);
    if forest.is_empty() {
        return Ok(());
    }
    let current = ForestAssignment::<Dyadic>::current(&m, forest.clone()).map_err(|e| e.to_string())?;
    let mut admissible = true;
    let targets: Vec<Dyadic> = current
        .targets
        .iter()
        .map(|c| match rng.gen_range(0..3) {
            0 => c.clone(),
            1 => c.neg(),
            _ => {
                let t = Dyadic::unit(rng.gen(), rng.gen_range(-2..=2));
                admissible &= t == *c || t == c.neg();
                t
            }
        })
        .collect();
    let fa = ForestAssignment::new(forest, targets).map_err(|e| e.to_string())?;
    let accepted = normalize_restricted(&m, &fa).is_ok();
    ensure(accepted == admissible, || format!("accepted {accepted}, expected {admissible}"))
}

fn row_operations(rng: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
    let g = sample::signed_graph(rng, 5, 8);
    let a = g.incidence_matrix();
    let mut rows: Vec<usize> = (0..a.rows()).collect();
    for i in (1..rows.len()).rev() {
        rows.swap(i, rng.gen_range(0..=i));
    }
    let mut b = a.select_rows(&rows);
    for i in 0..b.rows() {
        if rng.gen() {
            b.scale_row(i, &Gf3::MINUS_ONE);
        }
    }
    let (x, y) = (SgRepresentation::new(a).map_err(|e| e.to_string())?, SgRepresentation::new(b).map_err(|e| e.to_string())?);
    ensure(row_equivalent(&x, &y).map_err(|e| e.to_string())?, || "row operations broke row-equivalence".into())
}
