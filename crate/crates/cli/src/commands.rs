use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use sigrep::equivalence::{classify_row_equivalence, Agreement};
use sigrep::generate::{generate_with, parse_catalog, write_catalog, GenerateOptions};
use sigrep::graph::{cylinder_flip, find_splits, verify_flip, CylinderSplit, Role, SignedGraph};
use sigrep::linalg::ExactMatrix;
use sigrep::matroid::LinearMatroid;
use sigrep::sgenum::{enumerate_signed_graphic, SgRepresentation};

use crate::{Format, VerificationFailed};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(g: &SignedGraph, format: Format) -> String {
    match format {
        Format::Dot => g.to_dot(),
        Format::Text => g.to_json() + "\n",
    }
}

pub fn generate(max_size: usize, exponent_bound: u32, check_bound: bool, out: Option<&Path>) -> Result<()> {
    let g = generate_with(GenerateOptions {
        max_size,
        exponent_bound,
        check_bound,
    })?;
    let text = write_catalog(&g.entries);
    match out {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    // keep stdout clean for the catalog when no file is given
    for level in &g.levels {
        eprintln!("{level}");
    }
    eprintln!("{} matroids", g.entries.len());
    Ok(())
}

/// Representations of the matroid of `rep`, which must be GF(3) or weak dyadic.
fn representations(rep: &ExactMatrix) -> Result<Vec<SgRepresentation>> {
    if let Some(d) = rep.as_dyadic() {
        if !d.is_weak_dyadic() {
            bail!("matrix is not weak dyadic");
        }
    }
    let m = LinearMatroid::new(ExactMatrix::Gf3(rep.to_gf3()))?;
    Ok(enumerate_signed_graphic(&m)?)
}

pub fn reps(matrix: &Path, out: &Path, format: Format) -> Result<()> {
    let rep = ExactMatrix::parse_text(&read(matrix)?).with_context(|| format!("parsing {}", matrix.display()))?;
    let reps = representations(&rep)?;
    if reps.is_empty() {
        return Err(VerificationFailed("the matroid has no signed-graphic representation".into()).into());
    }
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let ext = match format {
        Format::Dot => "dot",
        Format::Text => "json",
    };
    for (i, r) in reps.iter().enumerate() {
        write(&out.join(format!("rep_{:02}.txt", i + 1)), &r.to_text())?;
        let g = SignedGraph::from_representation(r)?;
        write(&out.join(format!("rep_{:02}.{ext}", i + 1)), &render(&g, format))?;
    }
    let partition = classify_row_equivalence(&reps)?;
    write(&out.join("partition.txt"), &partition.report())?;
    let sizes: Vec<String> = partition.sizes().iter().map(usize::to_string).collect();
    println!(
        "{} representations; row-equivalence class sizes {}",
        reps.len(),
        sizes.join(" ")
    );
    Ok(())
}

pub fn census(catalog: &Path, out: Option<&Path>) -> Result<()> {
    let entries = parse_catalog(&read(catalog)?)?;
    let (mut all, mut none, mut mixed, mut single, mut unrepresented) = (0, 0, 0, 0, 0);
    let mut table = String::from("# id size rank representations classes agreement\n");
    for e in &entries {
        let reps = representations(e.matroid.rep()).with_context(|| format!("entry {}", e.id))?;
        let partition = classify_row_equivalence(&reps).with_context(|| format!("entry {}", e.id))?;
        let agreement = match partition.agreement() {
            Some(Agreement::Single) => {
                single += 1;
                "single"
            }
            Some(Agreement::All) => {
                all += 1;
                "all"
            }
            Some(Agreement::None) => {
                none += 1;
                "none"
            }
            Some(Agreement::Mixed) => {
                mixed += 1;
                "mixed"
            }
            None => {
                unrepresented += 1;
                "unrepresented"
            }
        };
        table.push_str(&format!(
            "{} {} {} {} {} {agreement}\n",
            e.id,
            e.size(),
            e.rank(),
            reps.len(),
            partition.classes.len()
        ));
    }
    if let Some(p) = out {
        write(p, &table)?;
    }
    println!("all {all} / none {none} / mixed {mixed}");
    println!("matroids with two or more representations: {}", all + none + mixed);
    println!("one representation: {single}");
    println!("no signed-graphic representation: {unrepresented}");
    Ok(())
}

fn parse_role(spec: &str) -> Result<(String, usize, Role)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [label, end, role] = parts.as_slice() else {
        bail!("role {spec:?} is not label:end:role");
    };
    let end: usize = end.parse().ok().filter(|e| *e < 2).ok_or_else(|| anyhow!("end in {spec:?} must be 0 or 1"))?;
    let role = match *role {
        "S1" => Role::S1,
        "S2" => Role::S2,
        "T1" => Role::T1,
        "T2" => Role::T2,
        _ => bail!("unknown role in {spec:?}"),
    };
    Ok((label.to_string(), end, role))
}

pub fn flip(
    graph: &Path,
    terminals: &str,
    h2: Option<&str>,
    roles: &[String],
    out: Option<&Path>,
    format: Format,
) -> Result<()> {
    let g = SignedGraph::from_json(&read(graph)?).with_context(|| format!("parsing {}", graph.display()))?;
    let names: Vec<&str> = terminals.split(',').map(str::trim).collect();
    let [s1, s2, t1, t2] = names.as_slice() else {
        bail!("--terminals needs four comma-separated vertices");
    };
    let split = match h2 {
        Some(list) => {
            let mut split = CylinderSplit::new([s1, s2, t1, t2], list.split(',').map(str::trim).filter(|s| !s.is_empty()));
            for spec in roles {
                let (label, end, role) = parse_role(spec)?;
                split = split.with_role(&label, end, role);
            }
            split
        }
        None => find_splits(&g)
            .into_iter()
            .find(|s| [s.s1.as_str(), s.s2.as_str(), s.t1.as_str(), s.t2.as_str()] == [*s1, *s2, *t1, *t2])
            .ok_or_else(|| anyhow!("no valid split over {terminals}"))?,
    };
    let flipped = cylinder_flip(&g, &split)?;
    if !verify_flip(&g, &flipped)? {
        return Err(VerificationFailed("the flip changed the matroid".into()).into());
    }
    eprintln!("flipped {} edges; matroid unchanged", split.h2.len());
    emit(out, &render(&flipped, format))
}
