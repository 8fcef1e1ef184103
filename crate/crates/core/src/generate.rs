//! Breadth-first generation of 3-connected dyadic matroids.
//!
//! Starting from the non-Fano matroid and its dual, every level adds one
//! element by a simple dyadic extension or a cosimple dyadic coextension.
//! Candidates are sorted by their reduced row echelon serialization, then
//! reduced serially up to isomorphism, so the catalog does not depend on the
//! order parents were expanded in.
//!
//! Every entry is assumed uniquely representable over the dyadics: the seeds
//! are, and the property passes to 3-connected matroids with a seed minor.

use std::collections::HashMap;
use std::fmt;

use num_traits::ToPrimitive;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::fixtures;
use crate::linalg::{integer_columns, BareissKernel, Domain, Dyadic, ExactMatrix, LinalgError, Matrix, Scalar};
use crate::matroid::{are_isomorphic, element_invariants, ElementInvariants, LinearMatroid, MatroidError};
use crate::util::subsets_of_size;

pub const DEFAULT_EXPONENT_BOUND: u32 = 2;
pub const MIN_SIZE: usize = 7;
pub const MAX_SIZE: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("max size {0} is outside {MIN_SIZE}..={MAX_SIZE}")]
    SizeOutOfRange(usize),
    #[error("exponent bound {bound} is too small: {detail}")]
    CandidateBoundExceeded { bound: u32, detail: String },
    #[error("catalog line {line}: {message}")]
    Catalog { line: usize, message: String },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Seed {
    NonFano,
    NonFanoDual,
}

impl Seed {
    pub fn name(self) -> &'static str {
        match self {
            Seed::NonFano => "F7-",
            Seed::NonFanoDual => "F7-*",
        }
    }

    pub fn matroid(self) -> LinearMatroid {
        let m = LinearMatroid::new(fixtures::non_fano()).expect("fixture has full rank");
        match self {
            Seed::NonFano => m,
            Seed::NonFanoDual => m.dual().expect("dual of a fixture"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Ext,
    Coext,
}

impl Move {
    fn name(self) -> &'static str {
        match self {
            Move::Ext => "EXT",
            Move::Coext => "COEXT",
        }
    }
}

/// A generated matroid with the moves that built it from a seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub matroid: LinearMatroid,
    pub seed: Seed,
    pub ancestry: Vec<Move>,
}

impl CatalogEntry {
    pub fn new(matroid: LinearMatroid, seed: Seed, ancestry: Vec<Move>) -> Self {
        CatalogEntry {
            id: content_id(matroid.rep()),
            matroid,
            seed,
            ancestry,
        }
    }

    pub fn size(&self) -> usize {
        self.matroid.size()
    }

    pub fn rank(&self) -> usize {
        self.matroid.rank()
    }

    pub fn matrix(&self) -> &Matrix<Dyadic> {
        self.matroid.rep().as_dyadic().expect("catalog entries are dyadic")
    }

    /// `F7-/EXT/COEXT`, say.
    pub fn ancestry_text(&self) -> String {
        let mut s = self.seed.name().to_string();
        for m in &self.ancestry {
            s.push('/');
            s.push_str(m.name());
        }
        s
    }

    /// `id size rank ancestry matrix`, the matrix in flat text form.
    pub fn to_line(&self) -> String {
        format!(
            "{} {} {} {} {}",
            self.id,
            self.size(),
            self.rank(),
            self.ancestry_text(),
            self.matroid.rep().to_flat()
        )
    }

    pub fn parse_line(line: &str) -> Result<Self, String> {
        let fields: Vec<&str> = line.trim().splitn(5, ' ').collect();
        let [id, size, rank, ancestry, flat] = fields.as_slice() else {
            return Err("expected five fields".into());
        };
        let rep = ExactMatrix::parse_flat(flat).map_err(|e| e.to_string())?;
        if rep.domain() != Domain::Dyadic {
            return Err("matrix is not dyadic".into());
        }
        let matroid = LinearMatroid::new(rep).map_err(|e| e.to_string())?;
        let mut parts = ancestry.split('/');
        let seed = match parts.next() {
            Some("F7-") => Seed::NonFano,
            Some("F7-*") => Seed::NonFanoDual,
            other => return Err(format!("unknown seed {other:?}")),
        };
        let moves = parts
            .map(|p| match p {
                "EXT" => Ok(Move::Ext),
                "COEXT" => Ok(Move::Coext),
                _ => Err(format!("unknown move {p:?}")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let entry = CatalogEntry::new(matroid, seed, moves);
        if entry.id != *id {
            return Err(format!("id {id} does not match the matrix digest {}", entry.id));
        }
        if entry.size().to_string() != *size || entry.rank().to_string() != *rank {
            return Err(format!("size/rank {size}/{rank} do not match the matrix"));
        }
        if entry.ancestry.len() + MIN_SIZE != entry.size() {
            return Err("ancestry length does not match the size".into());
        }
        Ok(entry)
    }
}

/// First 16 hex digits of the SHA-256 of the flat matrix text.
pub fn content_id(rep: &ExactMatrix) -> String {
    let digest = Sha256::digest(rep.to_flat().as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

pub const CATALOG_HEADER: &str = "# id size rank ancestry matrix";

pub fn write_catalog(entries: &[CatalogEntry]) -> String {
    let mut out = String::from(CATALOG_HEADER);
    out.push('\n');
    for e in entries {
        out.push_str(&e.to_line());
        out.push('\n');
    }
    out
}

/// Parses catalog text; blank lines and `#` comments are skipped.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, GenerateError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| CatalogEntry::parse_line(l).map_err(|message| GenerateError::Catalog { line: i + 1, message }))
        .collect()
}

/// The two seeds in standard form.
pub fn seeds() -> Vec<CatalogEntry> {
    [Seed::NonFano, Seed::NonFanoDual]
        .into_iter()
        .map(|s| CatalogEntry::new(canonical(&s.matroid()).expect("seed has a standard form"), s, Vec::new()))
        .collect()
}

fn dyadic_rep(m: &LinearMatroid) -> Result<&Matrix<Dyadic>, GenerateError> {
    m.rep().as_dyadic().ok_or(GenerateError::Linalg(LinalgError::DomainMismatch {
        expected: Domain::Dyadic,
        found: Domain::Gf3,
    }))
}

/// Same matroid, represented by its reduced row echelon form.
fn canonical(m: &LinearMatroid) -> Result<LinearMatroid, GenerateError> {
    Ok(LinearMatroid::new(m.standard_form()?.0)?)
}

/// For each `(r-1)`-subset `S` of columns, the integer vector `c` with
/// `det[A_S | x] = c · x`, up to a positive power of two; zero vectors dropped,
/// deduplicated up to sign.
fn cofactor_functionals(rep: &Matrix<Dyadic>) -> Vec<Vec<i128>> {
    let (r, n) = (rep.rows(), rep.cols());
    let mut cols = integer_columns(rep);
    for i in 0..r {
        let mut e = vec![num_bigint::BigInt::from(0); r];
        e[i] = 1.into();
        cols.push(e);
    }
    let kernel = BareissKernel::new(r, cols);
    let mut out: Vec<Vec<i128>> = Vec::new();
    for s in subsets_of_size(n, r.saturating_sub(1)) {
        let mut sel = s.clone();
        sel.push(0);
        let mut c: Vec<i128> = (0..r)
            .map(|i| {
                *sel.last_mut().unwrap() = n + i;
                kernel.det_of(&sel).to_i128().expect("cofactor fits in i128")
            })
            .collect();
        match c.iter().find(|v| **v != 0) {
            None => continue,
            Some(&v) if v < 0 => c.iter_mut().for_each(|v| *v = -*v),
            _ => {}
        }
        out.push(c);
    }
    out.sort();
    out.dedup();
    out
}

struct ColumnSearch {
    /// Functionals indexed by their last nonzero coordinate.
    by_last: Vec<Vec<Vec<i128>>>,
    span: i32,
    /// Entries scaled by `2^span`, so every value is an integer.
    x: Vec<i128>,
    exps: Vec<Option<(bool, i32)>>,
    out: Vec<Vec<Dyadic>>,
}

impl ColumnSearch {
    fn run(&mut self, d: usize, lo: i32, hi: i32, started: bool) {
        if d == self.x.len() {
            if started {
                self.out.push(
                    self.exps
                        .iter()
                        .map(|e| e.map_or_else(Dyadic::zero, |(neg, k)| Dyadic::unit(neg, k as i64)))
                        .collect(),
                );
            }
            return;
        }
        self.assign(d, None);
        if self.consistent(d) {
            self.run(d + 1, lo, hi, started);
        }
        if !started {
            self.assign(d, Some((false, 0)));
            if self.consistent(d) {
                self.run(d + 1, 0, 0, true);
            }
        } else {
            for k in hi - self.span..=lo + self.span {
                for neg in [false, true] {
                    self.assign(d, Some((neg, k)));
                    if self.consistent(d) {
                        self.run(d + 1, lo.min(k), hi.max(k), true);
                    }
                }
            }
        }
        self.assign(d, None);
    }

    fn assign(&mut self, d: usize, e: Option<(bool, i32)>) {
        self.exps[d] = e;
        self.x[d] = match e {
            None => 0,
            Some((neg, k)) => {
                let v = 1i128 << (k + self.span);
                if neg {
                    -v
                } else {
                    v
                }
            }
        };
    }

    fn consistent(&self, d: usize) -> bool {
        self.by_last[d].iter().all(|c| {
            let v: i128 = c.iter().zip(&self.x).map(|(a, b)| a * b).sum();
            v == 0 || v.unsigned_abs().is_power_of_two()
        })
    }
}

/// Columns `x` with every entry in `{0} ∪ {±2^k : |k| ≤ bound}`, one per class
/// under scaling by `±2^j`, such that `[rep | x]` is still weak dyadic.
///
/// Each class is returned as its member whose first nonzero entry is `1`; the
/// zero column comes first.
pub fn extension_columns(m: &LinearMatroid, bound: u32) -> Result<Vec<Vec<Dyadic>>, GenerateError> {
    let rep = dyadic_rep(m)?;
    let r = rep.rows();
    let mut by_last = vec![Vec::new(); r];
    for c in cofactor_functionals(rep) {
        let last = c.iter().rposition(|v| *v != 0).expect("zero functionals are dropped");
        by_last[last].push(c);
    }
    let mut search = ColumnSearch {
        by_last,
        span: 2 * bound as i32,
        x: vec![0; r],
        exps: vec![None; r],
        out: vec![vec![Dyadic::zero(); r]],
    };
    search.run(0, 0, 0, false);
    Ok(search.out)
}

fn parallel(a: &[Dyadic], b: &[Dyadic]) -> bool {
    let nonzero = |v: &[Dyadic]| v.iter().any(|x| !x.is_zero());
    if !nonzero(a) || !nonzero(b) {
        return false;
    }
    (0..a.len()).all(|i| (0..i).all(|k| a[i].mul(&b[k]) == a[k].mul(&b[i])))
}

fn fresh_label(m: &LinearMatroid) -> String {
    (m.size() + 1..)
        .map(|i| format!("e{i}"))
        .find(|l| !m.groundset().contains(l))
        .expect("some label is free")
}

/// Simple single-element extensions by the columns of [`extension_columns`].
pub fn single_extensions(m: &LinearMatroid, bound: u32) -> Result<Vec<LinearMatroid>, GenerateError> {
    let rep = dyadic_rep(m)?;
    let existing: Vec<Vec<Dyadic>> = (0..rep.cols()).map(|j| rep.column(j)).collect();
    let label = fresh_label(m);
    let mut out = Vec::new();
    for x in extension_columns(m, bound)? {
        if x.iter().all(Scalar::is_zero) || existing.iter().any(|c| parallel(c, &x)) {
            continue;
        }
        out.push(LinearMatroid::new(rep.push_column(&x, label.clone())?)?);
    }
    Ok(out)
}

/// Cosimple single-element coextensions: duals of the extensions of the dual.
pub fn single_coextensions(m: &LinearMatroid, bound: u32) -> Result<Vec<LinearMatroid>, GenerateError> {
    single_extensions(&m.dual()?, bound)?
        .iter()
        .map(|e| Ok(e.dual()?))
        .collect()
}

/// True iff some minor of `m` is isomorphic to `n`.
pub fn has_minor(m: &LinearMatroid, n: &LinearMatroid) -> Result<bool, GenerateError> {
    if n.size() > m.size() || n.rank() > m.rank() || n.size() - n.rank() > m.size() - m.rank() {
        return Ok(false);
    }
    let contractions = m.rank() - n.rank();
    let removed = m.size() - n.size();
    for set in subsets_of_size(m.size(), removed) {
        for c in subsets_of_size(removed, contractions) {
            let contract: Vec<usize> = c.iter().map(|&i| set[i]).collect();
            if m.rank_of_mask(crate::util::mask_of(&contract)) < contractions {
                continue;
            }
            let mut minor = m.clone();
            // remove from the highest index down so earlier indices stay valid
            for &e in set.iter().rev() {
                minor = if contract.contains(&e) {
                    minor.contract_index(e)?
                } else {
                    minor.delete_index(e)?
                };
            }
            if minor.rank() == n.rank() && are_isomorphic(&minor, n).is_some() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The dyadic bases agree with the nonzero maximal minors mod 3 and mod 5.
pub fn whittle_check(m: &Matrix<Dyadic>) -> bool {
    let bases = m.nonzero_maximal_minors();
    [3, 5].into_iter().all(|p| m.project_mod_p(p).nonzero_maximal_minors() == bases)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerateOptions {
    pub max_size: usize,
    pub exponent_bound: u32,
    /// Rerun at `exponent_bound + 1` and fail if anything new appears.
    pub check_bound: bool,
}

impl GenerateOptions {
    pub fn new(max_size: usize) -> Self {
        GenerateOptions {
            max_size,
            exponent_bound: DEFAULT_EXPONENT_BOUND,
            check_bound: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelStats {
    pub size: usize,
    pub candidates: usize,
    pub isomorphic: usize,
    pub not_3connected: usize,
    pub p8_minor: usize,
    pub accepted: usize,
}

#[derive(Clone, Debug)]
pub struct Generation {
    pub entries: Vec<CatalogEntry>,
    pub levels: Vec<LevelStats>,
}

impl Generation {
    pub fn count_of_size(&self, size: usize) -> usize {
        self.entries.iter().filter(|e| e.size() == size).count()
    }
}

impl fmt::Display for LevelStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "size {}: {} accepted from {} candidates ({} isomorphic, {} not 3-connected, {} with a P8 minor)",
            self.size, self.accepted, self.candidates, self.isomorphic, self.not_3connected, self.p8_minor
        )
    }
}

type Signature = (usize, usize, Vec<ElementInvariants>);

fn signature(m: &LinearMatroid) -> Signature {
    let mut inv = element_invariants(m);
    inv.sort();
    (m.size(), m.rank(), inv)
}

/// Isomorphism classes seen so far, bucketed by invariants.
#[derive(Default)]
struct ClassIndex {
    buckets: HashMap<Signature, Vec<LinearMatroid>>,
}

impl ClassIndex {
    /// Adds `m` unless an isomorphic matroid is already present.
    fn insert(&mut self, m: &LinearMatroid) -> bool {
        let bucket = self.buckets.entry(signature(m)).or_default();
        if bucket.iter().any(|o| are_isomorphic(o, m).is_some()) {
            return false;
        }
        bucket.push(m.clone());
        true
    }
}

/// The catalog up to `max_size` with the default exponent bound and the bound check.
pub fn generate_matroids(max_size: usize) -> Result<Vec<CatalogEntry>, GenerateError> {
    Ok(generate_with(GenerateOptions::new(max_size))?.entries)
}

pub fn generate_with(opts: GenerateOptions) -> Result<Generation, GenerateError> {
    if !(MIN_SIZE..=MAX_SIZE).contains(&opts.max_size) {
        return Err(GenerateError::SizeOutOfRange(opts.max_size));
    }
    let run = closure(opts.max_size, opts.exponent_bound)?;
    if opts.check_bound {
        let wider = closure(opts.max_size, opts.exponent_bound + 1)?;
        compare_runs(&run, &wider, opts.exponent_bound)?;
    }
    Ok(run)
}

fn compare_runs(run: &Generation, wider: &Generation, bound: u32) -> Result<(), GenerateError> {
    let mut index = ClassIndex::default();
    for e in &run.entries {
        index.insert(&e.matroid);
    }
    let missed: Vec<String> = wider
        .entries
        .iter()
        .filter(|e| index.insert(&e.matroid))
        .map(|e| format!("{} (size {})", e.id, e.size()))
        .collect();
    if !missed.is_empty() {
        return Err(GenerateError::CandidateBoundExceeded {
            bound,
            detail: format!("bound {} finds {} more: {}", bound + 1, missed.len(), missed.join(", ")),
        });
    }
    if wider.entries.len() != run.entries.len() {
        return Err(GenerateError::CandidateBoundExceeded {
            bound,
            detail: format!("bound {} yields {} entries, not {}", bound + 1, wider.entries.len(), run.entries.len()),
        });
    }
    Ok(())
}

fn closure(max_size: usize, bound: u32) -> Result<Generation, GenerateError> {
    let p8 = LinearMatroid::new(fixtures::p8())?;
    let mut level = seeds();
    let mut entries = level.clone();
    let mut levels = vec![LevelStats {
        size: MIN_SIZE,
        candidates: level.len(),
        accepted: level.len(),
        ..LevelStats::default()
    }];
    for size in MIN_SIZE + 1..=max_size {
        let mut candidates: Vec<(String, LinearMatroid, usize, Move)> = Vec::new();
        for (pi, parent) in level.iter().enumerate() {
            for (mv, children) in [
                (Move::Ext, single_extensions(&parent.matroid, bound)?),
                (Move::Coext, single_coextensions(&parent.matroid, bound)?),
            ] {
                for child in children {
                    let child = canonical(&child)?;
                    candidates.push((child.rep().to_flat(), child, pi, mv));
                }
            }
        }
        // stable: equal serializations keep the first parent
        candidates.sort_by(|a, b| a.0.cmp(&b.0));
        candidates.dedup_by(|a, b| a.0 == b.0);
        let mut stats = LevelStats {
            size,
            candidates: candidates.len(),
            ..LevelStats::default()
        };
        let mut seen = ClassIndex::default();
        let mut next = Vec::new();
        for (_, child, pi, mv) in candidates {
            if !seen.insert(&child) {
                stats.isomorphic += 1;
                continue;
            }
            if !(child.is_simple() && child.is_cosimple() && child.is_3connected()) {
                stats.not_3connected += 1;
                continue;
            }
            if has_minor(&child, &p8)? {
                stats.p8_minor += 1;
                continue;
            }
            let parent = &level[pi];
            let mut ancestry = parent.ancestry.clone();
            ancestry.push(mv);
            next.push(CatalogEntry::new(child, parent.seed, ancestry));
        }
        stats.accepted = next.len();
        levels.push(stats);
        entries.extend(next.iter().cloned());
        level = next;
    }
    Ok(Generation { entries, levels })
}

#[cfg(test)]
mod tests;
