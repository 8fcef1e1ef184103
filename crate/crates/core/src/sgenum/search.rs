use std::collections::HashSet;
use std::sync::Arc;

use rustc_hash::FxHashSet;

use super::{Col, SgEnumError, SgRepresentation};
use crate::linalg::{Gf3, Matrix};
use crate::matroid::LinearMatroid;

/// Largest rank the packed columns support.
const MAX_RANK: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Growing,
    NewComponent,
}

/// A node of the search: rows `0..k` are the vertex vectors chosen so far.
///
/// `r` holds the matroid's columns and `x` the remaining candidate vertex
/// vectors, both in the coordinates where the chosen vectors are `e_0..e_{k-1}`.
/// Rows `k..` are still the original coordinates, in the order kept by `coords`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchState {
    k: usize,
    rows: usize,
    labels: Arc<[String]>,
    r: Vec<Col>,
    x: Vec<Col>,
    origin: Vec<u32>,
    chosen: Vec<u32>,
    coords: Vec<u8>,
    phase: Phase,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Prune with Property 1 after each pivot.
    pub prune: bool,
    /// Skip states already explored (same chosen vectors, lower rows and candidates).
    pub memo: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { prune: true, memo: true }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub pruned: u64,
    pub memo_hits: u64,
    pub emitted: u64,
}

/// The vectors that can complete a state with one row left, found from the
/// columns alone.
///
/// Scaled so its last entry is 1, the final vector is `(p, 1)` with `p` zero or
/// `±e_t`. A column `(u, z)` with `z != 0` ends as `(u - z p, z)`, so it needs
/// `u - z p` to have at most one nonzero; columns with `z = 0` are unchanged.
struct LastPivot {
    zero: bool,
    plus: u32,
    minus: u32,
}

impl LastPivot {
    fn new(cols: &[Col], last: usize) -> Option<LastPivot> {
        let low = low_mask(last);
        let mut fit = LastPivot { zero: true, plus: low, minus: low };
        for c in cols {
            let z = c.get(last);
            if z == 0 {
                continue;
            }
            let (up, un) = (c.plus & low, c.minus & low);
            match (up | un).count_ones() {
                0 => {}
                1 => {
                    fit.plus &= up | un;
                    fit.minus &= up | un;
                }
                2 => {
                    // p must cancel one of the two entries
                    fit.zero = false;
                    let (same, opposite) = if z == 1 { (up, un) } else { (un, up) };
                    fit.plus &= same;
                    fit.minus &= opposite;
                }
                _ => return None,
            }
            if !fit.zero && fit.plus == 0 && fit.minus == 0 {
                return None;
            }
        }
        Some(fit)
    }

    fn accepts(&self, y: Col, last: usize) -> bool {
        let y = match y.get(last) {
            0 => return false,
            a => y.scale(a),
        };
        let low = low_mask(last);
        let (p, m) = (y.plus & low, y.minus & low);
        match (p | m).count_ones() {
            0 => self.zero,
            1 => p & self.plus != 0 || m & self.minus != 0,
            _ => false,
        }
    }
}

/// Upper bound on remembered states, to keep memory flat on large inputs.
const MEMO_CAPACITY: usize = 4_000_000;

fn low_mask(k: usize) -> u32 {
    (1u32 << k) - 1
}

impl SearchState {
    /// Initial state for a full-row-rank GF(3) representation: `k = 0` and every
    /// nonzero vector up to sign as a candidate.
    pub fn initial(rep: &Matrix<Gf3>) -> Result<Self, SgEnumError> {
        let rows = rep.rows();
        if rows > MAX_RANK {
            return Err(SgEnumError::RankTooLarge(rows));
        }
        let r = (0..rep.cols())
            .map(|j| Col::from_residues(rep.column(j).iter().map(|v| v.residue())))
            .collect();
        let (x, origin) = projective_points(rows).into_iter().enumerate().map(|(i, c)| (c, i as u32)).unzip();
        Ok(SearchState {
            k: 0,
            rows,
            labels: rep.labels().into(),
            r,
            x,
            origin,
            chosen: Vec::new(),
            coords: (0..rows as u8).collect(),
            phase: Phase::Growing,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rank(&self) -> usize {
        self.rows
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn is_complete(&self) -> bool {
        self.k == self.rows
    }

    pub fn r_matrix(&self) -> Matrix<Gf3> {
        cols_to_matrix(self.rows, &self.r).with_labels(self.labels.to_vec()).expect("labels are distinct")
    }

    pub fn x_matrix(&self) -> Matrix<Gf3> {
        cols_to_matrix(self.rows, &self.x)
    }

    pub fn candidate_count(&self) -> usize {
        self.x.len()
    }

    /// Number of nonzeros of candidate `i` above and on-or-below row `k`.
    pub fn candidate_shape(&self, i: usize) -> (u32, u32) {
        let s = self.x[i].support();
        ((s & low_mask(self.k)).count_ones(), (s & !low_mask(self.k)).count_ones())
    }

    /// Pivots on candidate `i` at row `s`, moves row `s` to row `k`, drops exhausted
    /// candidates. `None` if Property 1 fails (only checked when `prune`).
    fn advance(&self, i: usize, s: usize, prune: bool) -> Option<SearchState> {
        self.advance_from(i, s, prune, false)
    }

    /// As [`SearchState::advance`]; with `close` the candidates touching rows above
    /// `k` are dropped first, as when a new component starts.
    fn advance_from(&self, i: usize, s: usize, prune: bool, close: bool) -> Option<SearchState> {
        let pivot = self.x[i];
        let k = self.k;
        let r: Vec<Col> = self.r.iter().map(|c| c.pivoted(pivot, s).swap_rows(s, k)).collect();
        let low = low_mask(k + 1);
        if prune && !property1_cols(&r, low) {
            return None;
        }
        let above = if close { low_mask(k) } else { 0 };
        let below = !low;
        let mut x = Vec::with_capacity(self.x.len());
        let mut origin = Vec::with_capacity(self.x.len());
        for (c, &o) in self.x.iter().zip(&self.origin) {
            if c.support() & above != 0 {
                continue;
            }
            let c = c.pivoted(pivot, s).swap_rows(s, k);
            if c.support() & below != 0 {
                x.push(c);
                origin.push(o);
            }
        }
        let mut chosen = self.chosen.clone();
        let at = chosen.partition_point(|&c| c < self.origin[i]);
        chosen.insert(at, self.origin[i]);
        let mut coords = self.coords.clone();
        coords.swap(s, k);
        Some(SearchState {
            k: k + 1,
            rows: self.rows,
            labels: Arc::clone(&self.labels),
            r,
            x,
            origin,
            chosen,
            coords,
            phase: if close { Phase::NewComponent } else { Phase::Growing },
        })
    }

    /// The chosen vectors fix rows `0..k` up to order and sign, and `coords` fixes
    /// the rest, so together with the candidate set they determine every descendant.
    fn memo_key(&self, points: usize) -> Box<[u64]> {
        let words = points.div_ceil(64);
        let mut key = vec![0u64; 1 + self.chosen.len().div_ceil(2) + words];
        for (i, &c) in self.coords[self.k..].iter().enumerate() {
            key[0] |= u64::from(c) << (4 * i);
        }
        for (i, &c) in self.chosen.iter().enumerate() {
            key[1 + i / 2] |= u64::from(c) << (32 * (i % 2));
        }
        let base = 1 + self.chosen.len().div_ceil(2);
        for &o in &self.origin {
            key[base + o as usize / 64] |= 1 << (o % 64);
        }
        key.into_boxed_slice()
    }
}

/// Every pivot candidate has at most one nonzero in the fixed rows, so a pivot
/// adds one fixed-row nonzero to a column and cancels at most one: the count
/// never decreases, and a column with three is dead even with rows left below.
/// This implies Property 1.
fn property1_cols(r: &[Col], low: u32) -> bool {
    r.iter().all(|c| (c.support() & low).count_ones() <= 2)
}

fn projective_points(rows: usize) -> Vec<Col> {
    let total = 3usize.pow(rows as u32);
    (1..total)
        .filter_map(|code| {
            let digits: Vec<u8> = (0..rows).map(|i| (code / 3usize.pow(i as u32) % 3) as u8).collect();
            (digits.iter().find(|&&d| d != 0) == Some(&1)).then(|| Col::from_residues(digits))
        })
        .collect()
}

fn cols_to_matrix(rows: usize, cols: &[Col]) -> Matrix<Gf3> {
    let data = (0..rows)
        .map(|i| cols.iter().map(|c| Gf3::new(c.get(i) as i64)).collect())
        .collect();
    let m = Matrix::from_rows(data);
    if cols.is_empty() {
        Matrix::zeros(rows, 0)
    } else {
        m
    }
}

/// Growth of an existing component: candidate `i` must have exactly one nonzero
/// above row `k` and exactly one on or below it.
pub fn step_grow(state: &SearchState, i: usize) -> Option<SearchState> {
    step_grow_with(state, i, true)
}

fn step_grow_with(state: &SearchState, i: usize, prune: bool) -> Option<SearchState> {
    if state.candidate_shape(i) != (1, 1) {
        return None;
    }
    let s = (state.x[i].support() >> state.k).trailing_zeros() as usize + state.k;
    state.advance(i, s, prune)
}

/// A negative loop on a new vertex: candidate `i` has a single nonzero, on or below row `k`.
pub fn step_negative_loop(state: &SearchState, i: usize) -> Option<SearchState> {
    step_negative_loop_with(state, i, true)
}

fn step_negative_loop_with(state: &SearchState, i: usize, prune: bool) -> Option<SearchState> {
    if state.candidate_shape(i) != (0, 1) {
        return None;
    }
    let s = (state.x[i].support() >> state.k).trailing_zeros() as usize + state.k;
    state.advance(i, s, prune)
}

/// Closes the existing components: drops candidates touching rows above `k`, then
/// branches on every remaining candidate, pivoting at its first nonzero row.
pub fn step_new_component(state: &SearchState) -> Vec<Option<SearchState>> {
    step_new_component_with(state, true)
}

fn step_new_component_with(state: &SearchState, prune: bool) -> Vec<Option<SearchState>> {
    let filtered = filtered_for_new_component(state);
    (0..filtered.x.len()).map(|i| new_component_branch(&filtered, i, prune)).collect()
}

fn new_component_branch(filtered: &SearchState, i: usize, prune: bool) -> Option<SearchState> {
    let s = (filtered.x[i].support() >> filtered.k).trailing_zeros() as usize + filtered.k;
    filtered.advance_from(i, s, prune, true)
}

fn filtered_for_new_component(state: &SearchState) -> SearchState {
    let low = low_mask(state.k);
    let mut filtered = SearchState {
        x: Vec::new(),
        origin: Vec::new(),
        chosen: state.chosen.clone(),
        coords: state.coords.clone(),
        labels: Arc::clone(&state.labels),
        r: state.r.clone(),
        ..*state
    };
    for (c, &o) in state.x.iter().zip(&state.origin) {
        if c.support() & low == 0 {
            filtered.x.push(*c);
            filtered.origin.push(o);
        }
    }
    filtered
}

/// All signed-graphic representations of `m`, deduplicated and sorted.
pub fn enumerate_signed_graphic(m: &LinearMatroid) -> Result<Vec<SgRepresentation>, SgEnumError> {
    Ok(enumerate_with(m, SearchOptions::default())?.0)
}

pub fn enumerate_with(
    m: &LinearMatroid,
    options: SearchOptions,
) -> Result<(Vec<SgRepresentation>, SearchStats), SgEnumError> {
    let gf3 = m.to_gf3()?;
    let rep = gf3.rep().as_gf3().expect("projected to GF(3)");
    // standard form, so the starting coordinate vectors are elements of the matroid
    let (rep, _) = rep.rref().map_err(crate::matroid::MatroidError::from)?;
    let mut found: HashSet<SgRepresentation> = HashSet::new();
    let mut stats = SearchStats::default();
    if rep.rows() == 0 {
        found.insert(SgRepresentation::new(rep)?);
    } else {
        let start = SearchState::initial(&rep)?;
        let mut search = Search {
            options,
            points: start.x.len(),
            found: &mut found,
            seen: FxHashSet::default(),
            stats: &mut stats,
            penultimate: Vec::new(),
            last: Vec::new(),
        };
        search.recurse(&start);
    }
    let mut out: Vec<SgRepresentation> = found.into_iter().collect();
    out.sort();
    Ok((out, stats))
}

struct Search<'a> {
    options: SearchOptions,
    points: usize,
    found: &'a mut HashSet<SgRepresentation>,
    seen: FxHashSet<Box<[u64]>>,
    stats: &'a mut SearchStats,
    penultimate: Vec<Col>,
    last: Vec<Col>,
}

impl Search<'_> {
    fn visit(&mut self, next: Option<SearchState>) {
        match next {
            None => self.stats.pruned += 1,
            Some(n) => self.recurse(&n),
        }
    }

    /// Final pivot of the columns in `self.penultimate` on `y` at the last row.
    fn finish(&mut self, state: &SearchState, y: Col) {
        let row = state.rows - 1;
        self.last.clear();
        self.last.extend(self.penultimate.iter().map(|c| c.pivoted(y, row)));
        if self.last.iter().all(|c| c.support().count_ones() <= 2) {
            self.stats.emitted += 1;
            let m = cols_to_matrix(state.rows, &self.last)
                .with_labels(state.labels.to_vec())
                .expect("labels are distinct");
            self.found.insert(SgRepresentation::new(m).expect("checked above").canonical());
        } else {
            self.stats.pruned += 1;
        }
    }

    /// Candidates of the state at the last row, in that state's coordinates.
    fn last_level(&mut self, state: &SearchState, candidates: impl Iterator<Item = Col>) {
        self.stats.nodes += 1;
        let k = state.rows - 1;
        for y in candidates {
            let support = y.support();
            if support >> k == 0 {
                continue;
            }
            // a new component at the last row pivots exactly like a negative loop
            if (support & low_mask(k)).count_ones() <= 1 {
                self.finish(state, y);
            }
        }
    }

    /// Branch from a state two rows from the end: the pivot is applied to the
    /// columns and the candidates are streamed to [`Search::last_level`] without
    /// building the intermediate state.
    fn branch_to_last(&mut self, state: &SearchState, i: usize, s: usize, close: bool) {
        let (pivot, k) = (state.x[i], state.k);
        self.penultimate.clear();
        self.penultimate.extend(state.r.iter().map(|c| c.pivoted(pivot, s).swap_rows(s, k)));
        if self.options.prune && !property1_cols(&self.penultimate, low_mask(k + 1)) {
            self.stats.pruned += 1;
            return;
        }
        let Some(fit) = LastPivot::new(&self.penultimate, k + 1) else {
            self.stats.pruned += 1;
            return;
        };
        self.stats.nodes += 1;
        let above = if close { low_mask(k) } else { 0 };
        for c in &state.x {
            if c.support() & above != 0 {
                continue;
            }
            let y = c.pivoted(pivot, s).swap_rows(s, k);
            if fit.accepts(y, k + 1) {
                self.finish(state, y);
            } else if y.support() >> (k + 1) != 0 && (y.support() & low_mask(k + 1)).count_ones() <= 1 {
                self.stats.pruned += 1;
            }
        }
    }

    fn recurse(&mut self, state: &SearchState) {
        let k = state.k;
        if k + 1 == state.rows {
            self.penultimate.clone_from(&state.r);
            self.last_level(state, state.x.clone().into_iter());
            return;
        }
        self.stats.nodes += 1;
        let to_last = k + 2 == state.rows;
        if self.options.memo && k > 0 {
            let key = state.memo_key(self.points);
            if self.seen.contains(&key) {
                self.stats.memo_hits += 1;
                return;
            }
            if self.seen.len() < MEMO_CAPACITY {
                self.seen.insert(key);
            }
        }
        let prune = self.options.prune;
        for i in 0..state.x.len() {
            let support = state.x[i].support();
            let (above, below) = ((support & low_mask(k)).count_ones(), (support >> k).count_ones());
            // grow (1, 1) or negative loop (0, 1)
            if below == 1 && above <= 1 {
                let s = (support >> k).trailing_zeros() as usize + k;
                if to_last {
                    self.branch_to_last(state, i, s, false);
                } else {
                    self.visit(state.advance(i, s, prune));
                }
            }
        }
        for i in 0..state.x.len() {
            let support = state.x[i].support();
            if support & low_mask(k) != 0 {
                continue;
            }
            // with no rows processed, single-entry candidates were already taken as negative loops
            if k == 0 && support.count_ones() < 2 {
                continue;
            }
            let s = (support >> k).trailing_zeros() as usize + k;
            if to_last {
                self.branch_to_last(state, i, s, true);
            } else {
                self.visit(state.advance_from(i, s, prune, true));
            }
        }
    }
}
