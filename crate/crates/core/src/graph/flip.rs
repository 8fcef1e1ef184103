//! The cylinder flip over two blocking pairs.

use std::collections::{BTreeMap, BTreeSet};

use super::{Edge, GraphError, ParityUnionFind, Sign, SignedGraph};

/// Which split terminal an edge end attaches to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    S1,
    S2,
    T1,
    T2,
}

impl Role {
    const ALL: [Role; 4] = [Role::S1, Role::S2, Role::T1, Role::T2];

    /// The role an end takes after the flipped side is turned over.
    fn swapped(self) -> Role {
        match self {
            Role::S1 => Role::S2,
            Role::S2 => Role::S1,
            Role::T1 => Role::T2,
            Role::T2 => Role::T1,
        }
    }

    fn is_t(self) -> bool {
        matches!(self, Role::T1 | Role::T2)
    }
}

/// Terminals `{s1, s2; t1, t2}` and the edges of the side `H2` that is turned over;
/// every other edge belongs to `H1`.
///
/// Terminals may coincide (e.g. `s1 == t1`). An `H2` edge end at a vertex holding
/// more than one role must be given its role in `roles`, keyed by edge label and
/// end (0 for the first endpoint, 1 for the second).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderSplit {
    pub s1: String,
    pub s2: String,
    pub t1: String,
    pub t2: String,
    pub h2: BTreeSet<String>,
    pub roles: BTreeMap<(String, usize), Role>,
}

impl CylinderSplit {
    pub fn new(
        [s1, s2, t1, t2]: [&str; 4],
        h2: impl IntoIterator<Item = impl Into<String>>,
    ) -> CylinderSplit {
        CylinderSplit {
            s1: s1.into(),
            s2: s2.into(),
            t1: t1.into(),
            t2: t2.into(),
            h2: h2.into_iter().map(Into::into).collect(),
            roles: BTreeMap::new(),
        }
    }

    pub fn with_role(mut self, label: &str, end: usize, role: Role) -> CylinderSplit {
        self.roles.insert((label.to_string(), end), role);
        self
    }

    fn name(&self, role: Role) -> &str {
        match role {
            Role::S1 => &self.s1,
            Role::S2 => &self.s2,
            Role::T1 => &self.t1,
            Role::T2 => &self.t2,
        }
    }
}

/// Split data resolved against a graph.
struct Resolved {
    vertex: BTreeMap<Role, usize>,
    in_h2: Vec<bool>,
    /// Role of each end of each `H2` edge that sits on a terminal.
    end_roles: Vec<[Option<Role>; 2]>,
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidSplit(msg.into())
}

fn resolve(g: &SignedGraph, split: &CylinderSplit) -> Result<Resolved, GraphError> {
    let mut vertex = BTreeMap::new();
    for role in Role::ALL {
        vertex.insert(role, g.vertex_index(split.name(role))?);
    }
    let roles_of = |w: usize| -> Vec<Role> { Role::ALL.into_iter().filter(|r| vertex[r] == w).collect() };
    for label in &split.h2 {
        if g.edge(label).is_none() {
            return Err(invalid(format!("no edge {label:?}")));
        }
    }
    let in_h2: Vec<bool> = g.edges.iter().map(|e| split.h2.contains(&e.label)).collect();
    let mut end_roles = vec![[None, None]; g.edges.len()];
    for (i, e) in g.edges.iter().enumerate() {
        if !in_h2[i] {
            continue;
        }
        for (end, w) in [e.u, e.v].into_iter().enumerate() {
            let roles = roles_of(w);
            end_roles[i][end] = match (roles.as_slice(), split.roles.get(&(e.label.clone(), end))) {
                ([], None) => None,
                ([], Some(_)) => return Err(invalid(format!("edge {:?} end {end} is not at a terminal", e.label))),
                ([r], None) => Some(*r),
                (_, Some(r)) if roles.contains(r) => Some(*r),
                (_, Some(r)) => return Err(invalid(format!("edge {:?} end {end} cannot take role {r:?}", e.label))),
                (_, None) => {
                    return Err(invalid(format!("edge {:?} end {end} meets coinciding terminals; give its role", e.label)))
                }
            };
        }
    }
    for key in split.roles.keys() {
        if !split.h2.contains(&key.0) {
            return Err(invalid(format!("role given for edge {:?} outside the flipped side", key.0)));
        }
    }
    Ok(Resolved { vertex, in_h2, end_roles })
}

/// The vertex set to resign around so the negative edges are exactly the `H2`
/// links with one end in a `t` role, or `None`.
fn lemma_resigning(g: &SignedGraph, r: &Resolved) -> Option<BTreeSet<usize>> {
    let mut uf = ParityUnionFind::new(g.vertices.len());
    for (i, e) in g.edges.iter().enumerate() {
        let t_ends = r.end_roles[i].iter().filter(|x| x.is_some_and(Role::is_t)).count();
        let target = u8::from(r.in_h2[i] && t_ends == 1);
        if e.is_loop() {
            // resigning never changes a loop
            if e.sign().bit() != target {
                return None;
            }
        } else if !uf.union(e.u, e.v, e.sign().bit() ^ target) {
            return None;
        }
    }
    Some((0..g.vertices.len()).filter(|&v| uf.find(v).1 == 1).collect())
}

fn validate(g: &SignedGraph, split: &CylinderSplit) -> Result<(Resolved, BTreeSet<usize>), GraphError> {
    let r = resolve(g, split)?;
    let terminals: BTreeSet<usize> = r.vertex.values().copied().collect();
    let mut sides: [BTreeSet<usize>; 2] = [BTreeSet::new(), BTreeSet::new()];
    for (i, e) in g.edges.iter().enumerate() {
        for w in [e.u, e.v] {
            if !terminals.contains(&w) {
                sides[usize::from(r.in_h2[i])].insert(w);
            }
        }
    }
    if let Some(w) = sides[0].intersection(&sides[1]).next() {
        return Err(invalid(format!(
            "vertex {:?} has edges on both sides; the terminals must separate them",
            g.vertices[*w]
        )));
    }
    for (a, b) in [(&split.s1, &split.s2), (&split.t1, &split.t2)] {
        if !g.is_blocking_pair(a, b)? {
            return Err(invalid(format!("{{{a}, {b}}} is not a blocking pair")));
        }
    }
    let resign = lemma_resigning(g, &r).ok_or_else(|| {
        invalid("no resigning makes the negative edges exactly the flipped-side edges with one end at t1 or t2")
    })?;
    Ok((r, resign))
}

/// Cuts the graph at the terminals, turns `H2` over (exchanging its attachments at
/// `s1`/`s2` and at `t1`/`t2`) and glues it back.
///
/// The graph is first resigned so its negative edges are exactly the `H2` edges
/// with one end at `t1` or `t2`; the result is returned in that signing.
pub fn cylinder_flip(g: &SignedGraph, split: &CylinderSplit) -> Result<SignedGraph, GraphError> {
    let (r, resign) = validate(g, split)?;
    let mut out = g.resign_indices(&resign);
    for (i, e) in out.edges.iter_mut().enumerate() {
        if !r.in_h2[i] {
            continue;
        }
        let moved = |end: usize, w: usize| r.end_roles[i][end].map_or(w, |role| r.vertex[&role.swapped()]);
        let (u, v) = (moved(0, e.u), moved(1, e.v));
        let sign = e.sign();
        *e = match (e.is_loop(), u == v) {
            (false, _) | (true, true) => Edge { u, v, loop_sign: sign, ..e.clone() },
            // a loop whose two ends held different roles opens into a link
            (true, false) => Edge {
                u,
                v,
                into: if sign == Sign::Positive { [true, false] } else { [true, true] },
                ..e.clone()
            },
        };
    }
    Ok(out)
}

/// True iff the two graphs have the same circuits, edges matched by label.
pub fn verify_flip(g: &SignedGraph, g2: &SignedGraph) -> Result<bool, GraphError> {
    let (a, b): (BTreeSet<_>, BTreeSet<_>) = (g.edge_labels().into_iter().collect(), g2.edge_labels().into_iter().collect());
    if a != b {
        return Err(GraphError::LabelMismatch);
    }
    Ok(g.circuits()? == g2.circuits()?)
}

/// Every valid split, found by brute force. Terminals may coincide across the
/// pairs (`s_i == t_j`) but not within one. The flipped side is a union of the
/// components left after removing the terminals plus any edges running between
/// terminals; ends at a vertex holding two roles take each role in turn. Splits
/// whose flipped side is empty or everything are skipped.
pub fn find_splits(g: &SignedGraph) -> Vec<CylinderSplit> {
    let n = g.vertices.len();
    let mut out = Vec::new();
    for s1 in 0..n {
        for s2 in s1 + 1..n {
            for t1 in 0..n {
                for t2 in t1 + 1..n {
                    out.extend(splits_with_terminals(g, [s1, s2, t1, t2]));
                }
            }
        }
    }
    out
}

/// Cap on the side and role choices tried for one terminal set.
const MAX_CHOICES: u32 = 16;

fn splits_with_terminals(g: &SignedGraph, terms: [usize; 4]) -> Vec<CylinderSplit> {
    let n = g.vertices.len();
    // components of the graph with the terminals removed
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if terms.contains(&start) || comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = count;
        while let Some(w) = stack.pop() {
            for e in g.edges.iter().filter(|e| e.touches(w)) {
                let x = e.other_end(w);
                if !terms.contains(&x) && comp[x] == usize::MAX {
                    comp[x] = count;
                    stack.push(x);
                }
            }
        }
        count += 1;
    }
    let between: Vec<usize> = (0..g.edges.len())
        .filter(|&i| terms.contains(&g.edges[i].u) && terms.contains(&g.edges[i].v))
        .collect();
    let free = count + between.len();
    if free > MAX_CHOICES as usize {
        return Vec::new();
    }
    let names = terms.map(|t| g.vertices[t].as_str());
    let roles_at = |w: usize| -> Vec<Role> { (0..4).filter(|&k| terms[k] == w).map(|k| Role::ALL[k]).collect() };
    let mut out = Vec::new();
    for choice in 1u32..(1 << free) - 1 {
        let mut in_h2 = vec![false; g.edges.len()];
        for (i, e) in g.edges.iter().enumerate() {
            in_h2[i] = [e.u, e.v].iter().any(|&w| !terms.contains(&w) && choice >> comp[w] & 1 == 1);
        }
        for (k, &i) in between.iter().enumerate() {
            in_h2[i] = choice >> (count + k) & 1 == 1;
        }
        // ends needing an explicit role
        let mut ambiguous: Vec<(String, usize, Vec<Role>)> = Vec::new();
        for (i, e) in g.edges.iter().enumerate() {
            if in_h2[i] {
                for (end, w) in [e.u, e.v].into_iter().enumerate() {
                    let roles = roles_at(w);
                    if roles.len() > 1 {
                        ambiguous.push((e.label.clone(), end, roles));
                    }
                }
            }
        }
        if ambiguous.len() as u32 > MAX_CHOICES {
            continue;
        }
        let h2: Vec<String> = g.edges.iter().zip(&in_h2).filter(|(_, &h)| h).map(|(e, _)| e.label.clone()).collect();
        for pick in 0u32..(1 << ambiguous.len()) {
            let mut split = CylinderSplit::new(names, h2.iter().cloned());
            for (k, (label, end, roles)) in ambiguous.iter().enumerate() {
                split.roles.insert((label.clone(), *end), roles[(pick >> k & 1) as usize]);
            }
            if validate(g, &split).is_ok() {
                out.push(split);
            }
        }
    }
    out
}

/// The graph of the cylinder-flip lemma: all-positive `h1` and `h2` joined at
/// terminals `a` of `h1` and `b` of `h2` (both in the order `s1, s2, t1, t2`), with
/// the joining edges contracted. `crossed` attaches `h2` with `s1'`/`s2'` and
/// `t1'`/`t2'` exchanged.
///
/// The edges of `h2` with exactly one end at `t1'` or `t2'` come out negative.
/// Terminals of `a` may coincide; those of `b` must be distinct. Also returns
/// the split over `a` whose flipped side is `h2`.
pub fn lemma_graph(
    h1: &SignedGraph,
    h2: &SignedGraph,
    a: [&str; 4],
    b: [&str; 4],
    crossed: bool,
) -> Result<(SignedGraph, CylinderSplit), GraphError> {
    if h1.edges.iter().chain(&h2.edges).any(|e| e.sign() == Sign::Negative) {
        return Err(invalid("both sides must be all positive"));
    }
    let b_idx: Vec<usize> = b.iter().map(|v| h2.vertex_index(v)).collect::<Result<_, _>>()?;
    if b_idx.iter().collect::<BTreeSet<_>>().len() < 4 {
        return Err(invalid("terminals of the second graph must be distinct"));
    }
    let role_at = |w: usize| b_idx.iter().position(|&x| x == w).map(|i| Role::ALL[i]);
    let attach = |role: Role| a[Role::ALL.iter().position(|&r| r == if crossed { role.swapped() } else { role }).unwrap()];
    let mut vertices: Vec<String> = h1.vertices.clone();
    vertices.extend(h2.vertices.iter().enumerate().filter(|(i, _)| role_at(*i).is_none()).map(|(_, v)| v.clone()));
    let mut g = SignedGraph::new(vertices)?;
    for e in &h1.edges {
        g.add_oriented(e.label.clone(), &h1.vertices[e.u], &h1.vertices[e.v], e.into, e.sign())?;
    }
    let mut split = CylinderSplit::new(a, Vec::<String>::new());
    let shared: BTreeSet<&str> = a.iter().copied().filter(|v| a.iter().filter(|w| *w == v).count() > 1).collect();
    for e in &h2.edges {
        let ends = [e.u, e.v].map(|w| match role_at(w) {
            Some(role) => (attach(role).to_string(), Some(role)),
            None => (h2.vertices[w].clone(), None),
        });
        let t_ends = ends.iter().filter(|(_, r)| r.is_some_and(Role::is_t)).count();
        let sign = if t_ends == 1 { Sign::Negative } else { Sign::Positive };
        g.add_edge(e.label.clone(), &ends[0].0, &ends[1].0, sign)?;
        split.h2.insert(e.label.clone());
        for (end, (name, role)) in ends.iter().enumerate() {
            if let Some(role) = role {
                if shared.contains(name.as_str()) {
                    let role = if crossed { role.swapped() } else { *role };
                    split.roles.insert((e.label.clone(), end), role);
                }
            }
        }
    }
    Ok((g, split))
}
