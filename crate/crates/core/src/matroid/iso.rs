use std::collections::HashSet;

use super::LinearMatroid;

/// Per-element data preserved by every isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementInvariants {
    pub bases_containing: usize,
    /// `circuit_sizes[k]` = number of circuits of size `k` containing the element.
    pub circuit_sizes: Vec<usize>,
}

struct Profile {
    circuits: Vec<u64>,
    elements: Vec<ElementInvariants>,
    basis_count: usize,
}

fn profile(m: &LinearMatroid) -> Profile {
    let n = m.size();
    let bases = m.basis_masks();
    let circuits = m.circuit_masks();
    let elements = (0..n)
        .map(|e| {
            let mut circuit_sizes = vec![0; n + 1];
            for c in circuits.iter().filter(|&&c| c >> e & 1 == 1) {
                circuit_sizes[c.count_ones() as usize] += 1;
            }
            ElementInvariants {
                bases_containing: bases.iter().filter(|&&b| b >> e & 1 == 1).count(),
                circuit_sizes,
            }
        })
        .collect();
    Profile {
        circuits,
        elements,
        basis_count: bases.len(),
    }
}

/// Invariants of each element, in groundset order.
pub fn element_invariants(m: &LinearMatroid) -> Vec<ElementInvariants> {
    profile(m).elements
}

/// A bijection `map` (element `i` of `a` goes to element `map[i]` of `b`) carrying
/// circuits onto circuits, or `None`. The first one in lexicographic order is returned.
pub fn are_isomorphic(a: &LinearMatroid, b: &LinearMatroid) -> Option<Vec<usize>> {
    if a.size() != b.size() || a.rank() != b.rank() {
        return None;
    }
    let pa = profile(a);
    let pb = profile(b);
    if pa.basis_count != pb.basis_count || pa.circuits.len() != pb.circuits.len() {
        return None;
    }
    let mut sa = pa.elements.clone();
    let mut sb = pb.elements.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let n = a.size();
    let target: HashSet<u64> = pb.circuits.iter().copied().collect();
    // circuits of `a` grouped by their largest element, checked once that element is placed
    let mut closing: Vec<Vec<u64>> = vec![Vec::new(); n];
    for &c in &pa.circuits {
        closing[63 - c.leading_zeros() as usize].push(c);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    fn search(
        i: usize,
        map: &mut Vec<usize>,
        used: &mut u64,
        pa: &Profile,
        pb: &Profile,
        closing: &[Vec<u64>],
        target: &HashSet<u64>,
    ) -> bool {
        let n = map.len();
        if i == n {
            return true;
        }
        for j in 0..n {
            if *used >> j & 1 == 1 || pa.elements[i] != pb.elements[j] {
                continue;
            }
            map[i] = j;
            let ok = closing[i].iter().all(|&c| {
                let image = (0..=i).filter(|&k| c >> k & 1 == 1).fold(0u64, |m, k| m | 1 << map[k]);
                target.contains(&image)
            });
            if ok {
                *used |= 1 << j;
                if search(i + 1, map, used, pa, pb, closing, target) {
                    return true;
                }
                *used &= !(1 << j);
            }
        }
        map[i] = usize::MAX;
        false
    }
    search(0, &mut map, &mut used, &pa, &pb, &closing, &target).then_some(map)
}
