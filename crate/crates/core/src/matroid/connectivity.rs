use super::LinearMatroid;

/// Smallest `r(A) + r(E - A) - r(E)` over partitions with both sides of size at least `min_side`.
fn min_separation(m: &LinearMatroid, min_side: u32) -> Option<usize> {
    let n = m.size();
    if n < 2 * min_side as usize {
        return None;
    }
    let full = m.full_mask();
    let r = m.rank();
    // element 0 is always on side A, so each partition is seen once
    (0..1u64 << (n - 1))
        .map(|rest| (rest << 1) | 1)
        .filter(|&a| a.count_ones() >= min_side && (full & !a).count_ones() >= min_side)
        .map(|a| m.rank_of_mask(a) + m.rank_of_mask(full & !a) - r)
        .min()
}

pub(super) fn is_connected(m: &LinearMatroid) -> bool {
    min_separation(m, 1).is_none_or(|k| k >= 1)
}

pub(super) fn is_3connected(m: &LinearMatroid) -> bool {
    is_connected(m) && min_separation(m, 2).is_none_or(|k| k >= 2)
}
