use super::*;
use crate::matroid::basis_set;

fn free2() -> LinearMatroid {
    LinearMatroid::new(Matrix::<Dyadic>::identity(2)).unwrap()
}

/// Every nonzero vector with entries `±2^k` or `0`, scaled so its first nonzero is `1`,
/// kept iff every maximal minor of the extended matrix is `0` or `±2^k` (full rescan).
fn brute_columns(m: &LinearMatroid, bound: i64) -> Vec<Vec<Dyadic>> {
    let rep = m.rep().as_dyadic().unwrap();
    let r = rep.rows();
    let mut values = vec![Dyadic::zero()];
    for k in -bound..=bound {
        values.push(Dyadic::unit(false, k));
        values.push(Dyadic::unit(true, k));
    }
    let mut out = std::collections::BTreeSet::new();
    let total = values.len().pow(r as u32);
    for mut code in 0..total {
        let mut x = Vec::with_capacity(r);
        for _ in 0..r {
            x.push(values[code % values.len()].clone());
            code /= values.len();
        }
        if let Some(first) = x.iter().find(|v| !v.is_zero()).cloned() {
            let inv = first.checked_inv().unwrap();
            x.iter_mut().for_each(|v| *v = v.mul(&inv));
        }
        if rep.push_column(&x, "new".into()).unwrap().is_weak_dyadic() {
            out.insert(x);
        }
    }
    out.into_iter().collect()
}

fn sorted(mut v: Vec<Vec<Dyadic>>) -> Vec<Vec<Dyadic>> {
    v.sort();
    v
}

#[test]
fn free_matroid_columns() {
    let cols = extension_columns(&free2(), 0).unwrap();
    let expect: Vec<Vec<Dyadic>> = [[0, 0], [0, 1], [1, 0], [1, 1], [1, -1]]
        .iter()
        .map(|r| r.iter().map(|&v| Dyadic::from_int(v)).collect())
        .collect();
    assert_eq!(sorted(cols), sorted(expect));
}

#[test]
fn columns_match_full_rescan() {
    let seeds = seeds();
    for (m, bound) in [(free2(), 1), (seeds[0].matroid.clone(), 1), (seeds[1].matroid.clone(), 1)] {
        assert_eq!(sorted(extension_columns(&m, bound as u32).unwrap()), brute_columns(&m, bound));
    }
}

#[test]
fn seed_columns_reappear() {
    let m = Seed::NonFano.matroid();
    let cols = extension_columns(&m, DEFAULT_EXPONENT_BOUND).unwrap();
    let rep = m.rep().as_dyadic().unwrap();
    for j in 0..rep.cols() {
        assert!(cols.contains(&rep.column(j)), "column {j}");
    }
    assert!(cols[0].iter().all(Scalar::is_zero));
}

#[test]
fn extensions_are_simple_and_new() {
    let m = Seed::NonFano.matroid();
    let ext = single_extensions(&m, DEFAULT_EXPONENT_BOUND).unwrap();
    assert!(!ext.is_empty());
    for e in &ext {
        assert_eq!(e.size(), 8);
        assert!(e.is_simple());
        assert_eq!(e.groundset()[7], "e8");
        assert!(e.rep().as_dyadic().unwrap().is_weak_dyadic());
    }
}

#[test]
fn coextensions_are_duals_of_extensions() {
    let m = Seed::NonFanoDual.matroid();
    let co = single_coextensions(&m, DEFAULT_EXPONENT_BOUND).unwrap();
    let ext = single_extensions(&m.dual().unwrap(), DEFAULT_EXPONENT_BOUND).unwrap();
    assert_eq!(co.len(), ext.len());
    assert!(!co.is_empty());
    for (c, e) in co.iter().zip(&ext) {
        assert_eq!(c.size(), 8);
        assert_eq!(c.coloops(), 0);
        assert!(c.is_cosimple());
        let full = c.full_mask();
        let complements: std::collections::HashSet<u64> = basis_set(e).iter().map(|b| full & !b).collect();
        assert_eq!(basis_set(c), complements);
    }
}

#[test]
fn seven_gives_the_seeds() {
    let g = generate_with(GenerateOptions::new(7)).unwrap();
    assert_eq!(g.entries.len(), 2);
    assert!(g.entries.iter().all(|e| e.ancestry.is_empty()));
    assert!(are_isomorphic(&g.entries[0].matroid, &g.entries[1].matroid).is_none());
    for e in &g.entries {
        let m = &e.matroid;
        assert!(m.is_3connected() && m.is_simple() && m.is_cosimple());
        assert!(e.matrix().is_weak_dyadic());
    }
    assert!(matches!(generate_matroids(6), Err(GenerateError::SizeOutOfRange(6))));
    assert!(matches!(generate_matroids(13), Err(GenerateError::SizeOutOfRange(13))));
}

#[test]
fn size_eight_level() {
    let g = generate_with(GenerateOptions::new(8)).unwrap();
    let eight: Vec<&CatalogEntry> = g.entries.iter().filter(|e| e.size() == 8).collect();
    assert!(!eight.is_empty());
    let seeds = seeds();
    for e in &eight {
        assert_eq!(e.ancestry.len(), 1);
        // a one-element deletion or contraction gives back a seed
        let m = &e.matroid;
        let minors: Vec<LinearMatroid> = (0..8)
            .flat_map(|i| [m.delete_index(i).unwrap(), m.contract_index(i).unwrap()])
            .collect();
        assert!(minors
            .iter()
            .any(|n| seeds.iter().any(|s| are_isomorphic(n, &s.matroid).is_some())));
        assert!(whittle_check(e.matrix()));
    }
    for (i, a) in eight.iter().enumerate() {
        for b in &eight[..i] {
            assert!(are_isomorphic(&a.matroid, &b.matroid).is_none());
        }
    }
    let again = generate_with(GenerateOptions::new(8)).unwrap();
    assert_eq!(write_catalog(&g.entries), write_catalog(&again.entries));
}

#[test]
fn p8_minor_search() {
    let p8 = LinearMatroid::new(fixtures::p8()).unwrap();
    assert!(has_minor(&p8, &p8).unwrap());
    assert!(!has_minor(&Seed::NonFano.matroid(), &p8).unwrap());
    // every one-element minor of P8 has 30 bases, the seeds 29
    let nf = Seed::NonFano.matroid();
    assert!(!has_minor(&p8, &nf).unwrap() && !has_minor(&p8, &nf.dual().unwrap()).unwrap());
    assert!((0..8).all(|i| p8.contract_index(i).unwrap().basis_masks().len() == 30));
    // P8 plus a column stays out of the catalog
    let ext = single_extensions(&p8, 1).unwrap();
    assert!(ext.iter().take(3).all(|e| has_minor(e, &p8).unwrap()));
}

#[test]
fn catalog_round_trip() {
    let entries = seeds();
    let text = write_catalog(&entries);
    assert!(text.starts_with(CATALOG_HEADER));
    let back = parse_catalog(&text).unwrap();
    assert_eq!(back, entries);
    assert_eq!(entries[1].ancestry_text(), "F7-*");
    let mut bad = text.replace(&entries[0].id, "0000000000000000");
    assert!(matches!(parse_catalog(&bad), Err(GenerateError::Catalog { line: 2, .. })));
    bad = text.replace("F7-*", "F9");
    assert!(parse_catalog(&bad).is_err());
    assert!(parse_catalog("").unwrap().is_empty());
}

#[test]
fn whittle_rejects_a_non_dyadic_minor() {
    // a 3 in a 2x2 minor vanishes mod 3
    let m = Matrix::<Dyadic>::from_ints(&[&[1, 0, 1], &[0, 1, 3]]);
    assert!(!whittle_check(&m));
    assert!(whittle_check(&fixtures::non_fano()));
}
