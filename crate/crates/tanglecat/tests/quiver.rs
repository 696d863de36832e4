//! Normal forms, basis counts and Ω¹ homology of the quiver algebra.

use tanglecat::gradedring::QExp;
use tanglecat::quiverlab::{
    family_counts, multiply, omega_homology, quiver_basis, ranks_stable, reduce, Gen, QuiverError, TruncatedDgModule, FAMILIES,
    GENERATOR_BIDEGREE,
};

fn words(max_len: usize) -> Vec<Vec<Gen>> {
    let mut out = vec![];
    let mut layer: Vec<Vec<Gen>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                Gen::ALL.iter().map(move |g| {
                    let mut v = w.clone();
                    v.push(*g);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[test]
fn reduction_is_associative() {
    let mut checked = 0;
    for w in words(6) {
        let whole = reduce(&w);
        for k in 1..w.len() {
            let split = match (reduce(&w[..k]), reduce(&w[k..])) {
                (Some(a), Some(b)) => multiply(&a, &b),
                _ => None,
            };
            assert_eq!(split, whole, "{w:?} at {k}");
            checked += 1;
        }
    }
    assert!(checked > 60_000);
}

#[test]
fn normal_forms_are_basis_elements() {
    let basis = quiver_basis(QExp(24));
    for w in words(6) {
        if let Some(m) = reduce(&w) {
            assert!(m.total_weight() <= 24);
            assert!(basis.contains(&m), "{w:?} -> {m}");
            assert_eq!(reduce(&m.word).as_ref(), Some(&m));
        }
    }
}

/// Members of `start + 4k` weight families that fit under `cutoff`.
fn fits(cutoff: i64, start: i64) -> usize {
    if cutoff < start {
        0
    } else {
        ((cutoff - start) / 4 + 1) as usize
    }
}

#[test]
fn family_counts_grow_linearly() {
    // lowest total weight of each family; R and L weigh 2, C, C~ and U weigh 4
    let start = [0, 4, 4, 4, 2, 6, 8, 0, 4, 2, 4, 6];
    for k in 0..=40 {
        let got = family_counts(QExp(k));
        assert_eq!(got.len(), FAMILIES.len());
        for (j, (name, n)) in got.iter().enumerate() {
            let want = if j == 0 || j == 7 { 1 } else { fits(k, start[j]) };
            assert_eq!(*n, want, "{name} at {k}");
        }
        assert_eq!(got.iter().map(|(_, n)| n).sum::<usize>(), quiver_basis(QExp(k)).len());
    }
}

#[test]
fn differential_squares_to_zero() {
    for k in [6, 8, 12, 20, 32] {
        let m = TruncatedDgModule::new(QExp(k));
        assert!(m.d_squared_failures().is_empty(), "cutoff {k}");
    }
}

#[test]
fn homology_is_one_class() {
    for k in [6, 8, 10, 16, 24] {
        let h = omega_homology(QExp(k)).unwrap();
        assert_eq!(h.total(), 1, "cutoff {k}: {h}");
        assert_eq!(h.ranks.get(&GENERATOR_BIDEGREE), Some(&1));
        assert!(ranks_stable(QExp(k), 2).unwrap());
    }
}

#[test]
fn small_windows_are_rejected() {
    assert_eq!(omega_homology(QExp(5)), Err(QuiverError::WindowTooSmall { cutoff: 5, needed: 6 }));
    assert_eq!(omega_homology(QExp(-1)), Err(QuiverError::NegativeCutoff(-1)));
}
