mod common;

use std::collections::BTreeSet;

use common::{all_classes, classes};
use omreal_core::symmetry::{canonical_form, is_canonical, transform, Group};
use omreal_core::tuple::binomial;
use omreal_core::{enumerate_classes, Chirotope, Sign};
use proptest::prelude::*;

#[test]
fn table_counts_up_to_six_elements() {
    // (n, r, classes, uniform classes)
    let cells = [(3, 3, 1, 1), (4, 3, 2, 1), (5, 3, 4, 1), (6, 3, 17, 4), (4, 4, 1, 1), (5, 4, 3, 1), (6, 4, 12, 1), (5, 5, 1, 1), (6, 5, 4, 1), (6, 6, 1, 1)];
    for (n, r, total, uniform) in cells {
        let rep = enumerate_classes(n, r, false).unwrap();
        assert_eq!((rep.class_count, rep.uniform_class_count), (total, uniform), "OM({r},{n})");
    }
}

/// Orbit count of uniform chirotopes by exhaustion over all `2^C(n,r)`
/// sign maps, with the first sign fixed by global negation.
fn brute_force_uniform(n: usize, r: usize) -> usize {
    let len = binomial(n, r);
    let mut orbits = BTreeSet::new();
    for bits in 0..1u64 << (len - 1) {
        let signs: Vec<Sign> = (0..len)
            .map(|k| if k > 0 && bits >> (k - 1) & 1 == 1 { Sign::Minus } else { Sign::Plus })
            .collect();
        let chi = Chirotope::new(n, r, signs).unwrap();
        if chi.check_axioms().is_valid() {
            orbits.insert(canonical_form(&chi, Group::Full));
        }
    }
    orbits.len()
}

#[test]
fn uniform_counts_by_exhaustion() {
    for (n, r) in [(5, 3), (5, 4), (6, 4), (6, 5), (5, 2), (6, 2)] {
        let rep = enumerate_classes(n, r, true).unwrap();
        assert_eq!(rep.class_count, brute_force_uniform(n, r), "OM({r},{n})");
    }
    // duality: uniform rank 4 on 6 elements pairs with uniform rank 2
    assert_eq!(brute_force_uniform(6, 4), 1);
}

#[test]
fn representatives_are_simple_valid_canonical_and_distinct() {
    for chi in all_classes(6) {
        assert!(chi.is_simple(), "{chi}");
        assert!(chi.check_axioms().is_valid(), "{chi}");
        assert!(is_canonical(&chi, Group::Full), "{chi}");
        assert_eq!(canonical_form(&chi, Group::Full), chi.sign_string());
    }
    for (n, r) in common::cells(6) {
        let reps = classes(n, r);
        let distinct: BTreeSet<String> = reps.iter().map(Chirotope::sign_string).collect();
        assert_eq!(distinct.len(), reps.len());
        let sorted: Vec<String> = distinct.into_iter().collect();
        let emitted: Vec<String> = reps.iter().map(Chirotope::sign_string).collect();
        assert_eq!(sorted, emitted, "output is sorted");
    }
}

fn cell_and_element() -> impl Strategy<Value = (usize, usize, usize, Vec<usize>, u32, bool)> {
    prop_oneof![Just((5, 3)), Just((6, 3)), Just((6, 4)), Just((6, 5))].prop_flat_map(|(n, r)| {
        let count = classes(n, r).len();
        (
            Just(n),
            Just(r),
            0..count,
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            0..1u32 << n,
            any::<bool>(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn orbits_land_on_emitted_strings((n, r, i, perm, set, neg) in cell_and_element()) {
        let reps = classes(n, r);
        let flips: Vec<usize> = (0..n).filter(|e| set & 1 << e != 0).collect();
        let moved = transform(&reps[i], &perm, &flips, neg).unwrap();
        let canon = canonical_form(&moved, Group::Full);
        prop_assert!(reps.iter().any(|c| c.sign_string() == canon));
    }
}
