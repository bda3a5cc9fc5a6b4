mod common;

use std::collections::BTreeSet;

use common::all_classes;
use omreal_core::covectors::{circuits, cocircuits, is_acyclic, SignVector};
use omreal_core::symmetry::{canonical_form, reorient, transform, Group};
use omreal_core::{Chirotope, Realization, Sign};
use proptest::prelude::*;

#[test]
fn eval_sign_alternates_on_every_tuple() {
    for chi in all_classes(6) {
        let space = chi.space();
        for t in space.tuples() {
            let base = chi.eval_sign(t.elements()).unwrap();
            for i in 0..chi.r() {
                for j in i + 1..chi.r() {
                    let mut seq = t.0.clone();
                    seq.swap(i, j);
                    assert_eq!(chi.eval_sign(&seq).unwrap(), -base, "{chi} {t}");
                }
            }
        }
    }
}

#[test]
fn dual_is_an_involution_up_to_negation() {
    for chi in all_classes(6) {
        let dd = chi.dual().unwrap().dual().unwrap();
        assert!(dd == chi || dd == chi.negated(), "{chi}");
    }
}

/// All covectors: the zero vector and every composition of cocircuits.
fn covectors(chi: &Chirotope) -> BTreeSet<SignVector> {
    let mut cos: Vec<SignVector> = cocircuits(chi);
    cos.extend(cos.clone().iter().map(SignVector::negated));
    let mut all: BTreeSet<SignVector> = BTreeSet::from([SignVector(vec![Sign::Zero; chi.n()])]);
    let mut frontier: Vec<SignVector> = all.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for d in &cos {
            let composed = SignVector(x.0.iter().zip(&d.0).map(|(&a, &b)| if a.is_zero() { b } else { a }).collect());
            if all.insert(composed.clone()) {
                frontier.push(composed);
            }
        }
    }
    all
}

#[test]
fn acyclicity_matches_covector_search() {
    for chi in all_classes(6).into_iter().filter(|c| c.n() <= 5) {
        for set in 0..1u32 << chi.n() {
            let c = reorient(&chi, set);
            let all_plus = SignVector(vec![Sign::Plus; c.n()]);
            assert_eq!(is_acyclic(&c), covectors(&c).contains(&all_plus), "{c}");
        }
    }
    // n = 6: one reorientation per representative and its full flip
    for chi in all_classes(6).into_iter().filter(|c| c.n() == 6) {
        for set in [0, 1, 0b101, 0b11] {
            let c = reorient(&chi, set);
            let all_plus = SignVector(vec![Sign::Plus; 6]);
            assert_eq!(is_acyclic(&c), covectors(&c).contains(&all_plus), "{c}");
        }
    }
}

#[test]
fn circuits_and_cocircuits_are_orthogonal() {
    for chi in all_classes(6) {
        let cs = circuits(&chi);
        let ds = cocircuits(&chi);
        for c in &cs {
            for d in &ds {
                let products: Vec<Sign> = c.0.iter().zip(&d.0).map(|(&a, &b)| a * b).collect();
                let pos = products.contains(&Sign::Plus);
                let neg = products.contains(&Sign::Minus);
                assert_eq!(pos, neg, "{chi}: {c:?} vs {d:?}");
            }
        }
    }
}

fn group_element(n: usize) -> impl Strategy<Value = (Vec<usize>, u32, bool)> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), 0..1u32 << n, any::<bool>())
}

fn class_and_element() -> impl Strategy<Value = (Chirotope, (Vec<usize>, u32, bool))> {
    let all = all_classes(6);
    (0..all.len()).prop_flat_map(move |i| {
        let chi = all[i].clone();
        let n = chi.n();
        (Just(chi), group_element(n))
    })
}

fn elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|e| mask & 1 << e != 0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn canonical_form_is_constant_on_orbits((chi, (perm, set, neg)) in class_and_element()) {
        let moved = transform(&chi, &perm, &elements(set), neg).unwrap();
        prop_assert!(moved.check_axioms().is_valid());
        prop_assert_eq!(canonical_form(&moved, Group::Full), canonical_form(&chi, Group::Full));
        let relabeled = transform(&chi, &perm, &[], neg).unwrap();
        prop_assert_eq!(canonical_form(&relabeled, Group::Relabel), canonical_form(&chi, Group::Relabel));
    }

    #[test]
    fn configurations_give_chirotopes(
        (_r, n, entries) in (2usize..=4).prop_flat_map(|r| (Just(r), r..=7usize))
            .prop_flat_map(|(r, n)| (Just(r), Just(n), proptest::collection::vec(-4i64..=4, r * n)))
    ) {
        let rows: Vec<Vec<i64>> = entries.chunks(n).map(<[i64]>::to_vec).collect();
        let chi = Realization::from_integer_rows(&rows).unwrap().chirotope().unwrap();
        if chi.signs().iter().any(|s| s.is_nonzero()) {
            prop_assert!(chi.check_axioms().is_valid(), "{}", chi);
        }
    }
}
