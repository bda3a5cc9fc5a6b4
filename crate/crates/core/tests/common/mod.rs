#![allow(dead_code)]

pub mod configs;
pub mod random_systems;

use omreal_core::{enumerate_classes, Chirotope, Realization, Sign};

/// Every `(n, r)` with `2 <= r < n <= max`.
pub fn cells(max: usize) -> Vec<(usize, usize)> {
    (3..=max).flat_map(|n| (2..n).map(move |r| (n, r))).collect()
}

pub fn classes(n: usize, r: usize) -> Vec<Chirotope> {
    enumerate_classes(n, r, false).unwrap().chirotopes().collect()
}

/// All reorientation-class representatives with `n <= max`.
pub fn all_classes(max: usize) -> Vec<Chirotope> {
    cells(max).into_iter().flat_map(|(n, r)| classes(n, r)).collect()
}

/// Tuples whose sign can be changed to another value without breaking the
/// exchange axiom.
pub fn flip_oracle(chi: &Chirotope, alphabet: &[Sign]) -> Vec<usize> {
    (0..chi.signs().len())
        .filter(|&k| {
            alphabet.iter().any(|&v| {
                if v == chi.sign_at(k) {
                    return false;
                }
                let mut s = chi.signs().to_vec();
                s[k] = v;
                Chirotope::new(chi.n(), chi.r(), s).unwrap().check_axioms().is_valid()
            })
        })
        .collect()
}

pub fn from_points(points: &[Vec<i64>]) -> Chirotope {
    Realization::from_points(points).unwrap().chirotope().unwrap()
}
