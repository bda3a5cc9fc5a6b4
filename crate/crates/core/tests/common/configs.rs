//! Incidence configurations used across test targets.

use omreal_core::{Chirotope, Realization, Sign};

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Homogeneous integer points: three on `y = 0`, three on `y = 1`, and the
/// three cross intersections.
pub fn pappus_points() -> Vec<[i64; 3]> {
    let a = [[0, 0, 1], [1, 0, 1], [3, 0, 1]];
    let b = [[0, 1, 1], [2, 1, 1], [5, 1, 1]];
    let meet = |i: usize, j: usize| cross(cross(a[i], b[j]), cross(a[j], b[i]));
    let p = meet(0, 1);
    let q = meet(0, 2);
    let r = meet(1, 2);
    vec![a[0], a[1], a[2], b[0], b[1], b[2], p, q, r]
}

pub fn pappus() -> Chirotope {
    let pts = pappus_points();
    let rows: Vec<Vec<i64>> = (0..3).map(|k| pts.iter().map(|p| p[k]).collect()).collect();
    Realization::from_integer_rows(&rows).unwrap().chirotope().unwrap()
}

/// The Pappus chirotope with the collinearity of the three intersection
/// points replaced by whichever sign keeps the exchange axiom.
pub fn non_pappus() -> Chirotope {
    let chi = pappus();
    let index = chi.space().index_of_mask(0b111 << 6).unwrap();
    assert_eq!(chi.sign_at(index), Sign::Zero);
    let candidates: Vec<Chirotope> = [Sign::Plus, Sign::Minus]
        .into_iter()
        .filter_map(|s| {
            let mut signs = chi.signs().to_vec();
            signs[index] = s;
            let c = Chirotope::new(9, 3, signs).unwrap();
            c.check_axioms().is_valid().then_some(c)
        })
        .collect();
    assert!(!candidates.is_empty());
    candidates[0].clone()
}
