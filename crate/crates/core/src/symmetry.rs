//! Relabeling, reorientation and canonical forms.
//!
//! For a fixed relabeling the lexicographically smallest string over all
//! reorientations and global negations is computed greedily: every stored
//! position flips by the parity of `ε + Σ_{e∈T} a_e` over GF(2), so each
//! nonzero position either has its sign already determined by earlier
//! positions or can be made `+`. Minimizing over relabelings then gives the
//! orbit minimum with `n!` greedy passes instead of `n! · 2^(n+1)` strings.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::chirotope::Chirotope;
use crate::error::{Error, Result};
use crate::sign::{sign_string, Sign};
use crate::tuple::{mask_of, sorting_sign, tuple_space, TupleSpace};

/// Symmetry group used for equivalence classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    /// Relabelings and global negation; classes index point-configuration types.
    Relabel,
    /// Relabelings, reorientations and global negation.
    Full,
}

/// Applies a relabeling, a reorientation and an optional global negation.
///
/// Element `i` of `chi` becomes element `relabel[i]` of the result; the
/// reorientation set is given in the labels of `chi`.
pub fn transform(chi: &Chirotope, relabel: &[usize], reorient: &[usize], negate: bool) -> Result<Chirotope> {
    let n = chi.n();
    let mut inverse = vec![usize::MAX; n];
    if relabel.len() != n {
        return Err(Error::NotAPermutation { n });
    }
    for (i, &p) in relabel.iter().enumerate() {
        if p >= n || inverse[p] != usize::MAX {
            return Err(Error::NotAPermutation { n });
        }
        inverse[p] = i;
    }
    if let Some(&bad) = reorient.iter().find(|&&e| e >= n) {
        return Err(Error::IndexOutOfRange { index: bad, n });
    }
    let flip_mask = mask_of(reorient);
    Chirotope::from_fn(n, chi.r(), |target| {
        let source: Vec<usize> = target.elements().iter().map(|&t| inverse[t]).collect();
        let parity = (mask_of(&source) & flip_mask).count_ones() % 2 == 1;
        chi.eval_unchecked(&source).flip_if(parity ^ negate)
    })
}

/// Reorients the elements of `set` (a bitmask).
pub fn reorient(chi: &Chirotope, set: u32) -> Chirotope {
    let space = chi.space();
    let signs = chi
        .signs()
        .iter()
        .enumerate()
        .map(|(i, &s)| s.flip_if((space.mask(i) & set).count_ones() % 2 == 1))
        .collect();
    Chirotope::new(chi.n(), chi.r(), signs).expect("same shape")
}

/// Lookup of `(source index, alternation sign)` for every relabeling and
/// target position.
struct PermTable {
    len: usize,
    entries: Vec<(u16, Sign)>,
}

const TABLE_MAX_N: usize = 8;

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// `(source index, sign)` of target position `t` under the relabeling with
/// inverse `inverse`.
fn source_of(space: &TupleSpace, inverse: &[usize], t: usize, buf: &mut Vec<usize>) -> (u16, Sign) {
    buf.clear();
    buf.extend(space.tuple(t).elements().iter().map(|&e| inverse[e]));
    let idx = space.index_of_mask(mask_of(buf)).expect("relabeling preserves size");
    (idx as u16, sorting_sign(buf))
}

fn perm_table(n: usize, r: usize) -> Arc<PermTable> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<PermTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("perm cache poisoned").get(&(n, r)) {
        return t.clone();
    }
    let space = tuple_space(n, r);
    let len = space.len();
    let mut entries = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut inverse = vec![0; n];
    let mut buf = Vec::with_capacity(r);
    loop {
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        for t in 0..len {
            entries.push(source_of(&space, &inverse, t, &mut buf));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let table = Arc::new(PermTable { len, entries });
    cache
        .lock()
        .expect("perm cache poisoned")
        .entry((n, r))
        .or_insert(table)
        .clone()
}

/// Greedy GF(2) normalizer over the flip variables of one relabeling.
struct FlipBasis {
    rows: [(u32, bool); 32],
    present: u32,
}

impl FlipBasis {
    fn new() -> FlipBasis {
        FlipBasis {
            rows: [(0, false); 32],
            present: 0,
        }
    }

    /// Sign of a nonzero position after the lexicographically best choice of
    /// the still-free flips.
    #[inline]
    fn normalize(&mut self, mut vector: u32, value: Sign) -> Sign {
        let mut parity = false;
        while vector != 0 {
            let bit = 31 - vector.leading_zeros();
            if self.present & (1 << bit) == 0 {
                // free: choose the flip so that this position becomes `+`
                let want = value == Sign::Minus;
                self.rows[bit as usize] = (vector, want ^ parity);
                self.present |= 1 << bit;
                return Sign::Plus;
            }
            let (row, p) = self.rows[bit as usize];
            vector ^= row;
            parity ^= p;
        }
        value.flip_if(parity)
    }
}

/// Walks candidate strings of an orbit and keeps the smallest.
struct Minimizer<'a> {
    group: Group,
    n: usize,
    masks: Vec<u32>,
    signs: &'a [Sign],
    best: Vec<Sign>,
    /// Stop at the first strictly smaller candidate.
    stop_on_less: bool,
    found_less: bool,
}

impl<'a> Minimizer<'a> {
    fn new(chi: &'a Chirotope, group: Group, seed: Vec<Sign>, stop_on_less: bool) -> Minimizer<'a> {
        let space = chi.space();
        Minimizer {
            group,
            n: chi.n(),
            masks: (0..space.len()).map(|i| space.mask(i)).collect(),
            signs: chi.signs(),
            best: seed,
            stop_on_less,
            found_less: false,
        }
    }

    /// Returns `false` when the walk should stop.
    fn consider(&mut self, mut source: impl FnMut(usize) -> (u16, Sign)) -> bool {
        let eps_bit = 1u32 << self.n;
        let mut basis = FlipBasis::new();
        let mut state = Ordering::Equal;
        for t in 0..self.best.len() {
            let (src, alt) = source(t);
            let raw = alt * self.signs[src as usize];
            let value = if raw.is_zero() {
                Sign::Zero
            } else {
                let vector = match self.group {
                    Group::Full => eps_bit | self.masks[t],
                    Group::Relabel => eps_bit,
                };
                basis.normalize(vector, raw)
            };
            match state {
                Ordering::Equal => match value.cmp(&self.best[t]) {
                    Ordering::Greater => return true,
                    Ordering::Less => {
                        if self.stop_on_less {
                            self.found_less = true;
                            return false;
                        }
                        state = Ordering::Less;
                        self.best[t] = value;
                    }
                    Ordering::Equal => {}
                },
                _ => self.best[t] = value,
            }
        }
        true
    }

    fn run(&mut self, n: usize, r: usize) {
        if n <= TABLE_MAX_N {
            let table = perm_table(n, r);
            for chunk in table.entries.chunks(table.len) {
                if !self.consider(|t| chunk[t]) {
                    return;
                }
            }
        } else {
            let space = tuple_space(n, r);
            let mut perm: Vec<usize> = (0..n).collect();
            let mut inverse = vec![0; n];
            let mut buf = Vec::with_capacity(r);
            loop {
                for (i, &p) in perm.iter().enumerate() {
                    inverse[p] = i;
                }
                if !self.consider(|t| source_of(&space, &inverse, t, &mut buf)) {
                    return;
                }
                if !next_permutation(&mut perm) {
                    return;
                }
            }
        }
    }
}

/// Lexicographically smallest sign sequence in the orbit of `chi`.
pub fn canonical_signs(chi: &Chirotope, group: Group) -> Vec<Sign> {
    // "00…0" bounds every orbit member from above
    let mut m = Minimizer::new(chi, group, vec![Sign::Zero; chi.signs().len()], false);
    m.run(chi.n(), chi.r());
    m.best
}

pub fn canonical_form(chi: &Chirotope, group: Group) -> String {
    sign_string(&canonical_signs(chi, group))
}

pub fn canonical_chirotope(chi: &Chirotope, group: Group) -> Chirotope {
    Chirotope::new(chi.n(), chi.r(), canonical_signs(chi, group)).expect("same shape")
}

/// Whether `chi` is its own canonical form; stops at the first smaller
/// orbit member.
pub fn is_canonical(chi: &Chirotope, group: Group) -> bool {
    let mut m = Minimizer::new(chi, group, chi.signs().to_vec(), true);
    m.run(chi.n(), chi.r());
    !m.found_less
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_transform_is_noop() {
        let chi = Chirotope::from_sign_str(4, 3, "+-0+").unwrap();
        assert_eq!(transform(&chi, &[0, 1, 2, 3], &[], false).unwrap(), chi);
    }

    #[test]
    fn full_reorientation_in_odd_rank_is_negation() {
        let chi = Chirotope::all_plus(5, 3).unwrap();
        let all = transform(&chi, &[0, 1, 2, 3, 4], &[0, 1, 2, 3, 4], false).unwrap();
        assert_eq!(all, transform(&chi, &[0, 1, 2, 3, 4], &[], true).unwrap());
        assert_eq!(all, chi.negated());
    }

    #[test]
    fn reorientation_is_an_involution() {
        let chi = Chirotope::from_sign_str(4, 2, "++0+-+").unwrap();
        let once = transform(&chi, &[0, 1, 2, 3], &[1, 3], false).unwrap();
        assert_ne!(once, chi);
        assert_eq!(transform(&once, &[0, 1, 2, 3], &[1, 3], false).unwrap(), chi);
        assert_eq!(reorient(&chi, 0b1010), once);
    }

    #[test]
    fn rejects_non_permutations() {
        let chi = Chirotope::all_plus(3, 2).unwrap();
        assert!(transform(&chi, &[0, 0, 1], &[], false).is_err());
        assert!(transform(&chi, &[0, 1], &[], false).is_err());
    }

    #[test]
    fn canonical_of_all_plus_is_itself() {
        let chi = Chirotope::all_plus(5, 3).unwrap();
        assert!(is_canonical(&chi, Group::Full));
        assert_eq!(canonical_form(&chi, Group::Full), "++++++++++");
    }

    #[test]
    fn next_permutation_counts() {
        let mut p: Vec<usize> = (0..4).collect();
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
    }
}
