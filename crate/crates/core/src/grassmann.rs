//! Precomputed sign patterns of the Grassmann-Plücker relations on `Λ(n, r)`.
//!
//! One instance is recorded per sorted tuple `I`, pivot position `p` in `I`,
//! and sorted tuple `J` not containing `I[p]`. With `I' = (I[p], I \ I[p])`
//! the instance relates the product `χ(I')χ(J)` to the `r` exchange products
//! `χ(J[s], I'[1..]) · χ(J[s ← I[p]])`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::sign::Sign;
use crate::tuple::{tuple_space, TupleSpace};

/// A signed reference to a stored chirotope value; `index == u32::MAX`
/// stands for a tuple with a repeated element (constant zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub index: u32,
    pub sign: Sign,
}

impl Slot {
    pub const ZERO: Slot = Slot {
        index: u32::MAX,
        sign: Sign::Zero,
    };

    fn locate(space: &TupleSpace, seq: &[usize]) -> Slot {
        match space.locate(seq) {
            Some((index, sign)) => Slot {
                index: index as u32,
                sign,
            },
            None => Slot::ZERO,
        }
    }

    pub fn is_constant_zero(&self) -> bool {
        self.index == u32::MAX
    }

    #[inline]
    pub fn eval(&self, signs: &[Sign]) -> Sign {
        if self.is_constant_zero() {
            Sign::Zero
        } else {
            self.sign * signs[self.index as usize]
        }
    }
}

#[derive(Clone, Debug)]
pub struct GpRelation {
    /// Sorted tuple `I` and pivot position inside it.
    pub i_index: usize,
    pub pivot: usize,
    /// Sorted tuple `J`.
    pub j_index: usize,
    /// `χ(I')` as a slot on `I`.
    pub lhs_i: Slot,
    pub lhs_j: Slot,
    pub terms: Vec<(Slot, Slot)>,
    /// Distinct stored tuples the instance reads, ascending.
    pub support: Vec<u32>,
}

/// Evaluated signs of one relation instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GpSigns {
    pub lhs: Sign,
    pub terms: Vec<Sign>,
}

impl GpSigns {
    /// The literal exchange axiom over both orientations of `J`: nonnegative
    /// exchange products force a nonnegative `lhs`, nonpositive ones force a
    /// nonpositive `lhs`.
    pub fn violates_exchange_axiom(&self) -> bool {
        let any_neg = self.terms.iter().any(|&t| t == Sign::Minus);
        let any_pos = self.terms.iter().any(|&t| t == Sign::Plus);
        (!any_neg && self.lhs == Sign::Minus) || (!any_pos && self.lhs == Sign::Plus)
    }

    /// Sign form of `lhs - Σ terms = 0`: the values `{lhs} ∪ {-terms}` are
    /// either all zero or contain both signs.
    pub fn violates_sign_relation(&self) -> bool {
        let mut pos = self.lhs == Sign::Plus;
        let mut neg = self.lhs == Sign::Minus;
        for &t in &self.terms {
            match t {
                Sign::Plus => neg = true,
                Sign::Minus => pos = true,
                Sign::Zero => {}
            }
        }
        pos != neg
    }
}

impl GpRelation {
    pub fn eval(&self, signs: &[Sign]) -> GpSigns {
        GpSigns {
            lhs: self.lhs_i.eval(signs) * self.lhs_j.eval(signs),
            terms: self
                .terms
                .iter()
                .map(|(a, b)| a.eval(signs) * b.eval(signs))
                .collect(),
        }
    }

    pub fn max_support(&self) -> u32 {
        *self.support.last().expect("relation reads at least I and J")
    }
}

/// A relation instance as a signed sum of products `Σ s·χ(a)χ(b) = 0`, with
/// identically vanishing products dropped and the overall sign normalized so
/// that equal instances compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedSum {
    pub products: Vec<(u32, u32, Sign)>,
}

impl SignedSum {
    pub fn new(g: &GpRelation) -> SignedSum {
        let mut products = Vec::with_capacity(g.terms.len() + 1);
        let mut push = |a: Slot, b: Slot, sign: Sign| {
            if !a.is_constant_zero() && !b.is_constant_zero() {
                let (x, y) = (a.index.min(b.index), a.index.max(b.index));
                products.push((x, y, sign * a.sign * b.sign));
            }
        };
        push(g.lhs_i, g.lhs_j, Sign::Plus);
        for &(a, b) in &g.terms {
            push(a, b, Sign::Minus);
        }
        products.sort_unstable();
        if products.first().is_some_and(|p| p.2 == Sign::Minus) {
            for p in &mut products {
                p.2 = -p.2;
            }
        }
        SignedSum { products }
    }

    /// Largest stored index read, `None` when every product vanishes.
    pub fn last_index(&self) -> Option<u32> {
        self.products.iter().map(|p| p.1).max()
    }

    pub fn reads(&self, index: u32) -> bool {
        self.products.iter().any(|p| p.0 == index || p.1 == index)
    }

    /// All products vanish, or both signs occur.
    #[inline]
    pub fn holds(&self, signs: &[Sign]) -> bool {
        self.holds_with(|i| signs[i as usize])
    }

    #[inline]
    pub fn holds_with(&self, value: impl Fn(u32) -> Sign) -> bool {
        let mut pos = false;
        let mut neg = false;
        for &(a, b, s) in &self.products {
            match s * value(a) * value(b) {
                Sign::Plus => pos = true,
                Sign::Minus => neg = true,
                Sign::Zero => {}
            }
        }
        pos == neg
    }
}

/// The distinct nontrivial [`SignedSum`]s of `Λ(n, r)`, with an index from
/// each stored tuple to the sums reading it.
#[derive(Debug)]
pub struct SignedSums {
    pub sums: Vec<SignedSum>,
    pub by_tuple: Vec<Vec<usize>>,
}

pub fn signed_sums(n: usize, r: usize) -> Arc<SignedSums> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<SignedSums>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().expect("sum cache poisoned").get(&(n, r)) {
        return s.clone();
    }
    let rel = gp_relations(n, r);
    let mut seen = std::collections::HashSet::new();
    let mut sums = Vec::new();
    for g in &rel.relations {
        let sum = SignedSum::new(g);
        if sum.last_index().is_some() && seen.insert(sum.clone()) {
            sums.push(sum);
        }
    }
    let mut by_tuple = vec![Vec::new(); rel.space.len()];
    for (k, sum) in sums.iter().enumerate() {
        let mut idx: Vec<u32> = sum.products.iter().flat_map(|p| [p.0, p.1]).collect();
        idx.sort_unstable();
        idx.dedup();
        for i in idx {
            by_tuple[i as usize].push(k);
        }
    }
    let built = Arc::new(SignedSums { sums, by_tuple });
    cache
        .lock()
        .expect("sum cache poisoned")
        .entry((n, r))
        .or_insert(built)
        .clone()
}

/// All relation instances of `Λ(n, r)`, in scan order `(I, pivot, J)`.
#[derive(Debug)]
pub struct GpRelations {
    pub space: Arc<TupleSpace>,
    pub relations: Vec<GpRelation>,
}

impl GpRelations {
    fn build(n: usize, r: usize) -> GpRelations {
        let space = tuple_space(n, r);
        let mut relations = Vec::new();
        for (i_index, i_tuple) in space.tuples().iter().enumerate() {
            for pivot in 0..r {
                let pivot_elem = i_tuple.0[pivot];
                let mut i_prime = Vec::with_capacity(r);
                i_prime.push(pivot_elem);
                i_prime.extend(i_tuple.0.iter().copied().filter(|&e| e != pivot_elem));
                let lhs_i = Slot::locate(&space, &i_prime);
                for (j_index, j_tuple) in space.tuples().iter().enumerate() {
                    if j_tuple.contains(pivot_elem) {
                        continue;
                    }
                    let lhs_j = Slot {
                        index: j_index as u32,
                        sign: Sign::Plus,
                    };
                    let terms: Vec<(Slot, Slot)> = (0..r)
                        .map(|s| {
                            let mut first = i_prime.clone();
                            first[0] = j_tuple.0[s];
                            let mut second = j_tuple.0.clone();
                            second[s] = pivot_elem;
                            (Slot::locate(&space, &first), Slot::locate(&space, &second))
                        })
                        .collect();
                    let mut support: Vec<u32> = vec![i_index as u32, j_index as u32];
                    for (a, b) in &terms {
                        for slot in [a, b] {
                            if !slot.is_constant_zero() {
                                support.push(slot.index);
                            }
                        }
                    }
                    support.sort_unstable();
                    support.dedup();
                    relations.push(GpRelation {
                        i_index,
                        pivot,
                        j_index,
                        lhs_i,
                        lhs_j,
                        terms,
                        support,
                    });
                }
            }
        }
        GpRelations { space, relations }
    }
}

pub fn gp_relations(n: usize, r: usize) -> Arc<GpRelations> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<GpRelations>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let existing = cache
        .lock()
        .expect("relation cache poisoned")
        .get(&(n, r))
        .cloned();
    if let Some(rel) = existing {
        return rel;
    }
    let built = Arc::new(GpRelations::build(n, r));
    cache
        .lock()
        .expect("relation cache poisoned")
        .entry((n, r))
        .or_insert(built)
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_relation_cases() {
        let s = |lhs, terms: &[Sign]| GpSigns {
            lhs,
            terms: terms.to_vec(),
        };
        use Sign::*;
        assert!(!s(Zero, &[Zero, Zero]).violates_sign_relation());
        assert!(!s(Plus, &[Plus, Zero]).violates_sign_relation());
        assert!(s(Zero, &[Plus, Zero]).violates_sign_relation());
        assert!(!s(Zero, &[Plus, Minus]).violates_sign_relation());
        assert!(s(Minus, &[Plus, Zero]).violates_sign_relation());
        // the literal axiom tolerates a vanishing lhs
        assert!(!s(Zero, &[Plus, Zero]).violates_exchange_axiom());
        assert!(s(Minus, &[Plus, Zero]).violates_exchange_axiom());
    }

    #[test]
    fn three_term_relation_in_rank_two() {
        // [12][34] - [32][14] - [42][31] = [12][34] - [13][24] + [14][23]
        let rel = gp_relations(4, 2);
        let r = rel
            .relations
            .iter()
            .find(|g| g.i_index == 0 && g.pivot == 0 && g.j_index == 5)
            .unwrap();
        // all-plus chirotope (points in convex position on a line arrangement)
        let signs = vec![Sign::Plus; 6];
        let e = r.eval(&signs);
        assert_eq!(e.lhs, Sign::Plus);
        assert!(!e.violates_sign_relation());
    }
}
