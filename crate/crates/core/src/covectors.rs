//! Circuits, cocircuits and the convexity data derived from them.

use std::collections::BTreeSet;
use std::fmt;

use crate::chirotope::Chirotope;
use crate::error::{Error, Result};
use crate::sign::Sign;
use crate::tuple::{elements_of, tuple_space};

/// A sign vector indexed by the ground set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn support(&self) -> u32 {
        self.mask_where(|s| s.is_nonzero())
    }

    pub fn positive(&self) -> u32 {
        self.mask_where(|s| s == Sign::Plus)
    }

    pub fn negative(&self) -> u32 {
        self.mask_where(|s| s == Sign::Minus)
    }

    pub fn zeros(&self) -> u32 {
        self.mask_where(|s| s.is_zero())
    }

    fn mask_where(&self, pred: impl Fn(Sign) -> bool) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &s)| pred(s))
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|s| s.is_zero())
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|&s| -s).collect())
    }

    /// The representative of `±self` whose first nonzero entry is `+`.
    pub fn normalized(&self) -> SignVector {
        match self.0.iter().find(|s| s.is_nonzero()) {
            Some(Sign::Minus) => self.negated(),
            _ => self.clone(),
        }
    }

    /// Sign-orthogonality: on the common support the products are all zero
    /// (empty intersection) or contain both signs.
    pub fn orthogonal_to(&self, other: &SignVector) -> bool {
        let mut pos = false;
        let mut neg = false;
        for (&a, &b) in self.0.iter().zip(&other.0) {
            match a * b {
                Sign::Plus => pos = true,
                Sign::Minus => neg = true,
                Sign::Zero => {}
            }
        }
        pos == neg
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// One representative per `±` pair of circuits, first nonzero entry `+`,
/// sorted.
///
/// Every `(r+1)`-subset `x_0 < … < x_r` of full rank yields the signed
/// fundamental circuit `C(x_k) = (-1)^k χ(subset \ x_k)`.
pub fn circuits(chi: &Chirotope) -> Vec<SignVector> {
    let n = chi.n();
    let r = chi.r();
    if r >= n {
        return Vec::new();
    }
    let larger = tuple_space(n, r + 1);
    let mut out = BTreeSet::new();
    for subset in larger.tuples() {
        let mut v = vec![Sign::Zero; n];
        for (k, &x) in subset.elements().iter().enumerate() {
            let rest = subset.mask() & !(1 << x);
            v[x] = chi.sign_of_mask(rest).flip_if(k % 2 == 1);
        }
        let v = SignVector(v);
        if !v.is_zero() {
            out.insert(v.normalized());
        }
    }
    out.into_iter().collect()
}

/// One representative per `±` pair of cocircuits, first nonzero entry `+`,
/// sorted. Each `(r-1)`-tuple `X` contributes `j ↦ χ(X, j)` when nonzero.
pub fn cocircuits(chi: &Chirotope) -> Vec<SignVector> {
    cocircuits_signed(chi)
        .into_iter()
        .map(|v| v.normalized())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Cocircuits exactly as produced by the hyperplane tuples, without sign
/// normalization, deduplicated.
pub fn cocircuits_signed(chi: &Chirotope) -> Vec<SignVector> {
    let n = chi.n();
    let hyper = tuple_space(n, chi.r() - 1);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in hyper.tuples() {
        let mut seq = x.0.clone();
        seq.push(0);
        let v: Vec<Sign> = (0..n)
            .map(|j| {
                *seq.last_mut().expect("nonempty") = j;
                chi.eval_unchecked(&seq)
            })
            .collect();
        let v = SignVector(v);
        if !v.is_zero() && seen.insert(v.normalized()) {
            out.push(v);
        }
    }
    out
}

/// No circuit is sign-definite (a positive circuit or its negative).
pub fn is_acyclic(chi: &Chirotope) -> bool {
    circuits(chi)
        .iter()
        .all(|c| c.positive() != 0 && c.negative() != 0)
}

/// Elements `i` such that no circuit has positive part exactly `{i}`.
pub fn extreme_elements(chi: &Chirotope) -> Result<Vec<usize>> {
    let cs = circuits(chi);
    if !cs.iter().all(|c| c.positive() != 0 && c.negative() != 0) {
        return Err(Error::NotAcyclic);
    }
    let mut interior = 0u32;
    for c in &cs {
        for part in [c.positive(), c.negative()] {
            if part.count_ones() == 1 {
                interior |= part;
            }
        }
    }
    Ok((0..chi.n()).filter(|&e| interior & (1 << e) == 0).collect())
}

pub fn is_matroid_polytope(chi: &Chirotope) -> bool {
    match extreme_elements(chi) {
        Ok(ext) => ext.len() == chi.n(),
        Err(_) => false,
    }
}

/// Zero sets of the nonnegative cocircuits, as bitmasks, sorted.
pub fn nonnegative_cocircuit_zero_sets(chi: &Chirotope) -> Vec<u32> {
    let mut sets: Vec<u32> = cocircuits(chi)
        .iter()
        .filter_map(|d| {
            if d.negative() == 0 || d.positive() == 0 {
                Some(d.zeros())
            } else {
                None
            }
        })
        .collect();
    sets.sort_unstable();
    sets.dedup();
    sets
}

/// Elements of a bitmask, rendered 1-based.
pub fn format_set(mask: u32) -> String {
    let items: Vec<String> = elements_of(mask).iter().map(|e| (e + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}
