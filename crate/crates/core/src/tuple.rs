//! The ordered index set of strictly increasing `r`-tuples of `{0..n}`.
//!
//! Elements are 0-based internally and rendered 1-based. Tuples are stored in
//! lexicographic order; a chirotope's sign sequence is indexed by this order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::sign::Sign;

/// Largest ground set the dense tuple lookup supports.
pub const MAX_ELEMENTS: usize = 20;

/// A strictly increasing sequence of element indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RTuple(pub Vec<usize>);

impl RTuple {
    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn mask(&self) -> u32 {
        mask_of(&self.0)
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// Number of entries of `self` that are not in `other`.
    pub fn difference_len(&self, other: &RTuple) -> usize {
        (self.mask() & !other.mask()).count_ones() as usize
    }
}

impl fmt::Display for RTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        write!(f, ")")
    }
}

pub fn mask_of(elements: &[usize]) -> u32 {
    elements.iter().fold(0u32, |m, &e| m | (1 << e))
}

/// Elements of a bitmask in increasing order.
pub fn elements_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|&e| mask & (1 << e) != 0).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Sign of the permutation sorting `seq`, or `Zero` when `seq` has repeats.
pub fn sorting_sign(seq: &[usize]) -> Sign {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return Sign::Zero;
            }
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// `Λ(n, r)` in lexicographic order with constant-time lookup by bitmask.
#[derive(Debug)]
pub struct TupleSpace {
    n: usize,
    r: usize,
    tuples: Vec<RTuple>,
    masks: Vec<u32>,
    lookup: Vec<u32>,
}

impl TupleSpace {
    fn build(n: usize, r: usize) -> TupleSpace {
        assert!(n <= MAX_ELEMENTS, "ground set too large: {n}");
        assert!(r <= n, "rank {r} exceeds element count {n}");
        let mut tuples = Vec::with_capacity(binomial(n, r));
        let mut current: Vec<usize> = (0..r).collect();
        loop {
            tuples.push(RTuple(current.clone()));
            // advance to the lexicographic successor
            let Some(k) = (0..r).rev().find(|&k| current[k] < n - r + k) else {
                break;
            };
            current[k] += 1;
            for t in k + 1..r {
                current[t] = current[t - 1] + 1;
            }
        }
        let masks: Vec<u32> = tuples.iter().map(RTuple::mask).collect();
        let mut lookup = vec![u32::MAX; 1 << n];
        for (i, &m) in masks.iter().enumerate() {
            lookup[m as usize] = i as u32;
        }
        TupleSpace {
            n,
            r,
            tuples,
            masks,
            lookup,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, index: usize) -> &RTuple {
        &self.tuples[index]
    }

    pub fn tuples(&self) -> &[RTuple] {
        &self.tuples
    }

    pub fn mask(&self, index: usize) -> u32 {
        self.masks[index]
    }

    pub fn index_of_mask(&self, mask: u32) -> Option<usize> {
        if mask.count_ones() as usize != self.r || (mask as usize) >= self.lookup.len() {
            return None;
        }
        match self.lookup[mask as usize] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// Position of the sorted version of `seq` together with the sign of the
    /// sorting permutation; `None` when `seq` repeats an element.
    pub fn locate(&self, seq: &[usize]) -> Option<(usize, Sign)> {
        debug_assert_eq!(seq.len(), self.r);
        let sign = sorting_sign(seq);
        if sign.is_zero() {
            return None;
        }
        self.index_of_mask(mask_of(seq)).map(|i| (i, sign))
    }
}

/// Shared `Λ(n, r)` tables, built once per shape.
pub fn tuple_space(n: usize, r: usize) -> Arc<TupleSpace> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<TupleSpace>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("tuple cache poisoned");
    guard
        .entry((n, r))
        .or_insert_with(|| Arc::new(TupleSpace::build(n, r)))
        .clone()
}
