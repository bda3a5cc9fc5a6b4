use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grassmann::gp_relations;
use crate::sign::{sign_string, Sign};
use crate::tuple::{binomial, elements_of, mask_of, sorting_sign, tuple_space, RTuple, TupleSpace, MAX_ELEMENTS};

/// A rank-`r` sign map on `{0..n}`, stored on `Λ(n, r)` in lexicographic
/// order and extended to arbitrary tuples by alternation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chirotope {
    n: usize,
    r: usize,
    signs: Vec<Sign>,
}

/// Outcome of an exhaustive axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomCheck {
    Valid,
    IdenticallyZero,
    /// First violating pair `(I, J)` in scan order, with the pivot position
    /// of `I` exchanged into `J`.
    Violation { i: RTuple, j: RTuple, pivot: usize },
}

impl AxiomCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, AxiomCheck::Valid)
    }
}

impl fmt::Display for AxiomCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomCheck::Valid => write!(f, "valid"),
            AxiomCheck::IdenticallyZero => write!(f, "identically zero"),
            AxiomCheck::Violation { i, j, pivot } => {
                write!(f, "exchange axiom violated by {i} (pivot {}) and {j}", pivot + 1)
            }
        }
    }
}

impl Chirotope {
    pub fn new(n: usize, r: usize, signs: Vec<Sign>) -> Result<Chirotope> {
        if n > MAX_ELEMENTS {
            return Err(Error::InvalidShape {
                n,
                r,
                reason: "too many elements",
            });
        }
        if r == 0 || r > n {
            return Err(Error::InvalidShape {
                n,
                r,
                reason: "rank must satisfy 1 <= r <= n",
            });
        }
        let expected = binomial(n, r);
        if signs.len() != expected {
            return Err(Error::LengthMismatch {
                n,
                r,
                expected,
                got: signs.len(),
            });
        }
        Ok(Chirotope { n, r, signs })
    }

    pub fn from_fn(n: usize, r: usize, mut f: impl FnMut(&RTuple) -> Sign) -> Result<Chirotope> {
        let space = tuple_space(n, r);
        let signs = space.tuples().iter().map(&mut f).collect();
        Chirotope::new(n, r, signs)
    }

    /// Every stored sign `+`.
    pub fn all_plus(n: usize, r: usize) -> Result<Chirotope> {
        Chirotope::new(n, r, vec![Sign::Plus; binomial(n, r)])
    }

    pub fn from_sign_str(n: usize, r: usize, text: &str) -> Result<Chirotope> {
        let mut signs = Vec::with_capacity(text.len());
        for (pos, c) in text.chars().enumerate() {
            signs.push(Sign::from_char(c).ok_or(Error::InvalidSignChar { position: pos, ch: c })?);
        }
        Chirotope::new(n, r, signs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn space(&self) -> Arc<TupleSpace> {
        tuple_space(self.n, self.r)
    }

    pub fn sign_string(&self) -> String {
        sign_string(&self.signs)
    }

    pub fn sign_at(&self, index: usize) -> Sign {
        self.signs[index]
    }

    /// Value on a sorted tuple given as a bitmask; zero unless it has `r` bits.
    pub fn sign_of_mask(&self, mask: u32) -> Sign {
        match tuple_space(self.n, self.r).index_of_mask(mask) {
            Some(i) => self.signs[i],
            None => Sign::Zero,
        }
    }

    /// Value on an arbitrary sequence of `r` elements, by alternation.
    pub fn eval_sign(&self, tuple: &[usize]) -> Result<Sign> {
        if tuple.len() != self.r {
            return Err(Error::TupleLength {
                got: tuple.len(),
                r: self.r,
            });
        }
        if let Some(&bad) = tuple.iter().find(|&&e| e >= self.n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                n: self.n,
            });
        }
        Ok(self.eval_unchecked(tuple))
    }

    pub(crate) fn eval_unchecked(&self, tuple: &[usize]) -> Sign {
        let perm = sorting_sign(tuple);
        if perm.is_zero() {
            return Sign::Zero;
        }
        perm * self.sign_of_mask(mask_of(tuple))
    }

    pub fn negated(&self) -> Chirotope {
        Chirotope {
            n: self.n,
            r: self.r,
            signs: self.signs.iter().map(|&s| -s).collect(),
        }
    }

    /// Exhaustive check of non-vanishing and the exchange axiom over all
    /// ordered pairs of tuples. Alternation holds by construction.
    pub fn check_axioms(&self) -> AxiomCheck {
        if self.signs.iter().all(|s| s.is_zero()) {
            return AxiomCheck::IdenticallyZero;
        }
        let rel = gp_relations(self.n, self.r);
        for g in &rel.relations {
            if g.eval(&self.signs).violates_exchange_axiom() {
                return AxiomCheck::Violation {
                    i: rel.space.tuple(g.i_index).clone(),
                    j: rel.space.tuple(g.j_index).clone(),
                    pivot: g.pivot,
                };
            }
        }
        AxiomCheck::Valid
    }

    pub fn is_uniform(&self) -> bool {
        self.signs.iter().all(|s| s.is_nonzero())
    }

    /// Dual chirotope of rank `n - r`: `χ*(Y) = χ(Y^c) · sgn(Y^c, Y)`.
    pub fn dual(&self) -> Result<Chirotope> {
        if self.r >= self.n {
            return Err(Error::DualRankZero {
                n: self.n,
                r: self.r,
            });
        }
        let full = (1u32 << self.n) - 1;
        Chirotope::from_fn(self.n, self.n - self.r, |y| {
            let complement = elements_of(full & !y.mask());
            let mut seq = complement.clone();
            seq.extend_from_slice(y.elements());
            self.sign_of_mask(mask_of(&complement)) * sorting_sign(&seq)
        })
    }

    /// Elements `e` with `χ(X, e) = 0` for every `(r-1)`-tuple `X`.
    pub fn loops(&self) -> Vec<usize> {
        let space = tuple_space(self.n, self.r);
        let mut seen = 0u32;
        for (i, &s) in self.signs.iter().enumerate() {
            if s.is_nonzero() {
                seen |= space.mask(i);
            }
        }
        (0..self.n).filter(|&e| seen & (1 << e) == 0).collect()
    }

    /// First pair `e < f` of (anti-)parallel non-loop elements: some fixed
    /// `σ` has `χ(X, e) = σ·χ(X, f)` for every `(r-1)`-tuple `X`.
    pub fn parallel_pair(&self) -> Option<(usize, usize)> {
        let hyper = tuple_space(self.n, self.r - 1);
        let loops = self.loops();
        let column = |e: usize| -> Vec<Sign> {
            hyper
                .tuples()
                .iter()
                .map(|x| {
                    let mut seq = x.0.clone();
                    seq.push(e);
                    self.eval_unchecked(&seq)
                })
                .collect()
        };
        let columns: Vec<Vec<Sign>> = (0..self.n).map(column).collect();
        for e in 0..self.n {
            if loops.contains(&e) {
                continue;
            }
            for f in e + 1..self.n {
                if loops.contains(&f) {
                    continue;
                }
                for sigma in [Sign::Plus, Sign::Minus] {
                    if columns[e]
                        .iter()
                        .zip(&columns[f])
                        .all(|(&a, &b)| a == sigma * b)
                    {
                        return Some((e, f));
                    }
                }
            }
        }
        None
    }

    /// No loops and no parallel pairs.
    pub fn is_simple(&self) -> bool {
        self.loops().is_empty() && self.parallel_pair().is_none()
    }
}

impl fmt::Debug for Chirotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chirotope({} {} {})", self.n, self.r, self.sign_string())
    }
}

impl fmt::Display for Chirotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.n, self.r, self.sign_string())
    }
}
