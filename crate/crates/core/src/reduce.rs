//! From a chirotope to a small sign-constrained polynomial system.
//!
//! The pipeline is: generalized mutations, closure under single-relation
//! forcing, a greedy reduced system `R(χ)` per basis, a coordinate frame with
//! the basis columns fixed to the identity, and normalization of one row and
//! one column to `0/±1`. Linear two-term equalities left over after
//! normalization are removed by merging variables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::chirotope::Chirotope;
use crate::error::{Error, Result};
use crate::grassmann::signed_sums;
use crate::polysys::{Constraint, PolySystem, Polynomial, Relation, VarId, Witness};
use crate::realization::Realization;
use crate::sign::Sign;
use crate::tuple::RTuple;

/// A sorted tuple on which `χ` (or `-χ` when `negated`) is `+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub tuple: RTuple,
    pub negated: bool,
}

impl Basis {
    pub fn new(chi: &Chirotope, tuple: RTuple) -> Result<Basis> {
        match chi.eval_sign(tuple.elements())? {
            Sign::Zero => Err(Error::InconsistentFrame(format!("χ{tuple} = 0"))),
            s => Ok(Basis {
                tuple,
                negated: s == Sign::Minus,
            }),
        }
    }

    /// `±χ` with the orientation that makes the basis positive.
    fn oriented(&self, chi: &Chirotope) -> Chirotope {
        if self.negated {
            chi.negated()
        } else {
            chi.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedSystem {
    /// Indices into `Λ(n, r)`, ascending.
    pub tuples: Vec<usize>,
    pub basis: Basis,
    /// Tuples added by the greedy step, in the order added.
    pub added: Vec<usize>,
}

fn prop_condition_holds(chi: &Chirotope, lambda: &[usize], pivot: usize) -> bool {
    let n = chi.n();
    let r = chi.r();
    let i1 = lambda[pivot];
    let rest: Vec<usize> = lambda.iter().copied().filter(|&e| e != i1).collect();
    let space = chi.space();
    let mut first = Vec::with_capacity(r);
    let mut second = Vec::with_capacity(r);
    for (j_index, j) in space.tuples().iter().enumerate() {
        // J containing i1, or containing the rest of λ, only yields the
        // tautological two-term identity
        if j.contains(i1) || rest.iter().all(|&e| j.contains(e)) {
            continue;
        }
        if chi.sign_at(j_index).is_zero() {
            continue;
        }
        let mut pos = false;
        let mut neg = false;
        for s in 0..r {
            first.clear();
            first.push(j.0[s]);
            first.extend_from_slice(&rest);
            second.clear();
            second.extend_from_slice(&j.0);
            second[s] = i1;
            match chi.eval_unchecked(&first) * chi.eval_unchecked(&second) {
                Sign::Plus => pos = true,
                Sign::Minus => neg = true,
                Sign::Zero => {}
            }
        }
        if !(pos && neg) {
            return false;
        }
    }
    debug_assert!(n >= r);
    true
}

/// Tuples whose sign is not determined by the Grassmann-Plücker relations
/// in which they are exchanged out, as indices into `Λ(n, r)`.
///
/// `λ` qualifies when, for every pivot `i ∈ λ` and every `J` with `χ(J) ≠ 0`,
/// the exchange products `χ(j_s, λ∖i)·χ(J[s ← i])` contain both signs. The
/// first pivot alone does not suffice in general; all pivots are checked.
pub fn generalized_mutations(chi: &Chirotope) -> Vec<usize> {
    let space = chi.space();
    (0..space.len())
        .filter(|&k| {
            let lambda = space.tuple(k).elements();
            (0..chi.r()).all(|p| prop_condition_holds(chi, lambda, p))
        })
        .collect()
}

/// Fixpoint of single-step forcing: a tuple outside the current set becomes
/// known when the relations whose other tuples are all known leave exactly
/// one consistent value for it. Returns a membership vector over `Λ(n, r)`.
pub fn gp_closure(chi: &Chirotope, known: &[usize]) -> Vec<bool> {
    let sums = signed_sums(chi.n(), chi.r());
    let len = chi.signs().len();
    let mut member = vec![false; len];
    for &k in known {
        member[k] = true;
    }
    let signs = chi.signs();
    loop {
        let mut changed = false;
        for mu in 0..len {
            if member[mu] {
                continue;
            }
            let mut allowed = [true; 3];
            for &s in &sums.by_tuple[mu] {
                let sum = &sums.sums[s];
                let ready = sum
                    .products
                    .iter()
                    .all(|&(a, b, _)| (a as usize == mu || member[a as usize]) && (b as usize == mu || member[b as usize]));
                if !ready {
                    continue;
                }
                for (slot, value) in Sign::ALL.iter().enumerate() {
                    if allowed[slot] && !sum.holds_with(|i| if i as usize == mu { *value } else { signs[i as usize] }) {
                        allowed[slot] = false;
                    }
                }
            }
            if allowed.iter().filter(|&&a| a).count() == 1 {
                member[mu] = true;
                changed = true;
            }
        }
        if !changed {
            return member;
        }
    }
}

pub fn closure_is_full(chi: &Chirotope, known: &[usize]) -> bool {
    gp_closure(chi, known).iter().all(|&m| m)
}

/// `|t \ b|` for sorted tuples given as masks.
fn degree_against(t: u32, b: u32) -> u32 {
    (b & !t).count_ones()
}

/// Greedy reduced system: start from `GMut(χ)` and add, while the closure is
/// not everything, the tuple outside it minimizing `|μ \ b|` (ties broken
/// lexicographically).
pub fn minimal_reduced_system(chi: &Chirotope, basis: &Basis) -> ReducedSystem {
    minimal_reduced_system_from(chi, basis, generalized_mutations(chi))
}

fn minimal_reduced_system_from(chi: &Chirotope, basis: &Basis, gmut: Vec<usize>) -> ReducedSystem {
    let space = chi.space();
    let b = basis.tuple.mask();
    let mut tuples = gmut;
    let mut added = Vec::new();
    loop {
        let closure = gp_closure(chi, &tuples);
        let next = (0..space.len())
            .filter(|&k| !closure[k])
            .min_by_key(|&k| (degree_against(space.mask(k), b), k));
        match next {
            None => break,
            Some(k) => {
                tuples.push(k);
                added.push(k);
            }
        }
    }
    tuples.sort_unstable();
    ReducedSystem {
        tuples,
        basis: basis.clone(),
        added,
    }
}

/// `Σ_{β ∈ R} |b \ β|`.
pub fn degree_score(chi: &Chirotope, reduced: &ReducedSystem) -> u32 {
    let space = chi.space();
    let b = reduced.basis.tuple.mask();
    reduced.tuples.iter().map(|&k| degree_against(space.mask(k), b)).sum()
}

/// One entry of the coordinate matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridSlot {
    /// A constant `0`, `+1` or `-1`.
    Fixed(Sign),
    /// `sign · x_id` with `x_id > 0`.
    Var { id: VarId, sign: Sign },
}

/// How an eliminated variable is recovered from the survivors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Alias {
    /// `x = factor · x_id`
    Scaled { id: VarId, factor: BigRational },
    Constant(BigRational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableGrid {
    pub r: usize,
    pub n: usize,
    /// Row-major `r × n`.
    pub slots: Vec<GridSlot>,
    pub merged: BTreeMap<VarId, Alias>,
    /// The realized chirotope is `-χ` and row 0 has to be negated.
    pub negate_first_row: bool,
}

impl VariableGrid {
    pub fn slot(&self, row: usize, col: usize) -> &GridSlot {
        &self.slots[row * self.n + col]
    }

    fn value_of(&self, id: VarId, w: &Witness, depth: usize) -> Result<BigRational> {
        if depth > self.merged.len() {
            return Err(Error::Soundness("cyclic variable merge".into()));
        }
        match self.merged.get(&id) {
            None => w.get(id).cloned(),
            Some(Alias::Constant(c)) => Ok(c.clone()),
            Some(Alias::Scaled { id: to, factor }) => Ok(factor * self.value_of(*to, w, depth + 1)?),
        }
    }

    /// The full matrix for a witness of the surviving variables.
    pub fn reconstruct(&self, w: &Witness) -> Result<Realization> {
        let mut rows = vec![vec![BigRational::zero(); self.n]; self.r];
        for k in 0..self.r {
            for l in 0..self.n {
                let value = match self.slot(k, l) {
                    GridSlot::Fixed(s) => BigRational::from_integer(BigInt::from(s.to_i8())),
                    GridSlot::Var { id, sign } => {
                        let x = self.value_of(*id, w, 0)?;
                        if *sign == Sign::Minus {
                            -x
                        } else {
                            x
                        }
                    }
                };
                rows[k][l] = if self.negate_first_row && k == 0 { -value } else { value };
            }
        }
        Realization::from_rows(rows)
    }

    fn entry_poly(&self, row: usize, col: usize) -> Polynomial {
        match self.slot(row, col) {
            GridSlot::Fixed(s) => Polynomial::from_int(s.to_i8() as i64),
            GridSlot::Var { id, sign } => {
                let x = Polynomial::var(*id);
                if *sign == Sign::Minus {
                    -x
                } else {
                    x
                }
            }
        }
    }

    /// Symbolic `det(v_{t_1}, …, v_{t_r})`.
    pub fn determinant(&self, cols: &[usize]) -> Polynomial {
        let m: Vec<Vec<Polynomial>> = (0..self.r)
            .map(|k| cols.iter().map(|&c| self.entry_poly(k, c)).collect())
            .collect();
        det_poly(&m)
    }
}

/// Laplace expansion along the sparsest column.
pub fn det_poly(m: &[Vec<Polynomial>]) -> Polynomial {
    let size = m.len();
    match size {
        0 => return Polynomial::one(),
        1 => return m[0][0].clone(),
        _ => {}
    }
    let col = (0..size)
        .min_by_key(|&c| (0..size).filter(|&k| !m[k][c].is_zero()).count())
        .expect("nonempty");
    let mut total = Polynomial::zero();
    for row in 0..size {
        if m[row][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = (0..size)
            .filter(|&k| k != row)
            .map(|k| (0..size).filter(|&c| c != col).map(|c| m[k][c].clone()).collect())
            .collect();
        let term = &m[row][col] * &det_poly(&minor);
        total = if (row + col) % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

/// A basis, normalized row and column, and the reduced system for the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub basis: Basis,
    pub row: usize,
    /// `None` only when every column is a basis column.
    pub column: Option<usize>,
    pub reduced: ReducedSystem,
}

/// Sort key of a frame: residual equalities, degree score, basis, row, column.
pub type FrameScore = (usize, u32, Vec<usize>, usize, usize);

pub const FRAME_SAMPLE: usize = 500;

/// Grid of a frame before any variable merging. Signs of the non-basis
/// entries follow from `v_kl = det(b_1, …, l, …, b_r)`; the normalized row
/// and column are fixed to `0/±1`.
pub fn variable_grid(chi: &Chirotope, frame: &Frame) -> Result<VariableGrid> {
    let n = chi.n();
    let r = chi.r();
    let b = frame.basis.tuple.elements();
    if b.len() != r || frame.row >= r || frame.column.is_some_and(|c| c >= n || b.contains(&c)) {
        return Err(Error::InconsistentFrame("frame shape does not match the chirotope".into()));
    }
    let oriented = frame.basis.oriented(chi);
    if oriented.eval_sign(b)? != Sign::Plus {
        return Err(Error::InconsistentFrame(format!("basis {} is not positive", frame.basis.tuple)));
    }
    let mut slots = Vec::with_capacity(r * n);
    let mut next_id: VarId = 0;
    let mut seq = b.to_vec();
    for k in 0..r {
        for l in 0..n {
            if let Some(pos) = b.iter().position(|&e| e == l) {
                slots.push(GridSlot::Fixed(if pos == k { Sign::Plus } else { Sign::Zero }));
                continue;
            }
            seq[k] = l;
            let s = oriented.eval_unchecked(&seq);
            seq[k] = b[k];
            let slot = if s.is_zero() {
                GridSlot::Fixed(Sign::Zero)
            } else if k == frame.row || Some(l) == frame.column {
                GridSlot::Fixed(s)
            } else {
                let id = next_id;
                next_id += 1;
                GridSlot::Var { id, sign: s }
            };
            slots.push(slot);
        }
    }
    Ok(VariableGrid {
        r,
        n,
        slots,
        merged: BTreeMap::new(),
        negate_first_row: frame.basis.negated,
    })
}

/// A two-term linear equality `a·x_u + b·x_w = 0` or `a·x_u + c = 0`, as the
/// alias of its larger variable.
fn linear_alias(c: &Constraint) -> Option<(VarId, Alias)> {
    if c.relation != Relation::Zero || c.poly.total_degree() != 1 || c.poly.num_terms() != 2 {
        return None;
    }
    let terms: Vec<_> = c.poly.terms().collect();
    let (m0, a0) = terms[0];
    let (m1, a1) = terms[1];
    let v0 = m0.powers()[0].0;
    if m1.is_one() {
        let value = -(a1 / a0);
        return value.is_positive().then_some((v0, Alias::Constant(value)));
    }
    let v1 = m1.powers()[0].0;
    let (big, a_big, small, a_small) = if v0 > v1 { (v0, a0, v1, a1) } else { (v1, a1, v0, a0) };
    let factor = -(a_small / a_big);
    factor.is_positive().then_some((big, Alias::Scaled { id: small, factor }))
}

fn apply_alias(poly: &Polynomial, v: VarId, alias: &Alias) -> Polynomial {
    let e = match alias {
        Alias::Constant(c) => Polynomial::constant(c.clone()),
        Alias::Scaled { id, factor } => Polynomial::var(*id).scale(factor),
    };
    poly.substitute(v, &e)
}

/// The polynomial system of a frame: one determinant constraint per tuple of
/// `R(χ)` outside the trivially satisfied degree-0/1 cases, with two-term
/// linear equalities merged away.
pub fn build_system(chi: &Chirotope, frame: &Frame) -> Result<(PolySystem, VariableGrid)> {
    let mut grid = variable_grid(chi, frame)?;
    let oriented = frame.basis.oriented(chi);
    let space = chi.space();
    let b = frame.basis.tuple.mask();
    let mut pending: Vec<(Constraint, RTuple)> = Vec::new();
    for &k in &frame.reduced.tuples {
        let t = space.tuple(k);
        // degree 0 is the basis, degree 1 a sign already carried by a slot
        if degree_against(t.mask(), b) <= 1 {
            continue;
        }
        let det = grid.determinant(t.elements());
        pending.push((Constraint::with_sign(det, oriented.sign_at(k)), t.clone()));
    }
    let mut kept = pending;
    loop {
        kept = kept
            .into_iter()
            .map(|(c, tag)| (c.simplified(), tag))
            .filter(|(c, _)| c.decided() != Some(true))
            .collect();
        let Some(pos) = kept.iter().position(|(c, _)| linear_alias(c).is_some()) else {
            break;
        };
        let (c, _) = kept.remove(pos);
        let (v, alias) = linear_alias(&c).expect("checked above");
        for (other, _) in &mut kept {
            other.poly = apply_alias(&other.poly, v, &alias);
        }
        grid.merged.insert(v, alias);
    }
    let mut sys = PolySystem::new();
    for slot in &grid.slots {
        if let GridSlot::Var { id, .. } = slot {
            if !grid.merged.contains_key(id) {
                sys.declare(*id);
            }
        }
    }
    for (c, tag) in kept {
        sys.push(c, Some(tag));
    }
    Ok((sys, grid))
}

/// Candidate bases in lexicographic order, sampled evenly when there are
/// more than [`FRAME_SAMPLE`].
fn candidate_bases(chi: &Chirotope) -> Vec<Basis> {
    let space = chi.space();
    let all: Vec<Basis> = (0..space.len())
        .filter(|&k| chi.sign_at(k).is_nonzero())
        .map(|k| Basis {
            tuple: space.tuple(k).clone(),
            negated: chi.sign_at(k) == Sign::Minus,
        })
        .collect();
    if all.len() <= FRAME_SAMPLE {
        return all;
    }
    (0..FRAME_SAMPLE).map(|i| all[i * all.len() / FRAME_SAMPLE].clone()).collect()
}

/// The frame minimizing [`FrameScore`] over candidate bases and all
/// normalization choices.
pub fn select_frame(chi: &Chirotope) -> Result<Frame> {
    Ok(select_frame_scored(chi)?.0)
}

pub fn select_frame_scored(chi: &Chirotope) -> Result<(Frame, FrameScore)> {
    let gmut = generalized_mutations(chi);
    let mut best: Option<(Frame, FrameScore)> = None;
    for basis in candidate_bases(chi) {
        let reduced = minimal_reduced_system_from(chi, &basis, gmut.clone());
        let score = degree_score(chi, &reduced);
        let mut columns: Vec<Option<usize>> = (0..chi.n())
            .filter(|c| !basis.tuple.contains(*c))
            .map(Some)
            .collect();
        if columns.is_empty() {
            columns.push(None);
        }
        for row in 0..chi.r() {
            for &column in &columns {
                let frame = Frame {
                    basis: basis.clone(),
                    row,
                    column,
                    reduced: reduced.clone(),
                };
                let (sys, _) = build_system(chi, &frame)?;
                let key: FrameScore = (
                    sys.equality_count(),
                    score,
                    basis.tuple.0.clone(),
                    row,
                    column.unwrap_or(usize::MAX),
                );
                if best.as_ref().is_none_or(|(_, k)| key < *k) {
                    best = Some((frame, key));
                }
            }
        }
    }
    best.ok_or(Error::IdenticallyZero)
}

/// Whether the matrix of `w` realizes `chi` on all of `Λ(n, r)`.
pub fn realizes(chi: &Chirotope, grid: &VariableGrid, w: &Witness) -> Result<bool> {
    Ok(grid.reconstruct(w)?.first_mismatch(chi)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_tuple_is_a_mutation() {
        let chi = Chirotope::all_plus(3, 3).unwrap();
        assert_eq!(generalized_mutations(&chi), vec![0]);
    }

    #[test]
    fn closure_trivia() {
        let chi = Chirotope::all_plus(5, 3).unwrap();
        let all: Vec<usize> = (0..10).collect();
        assert!(closure_is_full(&chi, &all));
        assert!(gp_closure(&chi, &[]).iter().all(|&m| !m));
    }

    #[test]
    fn degree_formula() {
        let b = RTuple(vec![0, 1, 2]).mask();
        assert_eq!(degree_against(RTuple(vec![0, 3, 4]).mask(), b), 2);
    }

    #[test]
    fn all_plus_five_three() {
        let chi = Chirotope::all_plus(5, 3).unwrap();
        let basis = Basis::new(&chi, RTuple(vec![0, 1, 2])).unwrap();
        let reduced = minimal_reduced_system(&chi, &basis);
        assert!(closure_is_full(&chi, &reduced.tuples));
        let frame = Frame {
            basis,
            row: 0,
            column: Some(3),
            reduced,
        };
        let grid = variable_grid(&chi, &frame).unwrap();
        for k in 0..3 {
            for l in 3..5 {
                assert!(!matches!(grid.slot(k, l), GridSlot::Fixed(Sign::Zero)));
            }
        }
        let (sys, _) = build_system(&chi, &frame).unwrap();
        assert_eq!(sys.equality_count(), 0);
    }

    #[test]
    fn zero_sign_gives_fixed_zero_slot() {
        // χ(1,2,4) = 0: v_{3,4} = det(v1, v2, v4) = 0
        let chi = Chirotope::from_sign_str(4, 3, "+0++").unwrap();
        let basis = Basis::new(&chi, RTuple(vec![0, 1, 2])).unwrap();
        let frame = Frame {
            reduced: minimal_reduced_system(&chi, &basis),
            basis,
            row: 0,
            column: Some(3),
        };
        let grid = variable_grid(&chi, &frame).unwrap();
        assert_eq!(grid.slot(2, 3), &GridSlot::Fixed(Sign::Zero));
    }

    #[test]
    fn inconsistent_basis_is_rejected() {
        let chi = Chirotope::from_sign_str(4, 3, "+0++").unwrap();
        assert!(matches!(
            Basis::new(&chi, RTuple(vec![0, 1, 3])),
            Err(Error::InconsistentFrame(_))
        ));
    }
}
