//! Sparse polynomials over the rationals and sign-constrained systems.
//!
//! Every variable of a [`PolySystem`] is implicitly positive. Constraints are
//! either `p > 0` or `p = 0`; a strict `p < 0` is stored as `-p > 0`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::sign::Sign;
use crate::tuple::RTuple;

pub type VarId = u32;

/// A power product, as `(variable, exponent)` pairs sorted by variable with
/// positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(mut powers: Vec<(VarId, u32)>) -> Monomial {
        powers.retain(|&(_, e)| e > 0);
        powers.sort_unstable();
        let mut merged: Vec<(VarId, u32)> = Vec::with_capacity(powers.len());
        for (v, e) in powers {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }

    pub fn powers(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(&(a, ea)), Some(&(b, eb))) if a == b => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
                (Some(&(a, ea)), Some(&(b, _))) if a < b => {
                    out.push((a, ea));
                    i += 1;
                }
                (Some(&x), None) => {
                    out.push(x);
                    i += 1;
                }
                (_, Some(&y)) => {
                    out.push(y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// This monomial with `v` removed.
    fn without(&self, v: VarId) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    /// Componentwise minimum of exponents.
    fn gcd(&self, other: &Monomial) -> Monomial {
        let powers = self
            .0
            .iter()
            .filter_map(|&(v, e)| {
                let f = other.degree_in(v);
                (f > 0).then_some((v, e.min(f)))
            })
            .collect();
        Monomial(powers)
    }

    /// `self / other`, assuming divisibility.
    fn div(&self, other: &Monomial) -> Monomial {
        let powers = self
            .0
            .iter()
            .filter_map(|&(v, e)| {
                let rest = e - other.degree_in(v);
                (rest > 0).then_some((v, rest))
            })
            .collect();
        Monomial(powers)
    }
}

/// Graded lexicographic order with `x0 > x1 > …`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a.0 != b.0 {
                    // the smaller variable id appearing first dominates
                    return b.0.cmp(&a.0);
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

pub type Assignment = BTreeMap<VarId, BigRational>;

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Polynomial {
        Polynomial::term(c, Monomial::one())
    }

    pub fn from_int(c: i64) -> Polynomial {
        Polynomial::constant(rat(c))
    }

    pub fn var(v: VarId) -> Polynomial {
        Polynomial::term(BigRational::one(), Monomial::var(v))
    }

    pub fn term(c: BigRational, m: Monomial) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// Terms in descending graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.degree_in(v) > 0)
    }

    /// Largest exponent of `v`; zero when `v` is absent.
    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, values: &Assignment) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let x = values.get(&v).ok_or(Error::Unassigned(v))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Coefficients of `1, v, v², …` as polynomials free of `v`.
    pub fn coefficients_in(&self, v: VarId) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            out[m.degree_in(v) as usize].add_term(m.without(v), c.clone());
        }
        out
    }

    /// Replaces every occurrence of `v` by `e`.
    pub fn substitute(&self, v: VarId, e: &Polynomial) -> Polynomial {
        let coeffs = self.coefficients_in(v);
        // Horner evaluation in e
        let mut out = Polynomial::zero();
        for c in coeffs.iter().rev() {
            out = &(&out * e) + c;
        }
        out
    }

    /// Sign on the open positive orthant when every coefficient agrees.
    pub fn orthant_sign(&self) -> Option<Sign> {
        let mut signs = self.terms.values().map(|c| Sign::of(c));
        match signs.next() {
            None => Some(Sign::Zero),
            Some(first) => signs.all(|s| s == first).then_some(first),
        }
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(t, c)| (t.div(m), c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// The positive rational multiple with coprime integer coefficients.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
            gcd = gcd.gcd(c.numer());
        }
        let factor = BigRational::new(lcm, gcd);
        self.scale(&factor)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let magnitude = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude} * {m}")?;
            }
        }
        Ok(())
    }
}

fn parse_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || parse_error(format!("bad rational {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

fn parse_term(text: &str) -> Result<(BigRational, Monomial)> {
    let mut coeff = BigRational::one();
    let mut powers = Vec::new();
    for factor in text.split('*') {
        let factor = factor.trim();
        if let Some(rest) = factor.strip_prefix('x') {
            let (id, exp) = match rest.split_once('^') {
                Some((id, exp)) => (id, exp.trim().parse::<u32>().map_err(|_| parse_error(format!("bad exponent in {factor:?}")))?),
                None => (rest, 1),
            };
            let id: VarId = id.trim().parse().map_err(|_| parse_error(format!("bad variable {factor:?}")))?;
            powers.push((id, exp));
        } else {
            coeff *= parse_rational(factor)?;
        }
    }
    Ok((coeff, Monomial::from_powers(powers)))
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(text: &str) -> Result<Polynomial> {
        let text = text.trim();
        if text.is_empty() {
            return Err(parse_error("empty polynomial"));
        }
        let mut out = Polynomial::zero();
        let mut negative = false;
        let mut start = 0;
        let bytes = text.as_bytes();
        let mut chunks = Vec::new();
        for (i, &b) in bytes.iter().enumerate() {
            // a sign after `^` or at the very start belongs to the term
            if (b == b'+' || b == b'-') && i > 0 && !text[..i].trim_end().ends_with(['^', '*']) {
                chunks.push((negative, &text[start..i]));
                negative = b == b'-';
                start = i + 1;
            }
        }
        chunks.push((negative, &text[start..]));
        for (neg, chunk) in chunks {
            let mut chunk = chunk.trim();
            let mut neg = neg;
            if let Some(rest) = chunk.strip_prefix('-') {
                neg = !neg;
                chunk = rest.trim();
            }
            if chunk.is_empty() {
                return Err(parse_error(format!("empty term in {text:?}")));
            }
            let (c, m) = parse_term(chunk)?;
            out.add_term(m, if neg { -c } else { c });
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Positive,
    Zero,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub poly: Polynomial,
    pub relation: Relation,
}

impl Constraint {
    pub fn positive(poly: Polynomial) -> Constraint {
        Constraint {
            poly,
            relation: Relation::Positive,
        }
    }

    pub fn negative(poly: Polynomial) -> Constraint {
        Constraint::positive(-poly)
    }

    pub fn zero(poly: Polynomial) -> Constraint {
        Constraint {
            poly,
            relation: Relation::Zero,
        }
    }

    /// `sign(poly) = s`.
    pub fn with_sign(poly: Polynomial, s: Sign) -> Constraint {
        match s {
            Sign::Plus => Constraint::positive(poly),
            Sign::Minus => Constraint::negative(poly),
            Sign::Zero => Constraint::zero(poly),
        }
    }

    pub fn is_equality(&self) -> bool {
        self.relation == Relation::Zero
    }

    pub fn holds(&self, values: &Assignment) -> Result<bool> {
        let v = self.poly.eval(values)?;
        Ok(match self.relation {
            Relation::Positive => v.is_positive(),
            Relation::Zero => v.is_zero(),
        })
    }

    /// Truth value when it is decided on the whole positive orthant.
    pub fn decided(&self) -> Option<bool> {
        let s = self.poly.orthant_sign()?;
        Some(match self.relation {
            Relation::Positive => s == Sign::Plus,
            Relation::Zero => s == Sign::Zero,
        })
    }

    /// Divides out the common monomial factor (positive on the orthant) and
    /// the rational content. Equalities are further normalized to a positive
    /// leading coefficient.
    pub fn simplified(&self) -> Constraint {
        let content = self.poly.monomial_content();
        let mut poly = self.poly.div_monomial(&content).primitive();
        if self.is_equality() && poly.leading_coefficient().is_some_and(|c| c.is_negative()) {
            poly = -poly;
        }
        Constraint {
            poly,
            relation: self.relation,
        }
    }
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.relation {
            Relation::Positive => write!(f, "{} > 0", self.poly),
            Relation::Zero => write!(f, "{} = 0", self.poly),
        }
    }
}

impl FromStr for Constraint {
    type Err = Error;

    fn from_str(text: &str) -> Result<Constraint> {
        let (lhs, relation, rhs) = if let Some((l, r)) = text.split_once('>') {
            (l, Relation::Positive, r)
        } else if let Some((l, r)) = text.split_once('<') {
            (r, Relation::Positive, l)
        } else if let Some((l, r)) = text.split_once('=') {
            (l, Relation::Zero, r)
        } else {
            return Err(parse_error(format!("no relation in {text:?}")));
        };
        let poly = &lhs.parse::<Polynomial>()? - &rhs.parse::<Polynomial>()?;
        Ok(Constraint { poly, relation })
    }
}

/// Exact test of one constraint under a witness.
pub fn evaluate_constraint(c: &Constraint, w: &Witness) -> Result<bool> {
    c.holds(&w.assignment)
}

/// `v ↦ e` with `e` free of `v`.
pub fn substitute_linear(p: &Polynomial, v: VarId, e: &Polynomial) -> Polynomial {
    debug_assert!(!e.contains_var(v));
    p.substitute(v, e)
}

/// `den^d · c[v := num/den]` with `d = degree_in(c, v)`, the relation of an
/// inequality flipped when `den < 0` and `d` is odd.
pub fn substitute_ratio(c: &Constraint, v: VarId, num: &Polynomial, den: &Polynomial, den_sign: Sign) -> Result<Constraint> {
    if den_sign.is_zero() {
        return Err(Error::ZeroDenominatorSign);
    }
    let coeffs = c.poly.coefficients_in(v);
    let d = coeffs.len() as u32 - 1;
    let mut poly = Polynomial::zero();
    let mut num_pow = Polynomial::one();
    for (k, coeff) in coeffs.iter().enumerate() {
        if !coeff.is_zero() {
            poly = &poly + &(&(coeff * &num_pow) * &den.pow(d - k as u32));
        }
        num_pow = &num_pow * num;
    }
    if den_sign == Sign::Minus && d % 2 == 1 && c.relation == Relation::Positive {
        poly = -poly;
    }
    Ok(Constraint {
        poly,
        relation: c.relation,
    })
}

/// An exact positive assignment of the system's variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Witness {
    pub assignment: Assignment,
}

impl Witness {
    pub fn get(&self, v: VarId) -> Result<&BigRational> {
        self.assignment.get(&v).ok_or(Error::Unassigned(v))
    }

    pub fn insert(&mut self, v: VarId, value: BigRational) {
        self.assignment.insert(v, value);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolySystem {
    pub variables: BTreeSet<VarId>,
    pub constraints: Vec<Constraint>,
    /// Tuple whose determinant produced each constraint, when known.
    pub provenance: Vec<Option<RTuple>>,
}

impl PolySystem {
    pub fn new() -> PolySystem {
        PolySystem::default()
    }

    pub fn declare(&mut self, v: VarId) {
        self.variables.insert(v);
    }

    pub fn push(&mut self, c: Constraint, tag: Option<RTuple>) {
        self.variables.extend(c.poly.variables());
        self.constraints.push(c);
        self.provenance.push(tag);
    }

    pub fn equality_count(&self) -> usize {
        self.constraints.iter().filter(|c| c.is_equality()).count()
    }

    /// Every variable used is declared.
    pub fn validate(&self) -> Result<()> {
        for c in &self.constraints {
            if let Some(v) = c.poly.variables().into_iter().find(|v| !self.variables.contains(v)) {
                return Err(Error::Unassigned(v));
            }
        }
        Ok(())
    }

    /// Whether `w` assigns every variable a positive value and satisfies
    /// every constraint.
    pub fn is_satisfied_by(&self, w: &Witness) -> Result<bool> {
        for &v in &self.variables {
            if !w.get(v)?.is_positive() {
                return Ok(false);
            }
        }
        for c in &self.constraints {
            if !evaluate_constraint(c, w)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vars")?;
        for v in &self.variables {
            write!(f, " x{v}")?;
        }
        writeln!(f)?;
        for (c, tag) in self.constraints.iter().zip(&self.provenance) {
            match tag {
                Some(t) => writeln!(f, "{c} ; {t}")?,
                None => writeln!(f, "{c}")?,
            }
        }
        Ok(())
    }
}

fn parse_tuple_tag(text: &str) -> Result<RTuple> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| parse_error(format!("bad tuple tag {text:?}")))?;
    let elements = inner
        .split(',')
        .map(|e| match e.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(parse_error(format!("bad tuple tag {text:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RTuple(elements))
}

impl FromStr for PolySystem {
    type Err = Error;

    fn from_str(text: &str) -> Result<PolySystem> {
        let mut sys = PolySystem::new();
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| parse_error("missing vars line"))?;
        let vars = header
            .strip_prefix("vars")
            .ok_or_else(|| parse_error("first line must start with `vars`"))?;
        for name in vars.split_whitespace() {
            let id = name
                .strip_prefix('x')
                .and_then(|s| s.parse::<VarId>().ok())
                .ok_or_else(|| parse_error(format!("bad variable {name:?}")))?;
            sys.declare(id);
        }
        for line in lines {
            let (body, tag) = match line.split_once(';') {
                Some((b, t)) => (b, Some(parse_tuple_tag(t)?)),
                None => (line, None),
            };
            sys.constraints.push(body.parse()?);
            sys.provenance.push(tag);
        }
        sys.validate()?;
        Ok(sys)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn w(vals: &[(VarId, i64, i64)]) -> Witness {
        Witness {
            assignment: vals
                .iter()
                .map(|&(v, a, b)| (v, BigRational::new(a.into(), b.into())))
                .collect(),
        }
    }

    #[test]
    fn evaluation_examples() {
        let c = Constraint::positive(p("x0 * x1 - 1"));
        assert!(evaluate_constraint(&c, &w(&[(0, 2, 1), (1, 1, 1)])).unwrap());
        let c = Constraint::zero(&p("x0") - &p("x0"));
        assert!(evaluate_constraint(&c, &w(&[(0, 3, 1)])).unwrap());
        let c = Constraint::zero(p("x0^2 - 2"));
        assert!(!evaluate_constraint(&c, &w(&[(0, 7, 5)])).unwrap());
        assert_eq!(evaluate_constraint(&c, &w(&[])), Err(Error::Unassigned(0)));
    }

    #[test]
    fn degrees() {
        let q = p("x0^2 * x1 + x1");
        assert_eq!(q.degree_in(0), 2);
        assert_eq!(q.degree_in(1), 1);
        assert_eq!(p("5").degree_in(0), 0);
        assert_eq!(q.total_degree(), 3);
    }

    #[test]
    fn linear_substitution() {
        let got = substitute_linear(&p("x0^2 + 1"), 0, &p("x1 + 1"));
        assert_eq!(got, p("x1^2 + 2 * x1 + 2"));
        let q = p("x1 * x2");
        assert_eq!(substitute_linear(&q, 0, &p("x1")), q);
    }

    #[test]
    fn ratio_substitution() {
        let c = Constraint::positive(p("x0 - 1"));
        let pos = substitute_ratio(&c, 0, &p("1"), &p("x1"), Sign::Plus).unwrap();
        assert_eq!(pos, Constraint::positive(p("1 - x1")));
        let neg = substitute_ratio(&c, 0, &p("1"), &p("x1"), Sign::Minus).unwrap();
        assert_eq!(neg, Constraint::positive(p("x1 - 1")));
        let e = Constraint::zero(p("x0^2 - x1"));
        let got = substitute_ratio(&e, 0, &p("x2"), &p("x1"), Sign::Plus).unwrap();
        assert_eq!(got, Constraint::zero(p("x2^2 - x1^3")));
        assert_eq!(
            substitute_ratio(&c, 0, &p("1"), &p("x1"), Sign::Zero),
            Err(Error::ZeroDenominatorSign)
        );
    }

    #[test]
    fn printing_round_trips() {
        for s in ["0", "-3/2", "x0", "-x3^2 * x1 + 2/3 * x0 - 7", "x0 * x1 - x1^2"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q, "{s}");
        }
        assert_eq!(p("x1 + x0^2 - 1").to_string(), "x0^2 + x1 - 1");
    }

    #[test]
    fn simplification_strips_positive_factors() {
        let c = Constraint::positive(p("2 * x0^2 * x1 - 4 * x0 * x1^2"));
        assert_eq!(c.simplified(), Constraint::positive(p("x0 - 2 * x1")));
        let e = Constraint::zero(p("-1/2 * x0 + 1/3"));
        assert_eq!(e.simplified(), Constraint::zero(p("3 * x0 - 2")));
        assert_eq!(Constraint::positive(p("x0 + x1")).decided(), Some(true));
        assert_eq!(Constraint::zero(p("x0 + 1")).decided(), Some(false));
        assert_eq!(Constraint::positive(p("x0 - 1")).decided(), None);
    }

    #[test]
    fn system_text_round_trips() {
        let mut sys = PolySystem::new();
        sys.push(Constraint::positive(p("x0 * x2 - x1")), Some(RTuple(vec![0, 2, 3])));
        sys.push(Constraint::zero(p("x1 - 2 * x2")), None);
        let text = sys.to_string();
        let back: PolySystem = text.parse().unwrap();
        assert_eq!(back, sys);
        assert!("vars x0\nx1 > 0".parse::<PolySystem>().is_err());
    }
}
