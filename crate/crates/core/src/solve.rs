//! Feasibility search for positive-variable polynomial systems.
//!
//! A variable is eliminated in one of two ways. Under E1 it occurs linearly
//! and only in strict inequalities, so branching on the signs of its
//! coefficients turns every occurrence into a rational bound, and the bounds
//! are eliminated by pairwise cross products. Under E2 some equality is
//! linear in it, and branching on the sign of its coefficient allows
//! substitution. Nodes without an eliminable variable fall back to random
//! rational sampling. The tree is searched depth-first with iterative
//! lengthening on the accumulated `log2` branch count.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chirotope::Chirotope;
use crate::error::{Error, Result};
use crate::polysys::{substitute_ratio, Assignment, Constraint, PolySystem, Polynomial, Relation, VarId, Witness};
use crate::realization::Realization;
use crate::reduce::{build_system, select_frame};
use crate::sign::Sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Initial limit on the accumulated `log2` branch count.
    pub cost_limit: u32,
    pub max_cost_limit: u32,
    pub random_trials: u32,
    pub seed: u64,
    /// Also branch on vanishing E1 coefficients.
    pub full_branching: bool,
    /// Nodes with more constraints are treated as leaves.
    pub max_constraints: usize,
    pub wall_clock: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            cost_limit: 0,
            max_cost_limit: 10,
            random_trials: 300,
            seed: 0,
            full_branching: false,
            max_constraints: 400,
            wall_clock: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnknownReason {
    /// Some subtree was cut by the cost limit or the wall clock.
    Budget,
    /// A leaf kept equality constraints, which random sampling cannot meet.
    EqualityResidue,
    /// Random sampling failed at a leaf without eliminable variables.
    NoEliminableVariable,
    /// Every branch ended in an exact contradiction. This is not a proof of
    /// infeasibility, because the default branching drops the zero patterns.
    AllBranchesClosed,
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnknownReason::Budget => "budget",
            UnknownReason::EqualityResidue => "equality-residue",
            UnknownReason::NoEliminableVariable => "no-eliminable-variable",
            UnknownReason::AllBranchesClosed => "all-branches-closed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Feasible {
        witness: Witness,
        /// Present when the system came from a chirotope.
        realization: Option<Realization>,
    },
    Unknown(UnknownReason),
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Feasible { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    E1,
    E2,
}

/// A rational bound `num / den` with `den > 0` on the branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub num: Polynomial,
    pub den: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EliminationStep {
    E1 {
        var: VarId,
        lower: Vec<Bound>,
        upper: Vec<Bound>,
    },
    /// `var = num / den`.
    E2 {
        var: VarId,
        num: Polynomial,
        den: Polynomial,
    },
}

/// Every variable is positive; constraints are `> 0` or `= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    vars: BTreeSet<VarId>,
    constraints: Vec<Constraint>,
}

impl Node {
    fn from_system(sys: &PolySystem) -> Node {
        Node {
            vars: sys.variables.clone(),
            constraints: sys.constraints.clone(),
        }
    }

    /// Simplifies, drops satisfied and duplicate constraints; `None` when a
    /// constraint is contradicted on the whole positive orthant.
    fn normalized(vars: BTreeSet<VarId>, constraints: Vec<Constraint>) -> Option<Node> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(constraints.len());
        for c in constraints {
            let c = c.simplified();
            match c.decided() {
                Some(true) => continue,
                Some(false) => return None,
                None => {}
            }
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        Some(Node { vars, constraints: out })
    }

    fn has_equalities(&self) -> bool {
        self.constraints.iter().any(Constraint::is_equality)
    }
}

fn pos(p: Polynomial) -> Constraint {
    Constraint::positive(p)
}

/// Variables eliminable by each rule. E1: only in inequalities, each of
/// degree at most 1. E2: some equality has degree exactly 1 in it.
pub fn eliminable_vars(sys: &PolySystem) -> Vec<(VarId, Rule)> {
    eliminable(&sys.variables, &sys.constraints)
}

fn eliminable(vars: &BTreeSet<VarId>, constraints: &[Constraint]) -> Vec<(VarId, Rule)> {
    let mut out = Vec::new();
    for &v in vars {
        let mut e1 = true;
        let mut e2 = false;
        let mut occurs = false;
        for c in constraints {
            let d = c.poly.degree_in(v);
            if d == 0 {
                continue;
            }
            occurs = true;
            match c.relation {
                Relation::Zero => {
                    e1 = false;
                    e2 |= d == 1;
                }
                Relation::Positive => e1 &= d == 1,
            }
        }
        if !occurs {
            continue;
        }
        if e2 {
            out.push((v, Rule::E2));
        }
        if e1 {
            out.push((v, Rule::E1));
        }
    }
    out
}

/// A child node and the step that produced it.
#[derive(Clone, Debug)]
pub struct Child {
    node_vars: BTreeSet<VarId>,
    constraints: Vec<Constraint>,
    pub step: EliminationStep,
}

impl Child {
    pub fn system(&self) -> PolySystem {
        let mut sys = PolySystem::new();
        sys.variables = self.node_vars.clone();
        for c in &self.constraints {
            sys.constraints.push(c.clone());
            sys.provenance.push(None);
        }
        sys
    }
}

fn child(node: &Node, constraints: Vec<Constraint>, step: EliminationStep, var: VarId) -> Option<Child> {
    let mut vars = node.vars.clone();
    vars.remove(&var);
    let n = Node::normalized(vars, constraints)?;
    Some(Child {
        node_vars: n.vars,
        constraints: n.constraints,
        step,
    })
}

/// Groups `±a` coefficient polynomials; returns the representative with a
/// positive leading coefficient and whether `a` is its negative.
fn coefficient_key(a: &Polynomial) -> (Polynomial, bool) {
    let p = a.primitive();
    if p.leading_coefficient().is_some_and(|c| c.is_negative()) {
        (-p, true)
    } else {
        (p, false)
    }
}

/// One `a·y + c > 0` occurrence of the eliminated variable.
struct Linear {
    a: Polynomial,
    c: Polynomial,
    group: usize,
    negated: bool,
}

struct E1Plan {
    occurrences: Vec<Linear>,
    /// Distinct coefficient polynomials with their fixed sign, if definite.
    groups: Vec<(Polynomial, Option<Sign>)>,
    rest: Vec<Constraint>,
}

fn plan_e1(node: &Node, y: VarId) -> E1Plan {
    let mut occurrences = Vec::new();
    let mut groups: Vec<(Polynomial, Option<Sign>)> = Vec::new();
    let mut rest = Vec::new();
    for c in &node.constraints {
        if c.poly.degree_in(y) == 0 {
            rest.push(c.clone());
            continue;
        }
        let mut co = c.poly.coefficients_in(y);
        let a = co.pop().expect("degree 1");
        let c0 = co.pop().expect("constant part");
        let (key, negated) = coefficient_key(&a);
        let group = match groups.iter().position(|(g, _)| *g == key) {
            Some(i) => i,
            None => {
                let definite = key.orthant_sign();
                groups.push((key, definite));
                groups.len() - 1
            }
        };
        occurrences.push(Linear {
            a,
            c: c0,
            group,
            negated,
        });
    }
    E1Plan {
        occurrences,
        groups,
        rest,
    }
}

fn e1_branch_count(plan: &E1Plan, full: bool) -> u64 {
    let base: u64 = if full { 3 } else { 2 };
    let free = plan.groups.iter().filter(|(_, d)| d.is_none()).count() as u32;
    base.saturating_pow(free)
}

fn e1_cross_count(plan: &E1Plan) -> usize {
    // one extra lower bound from positivity; signs unknown here, so count the
    // worst split
    let l = plan.occurrences.len() + 1;
    (l / 2) * (l - l / 2)
}

/// Children of an E1 elimination of `y`; one per coefficient sign pattern
/// that survives the exact checks.
pub fn branch_eliminate_e1(sys: &PolySystem, y: VarId, full: bool) -> Result<Vec<Child>> {
    let node = Node::from_system(sys);
    if !eliminable(&node.vars, &node.constraints).contains(&(y, Rule::E1)) {
        return Err(Error::Soundness(format!("x{y} is not E1-eliminable")));
    }
    Ok(e1_children(&node, y, full))
}

fn e1_children(node: &Node, y: VarId, full: bool) -> Vec<Child> {
    let plan = plan_e1(node, y);
    let free: Vec<usize> = (0..plan.groups.len()).filter(|&g| plan.groups[g].1.is_none()).collect();
    let alphabet: &[Sign] = if full { &Sign::ALL } else { &[Sign::Plus, Sign::Minus] };
    let patterns = alphabet.len().pow(free.len() as u32);
    let mut out = Vec::new();
    for pattern in 0..patterns {
        let mut group_sign: Vec<Sign> = plan.groups.iter().map(|(_, d)| d.unwrap_or(Sign::Zero)).collect();
        let mut code = pattern;
        for &g in &free {
            group_sign[g] = alphabet[code % alphabet.len()];
            code /= alphabet.len();
        }
        let mut constraints = plan.rest.clone();
        for &g in &free {
            constraints.push(Constraint::with_sign(plan.groups[g].0.clone(), group_sign[g]));
        }
        let mut lower = vec![Bound {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }];
        let mut upper = Vec::new();
        for occ in &plan.occurrences {
            let s = group_sign[occ.group].flip_if(occ.negated);
            match s {
                // a·y + c > 0 with a > 0: y > -c/a
                Sign::Plus => lower.push(Bound {
                    num: -&occ.c,
                    den: occ.a.clone(),
                }),
                // a < 0: y < c/(-a)
                Sign::Minus => upper.push(Bound {
                    num: occ.c.clone(),
                    den: -&occ.a,
                }),
                Sign::Zero => constraints.push(pos(occ.c.clone())),
            }
        }
        for l in &lower {
            for u in &upper {
                // l.num/l.den < u.num/u.den with both denominators positive
                constraints.push(pos(&(&u.num * &l.den) - &(&l.num * &u.den)));
            }
        }
        let step = EliminationStep::E1 { var: y, lower, upper };
        if let Some(c) = child(node, constraints, step, y) {
            out.push(c);
        }
    }
    out
}

/// Children of an E2 elimination of `y` through the equality at index `eq`:
/// `A > 0` and `A < 0` with `y := B/A` substituted, then `A = B = 0` with
/// `y` kept.
pub fn branch_eliminate_e2(sys: &PolySystem, y: VarId, eq: usize) -> Result<Vec<Child>> {
    let node = Node::from_system(sys);
    let c = node
        .constraints
        .get(eq)
        .ok_or_else(|| Error::Soundness(format!("no constraint {eq}")))?;
    if !c.is_equality() || c.poly.degree_in(y) != 1 {
        return Err(Error::Soundness(format!("constraint {eq} is not linear in x{y}")));
    }
    e2_children(&node, y, eq)
}

fn e2_children(node: &Node, y: VarId, eq: usize) -> Result<Vec<Child>> {
    let mut co = node.constraints[eq].poly.coefficients_in(y);
    let a = co.pop().expect("degree 1");
    let b = -&co.pop().expect("constant part");
    let others: Vec<&Constraint> = node
        .constraints
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != eq)
        .map(|(_, c)| c)
        .collect();
    let mut out = Vec::new();
    for s in [Sign::Plus, Sign::Minus] {
        let mut constraints = Vec::with_capacity(others.len() + 2);
        constraints.push(Constraint::with_sign(a.clone(), s));
        // y = B/A > 0
        constraints.push(Constraint::with_sign(b.clone(), s));
        let mut contradicted = false;
        for c in &others {
            let sub = substitute_ratio(c, y, &b, &a, s)?;
            if sub.simplified().decided() == Some(false) {
                contradicted = true;
                break;
            }
            constraints.push(sub);
        }
        if contradicted {
            continue;
        }
        let step = EliminationStep::E2 {
            var: y,
            num: b.clone(),
            den: a.clone(),
        };
        if let Some(c) = child(node, constraints, step, y) {
            out.push(c);
        }
    }
    let mut constraints: Vec<Constraint> = others.into_iter().cloned().collect();
    constraints.push(Constraint::zero(a.clone()));
    constraints.push(Constraint::zero(b.clone()));
    if let Some(n) = Node::normalized(node.vars.clone(), constraints) {
        // y stays; the step records nothing to undo
        out.push(Child {
            node_vars: n.vars,
            constraints: n.constraints,
            step: EliminationStep::E2 {
                var: VarId::MAX,
                num: Polynomial::zero(),
                den: Polynomial::one(),
            },
        });
    }
    Ok(out)
}

fn is_noop(step: &EliminationStep) -> bool {
    matches!(step, EliminationStep::E2 { var, .. } if *var == VarId::MAX)
}

/// The choice made at one node.
enum Choice {
    E2 { var: VarId, eq: usize },
    E1 { var: VarId },
}

/// Prefer E2, then fewer branches, then fewer cross products, then the
/// smallest variable id.
fn choose(node: &Node, full: bool) -> Option<Choice> {
    let mut best: Option<((u8, u64, usize, VarId, usize), Choice)> = None;
    for (v, rule) in eliminable(&node.vars, &node.constraints) {
        match rule {
            Rule::E2 => {
                for (i, c) in node.constraints.iter().enumerate() {
                    if !c.is_equality() || c.poly.degree_in(v) != 1 {
                        continue;
                    }
                    let a = c.poly.coefficients_in(v).pop().expect("degree 1");
                    let branches = if a.orthant_sign().is_some() { 1 } else { 3 };
                    let key = (0, branches, a.num_terms(), v, i);
                    if best.as_ref().is_none_or(|(k, _)| key < *k) {
                        best = Some((key, Choice::E2 { var: v, eq: i }));
                    }
                }
            }
            Rule::E1 => {
                let plan = plan_e1(node, v);
                let key = (1, e1_branch_count(&plan, full), e1_cross_count(&plan), v, 0);
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, Choice::E1 { var: v }));
                }
            }
        }
    }
    best.map(|(_, c)| c)
}

/// Per-class seed: FNV-1a of the canonical sign string, mixed with the
/// global seed. Independent of scheduling.
pub fn class_seed(canonical: &str, seed: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in canonical.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn random_positive(rng: &mut ChaCha8Rng, bits: u32) -> BigRational {
    let hi = 1u64 << bits;
    let p = rng.gen_range(1..=hi);
    let q = rng.gen_range(1..=hi);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Samples positive rationals `p/q`, `p, q ∈ [1, 2^k]`, with `k = 4, 8, 16`
/// over successive thirds of the trials. Systems with equalities fail at
/// once.
pub fn random_realize(sys: &PolySystem, budget: &Budget) -> Option<Witness> {
    random_node(&Node::from_system(sys), budget.random_trials, budget.seed)
}

fn random_node(node: &Node, trials: u32, seed: u64) -> Option<Witness> {
    if node.has_equalities() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Assignment::new();
    // a constant-free start: everything equal to 1
    for &v in &node.vars {
        values.insert(v, BigRational::one());
    }
    let check = |values: &Assignment| {
        node.constraints
            .iter()
            .all(|c| c.holds(values).expect("all variables assigned"))
    };
    if check(&values) {
        return Some(Witness { assignment: values });
    }
    for t in 0..trials {
        let bits = match 3 * t / trials.max(1) {
            0 => 4,
            1 => 8,
            _ => 16,
        };
        for &v in &node.vars {
            values.insert(v, random_positive(&mut rng, bits));
        }
        if check(&values) {
            return Some(Witness { assignment: values });
        }
    }
    None
}

/// Replays the steps innermost-out on a witness of the leaf system.
pub fn reconstruct_witness(leaf: &Witness, steps: &[EliminationStep]) -> Result<Witness> {
    let mut w = leaf.clone();
    for step in steps.iter().rev() {
        match step {
            EliminationStep::E1 { var, lower, upper } => {
                let eval = |b: &Bound| -> Result<BigRational> {
                    let den = b.den.eval(&w.assignment)?;
                    if den.is_zero() {
                        return Err(Error::Soundness(format!("zero denominator reconstructing x{var}")));
                    }
                    Ok(b.num.eval(&w.assignment)? / den)
                };
                let mut lo: Option<BigRational> = None;
                for b in lower {
                    let v = eval(b)?;
                    lo = Some(match lo {
                        Some(x) if x >= v => x,
                        _ => v,
                    });
                }
                let mut hi: Option<BigRational> = None;
                for b in upper {
                    let v = eval(b)?;
                    hi = Some(match hi {
                        Some(x) if x <= v => x,
                        _ => v,
                    });
                }
                let lo = lo.expect("positivity bound is always present");
                let value = match hi {
                    Some(h) => (lo + h) / BigRational::from_integer(2.into()),
                    None => lo + BigRational::one(),
                };
                w.insert(*var, value);
            }
            EliminationStep::E2 { var, num, den } => {
                if *var == VarId::MAX {
                    continue;
                }
                let d = den.eval(&w.assignment)?;
                if d.is_zero() {
                    return Err(Error::Soundness(format!("zero denominator reconstructing x{var}")));
                }
                w.insert(*var, num.eval(&w.assignment)? / d);
            }
        }
    }
    Ok(w)
}

/// Deterministic effort measures of one search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Nodes visited over all lengthening passes.
    pub nodes: u64,
    /// Cost limit of the last pass.
    pub cost_limit: u32,
}

struct Search<'a> {
    budget: &'a Budget,
    nodes: u64,
    limit: u32,
    started: Instant,
    cut: bool,
    equality_leaf: bool,
    random_failed: bool,
    steps: Vec<EliminationStep>,
}

impl Search<'_> {
    fn out_of_time(&self) -> bool {
        self.budget.wall_clock.is_some_and(|cap| self.started.elapsed() > cap)
    }

    /// `weight` is the product of branch counts along the path; the path
    /// cost is its `log2`.
    fn dfs(&mut self, node: &Node, weight: u128, path: u64) -> Option<Witness> {
        self.nodes += 1;
        if self.out_of_time() {
            self.cut = true;
            return None;
        }
        if node.vars.iter().all(|v| !node.constraints.iter().any(|c| c.poly.contains_var(*v))) && node.constraints.is_empty() {
            let w = Witness {
                assignment: node.vars.iter().map(|&v| (v, BigRational::one())).collect(),
            };
            return Some(w);
        }
        let choice = if node.constraints.len() > self.budget.max_constraints {
            None
        } else {
            choose(node, self.budget.full_branching)
        };
        let Some(choice) = choice else {
            return self.leaf(node, path);
        };
        let children = match choice {
            Choice::E2 { var, eq } => e2_children(node, var, eq).expect("checked linear"),
            Choice::E1 { var } => e1_children(node, var, self.budget.full_branching),
        };
        if children.is_empty() {
            return None;
        }
        let weight = weight.saturating_mul(children.len() as u128);
        if weight > 1u128 << self.limit {
            self.cut = true;
            return None;
        }
        for (k, c) in children.into_iter().enumerate() {
            let next = Node {
                vars: c.node_vars,
                constraints: c.constraints,
            };
            let noop = is_noop(&c.step);
            if !noop {
                self.steps.push(c.step);
            }
            let found = self.dfs(&next, weight, splitmix(path ^ (k as u64 + 1)));
            if found.is_some() {
                return found;
            }
            if !noop {
                self.steps.pop();
            }
        }
        None
    }

    fn leaf(&mut self, node: &Node, path: u64) -> Option<Witness> {
        if node.has_equalities() {
            self.equality_leaf = true;
            return None;
        }
        let seed = splitmix(self.budget.seed ^ splitmix(path) ^ u64::from(self.limit));
        match random_node(node, self.budget.random_trials, seed) {
            Some(w) => Some(w),
            None => {
                self.random_failed = true;
                None
            }
        }
    }
}

/// Iterative-lengthening search; on success the witness covers every
/// variable of `sys`.
pub fn sol(sys: &PolySystem, budget: &Budget) -> SolveOutcome {
    sol_with_stats(sys, budget).0
}

pub fn sol_with_stats(sys: &PolySystem, budget: &Budget) -> (SolveOutcome, SolveStats) {
    let mut stats = SolveStats::default();
    let Some(root) = Node::normalized(sys.variables.clone(), sys.constraints.clone()) else {
        return (SolveOutcome::Unknown(UnknownReason::AllBranchesClosed), stats);
    };
    let started = Instant::now();
    let mut limit = budget.cost_limit.min(budget.max_cost_limit);
    loop {
        stats.cost_limit = limit;
        let mut search = Search {
            budget,
            nodes: 0,
            limit,
            started,
            cut: false,
            equality_leaf: false,
            random_failed: false,
            steps: Vec::new(),
        };
        let found = search.dfs(&root, 1, splitmix(budget.seed));
        stats.nodes += search.nodes;
        if let Some(leaf) = found {
            let mut w = reconstruct_witness(&leaf, &search.steps).expect("reconstruction of a verified leaf");
            // variables dropped along the way are unconstrained
            for &v in &sys.variables {
                w.assignment.entry(v).or_insert_with(BigRational::one);
            }
            w.assignment.retain(|v, _| sys.variables.contains(v));
            match sys.is_satisfied_by(&w) {
                Ok(true) => {
                    let out = SolveOutcome::Feasible {
                        witness: w,
                        realization: None,
                    };
                    return (out, stats);
                }
                _ => {
                    log::error!("reconstructed witness fails the system; discarding");
                    return (SolveOutcome::Unknown(UnknownReason::NoEliminableVariable), stats);
                }
            }
        }
        let timed_out = search.out_of_time();
        if !search.cut || limit >= budget.max_cost_limit || timed_out {
            let reason = if search.cut {
                UnknownReason::Budget
            } else if search.equality_leaf {
                UnknownReason::EqualityResidue
            } else if search.random_failed {
                UnknownReason::NoEliminableVariable
            } else {
                UnknownReason::AllBranchesClosed
            };
            return (SolveOutcome::Unknown(reason), stats);
        }
        limit += 1;
    }
}

/// Exact comparison of determinant signs with `chi` on all of `Λ(n, r)`.
pub fn verify_realization(v: &Realization, chi: &Chirotope) -> Result<bool> {
    Ok(v.first_mismatch(chi)?.is_none())
}

/// Frame selection, system construction, search, reconstruction and exact
/// verification. A witness that fails verification is an internal error.
pub fn realize(chi: &Chirotope, budget: &Budget) -> Result<SolveOutcome> {
    Ok(realize_with_stats(chi, budget)?.0)
}

pub fn realize_with_stats(chi: &Chirotope, budget: &Budget) -> Result<(SolveOutcome, SolveStats)> {
    let frame = select_frame(chi)?;
    let (sys, grid) = build_system(chi, &frame)?;
    let (outcome, stats) = sol_with_stats(&sys, budget);
    let outcome = match outcome {
        SolveOutcome::Feasible { witness, .. } => {
            let matrix = grid.reconstruct(&witness)?;
            if let Some(m) = matrix.first_mismatch(chi)? {
                return Err(Error::Soundness(format!("witness does not realize {chi}: {m}")));
            }
            SolveOutcome::Feasible {
                witness,
                realization: Some(matrix),
            }
        }
        unknown => unknown,
    };
    Ok((outcome, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(lines: &str) -> PolySystem {
        lines.parse().unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn eliminability_tags() {
        let s = sys("vars x0 x1\nx0 * x1 - 1 > 0");
        assert_eq!(eliminable_vars(&s), vec![(0, Rule::E1), (1, Rule::E1)]);
        let s = sys("vars x0 x1\nx0 * x1 - 1 = 0");
        assert_eq!(eliminable_vars(&s), vec![(0, Rule::E2), (1, Rule::E2)]);
        let s = sys("vars x0 x1\nx0^2 - x1 > 0");
        assert_eq!(eliminable_vars(&s), vec![(1, Rule::E1)]);
    }

    #[test]
    fn e1_midpoint_reconstruction() {
        // y < x, y > 1
        let s = sys("vars x0 x1\nx0 - x1 > 0\nx1 - 1 > 0");
        let children = branch_eliminate_e1(&s, 1, false).unwrap();
        assert_eq!(children.len(), 1);
        let c = &children[0];
        assert_eq!(c.constraints, vec![Constraint::positive("x0 - 1".parse().unwrap())]);
        let mut leaf = Witness::default();
        leaf.insert(0, q(2, 1));
        let w = reconstruct_witness(&leaf, std::slice::from_ref(&c.step)).unwrap();
        assert_eq!(w.get(1).unwrap(), &q(3, 2));
    }

    #[test]
    fn e1_one_sided_bounds_vanish() {
        // a·y < 1
        let s = sys("vars x0 x1\n1 - x0 * x1 > 0");
        let children = branch_eliminate_e1(&s, 1, false).unwrap();
        assert_eq!(children.len(), 1);
        assert!(children[0].constraints.is_empty());
        // coefficient a = x0 is positive on the orthant, so only one pattern
        let s = sys("vars x0 x1 x2\nx2 - x0 * x1 + x1 > 0");
        let children = branch_eliminate_e1(&s, 1, false).unwrap();
        assert_eq!(children.len(), 2);
    }

    #[test]
    fn e1_cross_product_count() {
        // two upper and one lower bound besides positivity: 2·2 products
        let s = sys("vars x0 x1 x2\nx0 - x2 > 0\nx1 - x2 > 0\nx2 - 1 > 0");
        let children = branch_eliminate_e1(&s, 2, false).unwrap();
        assert_eq!(children.len(), 1);
        let EliminationStep::E1 { lower, upper, .. } = &children[0].step else {
            panic!("E1 step expected");
        };
        assert_eq!((lower.len(), upper.len()), (2, 2));
    }

    #[test]
    fn e2_examples() {
        let s = sys("vars x0 x1\nx0 * x1 - 1 = 0\nx0 - 2 > 0");
        let children = branch_eliminate_e2(&s, 1, 0).unwrap();
        // A = x0 is positive on the orthant: one substitution branch
        assert_eq!(children.len(), 1);
        let mut leaf = Witness::default();
        leaf.insert(0, q(3, 1));
        let w = reconstruct_witness(&leaf, std::slice::from_ref(&children[0].step)).unwrap();
        assert_eq!(w.get(1).unwrap(), &q(1, 3));

        let s = sys("vars x0\n0 * x0 + 1 = 0");
        assert!(s.constraints[0].decided() == Some(false));
        assert_eq!(sol(&s, &Budget::default()), SolveOutcome::Unknown(UnknownReason::AllBranchesClosed));
    }

    #[test]
    fn random_realization() {
        let b = Budget::default();
        assert!(random_realize(&sys("vars x0 x1\nx0 - x1 > 0"), &b).is_some());
        assert!(random_realize(&sys("vars x0 x1\nx0 - x0 > 0"), &b).is_none());
        assert!(random_realize(&sys("vars x0\nx0^2 - 2 = 0"), &b).is_none());
    }

    #[test]
    fn variable_free_systems() {
        let b = Budget::default();
        assert!(sol(&sys("vars\n1 > 0"), &b).is_feasible());
        assert!(!sol(&sys("vars\n-1 > 0"), &b).is_feasible());
    }

    #[test]
    fn interval_system() {
        let s = sys("vars x0 x1\nx0 - x1 > 0\nx1 - 1 > 0\n3 - x0 > 0");
        let SolveOutcome::Feasible { witness, .. } = sol(&s, &Budget::default()) else {
            panic!("feasible expected");
        };
        assert!(s.is_satisfied_by(&witness).unwrap());
    }

    #[test]
    fn sqrt_two_needs_equality_residue() {
        let s = sys("vars x0\nx0^2 - 2 = 0");
        assert_eq!(sol(&s, &Budget::default()), SolveOutcome::Unknown(UnknownReason::EqualityResidue));
    }

    #[test]
    fn realizes_small_chirotopes() {
        for chi in [
            Chirotope::all_plus(4, 3).unwrap(),
            Chirotope::all_plus(5, 3).unwrap(),
            Chirotope::from_sign_str(4, 3, "+0++").unwrap(),
        ] {
            let out = realize(&chi, &Budget::default()).unwrap();
            let SolveOutcome::Feasible { realization: Some(v), .. } = out else {
                panic!("{chi} should be realizable");
            };
            assert!(verify_realization(&v, &chi).unwrap());
        }
    }
}
