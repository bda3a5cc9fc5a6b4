//! Depth-first enumeration of simple chirotopes up to reorientation.
//!
//! Signs are assigned to `Λ(n, r)` in lexicographic order. A partial
//! assignment is cut as soon as a relation instance whose tuples are all
//! assigned fails its sign condition. Two necessary conditions of being the
//! orbit minimum are enforced on the fly: the first stored sign is `+`, and
//! the first nonzero tuple containing any element is `+` (otherwise
//! reorienting that element gives a smaller string). Completed assignments
//! are emitted only when simple and equal to their own canonical form.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::chirotope::Chirotope;
use crate::error::{Error, Result};
use crate::grassmann::{signed_sums, SignedSum};
use crate::sign::{sign_string, Sign};
use crate::symmetry::{is_canonical, Group};
use crate::tuple::{tuple_space, TupleSpace};

/// Counts and representatives of the reorientation classes of simple
/// rank-`r` chirotopes on `n` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub n: usize,
    pub r: usize,
    pub class_count: usize,
    pub uniform_class_count: usize,
    /// Canonical sign strings, sorted.
    pub representatives: Vec<String>,
    /// Search nodes visited.
    pub nodes: u64,
}

impl EnumerationReport {
    pub fn chirotopes(&self) -> impl Iterator<Item = Chirotope> + '_ {
        self.representatives
            .iter()
            .map(move |s| Chirotope::from_sign_str(self.n, self.r, s).expect("representative has valid shape"))
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    pub uniform_only: bool,
    /// Abort once this many search nodes have been visited.
    pub node_limit: Option<u64>,
    /// Explore independent subtrees on the rayon pool.
    pub parallel: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            uniform_only: false,
            node_limit: None,
            parallel: true,
        }
    }
}

pub fn enumerate_classes(n: usize, r: usize, uniform_only: bool) -> Result<EnumerationReport> {
    enumerate_with(
        n,
        r,
        &EnumerationOptions {
            uniform_only,
            ..EnumerationOptions::default()
        },
    )
}

struct Search<'a> {
    space: &'a TupleSpace,
    n: usize,
    r: usize,
    /// Relations that become fully assigned at each position.
    checks: Vec<Vec<SignedSum>>,
    alphabet: &'a [Sign],
    nodes: &'a AtomicU64,
    node_limit: Option<u64>,
}

#[derive(Clone)]
struct State {
    signs: Vec<Sign>,
    nonzero_count: Vec<u16>,
    depth: usize,
}

impl<'a> Search<'a> {
    fn admissible(&self, state: &State, value: Sign) -> bool {
        let pos = state.depth;
        let mask = self.space.mask(pos);
        if pos == 0 && value != Sign::Plus {
            return false;
        }
        if value == Sign::Minus && (0..self.n).any(|e| mask & (1 << e) != 0 && state.nonzero_count[e] == 0) {
            return false;
        }
        true
    }

    fn push(&self, state: &mut State, value: Sign) -> bool {
        let pos = state.depth;
        state.signs[pos] = value;
        state.depth += 1;
        if value.is_nonzero() {
            let mask = self.space.mask(pos);
            for e in 0..self.n {
                if mask & (1 << e) != 0 {
                    state.nonzero_count[e] += 1;
                }
            }
        }
        self.checks[pos].iter().all(|g| g.holds(&state.signs))
    }

    fn pop(&self, state: &mut State) {
        state.depth -= 1;
        let pos = state.depth;
        if state.signs[pos].is_nonzero() {
            let mask = self.space.mask(pos);
            for e in 0..self.n {
                if mask & (1 << e) != 0 {
                    state.nonzero_count[e] -= 1;
                }
            }
        }
        state.signs[pos] = Sign::Zero;
    }

    fn tick(&self) -> Result<()> {
        let visited = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        match self.node_limit {
            Some(limit) if visited > limit => Err(Error::NodeLimitExceeded { limit }),
            _ => Ok(()),
        }
    }

    fn leaf(&self, state: &State, out: &mut Vec<Chirotope>) {
        let chi = Chirotope::new(self.n, self.r, state.signs.clone()).expect("complete assignment");
        if chi.is_simple() && is_canonical(&chi, Group::Full) {
            out.push(chi);
        }
    }

    fn dfs(&self, state: &mut State, out: &mut Vec<Chirotope>) -> Result<()> {
        self.tick()?;
        if state.depth == self.space.len() {
            self.leaf(state, out);
            return Ok(());
        }
        for &value in self.alphabet {
            if !self.admissible(state, value) {
                continue;
            }
            if self.push(state, value) {
                self.dfs(state, out)?;
            }
            self.pop(state);
        }
        Ok(())
    }

    /// Consistent partial assignments of the first `depth` positions.
    fn frontier(&self, state: &mut State, depth: usize, out: &mut Vec<State>) -> Result<()> {
        self.tick()?;
        if state.depth == depth || state.depth == self.space.len() {
            out.push(state.clone());
            return Ok(());
        }
        for &value in self.alphabet {
            if !self.admissible(state, value) {
                continue;
            }
            if self.push(state, value) {
                self.frontier(state, depth, out)?;
            }
            self.pop(state);
        }
        Ok(())
    }
}

pub fn enumerate_with(n: usize, r: usize, options: &EnumerationOptions) -> Result<EnumerationReport> {
    if r == 0 || r > n {
        return Err(Error::InvalidShape {
            n,
            r,
            reason: "rank must satisfy 1 <= r <= n",
        });
    }
    if n > 7 {
        log::warn!("enumerating OM({r},{n}) is outside the tested range n <= 7");
    }
    let space = tuple_space(n, r);
    let mut checks: Vec<Vec<SignedSum>> = vec![Vec::new(); space.len()];
    for sum in &signed_sums(n, r).sums {
        let last = sum.last_index().expect("nontrivial sums only");
        checks[last as usize].push(sum.clone());
    }
    let alphabet: &[Sign] = if options.uniform_only {
        &[Sign::Plus, Sign::Minus]
    } else {
        &Sign::ALL
    };
    let nodes = AtomicU64::new(0);
    let search = Search {
        space: &space,
        n,
        r,
        checks,
        alphabet,
        nodes: &nodes,
        node_limit: options.node_limit,
    };
    let mut root = State {
        signs: vec![Sign::Zero; space.len()],
        nonzero_count: vec![0; n],
        depth: 0,
    };
    let mut found: Vec<Chirotope> = Vec::new();
    if options.parallel && space.len() > 8 {
        let mut frontier = Vec::new();
        search.frontier(&mut root, space.len() / 3, &mut frontier)?;
        let parts: Vec<Result<Vec<Chirotope>>> = frontier
            .into_par_iter()
            .map(|mut state| {
                let mut out = Vec::new();
                if state.depth == space.len() {
                    search.leaf(&state, &mut out);
                } else {
                    search.dfs(&mut state, &mut out)?;
                }
                Ok(out)
            })
            .collect();
        for part in parts {
            found.extend(part?);
        }
    } else {
        search.dfs(&mut root, &mut found)?;
    }
    let mut representatives: Vec<String> = found.iter().map(|c| sign_string(c.signs())).collect();
    representatives.sort();
    representatives.dedup();
    let uniform_class_count = representatives.iter().filter(|s| !s.contains('0')).count();
    Ok(EnumerationReport {
        n,
        r,
        class_count: representatives.len(),
        uniform_class_count,
        representatives,
        nodes: nodes.load(Ordering::Relaxed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cells() {
        for (n, r, classes, uniform) in [(3, 3, 1, 1), (4, 3, 2, 1), (5, 3, 4, 1), (4, 2, 1, 1), (5, 4, 3, 1)] {
            let rep = enumerate_classes(n, r, false).unwrap();
            assert_eq!((rep.class_count, rep.uniform_class_count), (classes, uniform), "OM({r},{n})");
        }
    }

    #[test]
    fn uniform_only_mode() {
        let rep = enumerate_classes(5, 3, true).unwrap();
        assert_eq!(rep.class_count, 1);
        assert_eq!(rep.representatives, vec!["++++++++++".to_string()]);
    }

    #[test]
    fn node_limit_is_enforced() {
        let opts = EnumerationOptions {
            node_limit: Some(10),
            ..EnumerationOptions::default()
        };
        assert!(matches!(
            enumerate_with(6, 3, &opts),
            Err(Error::NodeLimitExceeded { limit: 10 })
        ));
    }
}
