//! Random integer systems in up to three positive variables and a dense
//! rational grid oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Exponent vectors of total degree at most 2 in three variables.
fn monomials(vars: usize) -> Vec<[u32; 3]> {
    let mut out = vec![[0, 0, 0]];
    for i in 0..vars {
        let mut e = [0; 3];
        e[i] = 1;
        out.push(e);
    }
    for i in 0..vars {
        for j in i..vars {
            let mut e = [0; 3];
            e[i] += 1;
            e[j] += 1;
            out.push(e);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct RawSystem {
    pub vars: usize,
    /// Each constraint `Σ c·x^e > 0`.
    pub constraints: Vec<Vec<(i64, [u32; 3])>>,
}

impl RawSystem {
    pub fn random(rng: &mut ChaCha8Rng) -> RawSystem {
        let vars = rng.gen_range(1..=3);
        let count = rng.gen_range(1..=5);
        let mons = monomials(vars);
        let constraints = (0..count)
            .map(|_| loop {
                let mut terms = Vec::new();
                for &e in &mons {
                    if rng.gen_bool(0.45) {
                        let k: i64 = rng.gen_range(-3..=3);
                        if k != 0 {
                            terms.push((k, e));
                        }
                    }
                }
                if !terms.is_empty() {
                    break terms;
                }
            })
            .collect();
        RawSystem { vars, constraints }
    }

    pub fn text(&self) -> String {
        let mut s = String::from("vars");
        for v in 0..self.vars {
            s.push_str(&format!(" x{v}"));
        }
        s.push('\n');
        for c in &self.constraints {
            let terms: Vec<String> = c
                .iter()
                .enumerate()
                .map(|(i, (k, e))| {
                    let mut t = match (i, *k < 0) {
                        (0, _) => format!("{k}"),
                        (_, true) => format!("- {}", -k),
                        (_, false) => format!("+ {k}"),
                    };
                    for (v, &p) in e.iter().enumerate() {
                        for _ in 0..p {
                            t.push_str(&format!(" * x{v}"));
                        }
                    }
                    t
                })
                .collect();
            s.push_str(&terms.join(" "));
            s.push_str(" > 0\n");
        }
        s
    }

    /// Exact sign test at `x = k / D`, scaled by `D^2`.
    pub fn holds_on_grid(&self, k: [i64; 3], d: i64) -> bool {
        self.constraints.iter().all(|c| {
            let total: i64 = c
                .iter()
                .map(|(coef, e)| {
                    let deg: u32 = e.iter().sum();
                    let mut t = coef * d.pow(2 - deg);
                    for v in 0..3 {
                        t *= k[v].pow(e[v]);
                    }
                    t
                })
                .sum();
            total > 0
        })
    }

    pub fn holds_at(&self, x: &[BigRational]) -> bool {
        self.constraints.iter().all(|c| {
            let mut total = BigRational::zero();
            for (coef, e) in c {
                let mut t = BigRational::from_integer(BigInt::from(*coef));
                for v in 0..self.vars {
                    for _ in 0..e[v] {
                        t *= &x[v];
                    }
                }
                total += t;
            }
            total.is_positive()
        })
    }

    /// Grid oracle: `x_i = k_i / 16` with `1 <= k_i <= 64`.
    pub fn grid_point(&self) -> Option<[i64; 3]> {
        const D: i64 = 16;
        const K: i64 = 64;
        let range = |v: usize| if v < self.vars { 1..=K } else { 1..=1 };
        for a in range(0) {
            for b in range(1) {
                for c in range(2) {
                    if self.holds_on_grid([a, b, c], D) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Sweep {
    pub systems: usize,
    pub grid_feasible: usize,
    pub feasible: usize,
    pub violations: usize,
    pub misses: usize,
}

/// Runs `sol` on `count` random systems; a violation is a returned witness
/// that fails the system, a miss an Unknown where the grid has a point.
pub fn sweep(count: usize, seed: u64, budget: &omreal_core::solve::Budget) -> Sweep {
    use omreal_core::polysys::PolySystem;
    use omreal_core::solve::{sol, SolveOutcome};
    use rand::SeedableRng;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Sweep {
        systems: count,
        ..Sweep::default()
    };
    for _ in 0..count {
        let raw = RawSystem::random(&mut rng);
        let sys: PolySystem = raw.text().parse().expect("generated text parses");
        let grid = raw.grid_point();
        s.grid_feasible += usize::from(grid.is_some());
        match sol(&sys, budget) {
            SolveOutcome::Feasible { witness, .. } => {
                s.feasible += 1;
                let x: Vec<BigRational> = (0..raw.vars)
                    .map(|v| witness.get(v as u32).expect("witness covers every variable").clone())
                    .collect();
                if x.iter().any(|v| !v.is_positive()) || !raw.holds_at(&x) {
                    s.violations += 1;
                    eprintln!("invalid witness for\n{}", raw.text());
                }
            }
            SolveOutcome::Unknown(reason) => {
                if let Some(k) = grid {
                    s.misses += 1;
                    eprintln!("missed ({reason}) grid point {k:?}/16 of\n{}", raw.text());
                }
            }
        }
    }
    s
}

/// The budget under which the sweep is expected to be complete.
pub fn ample_budget() -> omreal_core::solve::Budget {
    omreal_core::solve::Budget {
        max_cost_limit: 16,
        random_trials: 20_000,
        full_branching: true,
        ..omreal_core::solve::Budget::default()
    }
}
