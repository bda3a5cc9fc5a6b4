mod common;

use common::random_systems::{ample_budget, sweep, RawSystem};
use common::{all_classes, classes};
use num_bigint::BigInt;
use num_rational::BigRational;
use omreal_core::polysys::{Assignment, PolySystem, Witness};
use omreal_core::solve::{
    branch_eliminate_e1, eliminable_vars, realize, reconstruct_witness, sol, Budget, Rule, SolveOutcome,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_systems_are_solved_soundly() {
    let s = sweep(300, 7, &ample_budget());
    eprintln!("{s:?}");
    assert_eq!(s.violations, 0);
    assert_eq!(s.misses, 0);
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn grid(vars: &[u32], k: i64, d: i64) -> Vec<Assignment> {
    let mut out = vec![Assignment::new()];
    for &v in vars {
        out = out
            .into_iter()
            .flat_map(|a| {
                (1..=k).map(move |i| {
                    let mut b = a.clone();
                    b.insert(v, q(i, d));
                    b
                })
            })
            .collect();
    }
    out
}

fn satisfied(sys: &PolySystem, a: &Assignment) -> bool {
    sys.constraints.iter().all(|c| c.holds(a).unwrap())
}

/// Projection of the parent's solutions is the union of the children's, and
/// every child solution lifts back through its step.
#[test]
fn e1_branches_partition_the_projection() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for _ in 0..400 {
        let raw = RawSystem::random(&mut rng);
        let sys: PolySystem = raw.text().parse().unwrap();
        for (y, rule) in eliminable_vars(&sys) {
            if rule != Rule::E1 {
                continue;
            }
            let children = branch_eliminate_e1(&sys, y, true).unwrap();
            let others: Vec<u32> = sys.variables.iter().copied().filter(|&v| v != y).collect();
            for point in grid(&sys.variables.iter().copied().collect::<Vec<_>>(), 12, 4) {
                if satisfied(&sys, &point) {
                    let mut x = point.clone();
                    x.remove(&y);
                    assert!(
                        children.iter().any(|c| satisfied(&c.system(), &x)),
                        "solution {point:?} lost eliminating x{y} from\n{}",
                        raw.text()
                    );
                }
            }
            for c in &children {
                let csys = c.system();
                for x in grid(&others, 12, 4) {
                    if satisfied(&csys, &x) {
                        let leaf = Witness { assignment: x };
                        let w = reconstruct_witness(&leaf, std::slice::from_ref(&c.step)).unwrap();
                        assert!(sys.is_satisfied_by(&w).unwrap(), "lift failed for\n{}", raw.text());
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100, "only {checked} lifted points");
}

#[test]
fn outcomes_are_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let sys: PolySystem = RawSystem::random(&mut rng).text().parse().unwrap();
        assert_eq!(sol(&sys, &Budget::default()), sol(&sys, &Budget::default()));
    }
    for chi in classes(6, 4) {
        assert_eq!(realize(&chi, &Budget::default()).unwrap(), realize(&chi, &Budget::default()).unwrap());
    }
}

#[test]
fn corrupted_witnesses_are_rejected() {
    for chi in all_classes(6).into_iter().filter(|c| c.r() >= 3) {
        let SolveOutcome::Feasible { realization: Some(v), .. } = realize(&chi, &Budget::default()).unwrap() else {
            panic!("{chi} not realized");
        };
        assert!(v.first_mismatch(&chi).unwrap().is_none());
        // copying a column onto another makes every tuple holding both
        // vanish, which a simple chirotope forbids on some basis
        let mut bad = v.clone();
        for row in 0..chi.r() {
            *bad.entry_mut(row, 1) = v.entry(row, 0).clone();
        }
        let m = bad.first_mismatch(&chi).unwrap().expect("corruption detected");
        assert!(m.found.is_zero(), "{chi}: {m}");
    }
}
