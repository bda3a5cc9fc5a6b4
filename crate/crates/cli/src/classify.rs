//! Resumable batch classification.

use anyhow::Result;
use omreal_core::solve::{class_seed, realize_with_stats, Budget, SolveOutcome};
use omreal_core::symmetry::{canonical_chirotope, Group};
use omreal_core::Chirotope;
use rayon::prelude::*;

use crate::store::{BudgetUsed, Record, Store};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifySummary {
    pub classes: usize,
    pub skipped: usize,
    pub added: usize,
    pub realizable: usize,
    pub unknown: usize,
}

/// Canonical class representatives keyed by `n r signs`, sorted and
/// deduplicated.
pub fn class_keys(classes: &[Chirotope]) -> Vec<(String, Chirotope)> {
    let mut keyed: Vec<(String, Chirotope)> = classes
        .par_iter()
        .map(|chi| {
            let c = canonical_chirotope(chi, Group::Full);
            (c.to_string(), c)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed
}

/// Realizes every class without a final record. Work runs in parallel
/// batches; records are appended in key order, so an interrupted and resumed
/// run leaves the same store as an uninterrupted one.
pub fn run_classify(store: &mut Store, classes: &[Chirotope], budget: &Budget, batch: usize) -> Result<ClassifySummary> {
    let keyed = class_keys(classes);
    let mut summary = ClassifySummary {
        classes: keyed.len(),
        ..ClassifySummary::default()
    };
    let pending: Vec<&(String, Chirotope)> = keyed.iter().filter(|(k, _)| !store.contains(k)).collect();
    summary.skipped = keyed.len() - pending.len();
    for chunk in pending.chunks(batch.max(1)) {
        let results: Vec<_> = chunk
            .par_iter()
            .map(|(key, chi)| {
                let seed = class_seed(&chi.sign_string(), budget.seed);
                let b = Budget { seed, ..budget.clone() };
                realize_with_stats(chi, &b).map(|r| (key, seed, r))
            })
            .collect();
        for item in results {
            let (key, seed, (outcome, stats)) = item?;
            let budget_used = BudgetUsed {
                cost_limit: budget.cost_limit,
                max_cost_limit: budget.max_cost_limit,
                random_trials: budget.random_trials,
                full_branching: budget.full_branching,
                final_cost_limit: stats.cost_limit,
                nodes: stats.nodes,
            };
            let rec = match outcome {
                SolveOutcome::Feasible { realization, .. } => {
                    let v = realization.expect("realize attaches the matrix");
                    summary.realizable += 1;
                    Record {
                        key: key.clone(),
                        status: "realizable".into(),
                        reason: None,
                        witness: Some(store.write_witness(key, &v)?),
                        seed,
                        budget: budget_used,
                    }
                }
                SolveOutcome::Unknown(reason) => {
                    summary.unknown += 1;
                    Record {
                        key: key.clone(),
                        status: "unknown".into(),
                        reason: Some(reason.to_string()),
                        witness: None,
                        seed,
                        budget: budget_used,
                    }
                }
            };
            store.append(rec)?;
            summary.added += 1;
        }
    }
    Ok(summary)
}
