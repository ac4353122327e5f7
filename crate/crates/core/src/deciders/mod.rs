//! Polynomial and pseudo-polynomial deciders for specific rules.
//!
//! Every decider returns the same decision as [`crate::solver::solve`] on the
//! instances it accepts, and on yes-instances a winning move for the current
//! voter (not necessarily the one `solve` reports).

mod dichotomy;
mod knapsack;
mod scoring_dp;
mod static_plan;
mod veto3;

use num_bigint::BigUint;
use thiserror::Error;

use crate::election::{Candidate, CandidateId, CandidateSet, Order};
use crate::obs::IllegalInstance;

pub use dichotomy::{scoring_dichotomy, DichotomyVerdict};
pub use knapsack::{
    knapsack_max_weight, knapsack_max_weight_capped, partition_feasible, subset_sums, KnapsackChoice,
    KnapsackItem, ENUMERATION_ITEMS_CAP, KNAPSACK_TABLE_CAP, SUBSET_SUM_CAP,
};
pub use scoring_dp::scoring_dp_decide;
pub use static_plan::{approval_decide, plurality_decide};
pub use veto3::veto3_decide;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("{decider} does not apply to this rule: {reason}")]
    WrongRule { decider: &'static str, reason: String },
    #[error("weighted instances are not supported by this decider")]
    WeightedNotSupported,
    #[error(transparent)]
    Illegal(#[from] IllegalInstance),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
}

fn wrong_rule(decider: &'static str, reason: impl Into<String>) -> DecideError {
    DecideError::WrongRule { decider, reason: reason.into() }
}

/// Highest-scoring member of `among`, ties broken by smallest name.
fn best_of(scores: &[BigUint], among: impl Iterator<Item = CandidateId>, names: &[Candidate]) -> Option<CandidateId> {
    among.min_by(|&x, &y| scores[y].cmp(&scores[x]).then_with(|| names[x].cmp(&names[y])))
}

fn complement(set: &CandidateSet, m: usize) -> CandidateSet {
    (0..m).filter(|c| !set.contains(c)).collect()
}

/// An order with `last` at the bottom and the rest in index order.
fn order_with_bottom(last: CandidateId, m: usize) -> Order {
    let mut v: Vec<CandidateId> = (0..m).filter(|&c| c != last).collect();
    v.push(last);
    Order::new(v, m).expect("a permutation")
}
