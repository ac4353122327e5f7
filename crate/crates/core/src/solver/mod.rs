//! Exact evaluation of the online bribery game.
//!
//! The briber moves at the current voter (leave the vote or bribe it to any
//! ballot), then for every voter after it the vote is revealed adversarially
//! and the briber moves again. The instance is a yes-instance iff the briber
//! has a strategy that satisfies the goal against every sequence of revealed
//! votes.
//!
//! [`solve`] memoizes on the tally of cast votes and the remaining resources,
//! and treats ballots that contribute identically as one ballot.
//! [`solve_naive`] recurses over every ballot and recomputes the winner set
//! at every leaf.

mod engine;
mod naive;

use thiserror::Error;

use crate::election::{Ballot, ElectionError, EnumerationCaps, Rule};
use crate::obs::{IllegalInstance, Obs, Remaining, Variant, VoterRecord};

pub use engine::{SearchState, Tally};
pub use naive::solve_naive_with;

/// The briber's choice at one voter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurrentMove {
    Leave,
    BribeTo(Ballot),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub decision: bool,
    /// A winning move for the current voter; present iff `decision`.
    pub action: Option<CurrentMove>,
}

impl SolveOutcome {
    pub fn no() -> Self {
        SolveOutcome { decision: false, action: None }
    }

    pub fn yes(action: CurrentMove) -> Self {
        SolveOutcome { decision: true, action: Some(action) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Illegal(#[from] IllegalInstance),
    #[error(transparent)]
    Election(#[from] ElectionError),
    #[error("naive search needs about {estimate} leaves, cap is {cap}")]
    WorkCapExceeded { estimate: u128, cap: u128 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub caps: EnumerationCaps,
    /// Upper bound on the number of game-tree leaves [`solve_naive`] may visit.
    pub naive_work_cap: u128,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            caps: EnumerationCaps::default(),
            naive_work_cap: 50_000_000,
        }
    }
}

/// Order in which a recorded strategy tries the briber's moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MovePreference {
    /// Leave, then bribes in ballot order (the order [`solve`] reports).
    LeaveFirst,
    /// Bribes in ballot order, then leave.
    BribeFirst,
}

/// One winning strategy, as a tree over revealed votes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyNode {
    pub voter: String,
    pub revealed: Ballot,
    pub choice: CurrentMove,
    /// One subtree per class of interchangeable ballots the next voter may
    /// reveal; empty after the last voter.
    pub children: Vec<StrategyNode>,
}

impl StrategyNode {
    /// Names of bribed voters along every root-to-leaf path.
    pub fn bribed_paths(&self) -> Vec<Vec<String>> {
        let here = matches!(self.choice, CurrentMove::BribeTo(_)).then(|| self.voter.clone());
        let mut paths = if self.children.is_empty() {
            vec![Vec::new()]
        } else {
            self.children.iter().flat_map(StrategyNode::bribed_paths).collect()
        };
        if let Some(name) = here {
            for p in &mut paths {
                p.insert(0, name.clone());
            }
        }
        paths
    }
}

pub fn solve(obs: &Obs, variant: &Variant, rule: &Rule) -> Result<SolveOutcome, SolveError> {
    solve_with(obs, variant, rule, &SolverConfig::default())
}

pub fn solve_with(
    obs: &Obs,
    variant: &Variant,
    rule: &Rule,
    config: &SolverConfig,
) -> Result<SolveOutcome, SolveError> {
    let mut engine = engine::Engine::new(obs, variant, rule, &config.caps)?;
    Ok(engine.solve())
}

/// Records a winning strategy, or `None` for a no-instance.
pub fn winning_strategy(
    obs: &Obs,
    variant: &Variant,
    rule: &Rule,
    config: &SolverConfig,
    preference: MovePreference,
) -> Result<Option<StrategyNode>, SolveError> {
    let mut engine = engine::Engine::new(obs, variant, rule, &config.caps)?;
    Ok(engine.strategy(preference))
}

pub fn solve_naive(obs: &Obs, variant: &Variant, rule: &Rule) -> Result<bool, SolveError> {
    solve_naive_with(obs, variant, rule, &SolverConfig::default())
}

/// Moves available at `voter`, leave first, then a bribe to each ballot in
/// the given order when the resources allow it.
pub fn legal_moves(remaining: &Remaining, voter: &VoterRecord, ballots: &[Ballot]) -> Vec<CurrentMove> {
    let mut moves = vec![CurrentMove::Leave];
    if remaining.can_bribe(&voter.price_or_zero()) {
        moves.extend(ballots.iter().cloned().map(CurrentMove::BribeTo));
    }
    moves
}
