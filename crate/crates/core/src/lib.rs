//! Online bribery in sequential elections.
//!
//! Voters vote one after another. At each voter the briber, knowing the votes
//! cast so far but not the later ones, may pay to replace the current vote.
//! [`solver`] decides the resulting alternating game for any [`Rule`];
//! [`deciders`] holds polynomial and pseudo-polynomial algorithms for
//! Plurality, Approval, Veto over three candidates and unweighted scoring
//! rules; [`reductions`] builds instances from QBF, manipulation and
//! Partition.

pub mod deciders;
pub mod election;
pub mod gadget;
pub mod obs;
pub mod qbf;
pub mod reductions;
pub mod solver;

pub use election::{
    candidates, enumerate_ballots, score_table, winner_set, Ballot, Candidate, CandidateId,
    CandidateSet, ElectionError, EnumerationCaps, GadgetRule, Order, Rule, ScoreTable,
    ScoringVector, Vote,
};
pub use gadget::{gadget_election_eval, GadgetMode};
pub use obs::{
    desired_set, goal_satisfied, spent, validate_obs, GoalSpec, IllegalInstance, Mode, Obs,
    Remaining, Variant, VoterRecord,
};
pub use solver::{solve, solve_naive, CurrentMove, SolveError, SolveOutcome};
