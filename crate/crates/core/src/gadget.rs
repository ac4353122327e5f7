//! The artificial, name-sensitive election system used by the QBF reduction.
//!
//! The lexicographically smallest candidate name is read as a tiered formula
//! with `2k + 1` tiers. The vote of the voter whose name is the `(i+1)`-st
//! smallest assigns tier `i`: after removing the formula candidate, its `2t`
//! least preferred candidates are read off in pairs, and bit `d` is 0 iff the
//! `(2d-1)`-st least preferred name sorts before the `2d`-th. If the formula
//! evaluates to true everyone wins, otherwise everyone loses. Any malformed
//! input makes everyone lose. [`GadgetMode::LoseOnTrue`] swaps both outcomes.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::election::{Ballot, Candidate, CandidateId, CandidateSet, Order, Vote};
use crate::qbf::tiered::{tiered_parse, TieredFormula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetMode {
    /// Everyone wins iff the decoded assignment satisfies the formula.
    WinOnTrue,
    /// Everyone loses iff the decoded assignment satisfies the formula.
    LoseOnTrue,
}

/// Everything about a gadget election that depends only on `k` and the
/// candidate set.
#[derive(Debug, Clone)]
pub struct GadgetContext<'c> {
    k: u32,
    mode: GadgetMode,
    candidates: &'c [Candidate],
    formula_candidate: Option<CandidateId>,
    formula: Option<TieredFormula>,
    /// Conditions that do not depend on the votes all hold.
    static_ok: bool,
}

impl<'c> GadgetContext<'c> {
    pub fn new(k: u32, mode: GadgetMode, candidates: &'c [Candidate]) -> Self {
        let formula_candidate = (0..candidates.len()).min_by(|&a, &b| candidates[a].cmp(&candidates[b]));
        let formula = formula_candidate.and_then(|c| tiered_parse(candidates[c].name()));
        let static_ok = formula.as_ref().is_some_and(|f| {
            u64::from(f.subscript_one_max()) == 2 * u64::from(k) + 1
                && candidates.len() as u64 >= 1 + 2 * u64::from(f.subscript_two_max())
                && f.tiers_populated()
        });
        GadgetContext { k, mode, candidates, formula_candidate, formula, static_ok }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn formula(&self) -> Option<&TieredFormula> {
        self.formula.as_ref()
    }

    /// The candidate whose name is read as the formula.
    pub fn formula_candidate(&self) -> Option<CandidateId> {
        self.formula_candidate
    }

    fn outcome(&self, satisfied: bool) -> CandidateSet {
        let everyone_wins = match self.mode {
            GadgetMode::WinOnTrue => satisfied,
            GadgetMode::LoseOnTrue => !satisfied,
        };
        if everyone_wins {
            (0..self.candidates.len()).collect()
        } else {
            CandidateSet::new()
        }
    }

    /// Bits an order assigns to a tier. Empty when the candidate set alone
    /// already fixes the outcome, so that all orders are interchangeable.
    pub fn ballot_bits(&self, order: &Order) -> Vec<bool> {
        match (&self.formula, self.formula_candidate) {
            (Some(f), Some(c)) if self.static_ok => {
                let width = f.subscript_two_max() as usize;
                let rest: Vec<CandidateId> =
                    order.as_slice().iter().copied().filter(|&x| x != c).collect();
                let least = |j: usize| rest[rest.len() - j];
                (1..=width)
                    .map(|d| self.candidates[least(2 * d - 1)] >= self.candidates[least(2 * d)])
                    .collect()
            }
            _ => Vec::new(),
        }
    }

    fn order_cmp(&self, a: &Order, b: &Order) -> Ordering {
        let names = |o: &Order| o.as_slice().iter().map(|&c| self.candidates[c].name()).collect::<Vec<_>>();
        names(a).cmp(&names(b))
    }

    /// Winner set for the given votes (weight-0 votes are ignored).
    pub fn eval<V: Borrow<Vote>>(&self, votes: &[V]) -> CandidateSet {
        let Some(formula) = self.formula.as_ref().filter(|_| self.static_ok) else {
            return self.outcome(false);
        };
        // For each voter name, the lexicographically smallest order cast under it.
        let mut by_name: BTreeMap<&str, &Order> = BTreeMap::new();
        for vote in votes.iter().map(Borrow::borrow).filter(|v: &&Vote| !v.weight.is_zero()) {
            let Ballot::Order(order) = &vote.ballot else {
                continue;
            };
            by_name
                .entry(vote.name.as_str())
                .and_modify(|best| {
                    if self.order_cmp(order, best) == Ordering::Less {
                        *best = order;
                    }
                })
                .or_insert(order);
        }
        let tiers = formula.subscript_one_max() as usize;
        if by_name.len() < tiers + 1 {
            return self.outcome(false);
        }
        let bits: Vec<Vec<bool>> = by_name
            .values()
            .skip(1)
            .take(tiers)
            .map(|order| self.ballot_bits(order))
            .collect();
        self.outcome(formula.eval(&bits))
    }
}

/// Winner set of the gadget election with parameter `k`.
pub fn gadget_election_eval<V: Borrow<Vote>>(
    k: u32,
    mode: GadgetMode,
    candidates: &[Candidate],
    votes: &[V],
) -> CandidateSet {
    GadgetContext::new(k, mode, candidates).eval(votes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::candidates;

    fn order_of(names: &[&str], cands: &[Candidate]) -> Ballot {
        Ballot::Order(Order::from_names(names, cands).unwrap())
    }

    // Formula x[1,1] with k = 0; candidates f, f+1, f+2.
    fn setup() -> Vec<Candidate> {
        candidates(["x[1,1]", "x[1,1]+1", "x[1,1]+2"]).unwrap()
    }

    #[test]
    fn unparseable_formula_candidate_means_no_winners() {
        let c = candidates(["junk", "zzz"]).unwrap();
        let votes = vec![
            Vote::new("0", order_of(&["junk", "zzz"], &c), 1u32),
            Vote::new("1", order_of(&["junk", "zzz"], &c), 1u32),
        ];
        assert!(gadget_election_eval(0, GadgetMode::WinOnTrue, &c, &votes).is_empty());
        assert_eq!(gadget_election_eval(0, GadgetMode::LoseOnTrue, &c, &votes).len(), 2);
    }

    #[test]
    fn too_few_voter_names_means_no_winners() {
        let c = setup();
        // The least preferred pair is (+1, +2): "x[1,1]+1" < "x[1,1]+2", so bit 0 (false).
        // Reversed pair gives bit 1 (true).
        let truthy = order_of(&["x[1,1]", "x[1,1]+1", "x[1,1]+2"], &c);
        let one_voter = vec![Vote::new("1", truthy.clone(), 3u32)];
        assert!(gadget_election_eval(0, GadgetMode::WinOnTrue, &c, &one_voter).is_empty());
        let two_voters = vec![
            Vote::new("0", truthy.clone(), 1u32),
            Vote::new("1", truthy, 1u32),
        ];
        assert_eq!(gadget_election_eval(0, GadgetMode::WinOnTrue, &c, &two_voters).len(), 3);
    }

    #[test]
    fn bit_decoding_reads_least_preferred_pair() {
        let c = setup();
        let ctx = GadgetContext::new(0, GadgetMode::WinOnTrue, &c);
        let o = |n: &[&str]| Order::from_names(n, &c).unwrap();
        // least preferred = +2, next = +1: "+2" >= "+1" -> bit 1
        assert_eq!(ctx.ballot_bits(&o(&["x[1,1]", "x[1,1]+1", "x[1,1]+2"])), vec![true]);
        assert_eq!(ctx.ballot_bits(&o(&["x[1,1]+2", "x[1,1]", "x[1,1]+1"])), vec![false]);
    }

    #[test]
    fn lowest_name_vote_is_ignored() {
        let c = setup();
        let t = order_of(&["x[1,1]", "x[1,1]+1", "x[1,1]+2"], &c);
        let f = order_of(&["x[1,1]", "x[1,1]+2", "x[1,1]+1"], &c);
        let votes = |first: &Ballot, second: &Ballot| {
            vec![Vote::new("0", first.clone(), 1u32), Vote::new("1", second.clone(), 1u32)]
        };
        let run = |v: Vec<Vote>| gadget_election_eval(0, GadgetMode::WinOnTrue, &c, &v).len();
        assert_eq!(run(votes(&f, &t)), 3);
        assert_eq!(run(votes(&t, &f)), 0);
    }

    #[test]
    fn duplicate_names_use_smallest_order() {
        let c = setup();
        let t = order_of(&["x[1,1]", "x[1,1]+1", "x[1,1]+2"], &c);
        let f = order_of(&["x[1,1]", "x[1,1]+2", "x[1,1]+1"], &c);
        // Both orders cast under name "1": the smaller one (t, since "+1" < "+2") counts.
        let votes = vec![
            Vote::new("0", t.clone(), 1u32),
            Vote::new("1", f, 1u32),
            Vote::new("1", t, 1u32),
        ];
        assert_eq!(gadget_election_eval(0, GadgetMode::WinOnTrue, &c, &votes).len(), 3);
    }

    #[test]
    fn wrong_tier_count_or_too_few_candidates() {
        let c = setup();
        let t = order_of(&["x[1,1]", "x[1,1]+1", "x[1,1]+2"], &c);
        let votes: Vec<Vote> = (0..4).map(|i| Vote::new(i.to_string(), t.clone(), 1u32)).collect();
        // k = 1 needs three tiers.
        assert!(gadget_election_eval(1, GadgetMode::WinOnTrue, &c, &votes).is_empty());
        // x[1,2] needs at least five candidates.
        let c2 = candidates(["x[1,2]", "x[1,2]+1", "x[1,2]+2"]).unwrap();
        let t2 = order_of(&["x[1,2]", "x[1,2]+1", "x[1,2]+2"], &c2);
        let votes2: Vec<Vote> = (0..2).map(|i| Vote::new(i.to_string(), t2.clone(), 1u32)).collect();
        assert!(gadget_election_eval(0, GadgetMode::WinOnTrue, &c2, &votes2).is_empty());
    }

    #[test]
    fn voter_order_does_not_matter() {
        let c = setup();
        let t = order_of(&["x[1,1]", "x[1,1]+1", "x[1,1]+2"], &c);
        let f = order_of(&["x[1,1]", "x[1,1]+2", "x[1,1]+1"], &c);
        let a = vec![Vote::new("0", f.clone(), 1u32), Vote::new("1", t.clone(), 1u32)];
        let b = vec![Vote::new("1", t, 1u32), Vote::new("0", f, 1u32)];
        assert_eq!(
            gadget_election_eval(0, GadgetMode::WinOnTrue, &c, &a),
            gadget_election_eval(0, GadgetMode::WinOnTrue, &c, &b)
        );
    }
}
