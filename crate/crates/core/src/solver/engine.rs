use std::collections::HashMap;

use rustc_hash::FxHashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{CurrentMove, MovePreference, SolveError, SolveOutcome, StrategyNode};
use crate::election::{enumerate_ballots, Ballot, CandidateSet, EnumerationCaps, Rule, Vote};
use crate::gadget::GadgetContext;
use crate::obs::{desired_set, goal_satisfied, validate_obs, GoalSpec, Mode, Obs, Remaining, Variant};

/// Votes cast so far, abstracted to what the rule can observe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tally {
    /// Score of each candidate.
    Scores(Vec<BigUint>),
    /// Same, when every reachable total fits in a `u64`.
    SmallScores(Vec<u64>),
    /// Ballot class chosen at each position from the current voter on.
    Classes(Vec<u32>),
}

/// Memoization key.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SearchState {
    pub tally: Tally,
    /// Index of the next voter to move (0 is the current voter).
    pub position: usize,
    pub remaining: Remaining,
}

struct Voter {
    name: String,
    weight: BigUint,
    price: BigUint,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Move {
    Leave,
    Bribe(usize),
}

pub(super) struct Engine<'a> {
    ballots: Vec<Ballot>,
    /// Index into `ballots` of each class's first member.
    reps: Vec<usize>,
    /// `points[class]`, for scoring rules.
    points: Vec<Vec<BigUint>>,
    /// `points` and voter weights as `u64`, when the tally is `SmallScores`.
    small_points: Vec<Vec<u64>>,
    small_weights: Vec<u64>,
    gadget: Option<GadgetContext<'a>>,
    voters: Vec<Voter>,
    current_class: usize,
    /// Sum of prices from each position to the end.
    price_suffix: Vec<BigUint>,
    start_tally: Tally,
    start: Remaining,
    goal: GoalSpec,
    desired: Vec<bool>,
    past_votes: Vec<Vote>,
    memo: FxHashMap<SearchState, bool>,
}

impl<'a> Engine<'a> {
    pub(super) fn new(
        obs: &'a Obs,
        variant: &Variant,
        rule: &'a Rule,
        caps: &EnumerationCaps,
    ) -> Result<Self, SolveError> {
        let start = validate_obs(obs, variant, rule)?;
        let m = obs.candidates.len();
        let ballots = enumerate_ballots(rule, m, caps)?;
        let gadget = match rule {
            Rule::Gadget(g) => Some(GadgetContext::new(g.k, g.mode, &obs.candidates)),
            _ => None,
        };
        let signature = |b: &Ballot| -> Vec<BigUint> {
            match &gadget {
                Some(ctx) => ctx
                    .ballot_bits(b.as_order().expect("gadget ballots are orders"))
                    .into_iter()
                    .map(|bit| BigUint::from(u8::from(bit)))
                    .collect(),
                None => rule
                    .points(b, m)
                    .expect("enumerated ballots are valid")
                    .expect("scoring rule"),
            }
        };

        let mut class_of: HashMap<Vec<BigUint>, usize> = HashMap::new();
        let mut reps = Vec::new();
        let mut points = Vec::new();
        for (i, b) in ballots.iter().enumerate() {
            let sig = signature(b);
            class_of.entry(sig.clone()).or_insert_with(|| {
                reps.push(i);
                points.push(sig);
                reps.len() - 1
            });
        }
        let current_ballot = obs.current.ballot.as_ref().expect("validated");
        let current_class = class_of[&signature(current_ballot)];
        if gadget.is_some() {
            points.clear();
        }

        let voters: Vec<Voter> = std::iter::once(&obs.current)
            .chain(&obs.future)
            .map(|v| Voter {
                name: v.name.clone(),
                weight: v.weight_or_one(),
                price: v.price_or_zero(),
            })
            .collect();
        let mut price_suffix = vec![BigUint::zero(); voters.len() + 1];
        for i in (0..voters.len()).rev() {
            price_suffix[i] = &price_suffix[i + 1] + &voters[i].price;
        }

        let past_votes = obs.past_votes();
        let (start_tally, small_points, small_weights) = if gadget.is_some() {
            (Tally::Classes(Vec::new()), Vec::new(), Vec::new())
        } else {
            let scores = crate::election::score_table(rule, m, &past_votes)?.scores().to_vec();
            match small_tally(&scores, &points, &voters) {
                Some((start, sp, sw)) => (Tally::SmallScores(start), sp, sw),
                None => (Tally::Scores(scores), Vec::new(), Vec::new()),
            }
        };
        let goal = obs.goal(variant.mode);
        let desired_ids = desired_set(&goal)?;
        let desired = (0..m).map(|c| desired_ids.contains(&c)).collect();

        Ok(Engine {
            ballots,
            reps,
            points,
            small_points,
            small_weights,
            gadget,
            voters,
            current_class,
            price_suffix,
            start_tally,
            start,
            goal,
            desired,
            past_votes,
            memo: FxHashMap::default(),
        })
    }

    fn classes(&self) -> usize {
        self.reps.len()
    }

    fn rep(&self, class: usize) -> &Ballot {
        &self.ballots[self.reps[class]]
    }

    pub(super) fn solve(&mut self) -> SolveOutcome {
        let tally = self.start_tally.clone();
        let start = self.start.clone();
        match self.first_move(0, self.current_class, &tally, &start, MovePreference::LeaveFirst) {
            Some(mv) => SolveOutcome::yes(self.to_current(mv)),
            None => SolveOutcome::no(),
        }
    }

    pub(super) fn strategy(&mut self, pref: MovePreference) -> Option<StrategyNode> {
        let tally = self.start_tally.clone();
        let start = self.start.clone();
        self.record(0, self.current_class, &tally, &start, pref)
    }

    fn to_current(&self, mv: Move) -> CurrentMove {
        match mv {
            Move::Leave => CurrentMove::Leave,
            Move::Bribe(c) => CurrentMove::BribeTo(self.rep(c).clone()),
        }
    }

    fn record(
        &mut self,
        pos: usize,
        revealed: usize,
        tally: &Tally,
        res: &Remaining,
        pref: MovePreference,
    ) -> Option<StrategyNode> {
        let mv = self.first_move(pos, revealed, tally, res, pref)?;
        let (next, next_res) = self.apply(pos, revealed, mv, tally, res);
        let children = if pos + 1 < self.voters.len() {
            (0..self.classes())
                .map(|r| self.record(pos + 1, r, &next, &next_res, pref))
                .collect::<Option<Vec<_>>>()
                .expect("every reveal has a winning reply")
        } else {
            Vec::new()
        };
        Some(StrategyNode {
            voter: self.voters[pos].name.clone(),
            revealed: self.rep(revealed).clone(),
            choice: self.to_current(mv),
            children,
        })
    }

    fn apply(&self, pos: usize, revealed: usize, mv: Move, tally: &Tally, res: &Remaining) -> (Tally, Remaining) {
        let voter = &self.voters[pos];
        let (class, res) = match mv {
            Move::Leave => (revealed, res.clone()),
            Move::Bribe(c) => (c, res.after_bribe(&voter.price)),
        };
        let tally = match tally {
            Tally::Scores(s) => {
                let mut s = s.clone();
                if !voter.weight.is_zero() {
                    for (x, p) in s.iter_mut().zip(&self.points[class]) {
                        if !p.is_zero() {
                            *x += p * &voter.weight;
                        }
                    }
                }
                Tally::Scores(s)
            }
            Tally::SmallScores(s) => {
                let w = self.small_weights[pos];
                let s = s.iter().zip(&self.small_points[class]).map(|(x, p)| x + p * w).collect();
                Tally::SmallScores(s)
            }
            Tally::Classes(v) => {
                let mut v = v.clone();
                v.push(class as u32);
                Tally::Classes(v)
            }
        };
        (tally, res)
    }

    /// First winning move at `pos` after `revealed` is revealed.
    fn first_move(
        &mut self,
        pos: usize,
        revealed: usize,
        tally: &Tally,
        res: &Remaining,
        pref: MovePreference,
    ) -> Option<Move> {
        let bribable = res.can_bribe(&self.voters[pos].price);
        let bribes = if bribable { self.classes() } else { 0 };
        let moves = (0..=bribes).map(|i| match (pref, i) {
            (MovePreference::LeaveFirst, 0) => Move::Leave,
            (MovePreference::LeaveFirst, i) => Move::Bribe(i - 1),
            (MovePreference::BribeFirst, i) if i == bribes => Move::Leave,
            (MovePreference::BribeFirst, i) => Move::Bribe(i),
        });
        let zero_weight = self.voters[pos].weight.is_zero();
        let mut moves = moves;
        moves.find(|&mv| {
            // A vote of weight 0 is ignored, so bribing it only wastes resources.
            if zero_weight && pref == MovePreference::LeaveFirst && mv != Move::Leave {
                return false;
            }
            let (next, next_res) = self.apply(pos, revealed, mv, tally, res);
            self.value(pos + 1, next, next_res)
        })
    }

    /// Whether the briber wins from the state before voter `pos` is revealed.
    fn value(&mut self, pos: usize, tally: Tally, res: Remaining) -> bool {
        if pos == self.voters.len() {
            return self.leaf(&tally);
        }
        let res = self.canonical(pos, res);
        let key = SearchState { tally, position: pos, remaining: res };
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let reveals = if self.voters[pos].weight.is_zero() { 1 } else { self.classes() };
        let v = (0..reveals).all(|r| {
            self.first_move(pos, r, &key.tally, &key.remaining, MovePreference::LeaveFirst)
                .is_some()
        });
        self.memo.insert(key, v);
        v
    }

    /// Clamps resources that exceed what the remaining voters can use.
    fn canonical(&self, pos: usize, mut res: Remaining) -> Remaining {
        let left = (self.voters.len() - pos) as u64;
        if let Some(n) = res.bribes.as_mut() {
            *n = (*n).min(left);
        }
        if let Some(b) = res.budget.as_mut() {
            if *b > self.price_suffix[pos] {
                *b = self.price_suffix[pos].clone();
            }
        }
        res
    }

    fn leaf(&self, tally: &Tally) -> bool {
        match tally {
            Tally::Scores(s) => {
                let Some(max) = s.iter().max() else {
                    return goal_satisfied(&self.goal, &CandidateSet::new());
                };
                let mut winners = s.iter().enumerate().filter(|(_, x)| *x == max).map(|(c, _)| c);
                match self.goal.mode {
                    Mode::Constructive => winners.any(|c| self.desired[c]),
                    Mode::Destructive => winners.all(|c| self.desired[c]),
                }
            }
            Tally::SmallScores(s) => {
                let max = s.iter().max().copied().unwrap_or(0);
                let mut winners = s.iter().enumerate().filter(|(_, &x)| x == max).map(|(c, _)| c);
                match self.goal.mode {
                    Mode::Constructive => winners.any(|c| self.desired[c]),
                    Mode::Destructive => winners.all(|c| self.desired[c]),
                }
            }
            Tally::Classes(classes) => {
                let mut votes = self.past_votes.clone();
                for (voter, &class) in self.voters.iter().zip(classes) {
                    votes.push(Vote::new(voter.name.clone(), self.rep(class as usize).clone(), voter.weight.clone()));
                }
                let ctx = self.gadget.as_ref().expect("class tallies come from the gadget rule");
                goal_satisfied(&self.goal, &ctx.eval(&votes))
            }
        }
    }

}

/// Past scores, class points and voter weights as `u64`, if no total the
/// game can reach overflows.
fn small_tally(scores: &[BigUint], points: &[Vec<BigUint>], voters: &[Voter]) -> Option<(Vec<u64>, Vec<Vec<u64>>, Vec<u64>)> {
    let start: Vec<u64> = scores.iter().map(ToPrimitive::to_u64).collect::<Option<_>>()?;
    let small_points: Vec<Vec<u64>> = points
        .iter()
        .map(|p| p.iter().map(ToPrimitive::to_u64).collect::<Option<_>>())
        .collect::<Option<_>>()?;
    let weights: Vec<u64> = voters.iter().map(|v| v.weight.to_u64()).collect::<Option<_>>()?;
    let top = small_points.iter().flatten().copied().max().unwrap_or(0);
    let mut bound = start.iter().copied().max().unwrap_or(0);
    for &w in &weights {
        bound = bound.checked_add(top.checked_mul(w)?)?;
    }
    Some((start, small_points, weights))
}
