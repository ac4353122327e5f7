//! Unweighted scoring rules by dynamic programming over the score table.
//!
//! `need(pos, scores)` is the least budget with which the briber wins when
//! the voters before `pos` have produced `scores` and `pos` has not been
//! revealed yet: the maximum over revealed ballots of the best reply, where a
//! reply is leaving the vote or paying the voter's price to replace it.
//! Unpriced instances use unit prices and the bribe limit as the budget.
//! Scores are kept relative to their minimum, so there are polynomially many
//! states for a fixed number of candidates.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{wrong_rule, DecideError};
use crate::election::{enumerate_ballots, score_table, Ballot, EnumerationCaps, Rule};
use crate::obs::{desired_set, validate_obs, Mode, Obs, Variant};
use crate::solver::{CurrentMove, SolveOutcome};

pub fn scoring_dp_decide(obs: &Obs, variant: &Variant, rule: &Rule) -> Result<SolveOutcome, DecideError> {
    if !matches!(rule, Rule::Scoring(_)) {
        return Err(wrong_rule("scoring_dp_decide", format!("expected a scoring rule, got {}", rule.name())));
    }
    if variant.weighted {
        return Err(DecideError::WeightedNotSupported);
    }
    let res = validate_obs(obs, variant, rule)?;
    let m = obs.candidates.len();
    let ballots = enumerate_ballots(rule, m, &EnumerationCaps::default())
        .map_err(|e| DecideError::CapExceeded(e.to_string()))?;
    let mut reps: Vec<&Ballot> = Vec::new();
    let mut points: Vec<Vec<BigUint>> = Vec::new();
    for b in &ballots {
        let p = rule.points(b, m).expect("valid").expect("scoring");
        if !points.contains(&p) {
            points.push(p);
            reps.push(b);
        }
    }
    let current = obs.current.ballot.as_ref().expect("validated");
    let u_points = rule.points(current, m).expect("validated").expect("scoring");
    let u_class = points.iter().position(|p| *p == u_points).expect("enumerated");

    let voters: Vec<_> = std::iter::once(&obs.current).chain(&obs.future).collect();
    let (prices, budget, counted): (Vec<BigUint>, BigUint, bool) = if variant.priced {
        (
            voters.iter().map(|v| v.price_or_zero()).collect(),
            res.budget.clone().expect("priced"),
            res.bribes.is_some(),
        )
    } else {
        (vec![BigUint::one(); voters.len()], BigUint::from(res.bribes.expect("unpriced limit")), false)
    };
    let desired_ids = desired_set(&obs.goal(variant.mode))?;
    let mut dp = Dp {
        points,
        prices,
        counted,
        mode: variant.mode,
        desired: (0..m).map(|c| desired_ids.contains(&c)).collect(),
        memo: HashMap::new(),
    };

    let start = normalize(score_table(rule, m, &obs.past_votes()).expect("validated").scores().to_vec());
    let count = res.bribes.unwrap_or(0);
    let leave = dp.need(1, dp.add(&start, u_class), count);
    if leave.as_ref().is_some_and(|x| *x <= budget) {
        return Ok(SolveOutcome::yes(CurrentMove::Leave));
    }
    if !counted || count > 0 {
        for v in 0..dp.points.len() {
            let after = dp.need(1, dp.add(&start, v), count.saturating_sub(1));
            if after.is_some_and(|x| &dp.prices[0] + x <= budget) {
                return Ok(SolveOutcome::yes(CurrentMove::BribeTo(reps[v].clone())));
            }
        }
    }
    Ok(SolveOutcome::no())
}

fn normalize(mut s: Vec<BigUint>) -> Vec<BigUint> {
    if let Some(min) = s.iter().min().cloned() {
        for x in &mut s {
            *x -= &min;
        }
    }
    s
}

struct Dp {
    points: Vec<Vec<BigUint>>,
    /// Price of each voter from the current one on.
    prices: Vec<BigUint>,
    /// Whether the number of bribes is limited on top of the budget.
    counted: bool,
    mode: Mode,
    desired: Vec<bool>,
    memo: HashMap<(usize, Vec<BigUint>, u64), Option<BigUint>>,
}

impl Dp {
    fn add(&self, s: &[BigUint], class: usize) -> Vec<BigUint> {
        normalize(s.iter().zip(&self.points[class]).map(|(a, b)| a + b).collect())
    }

    fn wins(&self, s: &[BigUint]) -> bool {
        let max = s.iter().max().expect("at least one candidate");
        let mut winners = (0..s.len()).filter(|&c| s[c] == *max);
        match self.mode {
            Mode::Constructive => winners.any(|c| self.desired[c]),
            Mode::Destructive => winners.all(|c| self.desired[c]),
        }
    }

    /// Least budget that wins before voter `pos` is revealed; `None` if no
    /// budget does.
    fn need(&mut self, pos: usize, scores: Vec<BigUint>, count: u64) -> Option<BigUint> {
        if pos == self.prices.len() {
            return self.wins(&scores).then(BigUint::zero);
        }
        let count = if self.counted { count.min((self.prices.len() - pos) as u64) } else { 0 };
        let key = (pos, scores, count);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut worst = Some(BigUint::zero());
        for r in 0..self.points.len() {
            match self.reply(pos, &key.1, r, count) {
                None => {
                    worst = None;
                    break;
                }
                Some(x) => worst = worst.map(|w| w.max(x)),
            }
        }
        self.memo.insert(key, worst.clone());
        worst
    }

    fn reply(&mut self, pos: usize, scores: &[BigUint], revealed: usize, count: u64) -> Option<BigUint> {
        let mut best = self.need(pos + 1, self.add(scores, revealed), count);
        if best.as_ref().is_some_and(Zero::is_zero) || (self.counted && count == 0) {
            return best;
        }
        for v in 0..self.points.len() {
            if let Some(x) = self.need(pos + 1, self.add(scores, v), count.saturating_sub(1)) {
                let cost = &self.prices[pos] + x;
                if best.as_ref().map_or(true, |b| cost < *b) {
                    best = Some(cost);
                }
            }
        }
        best
    }
}
