use std::borrow::Borrow;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::{Ballot, CandidateSet, ElectionError, Rule, Vote};

/// Per-candidate totals under a scoring or approval rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScoreTable(Vec<BigUint>);

impl ScoreTable {
    pub fn zeros(m: usize) -> Self {
        ScoreTable(vec![BigUint::zero(); m])
    }

    pub fn from_scores(scores: Vec<BigUint>) -> Self {
        ScoreTable(scores)
    }

    pub fn scores(&self) -> &[BigUint] {
        &self.0
    }

    pub fn score(&self, c: usize) -> &BigUint {
        &self.0[c]
    }

    /// Adds `weight` copies of a ballot worth `points`.
    pub fn add(&mut self, points: &[BigUint], weight: &BigUint) {
        if weight.is_zero() {
            return;
        }
        for (s, p) in self.0.iter_mut().zip(points) {
            if !p.is_zero() {
                *s += p * weight;
            }
        }
    }

    pub fn with_added(&self, points: &[BigUint], weight: &BigUint) -> Self {
        let mut next = self.clone();
        next.add(points, weight);
        next
    }

    /// Candidates attaining the maximum score.
    pub fn winners(&self) -> CandidateSet {
        let Some(best) = self.0.iter().max() else {
            return CandidateSet::new();
        };
        self.0
            .iter()
            .enumerate()
            .filter(|(_, s)| *s == best)
            .map(|(c, _)| c)
            .collect()
    }
}

/// Score of each candidate: the sum over votes of weight times points earned.
pub fn score_table<V: Borrow<Vote>>(rule: &Rule, m: usize, votes: &[V]) -> Result<ScoreTable, ElectionError> {
    rule.check(m)?;
    let mut table = ScoreTable::zeros(m);
    for vote in votes {
        let Vote { ballot, weight, .. } = vote.borrow();
        rule.check_ballot(ballot, m)?;
        if weight.is_zero() {
            continue;
        }
        match (rule, ballot) {
            (Rule::Scoring(alpha), Ballot::Order(order)) => {
                for (&c, a) in order.as_slice().iter().zip(alpha.values()) {
                    if a.is_one() {
                        table.0[c] += weight;
                    } else if !a.is_zero() {
                        table.0[c] += a * weight;
                    }
                }
            }
            (Rule::Approval, Ballot::Approval(bits)) => {
                for (s, _) in table.0.iter_mut().zip(bits).filter(|(_, &b)| b) {
                    *s += weight;
                }
            }
            _ => return Err(ElectionError::BallotKindMismatch("scoring or approval")),
        }
    }
    Ok(table)
}

/// Winners of a scoring or approval election, computed in machine integers.
/// `None` if some total does not fit, in which case the caller falls back to
/// [`score_table`]. Ballots must already be checked.
pub(crate) fn small_winners<V: Borrow<Vote>>(rule: &Rule, m: usize, votes: &[V]) -> Option<CandidateSet> {
    const MAX_M: usize = 16;
    if m > MAX_M {
        return None;
    }
    let mut scores = [0u64; MAX_M];
    for vote in votes {
        let Vote { ballot, weight, .. } = vote.borrow();
        let w = weight.to_u64()?;
        if w == 0 {
            continue;
        }
        match (rule, ballot) {
            (Rule::Scoring(alpha), Ballot::Order(order)) => {
                for (&c, a) in order.as_slice().iter().zip(alpha.values()) {
                    let gain = a.to_u64()?.checked_mul(w)?;
                    scores[c] = scores[c].checked_add(gain)?;
                }
            }
            (Rule::Approval, Ballot::Approval(bits)) => {
                for (s, _) in scores.iter_mut().zip(bits).filter(|(_, &b)| b) {
                    *s = s.checked_add(w)?;
                }
            }
            _ => return None,
        }
    }
    let scores = &scores[..m];
    let best = scores.iter().max()?;
    Some((0..m).filter(|&c| scores[c] == *best).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{Ballot, Order, ScoringVector};

    fn scores(t: &ScoreTable) -> Vec<u64> {
        t.scores().iter().map(|s| s.try_into().unwrap()).collect()
    }

    fn order(v: &[usize]) -> Ballot {
        Ballot::Order(Order::new(v.to_vec(), v.len()).unwrap())
    }

    #[test]
    fn veto_last_place() {
        let t = score_table(&Rule::veto(3), 3, &[Vote::weighted(order(&[0, 1, 2]), 1u32)]).unwrap();
        assert_eq!(scores(&t), vec![1, 1, 0]);
    }

    #[test]
    fn weight_multiplies_points() {
        let rule = Rule::Scoring(ScoringVector::from_u64s(&[2, 1, 0]).unwrap());
        let t = score_table(&rule, 3, &[Vote::weighted(order(&[1, 0, 2]), 3u32)]).unwrap();
        assert_eq!(scores(&t), vec![3, 6, 0]);
    }

    #[test]
    fn approval_no_votes() {
        let t = score_table(&Rule::Approval, 4, &[] as &[Vote]).unwrap();
        assert_eq!(scores(&t), vec![0, 0, 0, 0]);
    }

    #[test]
    fn big_weights_do_not_overflow() {
        let w = BigUint::from(u64::MAX) * BigUint::from(u64::MAX);
        let t = score_table(&Rule::plurality(2), 2, &[Vote::weighted(order(&[0, 1]), w.clone())]).unwrap();
        assert_eq!(t.score(0), &w);
        assert_eq!(t.winners(), [0].into_iter().collect());
    }

    #[test]
    fn small_winners_match_big_or_decline() {
        let rule = Rule::borda(3);
        let votes = [Vote::weighted(order(&[0, 1, 2]), 2u32), Vote::weighted(order(&[1, 2, 0]), 2u32)];
        assert_eq!(small_winners(&rule, 3, &votes), Some(score_table(&rule, 3, &votes).unwrap().winners()));
        let huge = [
            Vote::weighted(order(&[1, 0, 2]), u64::MAX),
            Vote::weighted(order(&[1, 2, 0]), u64::MAX),
            Vote::weighted(order(&[0, 2, 1]), 1u32),
        ];
        assert_eq!(small_winners(&rule, 3, &huge), None);
        assert_eq!(crate::election::winner_set(&rule, &crate::election::candidates(["a", "b", "c"]).unwrap(), &huge).unwrap(), [1].into_iter().collect());
    }

    #[test]
    fn gadget_rule_has_no_scores() {
        let rule = Rule::gadget(0, crate::gadget::GadgetMode::WinOnTrue);
        assert!(score_table(&rule, 2, &[Vote::weighted(order(&[0, 1]), 1u32)]).is_err());
    }
}
