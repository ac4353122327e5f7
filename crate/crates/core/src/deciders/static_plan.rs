//! Plurality and Approval. In both, it is optimal for the briber to have
//! every bribed voter support the best desired candidate `c` and worst for
//! it when every unbribed voter supports the best undesired candidate `h`.
//! So only the total weight of bribed voters matters, and the decision is
//! the OR of two static checks: bribe the current voter or leave it.

use num_bigint::BigUint;
use num_traits::Zero;

use super::knapsack::{knapsack_max_weight_capped, KnapsackItem};
use super::{best_of, complement, wrong_rule, DecideError};
use crate::election::{score_table, Ballot, CandidateSet, Order, Rule};
use crate::obs::{desired_set, validate_obs, Mode, Obs, Remaining, Variant};
use crate::solver::{CurrentMove, SolveOutcome};

/// Points a supporting ballot gives its favourite (`top`) and every other
/// candidate (`rest`).
enum Shape {
    Scoring { top: BigUint, rest: BigUint },
    Approval,
}

/// Decides Plurality, and more generally any scoring vector with
/// `alpha_2 = ... = alpha_m`.
pub fn plurality_decide(obs: &Obs, variant: &Variant, rule: &Rule) -> Result<SolveOutcome, DecideError> {
    let Rule::Scoring(alpha) = rule else {
        return Err(wrong_rule("plurality_decide", format!("expected a scoring rule, got {}", rule.name())));
    };
    let a = alpha.values();
    if a.len() != obs.candidates.len() {
        return Err(wrong_rule("plurality_decide", "scoring vector length differs from the candidate count"));
    }
    if a.len() > 1 && a[1] != a[a.len() - 1] {
        return Err(wrong_rule("plurality_decide", "needs alpha_2 = ... = alpha_m"));
    }
    let shape = match a {
        [] => Shape::Scoring { top: BigUint::zero(), rest: BigUint::zero() },
        [top] => Shape::Scoring { top: top.clone(), rest: top.clone() },
        [top, .., rest] => Shape::Scoring { top: top.clone(), rest: rest.clone() },
    };
    decide(obs, variant, rule, shape)
}

pub fn approval_decide(obs: &Obs, variant: &Variant, rule: &Rule) -> Result<SolveOutcome, DecideError> {
    if *rule != Rule::Approval {
        return Err(wrong_rule("approval_decide", format!("expected approval, got {}", rule.name())));
    }
    decide(obs, variant, rule, Shape::Approval)
}

fn decide(obs: &Obs, variant: &Variant, rule: &Rule, shape: Shape) -> Result<SolveOutcome, DecideError> {
    let res = validate_obs(obs, variant, rule)?;
    let m = obs.candidates.len();
    let desired = desired_set(&obs.goal(variant.mode))?;
    if desired.len() == m {
        return Ok(SolveOutcome::yes(CurrentMove::Leave));
    }
    if desired.is_empty() {
        return Ok(SolveOutcome::no());
    }
    let plan = Plan {
        obs,
        mode: variant.mode,
        shape: &shape,
        undesired: complement(&desired, m),
        desired,
        items: obs
            .future
            .iter()
            .enumerate()
            .map(|(i, v)| KnapsackItem::new(v.price_or_zero(), v.weight_or_one(), i))
            .collect(),
        weighted: variant.weighted,
    };

    let past = score_table(rule, m, &obs.past_votes()).expect("validated").scores().to_vec();
    let current = obs.current.ballot.as_ref().expect("validated");
    let w_u = obs.current.weight_or_one();
    let mut with_u = past.clone();
    for (s, p) in with_u.iter_mut().zip(rule.points(current, m).expect("validated").expect("scores")) {
        *s += p * &w_u;
    }

    if plan.branch(&with_u, &BigUint::zero(), &res)?.is_some() {
        return Ok(SolveOutcome::yes(CurrentMove::Leave));
    }
    let price_u = obs.current.price_or_zero();
    if res.can_bribe(&price_u) {
        if let Some(c) = plan.branch(&past, &w_u, &res.after_bribe(&price_u))? {
            let ballot = match shape {
                Shape::Scoring { .. } => Ballot::Order(Order::with_top(c, m)),
                Shape::Approval => Ballot::Approval((0..m).map(|x| plan.desired.contains(&x)).collect()),
            };
            return Ok(SolveOutcome::yes(CurrentMove::BribeTo(ballot)));
        }
    }
    Ok(SolveOutcome::no())
}

struct Plan<'a> {
    obs: &'a Obs,
    mode: Mode,
    shape: &'a Shape,
    desired: CandidateSet,
    undesired: CandidateSet,
    items: Vec<KnapsackItem>,
    weighted: bool,
}

impl Plan<'_> {
    /// With settled scores `s`, `forced` weight already bribed and `res`
    /// left for the future voters: the candidate bribed voters should
    /// support, if the branch wins.
    fn branch(&self, s: &[BigUint], forced: &BigUint, res: &Remaining) -> Result<Option<usize>, DecideError> {
        let names = &self.obs.candidates;
        let c = best_of(s, self.desired.iter().copied(), names).expect("nonempty");
        let h = best_of(s, self.undesired.iter().copied(), names).expect("nonempty");
        let total: BigUint = self.items.iter().map(|i| &i.weight).sum();
        let bribed_future = max_bribed_weight(&self.items, res, self.weighted)?;
        let unbribed = &total - &bribed_future;
        let bribed = forced + bribed_future;
        let (c_final, h_final) = match self.shape {
            Shape::Scoring { top, rest } => (
                &s[c] + top * &bribed + rest * &unbribed,
                &s[h] + rest * &bribed + top * &unbribed,
            ),
            Shape::Approval => (&s[c] + &bribed, &s[h] + &unbribed),
        };
        let wins = match self.mode {
            Mode::Constructive => c_final >= h_final,
            Mode::Destructive => c_final > h_final,
        };
        Ok(wins.then_some(c))
    }
}

/// Largest total weight of future voters the briber can still afford.
pub(super) fn max_bribed_weight(items: &[KnapsackItem], res: &Remaining, weighted: bool) -> Result<BigUint, DecideError> {
    let n = items.len();
    let count_cap = res.bribes.map_or(n, |b| (b.min(n as u64)) as usize);
    match &res.budget {
        None => {
            let mut w: Vec<&BigUint> = items.iter().map(|i| &i.weight).collect();
            w.sort_unstable_by(|a, b| b.cmp(a));
            Ok(w.into_iter().take(count_cap).sum())
        }
        Some(budget) if !weighted => {
            let mut prices: Vec<&BigUint> = items.iter().map(|i| &i.price).collect();
            prices.sort_unstable();
            let mut spent = BigUint::zero();
            let mut count = 0usize;
            for p in prices {
                if count == count_cap || &(&spent + p) > budget {
                    break;
                }
                spent += p;
                count += 1;
            }
            Ok(BigUint::from(count))
        }
        Some(budget) => Ok(knapsack_max_weight_capped(items, budget, res.bribes.map(|_| count_cap))?.weight),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::candidates;
    use crate::obs::VoterRecord;

    fn ballot(v: &[usize]) -> Ballot {
        Ballot::Order(Order::new(v.to_vec(), v.len()).unwrap())
    }

    fn weighted(k: u64) -> Obs {
        Obs {
            candidates: candidates(["a", "b"]).unwrap(),
            past: vec![VoterRecord::past("p", ballot(&[1, 0]), false).weighted(3u32)],
            current: VoterRecord::current("u", ballot(&[1, 0])).weighted(2u32),
            future: vec![VoterRecord::future("f").weighted(1u32)],
            sigma: Order::identity(2),
            d: 0,
            k: Some(k.into()),
        }
    }

    #[test]
    fn weighted_plurality() {
        let v = Variant::new(Mode::Constructive, false, true);
        let r = Rule::plurality(2);
        assert!(!plurality_decide(&weighted(1), &v, &r).unwrap().decision);
        assert_eq!(
            plurality_decide(&weighted(2), &v, &r).unwrap(),
            SolveOutcome::yes(CurrentMove::BribeTo(ballot(&[0, 1])))
        );
    }

    #[test]
    fn bottom_designated_is_trivial() {
        let mut obs = weighted(0);
        obs.d = 1;
        let v = Variant::new(Mode::Constructive, false, true);
        assert!(plurality_decide(&obs, &v, &Rule::plurality(2)).unwrap().decision);
    }

    #[test]
    fn rejects_other_rules() {
        let v = Variant::new(Mode::Constructive, false, true);
        let borda3 = Rule::borda(3);
        let mut obs = weighted(1);
        obs.candidates = candidates(["a", "b", "c"]).unwrap();
        assert!(matches!(plurality_decide(&obs, &v, &borda3), Err(DecideError::WrongRule { .. })));
        assert!(matches!(approval_decide(&obs, &v, &borda3), Err(DecideError::WrongRule { .. })));
    }

    fn approval_obs(k: u64, u_approves: Vec<bool>) -> Obs {
        Obs {
            candidates: candidates(["a", "b"]).unwrap(),
            past: vec![],
            current: VoterRecord::current("u", Ballot::Approval(u_approves)).weighted(1u32),
            future: vec![VoterRecord::future("f").weighted(1u32)],
            sigma: Order::identity(2),
            d: 0,
            k: Some(k.into()),
        }
    }

    #[test]
    fn approval_examples() {
        let v = Variant::new(Mode::Constructive, false, true);
        // Leaving u and bribing f later ties a with b.
        let out = approval_decide(&approval_obs(1, vec![false, true]), &v, &Rule::Approval).unwrap();
        assert_eq!(out, SolveOutcome::yes(CurrentMove::Leave));
        assert!(!approval_decide(&approval_obs(0, vec![false, true]), &v, &Rule::Approval).unwrap().decision);
        let mut obs = approval_obs(0, vec![false, true]);
        obs.d = 1;
        assert!(approval_decide(&obs, &v, &Rule::Approval).unwrap().decision);
    }
}
