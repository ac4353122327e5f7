//! Veto with three candidates `a >_sigma b >_sigma c`. Scores only depend on
//! how much weight vetoes each candidate, and the winners are the candidates
//! with the least veto weight.
//!
//! * `d = c` constructive: trivially yes. `d = a` destructive: no, since
//!   someone always wins.
//! * `a` must win (`d = a` constructive; uniquely for `d = b` destructive):
//!   unbribed voters veto `a`, so only which voters are bribed matters, and
//!   the bribed ones are split between vetoing `b` and vetoing `c`.
//! * `c` must not win (`d = c` destructive; not uniquely for `d = b`
//!   constructive): bribed voters veto `c` and the adversary splits the
//!   unbribed ones between `a` and `b`.

use num_bigint::BigUint;
use num_traits::Zero;

use super::knapsack::{partition_feasible, KnapsackItem, ENUMERATION_ITEMS_CAP};
use super::{order_with_bottom, wrong_rule, DecideError};
use crate::election::{Ballot, CandidateId, Rule};
use crate::obs::{validate_obs, Mode, Obs, Remaining, Variant};
use crate::solver::{CurrentMove, SolveOutcome};

pub fn veto3_decide(obs: &Obs, variant: &Variant, rule: &Rule) -> Result<SolveOutcome, DecideError> {
    let Rule::Scoring(alpha) = rule else {
        return Err(wrong_rule("veto3_decide", format!("expected a scoring rule, got {}", rule.name())));
    };
    match alpha.values() {
        [x, y, z] if x == y && y > z && obs.candidates.len() == 3 => {}
        _ => return Err(wrong_rule("veto3_decide", "needs three candidates and alpha = (x, x, y) with x > y")),
    }
    let res = validate_obs(obs, variant, rule)?;
    let [a, b, c]: [CandidateId; 3] = obs.sigma.as_slice().try_into().expect("three candidates");
    let d_pos = obs.sigma.position(obs.d).expect("validated");

    let mut vetoes = [BigUint::zero(), BigUint::zero(), BigUint::zero()];
    for v in obs.past_votes() {
        vetoes[v.ballot.as_order().and_then(|o| o.bottom()).expect("validated")] += &v.weight;
    }
    let u_bottom = obs.current.ballot.as_ref().and_then(Ballot::as_order).and_then(|o| o.bottom()).expect("validated");
    let w_u = obs.current.weight_or_one();
    let p_u = obs.current.price_or_zero();
    let mut with_u = vetoes.clone();
    with_u[u_bottom] += &w_u;

    let game = Game {
        items: obs
            .future
            .iter()
            .enumerate()
            .map(|(i, v)| KnapsackItem::new(v.price_or_zero(), v.weight_or_one(), i))
            .collect(),
        weighted: variant.weighted,
        strict: variant.mode == Mode::Destructive,
        abc: [a, b, c],
    };

    let veto = |x: CandidateId| CurrentMove::BribeTo(Ballot::Order(order_with_bottom(x, 3)));
    match (variant.mode, d_pos) {
        (Mode::Constructive, 2) => Ok(SolveOutcome::yes(CurrentMove::Leave)),
        (Mode::Destructive, 0) => Ok(SolveOutcome::no()),
        (Mode::Constructive, 0) | (Mode::Destructive, 1) => {
            if game.top_wins(&with_u, &res)? {
                return Ok(SolveOutcome::yes(CurrentMove::Leave));
            }
            if res.can_bribe(&p_u) {
                let after = res.after_bribe(&p_u);
                for target in [b, c] {
                    let mut v = vetoes.clone();
                    v[target] += &w_u;
                    if game.top_wins(&v, &after)? {
                        return Ok(SolveOutcome::yes(veto(target)));
                    }
                }
            }
            Ok(SolveOutcome::no())
        }
        _ => {
            if game.bottom_loses(&with_u, &res)? {
                return Ok(SolveOutcome::yes(CurrentMove::Leave));
            }
            if res.can_bribe(&p_u) {
                let mut v = vetoes;
                v[c] += &w_u;
                if game.bottom_loses(&v, &res.after_bribe(&p_u))? {
                    return Ok(SolveOutcome::yes(veto(c)));
                }
            }
            Ok(SolveOutcome::no())
        }
    }
}

struct Game {
    items: Vec<KnapsackItem>,
    weighted: bool,
    /// Destructive: `a` must win uniquely, or `c` must not win at all.
    strict: bool,
    abc: [CandidateId; 3],
}

impl Game {
    fn weight_of(&self, set: &[usize]) -> BigUint {
        set.iter().map(|&i| &self.items[i].weight).sum()
    }

    fn total(&self) -> BigUint {
        self.items.iter().map(|i| &i.weight).sum()
    }

    /// `a` ends up (uniquely, if strict) with the least veto weight.
    fn top_wins(&self, v: &[BigUint; 3], res: &Remaining) -> Result<bool, DecideError> {
        let [a, b, c] = self.abc;
        let total = self.total();
        for set in self.bribe_sets(res, false)? {
            let bribed: Vec<BigUint> = set.iter().map(|&i| self.items[i].weight.clone()).collect();
            let lhs = &v[a] + (&total - self.weight_of(&set));
            let ok = |other: BigUint| if self.strict { other > lhs } else { other >= lhs };
            if partition_feasible(&bribed, |x, y| ok(&v[b] + x) && ok(&v[c] + y))? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// However the unbribed voters split between vetoing `a` and `b`, `c`
    /// is not the unique winner (not a winner at all, if strict).
    fn bottom_loses(&self, v: &[BigUint; 3], res: &Remaining) -> Result<bool, DecideError> {
        let [a, b, c] = self.abc;
        for set in self.bribe_sets(res, true)? {
            let vc = &v[c] + self.weight_of(&set);
            let unbribed: Vec<BigUint> = (0..self.items.len())
                .filter(|i| !set.contains(i))
                .map(|i| self.items[i].weight.clone())
                .collect();
            let c_wins = |x: &BigUint, y: &BigUint| {
                let (va, vb) = (&v[a] + x, &v[b] + y);
                if self.strict {
                    vc <= va && vc <= vb
                } else {
                    vc < va && vc < vb
                }
            };
            if !partition_feasible(&unbribed, c_wins)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Sets of future voters worth trying to bribe. Bribing more never hurts
    /// in either case, so only maximal affordable sets are listed; when
    /// weights are equal any one of maximal size will do. With unpriced
    /// weighted voters and bribed voters all vetoing `c`, the heaviest ones
    /// are best.
    fn bribe_sets(&self, res: &Remaining, all_veto_bottom: bool) -> Result<Vec<Vec<usize>>, DecideError> {
        let n = self.items.len();
        let count_cap = res.bribes.map_or(n, |b| b.min(n as u64) as usize);
        let mut order: Vec<usize> = (0..n).collect();
        match (&res.budget, self.weighted) {
            (None, false) => return Ok(vec![order.into_iter().take(count_cap).collect()]),
            (None, true) if all_veto_bottom => {
                order.sort_by(|&x, &y| self.items[y].weight.cmp(&self.items[x].weight));
                return Ok(vec![order.into_iter().take(count_cap).collect()]);
            }
            (Some(budget), false) => {
                order.sort_by(|&x, &y| self.items[x].price.cmp(&self.items[y].price));
                let mut spent = BigUint::zero();
                let mut set = Vec::new();
                for i in order {
                    if set.len() == count_cap || spent.clone() + &self.items[i].price > *budget {
                        break;
                    }
                    spent += &self.items[i].price;
                    set.push(i);
                }
                return Ok(vec![set]);
            }
            _ => {}
        }
        if n > ENUMERATION_ITEMS_CAP {
            return Err(DecideError::CapExceeded(format!("{n} future voters to choose bribes from")));
        }
        let feasible = |mask: u32| {
            mask.count_ones() as usize <= count_cap
                && res.budget.as_ref().map_or(true, |b| {
                    (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| &self.items[i].price).sum::<BigUint>() <= *b
                })
        };
        Ok((0u32..1 << n)
            .filter(|&mask| feasible(mask) && (0..n).all(|i| mask >> i & 1 == 1 || !feasible(mask | 1 << i)))
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
            .collect())
    }
}
