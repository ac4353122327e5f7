//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigUint;
use online_bribery::qbf::{Block, Formula, Qbf, Quantifier};
use online_bribery::{
    candidates, enumerate_ballots, goal_satisfied, score_table, solve_naive, validate_obs, winner_set, Ballot,
    CandidateId, CurrentMove, EnumerationCaps, Obs, Order, Rule, Variant, Vote, VoterRecord,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn names(m: usize) -> Vec<&'static str> {
    ["a", "b", "c", "d", "e"][..m].to_vec()
}

pub fn order(v: &[usize]) -> Ballot {
    Ballot::Order(Order::new(v.to_vec(), v.len()).unwrap())
}

/// Orders with each candidate on top once (enough for Plurality-like rules).
pub fn tops(m: usize) -> Vec<Ballot> {
    (0..m).map(|c| Ballot::Order(Order::with_top(c, m))).collect()
}

/// Orders with each candidate at the bottom once (enough for Veto-like rules).
pub fn bottoms(m: usize) -> Vec<Ballot> {
    (0..m)
        .map(|c| {
            let mut v: Vec<usize> = (0..m).filter(|&x| x != c).collect();
            v.push(c);
            order(&v)
        })
        .collect()
}

pub fn all_orders(m: usize) -> Vec<Ballot> {
    (0..m).permutations(m).map(|p| order(&p)).collect()
}

pub fn all_approvals(m: usize) -> Vec<Ballot> {
    (0u32..1 << m)
        .map(|x| Ballot::Approval((0..m).map(|i| x >> i & 1 == 1).collect()))
        .collect()
}

/// An exhaustive family of instances of one variant. `sigma` is the
/// identity (any other order is a relabelling), ballots are taken from
/// `ballots` (one per class of ballots the rule cannot tell apart) and past
/// voters are listed once per distinct effect: score table, number of
/// bribes and amount spent.
pub struct SweepSpec {
    pub m: usize,
    pub rule: Rule,
    pub variant: Variant,
    pub ballots: Vec<Ballot>,
    /// Past, current and future voters together.
    pub max_voters: usize,
    pub weights: Vec<u32>,
    pub prices: Vec<u32>,
    pub ks: Vec<u32>,
}

#[derive(Clone)]
struct PastType {
    ballot: Ballot,
    weight: u32,
    bribed: bool,
    price: u32,
}

impl SweepSpec {
    fn weights(&self) -> Vec<u32> {
        if self.variant.weighted {
            self.weights.clone()
        } else {
            vec![1]
        }
    }

    fn prices(&self) -> Vec<u32> {
        if self.variant.priced {
            self.prices.clone()
        } else {
            vec![0]
        }
    }

    fn record(&self, mut v: VoterRecord, weight: u32, price: u32) -> VoterRecord {
        if self.variant.weighted {
            v = v.weighted(weight);
        }
        if self.variant.priced {
            v = v.priced(price);
        }
        v
    }

    fn past_types(&self) -> Vec<PastType> {
        let mut out = Vec::new();
        for ballot in &self.ballots {
            for &weight in &self.weights() {
                // An unbribed voter's price never matters.
                out.push(PastType { ballot: ballot.clone(), weight, bribed: false, price: 0 });
                for &price in &self.prices() {
                    out.push(PastType { ballot: ballot.clone(), weight, bribed: true, price });
                }
            }
        }
        out
    }

    /// Distinct past-voter lists, each with the largest number of future
    /// voters it leaves room for.
    fn pasts(&self) -> Vec<(Vec<VoterRecord>, usize)> {
        let types = self.past_types();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for p in 0..self.max_voters {
            for combo in (0..types.len()).combinations_with_replacement(p) {
                let past: Vec<VoterRecord> = combo
                    .iter()
                    .enumerate()
                    .map(|(i, &t)| {
                        let t = &types[t];
                        self.record(VoterRecord::past(format!("p{i}"), t.ballot.clone(), t.bribed), t.weight, t.price)
                    })
                    .collect();
                let votes: Vec<Vote> = past
                    .iter()
                    .map(|v| Vote::weighted(v.ballot.clone().unwrap(), v.weight_or_one()))
                    .collect();
                let scores = score_table(&self.rule, self.m, &votes).unwrap().scores().to_vec();
                let bribed = combo.iter().filter(|&&t| types[t].bribed).count();
                let cost: u32 = combo.iter().filter(|&&t| types[t].bribed).map(|&t| types[t].price).sum();
                if seen.insert((scores, bribed, cost)) {
                    out.push((past, self.max_voters - 1 - p));
                }
            }
        }
        out
    }

    /// Calls `visit` on every legal instance of the family.
    pub fn for_each(&self, mut visit: impl FnMut(&Obs)) -> usize {
        let mut count = 0;
        let wp: Vec<(u32, u32)> = self.weights().into_iter().cartesian_product(self.prices()).collect();
        let cands = candidates(names(self.m)).unwrap();
        for (past, room) in self.pasts() {
            for ballot in &self.ballots {
                for &(w, p) in &wp {
                    let current = self.record(VoterRecord::current("u", ballot.clone()), w, p);
                    for f in 0..=room {
                        for seq in std::iter::repeat(wp.iter()).take(f).multi_cartesian_product() {
                            let future: Vec<VoterRecord> = seq
                                .iter()
                                .enumerate()
                                .map(|(i, &&(w, p))| self.record(VoterRecord::future(format!("f{i}")), w, p))
                                .collect();
                            let mut obs = Obs {
                                candidates: cands.clone(),
                                past: past.clone(),
                                current: current.clone(),
                                future,
                                sigma: Order::identity(self.m),
                                d: 0,
                                k: None,
                            };
                            for &k in &self.ks {
                                obs.k = self.variant.has_k().then(|| BigUint::from(k));
                                // Legality does not depend on d.
                                obs.d = 0;
                                if validate_obs(&obs, &self.variant, &self.rule).is_err() {
                                    continue;
                                }
                                for d in 0..self.m {
                                    obs.d = d;
                                    count += 1;
                                    visit(&obs);
                                }
                            }
                        }
                    }
                }
            }
        }
        count
    }
}

/// Every (rule, ballots, m) the scoring sweeps use for Plurality.
pub fn plurality_specs() -> Vec<SweepSpec> {
    let mut out = Vec::new();
    for m in [2, 3] {
        for variant in Variant::all() {
            out.push(SweepSpec {
                m,
                rule: Rule::plurality(m),
                variant,
                ballots: tops(m),
                max_voters: 4,
                weights: vec![0, 1, 2],
                prices: vec![0, 1, 2],
                ks: vec![0, 1, 2, 3],
            });
        }
    }
    out
}

pub fn approval_specs() -> Vec<SweepSpec> {
    let mut out = Vec::new();
    for m in [1, 2, 3] {
        for variant in Variant::all() {
            out.push(SweepSpec {
                m,
                rule: Rule::Approval,
                variant,
                ballots: all_approvals(m),
                max_voters: 4,
                weights: vec![0, 1, 2],
                prices: vec![0, 1, 2],
                ks: vec![0, 1, 2, 3],
            });
        }
    }
    out
}

/// Borda and Veto over three candidates, unweighted and priced.
pub fn scoring_dp_specs() -> Vec<SweepSpec> {
    let mut out = Vec::new();
    for (rule, ballots) in [(Rule::borda(3), all_orders(3)), (Rule::veto(3), bottoms(3))] {
        for variant in Variant::all().into_iter().filter(|v| v.priced && !v.weighted) {
            out.push(SweepSpec {
                m: 3,
                rule: rule.clone(),
                variant,
                ballots: ballots.clone(),
                max_voters: 4,
                weights: vec![1],
                prices: vec![0, 1, 2],
                ks: vec![0, 1, 2, 3, 4],
            });
        }
    }
    out
}

/// Veto over three candidates, weighted, unpriced and priced.
pub fn veto3_specs() -> Vec<SweepSpec> {
    Variant::all()
        .into_iter()
        .filter(|v| v.weighted)
        .map(|variant| SweepSpec {
            m: 3,
            rule: Rule::veto(3),
            variant,
            ballots: bottoms(3),
            max_voters: 4,
            weights: vec![0, 1, 2, 3],
            prices: vec![0, 1, 2],
            ks: if variant.priced { vec![0, 1, 2, 3, 4] } else { vec![0, 1, 2, 3] },
        })
        .collect()
}

/// Unit prices: an unpriced instance as a priced one with every price 1.
pub fn unit_price(obs: &Obs, variant: &Variant) -> (Obs, Variant) {
    assert!(!variant.priced);
    let mut o = obs.clone();
    for v in o.past.iter_mut().chain(std::iter::once(&mut o.current)).chain(o.future.iter_mut()) {
        v.price = Some(1u32.into());
    }
    (o, Variant { priced: true, ..*variant })
}

/// Unit weights: an unweighted instance as a weighted one with every weight 1.
pub fn unit_weight(obs: &Obs, variant: &Variant) -> (Obs, Variant) {
    assert!(!variant.weighted);
    let mut o = obs.clone();
    for v in o.past.iter_mut().chain(std::iter::once(&mut o.current)).chain(o.future.iter_mut()) {
        v.weight = Some(1u32.into());
    }
    (o, Variant { weighted: true, ..*variant })
}

/// Bribes the last `min(r, n)` of the `n` voters from the current one on,
/// where `r` is the number of bribes left, and lets the adversary fix the
/// other future votes first. Unpriced unweighted instances only.
pub fn bribe_last_oracle(obs: &Obs, variant: &Variant, rule: &Rule, ballots: &[Ballot]) -> bool {
    assert!(!variant.priced && !variant.weighted);
    let res = validate_obs(obs, variant, rule).unwrap();
    let voters: Vec<&VoterRecord> = std::iter::once(&obs.current).chain(&obs.future).collect();
    let n = voters.len();
    let r = res.bribes.unwrap().min(n as u64) as usize;
    let (free, bribed) = voters.split_at(n - r);
    let goal = obs.goal(variant.mode);
    let base: Vec<Vote> = obs
        .past_votes()
        .into_iter()
        .chain(free.first().filter(|_| r < n).map(|u| Vote::new(u.name.clone(), u.ballot.clone().unwrap(), 1u32)))
        .collect();
    let adversarial = if r < n { free.len() - 1 } else { 0 };
    let free_future = if r < n { &free[1..] } else { &free[..0] };
    debug_assert_eq!(free_future.len(), adversarial);
    std::iter::repeat(ballots.iter())
        .take(adversarial)
        .multi_cartesian_product()
        .all(|adv: Vec<&Ballot>| {
            std::iter::repeat(ballots.iter())
                .take(bribed.len())
                .multi_cartesian_product()
                .any(|mine: Vec<&Ballot>| {
                    let mut votes = base.clone();
                    votes.extend(free_future.iter().zip(&adv).map(|(v, b)| Vote::new(v.name.clone(), (*b).clone(), 1u32)));
                    votes.extend(bribed.iter().zip(&mine).map(|(v, b)| Vote::new(v.name.clone(), (*b).clone(), 1u32)));
                    goal_satisfied(&goal, &winner_set(rule, &obs.candidates, &votes).unwrap())
                })
        })
}

/// A random QBF. `prefix` gives the quantifier of each block; blocks get
/// `1..=max_block` variables, at least one of which occurs in the matrix.
pub fn random_qbf(rng: &mut impl Rng, prefix: &[Quantifier], max_block: usize) -> Qbf {
    let mut names = Vec::new();
    let mut blocks = Vec::new();
    for &q in prefix {
        let size = rng.gen_range(1..=max_block);
        let vars: Vec<usize> = (names.len()..names.len() + size).collect();
        names.extend(vars.iter().map(|v| format!("v{v}")));
        blocks.push(Block { quantifier: q, vars });
    }
    let mut leaves: Vec<usize> = blocks.iter().map(|b: &Block| *b.vars.choose(rng).unwrap()).collect();
    for _ in 0..rng.gen_range(0..=names.len()) {
        leaves.push(rng.gen_range(0..names.len()));
    }
    leaves.shuffle(rng);
    let mut parts: Vec<Formula<usize>> = leaves
        .into_iter()
        .map(|v| if rng.gen_bool(0.35) { Formula::not(Formula::var(v)) } else { Formula::var(v) })
        .collect();
    while parts.len() > 1 {
        let i = rng.gen_range(0..parts.len() - 1);
        let a = parts.remove(i);
        let b = parts.remove(i);
        let mut f = if rng.gen_bool(0.5) { Formula::and(a, b) } else { Formula::or(a, b) };
        if rng.gen_bool(0.15) {
            f = Formula::not(f);
        }
        parts.insert(i, f);
    }
    Qbf::new(names, blocks, parts.pop().unwrap()).unwrap()
}

/// `A E A ... A` with `2k + 1` blocks.
pub fn a_form(k: usize) -> Vec<Quantifier> {
    (0..2 * k + 1)
        .map(|i| if i % 2 == 0 { Quantifier::Forall } else { Quantifier::Exists })
        .collect()
}

/// Truth of a QBF from its truth table: fold the table one variable at a
/// time, innermost first.
pub fn truth_table_eval(q: &Qbf) -> bool {
    let order: Vec<(Quantifier, usize)> = q
        .blocks()
        .iter()
        .flat_map(|b| b.vars.iter().map(move |&v| (b.quantifier, v)))
        .collect();
    let n = order.len();
    // Row r assigns order[i] the bit i of r (most significant = outermost).
    let mut table: Vec<bool> = (0u32..1 << n)
        .map(|r| {
            let mut value = vec![false; q.num_vars()];
            for (i, &(_, v)) in order.iter().enumerate() {
                value[v] = r >> (n - 1 - i) & 1 == 1;
            }
            q.matrix().eval(&|&v| value[v])
        })
        .collect();
    for &(quant, _) in order.iter().rev() {
        table = table
            .chunks(2)
            .map(|pair| match quant {
                Quantifier::Forall => pair[0] && pair[1],
                Quantifier::Exists => pair[0] || pair[1],
            })
            .collect();
    }
    table[0]
}

/// Whether some split of `s` has equal halves, by trying every subset.
pub fn partition_brute(s: &[u32]) -> bool {
    let total: u32 = s.iter().sum();
    (0u32..1 << s.len()).any(|mask| {
        2 * (0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).sum::<u32>() == total
    })
}

/// Outcome of manipulation: whether some choice of manipulator ballots
/// achieves the goal.
pub fn manipulation_brute(
    rule: &Rule,
    cands: &[online_bribery::Candidate],
    nonmanipulators: &[Vote],
    manipulators: &[BigUint],
    ballots: &[Ballot],
    accept: impl Fn(&online_bribery::CandidateSet) -> bool,
) -> bool {
    std::iter::repeat(ballots.iter())
        .take(manipulators.len())
        .multi_cartesian_product()
        .any(|choice| {
            let mut votes = nonmanipulators.to_vec();
            votes.extend(choice.iter().zip(manipulators).map(|(b, w)| Vote::weighted((*b).clone(), w.clone())));
            accept(&winner_set(rule, cands, &votes).unwrap())
        })
}

pub fn sole(c: CandidateId) -> impl Fn(&online_bribery::CandidateSet) -> bool {
    move |w| w.len() == 1 && w.contains(&c)
}

/// A random legal instance over the first `m` names with 1 to `max_voters`
/// voters. Weights and prices lie in `0..=max_attr`, `k` in `0..=max_k`.
pub fn random_obs(
    rng: &mut impl Rng,
    variant: &Variant,
    m: usize,
    ballots: &[Ballot],
    max_voters: usize,
    max_attr: u32,
    max_k: u32,
) -> Obs {
    let n = rng.gen_range(1..=max_voters);
    let past_n = rng.gen_range(0..n);
    let k = variant.has_k().then(|| BigUint::from(rng.gen_range(0..=max_k)));
    let attrs = |mut v: VoterRecord, rng: &mut dyn rand::RngCore| {
        if variant.priced {
            v.price = Some(rng.gen_range(0..=max_attr).into());
        }
        if variant.weighted {
            v.weight = Some(rng.gen_range(0..=max_attr).into());
        }
        v
    };
    let (mut count, mut cost) = (0u64, BigUint::default());
    let mut past = Vec::new();
    for i in 0..past_n {
        let mut v = attrs(VoterRecord::past(format!("p{i}"), ballots.choose(rng).unwrap().clone(), false), rng);
        let price = if variant.priced { v.price_or_zero() } else { BigUint::from(1u32) };
        let fits = variant.bribe_cap.map_or(true, |c| count < c) && k.as_ref().map_or(true, |k| &cost + &price <= *k);
        if fits && rng.gen_bool(0.3) {
            v.bribed = Some(true);
            count += 1;
            cost += price;
        }
        past.push(v);
    }
    let current = attrs(VoterRecord::current("u", ballots.choose(rng).unwrap().clone()), rng);
    let future = (0..n - past_n - 1).map(|i| attrs(VoterRecord::future(format!("f{i}")), rng)).collect();
    let mut sigma: Vec<usize> = (0..m).collect();
    sigma.shuffle(rng);
    Obs {
        candidates: candidates(names(m)).unwrap(),
        past,
        current,
        future,
        sigma: Order::new(sigma, m).unwrap(),
        d: rng.gen_range(0..m),
        k,
    }
}

/// Whether `mv` is legal for the current voter and keeps the briber winning:
/// the goal holds if it was the last voter, and otherwise every reveal of the
/// next voter leaves a yes-instance for `solve_naive`.
pub fn move_wins(obs: &Obs, variant: &Variant, rule: &Rule, mv: &CurrentMove) -> bool {
    let remaining = validate_obs(obs, variant, rule).unwrap();
    let mut settled = obs.current.clone();
    match mv {
        CurrentMove::Leave => settled.bribed = Some(false),
        CurrentMove::BribeTo(b) => {
            if !remaining.can_bribe(&obs.current.price_or_zero()) || rule.check_ballot(b, obs.candidates.len()).is_err() {
                return false;
            }
            settled.ballot = Some(b.clone());
            settled.bribed = Some(true);
        }
    }
    let mut past = obs.past.clone();
    past.push(settled);
    match obs.future.split_first() {
        None => {
            let votes = Obs { past, ..obs.clone() }.past_votes();
            goal_satisfied(&obs.goal(variant.mode), &winner_set(rule, &obs.candidates, &votes).unwrap())
        }
        Some((next, rest)) => enumerate_ballots(rule, obs.candidates.len(), &EnumerationCaps::default())
            .unwrap()
            .into_iter()
            .all(|b| {
                let current = VoterRecord { ballot: Some(b), ..next.clone() };
                let o = Obs { past: past.clone(), current, future: rest.to_vec(), ..obs.clone() };
                solve_naive(&o, variant, rule).unwrap()
            }),
    }
}
