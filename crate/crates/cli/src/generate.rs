//! Random instances for a given rule and variant.

use num_bigint::BigUint;
use online_bribery::{Ballot, Candidate, Obs, Order, Rule, Variant, VoterRecord};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::document::Instance;

/// Size of generated instances. Weights, prices and `k` are drawn uniformly
/// from `0..=max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    /// Ignored by scoring rules, whose vector fixes the candidate count.
    pub candidates: usize,
    pub past: usize,
    pub future: usize,
    pub max_weight: u32,
    pub max_price: u32,
    pub max_k: u32,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { candidates: 3, past: 1, future: 2, max_weight: 2, max_price: 2, max_k: 3 }
    }
}

/// A valid instance, determined by the arguments. Past voters are marked
/// bribed only while the limits allow it.
pub fn generate_random(rule: &Rule, variant: &Variant, params: &GenParams, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = match rule {
        Rule::Scoring(alpha) => alpha.len(),
        _ => params.candidates.max(1),
    };
    let width = m.to_string().len();
    let candidates: Vec<Candidate> =
        (1..=m).map(|i| Candidate::new(format!("c{i:0width$}")).expect("nonempty")).collect();
    let mut sigma: Vec<usize> = (0..m).collect();
    sigma.shuffle(&mut rng);
    let d = rng.gen_range(0..m);

    let k = variant.has_k().then(|| BigUint::from(rng.gen_range(0..=params.max_k)));
    let ballot = |rng: &mut ChaCha8Rng| {
        if rule.uses_approval_ballots() {
            Ballot::Approval((0..m).map(|_| rng.gen_bool(0.5)).collect())
        } else {
            let mut o: Vec<usize> = (0..m).collect();
            o.shuffle(rng);
            Ballot::Order(Order::new(o, m).expect("a permutation"))
        }
    };
    let voters = params.past + 1 + params.future;
    let width = voters.to_string().len();
    let name = |i: usize| format!("v{:0width$}", i + 1);
    let attrs = |mut v: VoterRecord, rng: &mut ChaCha8Rng| {
        if variant.priced {
            v.price = Some(rng.gen_range(0..=params.max_price).into());
        }
        if variant.weighted {
            v.weight = Some(rng.gen_range(0..=params.max_weight).into());
        }
        v
    };

    let mut count = 0u64;
    let mut cost = BigUint::default();
    let mut past = Vec::with_capacity(params.past);
    for i in 0..params.past {
        let b = ballot(&mut rng);
        let mut v = attrs(VoterRecord::past(name(i), b, false), &mut rng);
        let price = if variant.priced { v.price_or_zero() } else { BigUint::from(1u32) };
        let fits_cap = variant.bribe_cap.map_or(true, |cap| count < cap);
        let fits_k = match &k {
            Some(k) => &cost + &price <= *k,
            None => true,
        };
        if fits_cap && fits_k && rng.gen_bool(1.0 / 3.0) {
            v.bribed = Some(true);
            count += 1;
            cost += price;
        }
        past.push(v);
    }
    let current = attrs(VoterRecord::current(name(params.past), ballot(&mut rng)), &mut rng);
    let future = (0..params.future)
        .map(|i| attrs(VoterRecord::future(name(params.past + 1 + i)), &mut rng))
        .collect();
    let obs = Obs {
        candidates,
        past,
        current,
        future,
        sigma: Order::new(sigma, m).expect("a permutation"),
        d,
        k,
    };
    Instance { obs, variant: *variant, rule: rule.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use online_bribery::validate_obs;

    #[test]
    fn deterministic_and_valid() {
        let p = GenParams::default();
        for v in Variant::all() {
            for seed in 0..50 {
                let a = generate_random(&Rule::plurality(3), &v, &p, seed);
                assert_eq!(a, generate_random(&Rule::plurality(3), &v, &p, seed));
                validate_obs(&a.obs, &a.variant, &a.rule).unwrap();
                let b = generate_random(&Rule::Approval, &v.with_cap(1), &p, seed);
                validate_obs(&b.obs, &b.variant, &b.rule).unwrap();
            }
        }
    }
}
