//! Partition to priced weighted Plurality over `{d, c}` with `d` preferred.
//!
//! Voter `i` has price and weight `s_i`, the first one is the current voter
//! and votes `c`, and the budget is half the total. The briber must bribe
//! exactly half the weight to `d`. The destructive image designates `c` and
//! adds one unbribed past voter of weight 1 voting `d`.

use num_bigint::BigUint;
use num_traits::Zero;

use super::Reduction;
use crate::election::{candidates, Ballot, Order, Rule};
use crate::obs::{Mode, Obs, Variant, VoterRecord};

/// Total in `s`; an odd total yields the image of `[3, 1]` and an empty list
/// that of `[0]`.
pub fn reduce_partition(s: &[BigUint], mode: Mode) -> Reduction {
    let total: BigUint = s.iter().sum();
    let s: Vec<BigUint> = if total.bit(0) {
        vec![3u32.into(), 1u32.into()]
    } else if s.is_empty() {
        vec![BigUint::zero()]
    } else {
        s.to_vec()
    };
    let half: BigUint = s.iter().sum::<BigUint>() >> 1u32;
    let (d, c) = (0, 1);
    let vote = |x: usize| Ballot::Order(Order::with_top(x, 2));
    let voter = |v: VoterRecord, x: &BigUint| v.priced(x.clone()).weighted(x.clone());
    let past = match mode {
        Mode::Constructive => Vec::new(),
        Mode::Destructive => vec![VoterRecord::past("0", vote(d), false).priced(1u32).weighted(1u32)],
    };
    let obs = Obs {
        candidates: candidates(["d", "c"]).expect("distinct names"),
        past,
        current: voter(VoterRecord::current("1", vote(c)), &s[0]),
        future: s[1..]
            .iter()
            .enumerate()
            .map(|(i, x)| voter(VoterRecord::future((i + 2).to_string()), x))
            .collect(),
        sigma: Order::identity(2),
        d: match mode {
            Mode::Constructive => d,
            Mode::Destructive => c,
        },
        k: Some(half),
    };
    Reduction { obs, variant: Variant::new(mode, true, true), rule: Rule::plurality(2) }
}
