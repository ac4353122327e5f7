//! QBF to online bribery under the gadget rule.
//!
//! The formula is replaced by its guarded cousin, whose matrix in tiered
//! form names the lexicographically smallest candidate `c`. `2 * max block
//! size` filler candidates follow it. Voters `0, 1, ..., 2k+1` vote in that
//! order; the current voter `0` is ignored by the rule, and voter `i` sets
//! the variables of block `i`. The briber ranks candidates anti-
//! lexicographically, `d = c`, and may bribe `k` voters.

use num_bigint::BigUint;

use super::{Reduction, ReductionError};
use crate::election::{Ballot, Candidate, Order, Rule};
use crate::gadget::GadgetMode;
use crate::obs::{Mode, Obs, Variant, VoterRecord};
use crate::qbf::tiered::{tiered_encode, TieredFormula};
use crate::qbf::{cousin_transform, Qbf};

/// How the bribe limit `k` is carried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QbfImage {
    /// Fixed by the problem: an unpriced variant with `bribe_cap = k`.
    Bounded,
    /// Part of the instance: `k` in the OBS.
    Unbounded,
}

/// `q` must be `A E A ... A` with an odd number of blocks, each with a
/// variable occurring in the matrix. Constructive images are yes-instances
/// iff `q` is true; destructive images use [`GadgetMode::LoseOnTrue`] and
/// are yes-instances iff `q` is true as well.
pub fn reduce_qbf(q: &Qbf, mode: Mode, image: QbfImage) -> Result<Reduction, ReductionError> {
    if !q.is_alternating_forall_odd() {
        return Err(ReductionError::MalformedQbf("expected alternating blocks A E ... A, odd in number".into()));
    }
    if !q.all_blocks_occur() {
        return Err(ReductionError::MalformedQbf("some block has no variable in the matrix".into()));
    }
    let k = q.exists_blocks();
    let cousin = cousin_transform(q);
    let c = tiered_encode(&TieredFormula::from_qbf(&cousin));
    let width = cousin.blocks().iter().map(|b| b.vars.len()).max().unwrap_or(0);
    let fillers = 2 * width;
    let digits = fillers.to_string().len();

    let mut names = vec![c.clone()];
    names.extend((1..=fillers).map(|i| format!("{c}+{i:0digits$}")));
    let candidates: Vec<Candidate> = names
        .into_iter()
        .map(|n| Candidate::new(n).expect("nonempty"))
        .collect();
    let m = candidates.len();
    let mut lex: Vec<usize> = (0..m).collect();
    lex.sort_by(|&a, &b| candidates[a].cmp(&candidates[b]));
    let anti_lex: Vec<usize> = lex.iter().rev().copied().collect();

    let voters = 2 * k + 2;
    let width = (voters - 1).to_string().len();
    let name = |i: usize| format!("{i:0width$}");
    let current = VoterRecord::current(name(0), Ballot::Order(Order::new(lex, m).expect("a permutation")));
    let future = (1..voters).map(|i| VoterRecord::future(name(i))).collect();

    let (variant, budget) = match image {
        QbfImage::Bounded => (Variant::new(mode, false, false).with_cap(k as u64), None),
        QbfImage::Unbounded => (Variant::new(mode, false, false), Some(BigUint::from(k))),
    };
    let gadget_mode = match mode {
        Mode::Constructive => GadgetMode::WinOnTrue,
        Mode::Destructive => GadgetMode::LoseOnTrue,
    };
    let obs = Obs {
        candidates,
        past: Vec::new(),
        current,
        future,
        sigma: Order::new(anti_lex, m).expect("a permutation"),
        d: 0,
        k: budget,
    };
    Ok(Reduction { obs, variant, rule: Rule::gadget(k as u32, gadget_mode) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obs::validate_obs;

    #[test]
    fn shape_of_image() {
        let q: Qbf = "A x ; E y ; A z ; (x | y) & (y | z)".parse().unwrap();
        let r = reduce_qbf(&q, Mode::Constructive, QbfImage::Bounded).unwrap();
        validate_obs(&r.obs, &r.variant, &r.rule).unwrap();
        // Blocks grow to two variables each, so four fillers.
        assert_eq!(r.obs.candidates.len(), 5);
        assert_eq!(r.obs.future.len(), 3);
        assert_eq!(r.obs.current.name, "0");
        assert_eq!(r.variant.bribe_cap, Some(1));
        assert_eq!(r.obs.k, None);
        assert_eq!(r.obs.sigma.as_slice().last(), Some(&0));
        let first = r.obs.candidates.iter().min().unwrap();
        assert_eq!(r.obs.candidate_id(first.name()), Some(0));
        let t = crate::qbf::tiered::tiered_parse(first.name()).unwrap();
        assert_eq!((t.subscript_one_max(), t.subscript_two_max()), (3, 2));
        assert!(r.obs.candidates[1..].iter().all(|f| f.name().starts_with(first.name())));
    }

    #[test]
    fn rejects_wrong_prefix() {
        let q: Qbf = "E x ; x".parse().unwrap();
        assert!(matches!(
            reduce_qbf(&q, Mode::Constructive, QbfImage::Bounded),
            Err(ReductionError::MalformedQbf(_))
        ));
        let q: Qbf = "A x ; E y ; A z ; x & z".parse().unwrap();
        assert!(reduce_qbf(&q, Mode::Constructive, QbfImage::Unbounded).is_err());
    }
}
