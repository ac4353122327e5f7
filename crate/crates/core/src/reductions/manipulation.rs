//! Manipulation to online bribery.
//!
//! The nonmanipulators become unbribed past voters and the manipulators the
//! current and future voters, all of whom the briber can afford.
//!
//! * Part 1: manipulation to unpriced bribery with `k` = number of
//!   manipulators. `sigma` puts the preferred candidate first (constructive)
//!   or the despised one last (destructive); it is also `d`.
//! * Part 2: constructive manipulation in the unique winner model to
//!   destructive bribery with `d` the candidate `sigma` ranks second.
//! * Part 3: manipulation to priced bribery with `k = 0`, manipulators
//!   priced 0 and nonmanipulators priced 1.
//!
//! When there are no manipulators the last nonmanipulator becomes the
//! current voter, and the budget keeps it from being bribed.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Reduction, ReductionError};
use crate::election::{Ballot, Candidate, CandidateId, Order, Rule, Vote};
use crate::obs::{Mode, Obs, Variant, VoterRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ManipGoal {
    /// Make this candidate a winner (the unique winner, in that model).
    Prefer(CandidateId),
    /// Keep this candidate from being a winner.
    Despise(CandidateId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WinnerModel {
    Nonunique,
    Unique,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManipInstance {
    pub candidates: Vec<Candidate>,
    pub nonmanipulators: Vec<Vote>,
    /// Weights of the manipulators, in voting order. All 1 when unweighted.
    pub manipulators: Vec<BigUint>,
    pub weighted: bool,
    pub goal: ManipGoal,
    pub model: WinnerModel,
}

pub fn reduce_manipulation(mi: &ManipInstance, rule: &Rule, part: u8) -> Result<Reduction, ReductionError> {
    let m = mi.candidates.len();
    let bad = |msg: String| ReductionError::MalformedManipulation(msg);
    let incompatible = |reason: &str| ReductionError::IncompatiblePart { part, reason: reason.into() };
    let target = match mi.goal {
        ManipGoal::Prefer(c) | ManipGoal::Despise(c) => c,
    };
    if target >= m {
        return Err(bad(format!("goal candidate {target} out of range")));
    }
    if !mi.weighted
        && (mi.manipulators.iter().any(|w| !w.is_one()) || mi.nonmanipulators.iter().any(|v| !v.weight.is_one()))
    {
        return Err(bad("unweighted instance with a weight other than 1".into()));
    }
    if mi.nonmanipulators.is_empty() && mi.manipulators.is_empty() {
        return Err(bad("no voters".into()));
    }

    let rest = |skip: CandidateId| (0..m).filter(move |&c| c != skip);
    let (mode, sigma, d) = match (part, mi.goal, mi.model) {
        (1 | 3, ManipGoal::Prefer(p), WinnerModel::Nonunique) => {
            (Mode::Constructive, std::iter::once(p).chain(rest(p)).collect::<Vec<_>>(), p)
        }
        (1 | 3, ManipGoal::Despise(x), WinnerModel::Nonunique) => {
            (Mode::Destructive, rest(x).chain(std::iter::once(x)).collect(), x)
        }
        (1 | 3, _, WinnerModel::Unique) => return Err(incompatible("needs the nonunique winner model")),
        (2, ManipGoal::Prefer(p), WinnerModel::Unique) => {
            if m < 2 {
                return Err(incompatible("needs at least two candidates"));
            }
            let sigma: Vec<_> = std::iter::once(p).chain(rest(p)).collect();
            let d = sigma[1];
            (Mode::Destructive, sigma, d)
        }
        (2, _, _) => return Err(incompatible("needs a preferred candidate in the unique winner model")),
        _ => return Err(incompatible("parts are 1, 2 and 3")),
    };
    let priced = part == 3;
    let variant = Variant::new(mode, priced, mi.weighted);

    let mut taken: HashSet<String> = HashSet::new();
    let mut record = |name: &str, mut v: VoterRecord, weight: &BigUint, price: u32| {
        let mut name = name.to_string();
        while !taken.insert(name.clone()) {
            name.push('_');
        }
        v.name = name;
        if mi.weighted {
            v.weight = Some(weight.clone());
        }
        if priced {
            v.price = Some(price.into());
        }
        v
    };
    let mut past: Vec<VoterRecord> = mi
        .nonmanipulators
        .iter()
        .map(|v| record(&v.name, VoterRecord::past("", v.ballot.clone(), false), &v.weight, 1))
        .collect();
    let (current, future) = match mi.manipulators.split_first() {
        Some((first, later)) => {
            let any = if rule.uses_approval_ballots() {
                Ballot::Approval(vec![false; m])
            } else {
                Ballot::Order(Order::identity(m))
            };
            let current = record("manipulator 1", VoterRecord::current("", any), first, 0);
            let future = later
                .iter()
                .enumerate()
                .map(|(i, w)| record(&format!("manipulator {}", i + 2), VoterRecord::future(""), w, 0))
                .collect();
            (current, future)
        }
        None => {
            let last = past.pop().expect("some voter");
            let current = VoterRecord { bribed: None, ..last };
            (current, Vec::new())
        }
    };
    let k = if priced { BigUint::zero() } else { BigUint::from(mi.manipulators.len()) };
    let obs = Obs {
        candidates: mi.candidates.clone(),
        past,
        current,
        future,
        sigma: Order::new(sigma, m).expect("a permutation"),
        d,
        k: Some(k),
    };
    Ok(Reduction { obs, variant, rule: rule.clone() })
}
