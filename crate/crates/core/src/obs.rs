//! The instance at the moment the briber decides about the current voter:
//! the votes already cast, the current vote, the voters still to come, the
//! briber's preference order and the remaining budget.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::election::{check_candidates, first_duplicate, Ballot, Candidate, CandidateId, CandidateSet, Order, Rule, Vote};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Constructive,
    Destructive,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Constructive => "constructive",
            Mode::Destructive => "destructive",
        })
    }
}

/// Which of the problem variants an instance belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Variant {
    pub mode: Mode,
    pub priced: bool,
    pub weighted: bool,
    /// A bribe-count limit fixed by the problem rather than the instance.
    /// For unpriced variants it replaces `k`; for priced ones it applies on
    /// top of the budget.
    pub bribe_cap: Option<u64>,
}

impl Variant {
    pub fn new(mode: Mode, priced: bool, weighted: bool) -> Self {
        Variant { mode, priced, weighted, bribe_cap: None }
    }

    pub fn with_cap(self, cap: u64) -> Self {
        Variant { bribe_cap: Some(cap), ..self }
    }

    /// All eight (mode, priced, weighted) combinations without a cap.
    pub fn all() -> Vec<Variant> {
        let mut out = Vec::with_capacity(8);
        for mode in [Mode::Constructive, Mode::Destructive] {
            for priced in [false, true] {
                for weighted in [false, true] {
                    out.push(Variant::new(mode, priced, weighted));
                }
            }
        }
        out
    }

    /// Whether the instance carries a `k`.
    pub fn has_k(&self) -> bool {
        self.priced || self.bribe_cap.is_none()
    }
}

/// A voter. Past voters carry `ballot` and `bribed`, the current voter only
/// `ballot`, future voters neither.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoterRecord {
    pub name: String,
    pub price: Option<BigUint>,
    pub weight: Option<BigUint>,
    pub ballot: Option<Ballot>,
    pub bribed: Option<bool>,
}

impl VoterRecord {
    pub fn past(name: impl Into<String>, ballot: Ballot, bribed: bool) -> Self {
        VoterRecord {
            name: name.into(),
            price: None,
            weight: None,
            ballot: Some(ballot),
            bribed: Some(bribed),
        }
    }

    pub fn current(name: impl Into<String>, ballot: Ballot) -> Self {
        VoterRecord {
            name: name.into(),
            price: None,
            weight: None,
            ballot: Some(ballot),
            bribed: None,
        }
    }

    pub fn future(name: impl Into<String>) -> Self {
        VoterRecord {
            name: name.into(),
            price: None,
            weight: None,
            ballot: None,
            bribed: None,
        }
    }

    pub fn priced(mut self, price: impl Into<BigUint>) -> Self {
        self.price = Some(price.into());
        self
    }

    pub fn weighted(mut self, weight: impl Into<BigUint>) -> Self {
        self.weight = Some(weight.into());
        self
    }

    /// Weight, 1 when unweighted.
    pub fn weight_or_one(&self) -> BigUint {
        self.weight.clone().unwrap_or_else(BigUint::one)
    }

    /// Price, 0 when unpriced.
    pub fn price_or_zero(&self) -> BigUint {
        self.price.clone().unwrap_or_default()
    }

    pub fn is_bribed(&self) -> bool {
        self.bribed == Some(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obs {
    pub candidates: Vec<Candidate>,
    pub past: Vec<VoterRecord>,
    pub current: VoterRecord,
    pub future: Vec<VoterRecord>,
    /// The briber's preference order.
    pub sigma: Order,
    pub d: CandidateId,
    /// Bribe limit (unpriced) or budget (priced); absent for unpriced capped
    /// variants.
    pub k: Option<BigUint>,
}

impl Obs {
    pub fn goal(&self, mode: Mode) -> GoalSpec {
        GoalSpec { mode, sigma: self.sigma.clone(), d: self.d }
    }

    pub fn candidate_id(&self, name: &str) -> Option<CandidateId> {
        self.candidates.iter().position(|c| c.name() == name)
    }

    /// Votes already cast, current voter excluded.
    pub fn past_votes(&self) -> Vec<Vote> {
        self.past
            .iter()
            .filter_map(|v| {
                v.ballot
                    .clone()
                    .map(|b| Vote::new(v.name.clone(), b, v.weight_or_one()))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoalSpec {
    pub mode: Mode,
    pub sigma: Order,
    pub d: CandidateId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IllegalInstance {
    #[error("already spent {spent}, limit is {limit}")]
    Overspent { spent: BigUint, limit: BigUint },
    #[error("{count} voters already bribed, cap is {cap}")]
    OverCap { count: u64, cap: u64 },
    #[error("malformed instance: {0}")]
    Malformed(String),
}

fn malformed(msg: impl Into<String>) -> IllegalInstance {
    IllegalInstance::Malformed(msg.into())
}

/// Candidates the briber is happy to see win.
pub fn desired_set(goal: &GoalSpec) -> Result<CandidateSet, IllegalInstance> {
    let pos = goal
        .sigma
        .position(goal.d)
        .ok_or_else(|| malformed("d is not ranked by sigma"))?;
    let end = match goal.mode {
        Mode::Constructive => pos + 1,
        Mode::Destructive => pos,
    };
    Ok(goal.sigma.as_slice()[..end].iter().copied().collect())
}

pub fn goal_satisfied(goal: &GoalSpec, winners: &CandidateSet) -> bool {
    let desired = desired_set(goal).unwrap_or_default();
    match goal.mode {
        Mode::Constructive => !winners.is_disjoint(&desired),
        Mode::Destructive => winners.is_subset(&desired),
    }
}

/// Number of bribed past voters and, when priced, what they cost.
pub fn spent(obs: &Obs, variant: &Variant) -> (u64, Option<BigUint>) {
    let bribed = obs.past.iter().filter(|v| v.is_bribed());
    let count = bribed.clone().count() as u64;
    let cost = variant.priced.then(|| {
        let mut total = BigUint::default();
        for p in bribed.filter_map(|v| v.price.as_ref()) {
            total += p;
        }
        total
    });
    (count, cost)
}

/// What is left to spend at the current voter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Remaining {
    /// Budget left, for priced variants.
    pub budget: Option<BigUint>,
    /// Bribes left, when the number of bribes is limited.
    pub bribes: Option<u64>,
}

impl Remaining {
    /// Whether a voter with this price may be bribed.
    pub fn can_bribe(&self, price: &BigUint) -> bool {
        self.bribes != Some(0) && self.budget.as_ref().map_or(true, |b| price <= b)
    }

    /// Resources after bribing a voter with this price.
    pub fn after_bribe(&self, price: &BigUint) -> Remaining {
        Remaining {
            budget: self.budget.as_ref().map(|b| b - price),
            bribes: self.bribes.map(|n| n - 1),
        }
    }
}

fn saturating_u64(x: &BigUint) -> u64 {
    x.to_u64().unwrap_or(u64::MAX)
}

/// Checks the instance and returns the resources left for the current voter
/// and those after it.
pub fn validate_obs(obs: &Obs, variant: &Variant, rule: &Rule) -> Result<Remaining, IllegalInstance> {
    let m = obs.candidates.len();
    if m == 0 {
        return Err(malformed("no candidates"));
    }
    check_candidates(&obs.candidates).map_err(|e| malformed(e.to_string()))?;
    rule.check(m).map_err(|e| malformed(format!("rule: {e}")))?;
    if obs.sigma.len() != m {
        return Err(malformed(format!("sigma ranks {} candidates, expected {m}", obs.sigma.len())));
    }
    if obs.d >= m {
        return Err(malformed("d is not a candidate"));
    }

    let voters = obs.past.iter().chain(std::iter::once(&obs.current)).chain(&obs.future);
    if let Some(name) = first_duplicate(voters.map(|v| v.name.as_str())) {
        return Err(malformed(format!("duplicate voter name {name:?}")));
    }
    let roles = obs
        .past
        .iter()
        .map(|v| ("past", v))
        .chain(std::iter::once(("current", &obs.current)))
        .chain(obs.future.iter().map(|v| ("future", v)));
    for (role, v) in roles {
        if v.price.is_some() != variant.priced {
            return Err(malformed(format!("{role} voter {:?}: price must be present iff priced", v.name)));
        }
        if v.weight.is_some() != variant.weighted {
            return Err(malformed(format!("{role} voter {:?}: weight must be present iff weighted", v.name)));
        }
        let (needs_ballot, needs_bribed) = match role {
            "past" => (true, true),
            "current" => (true, false),
            _ => (false, false),
        };
        if v.ballot.is_some() != needs_ballot {
            return Err(malformed(format!("{role} voter {:?}: ballot must be {}", v.name, if needs_ballot { "present" } else { "absent" })));
        }
        if v.bribed.is_some() != needs_bribed {
            return Err(malformed(format!("{role} voter {:?}: bribed flag must be {}", v.name, if needs_bribed { "present" } else { "absent" })));
        }
        if let Some(b) = &v.ballot {
            rule.check_ballot(b, m)
                .map_err(|e| malformed(format!("{role} voter {:?}: {e}", v.name)))?;
        }
    }

    if variant.has_k() != obs.k.is_some() {
        return Err(malformed(if variant.has_k() {
            "k is required for this variant"
        } else {
            "k must be absent for unpriced capped variants"
        }));
    }

    let (count, cost) = spent(obs, variant);
    if let Some(cap) = variant.bribe_cap {
        if count > cap {
            return Err(IllegalInstance::OverCap { count, cap });
        }
    }
    let k = obs.k.clone().unwrap_or_default();
    if variant.priced {
        let cost = cost.unwrap_or_default();
        if cost > k {
            return Err(IllegalInstance::Overspent { spent: cost, limit: k });
        }
        Ok(Remaining {
            budget: Some(k - cost),
            bribes: variant.bribe_cap.map(|cap| cap - count),
        })
    } else if let Some(cap) = variant.bribe_cap {
        Ok(Remaining { budget: None, bribes: Some(cap - count) })
    } else {
        if BigUint::from(count) > k {
            return Err(IllegalInstance::Overspent { spent: count.into(), limit: k });
        }
        Ok(Remaining { budget: None, bribes: Some(saturating_u64(&(k - count))) })
    }
}
