//! Candidates, ballots, rules and winner determination.
//!
//! Ballots refer to candidates by their index in the election's candidate
//! list. Weighted elections follow multiplicity expansion: a vote of weight
//! `w` behaves like `w` identical unweighted votes, but scores are computed by
//! multiplication rather than by expanding.

mod enumerate;
mod scoring;

use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

pub use enumerate::{enumerate_ballots, EnumerationCaps};
pub use scoring::{score_table, ScoreTable};

use crate::gadget::{gadget_election_eval, GadgetMode};

/// Index of a candidate within an election's candidate list.
pub type CandidateId = usize;

/// A set of candidates, by index.
pub type CandidateSet = BTreeSet<CandidateId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElectionError {
    #[error("candidate names must be nonempty")]
    EmptyCandidateName,
    #[error("duplicate candidate name {0:?}")]
    DuplicateCandidate(String),
    #[error("unknown candidate {0}")]
    UnknownCandidate(String),
    #[error("malformed ballot: {0}")]
    MalformedBallot(String),
    #[error("ballot kind does not match rule {0}")]
    BallotKindMismatch(&'static str),
    #[error("scoring vector has {found} entries but there are {expected} candidates")]
    ScoringLength { expected: usize, found: usize },
    #[error("scoring vector must be nonincreasing")]
    ScoringNotNonincreasing,
    #[error("cannot enumerate ballots over {candidates} candidates (cap {cap})")]
    EnumerationCapExceeded { candidates: usize, cap: usize },
}

/// A candidate name. Names compare bytewise, which is the lexicographic order
/// the gadget rule relies on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Candidate(String);

impl Candidate {
    pub fn new(name: impl Into<String>) -> Result<Self, ElectionError> {
        let name = name.into();
        if name.is_empty() {
            return Err(ElectionError::EmptyCandidateName);
        }
        Ok(Candidate(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Builds a candidate list from names, rejecting empty and repeated names.
pub fn candidates<I, S>(names: I) -> Result<Vec<Candidate>, ElectionError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let list = names
        .into_iter()
        .map(Candidate::new)
        .collect::<Result<Vec<_>, _>>()?;
    check_candidates(&list)?;
    Ok(list)
}

pub(crate) fn check_candidates(list: &[Candidate]) -> Result<(), ElectionError> {
    if list.iter().any(|c| c.0.is_empty()) {
        return Err(ElectionError::EmptyCandidateName);
    }
    match first_duplicate(list.iter().map(Candidate::name)) {
        Some(name) => Err(ElectionError::DuplicateCandidate(name.to_string())),
        None => Ok(()),
    }
}

/// Some name occurring twice, if any.
pub(crate) fn first_duplicate<'a>(names: impl Iterator<Item = &'a str> + Clone) -> Option<&'a str> {
    let mut small = [""; 16];
    let mut n = 0;
    for name in names.clone() {
        if n == small.len() {
            n = usize::MAX;
            break;
        }
        if small[..n].contains(&name) {
            return Some(name);
        }
        small[n] = name;
        n += 1;
    }
    if n != usize::MAX {
        return None;
    }
    let mut sorted: Vec<&str> = names.collect();
    sorted.sort_unstable();
    sorted.windows(2).find(|w| w[0] == w[1]).map(|w| w[0])
}

/// A total order over candidates, most preferred first. Always a
/// permutation of `0..len`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Order(Vec<CandidateId>);

impl Order {
    /// Checks that `ranking` is a permutation of `0..m`.
    pub fn new(ranking: Vec<CandidateId>, m: usize) -> Result<Self, ElectionError> {
        if ranking.len() != m {
            return Err(ElectionError::MalformedBallot(format!(
                "order ranks {} candidates, expected {m}",
                ranking.len()
            )));
        }
        let mut seen = vec![false; m];
        for &c in &ranking {
            if c >= m {
                return Err(ElectionError::UnknownCandidate(format!("#{c}")));
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(ElectionError::MalformedBallot(format!(
                    "candidate #{c} ranked twice"
                )));
            }
        }
        Ok(Order(ranking))
    }

    /// The order `0 > 1 > ... > m-1`.
    pub fn identity(m: usize) -> Self {
        Order((0..m).collect())
    }

    /// Resolves candidate names into an order.
    pub fn from_names<S: AsRef<str>>(
        names: &[S],
        candidates: &[Candidate],
    ) -> Result<Self, ElectionError> {
        let ranking = names
            .iter()
            .map(|n| {
                candidates
                    .iter()
                    .position(|c| c.name() == n.as_ref())
                    .ok_or_else(|| ElectionError::UnknownCandidate(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Order::new(ranking, candidates.len())
    }

    pub fn as_slice(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn top(&self) -> Option<CandidateId> {
        self.0.first().copied()
    }

    pub fn bottom(&self) -> Option<CandidateId> {
        self.0.last().copied()
    }

    /// `rank[c]` is the position of candidate `c` (0 = most preferred).
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.0.len()];
        for (pos, &c) in self.0.iter().enumerate() {
            rank[c] = pos;
        }
        rank
    }

    /// Position of `c`, if ranked.
    pub fn position(&self, c: CandidateId) -> Option<usize> {
        self.0.iter().position(|&x| x == c)
    }

    /// An order that puts `first` on top and the rest in index order.
    pub fn with_top(first: CandidateId, m: usize) -> Self {
        assert!(first < m, "candidate #{first} out of range");
        let mut v = Vec::with_capacity(m);
        v.push(first);
        v.extend((0..m).filter(|&c| c != first));
        Order(v)
    }
}

/// A voter's expressed preference.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ballot {
    Order(Order),
    Approval(Vec<bool>),
}

impl Ballot {
    pub fn as_order(&self) -> Option<&Order> {
        match self {
            Ballot::Order(o) => Some(o),
            Ballot::Approval(_) => None,
        }
    }

    pub fn as_approvals(&self) -> Option<&[bool]> {
        match self {
            Ballot::Approval(a) => Some(a),
            Ballot::Order(_) => None,
        }
    }
}

/// A nonincreasing vector of nonnegative points, one entry per position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScoringVector(Vec<BigUint>);

impl ScoringVector {
    pub fn new(alpha: Vec<BigUint>) -> Result<Self, ElectionError> {
        if alpha.windows(2).any(|w| w[0] < w[1]) {
            return Err(ElectionError::ScoringNotNonincreasing);
        }
        Ok(ScoringVector(alpha))
    }

    pub fn from_u64s(alpha: &[u64]) -> Result<Self, ElectionError> {
        Self::new(alpha.iter().map(|&a| BigUint::from(a)).collect())
    }

    pub fn plurality(m: usize) -> Self {
        Self::from_fn(m, |i| u64::from(i == 0))
    }

    pub fn veto(m: usize) -> Self {
        Self::from_fn(m, |i| u64::from(i + 1 < m))
    }

    pub fn borda(m: usize) -> Self {
        Self::from_fn(m, |i| (m - 1 - i) as u64)
    }

    fn from_fn(m: usize, f: impl Fn(usize) -> u64) -> Self {
        ScoringVector((0..m).map(|i| BigUint::from(f(i))).collect())
    }

    pub fn values(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The gadget rule is parameterised by the number of existential blocks `k`
/// it expects (the encoded formula must have `2k + 1` tiers).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GadgetRule {
    pub k: u32,
    pub mode: GadgetMode,
}

/// A winner-determination function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    Scoring(ScoringVector),
    Approval,
    Gadget(GadgetRule),
}

impl Rule {
    pub fn plurality(m: usize) -> Self {
        Rule::Scoring(ScoringVector::plurality(m))
    }

    pub fn veto(m: usize) -> Self {
        Rule::Scoring(ScoringVector::veto(m))
    }

    pub fn borda(m: usize) -> Self {
        Rule::Scoring(ScoringVector::borda(m))
    }

    pub fn gadget(k: u32, mode: GadgetMode) -> Self {
        Rule::Gadget(GadgetRule { k, mode })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Rule::Scoring(_) => "scoring",
            Rule::Approval => "approval",
            Rule::Gadget(_) => "gadget",
        }
    }

    /// Whether ballots are approval vectors rather than total orders.
    pub fn uses_approval_ballots(&self) -> bool {
        matches!(self, Rule::Approval)
    }

    /// Checks the rule against an election with `m` candidates.
    pub fn check(&self, m: usize) -> Result<(), ElectionError> {
        match self {
            Rule::Scoring(alpha) if alpha.len() != m => Err(ElectionError::ScoringLength {
                expected: m,
                found: alpha.len(),
            }),
            _ => Ok(()),
        }
    }

    pub fn check_ballot(&self, ballot: &Ballot, m: usize) -> Result<(), ElectionError> {
        match (self, ballot) {
            (Rule::Approval, Ballot::Approval(bits)) => {
                if bits.len() != m {
                    return Err(ElectionError::MalformedBallot(format!(
                        "approval vector has length {}, expected {m}",
                        bits.len()
                    )));
                }
                Ok(())
            }
            (Rule::Approval, Ballot::Order(_)) => Err(ElectionError::BallotKindMismatch("approval")),
            (_, Ballot::Order(order)) if order.len() != m => Err(ElectionError::MalformedBallot(format!(
                "order ranks {} candidates, expected {m}",
                order.len()
            ))),
            (_, Ballot::Order(_)) => Ok(()),
            (rule, Ballot::Approval(_)) => Err(ElectionError::BallotKindMismatch(rule.name())),
        }
    }

    /// Points each candidate earns from one unit of `ballot`.
    /// `None` for the gadget rule, which does not score.
    pub fn points(&self, ballot: &Ballot, m: usize) -> Result<Option<Vec<BigUint>>, ElectionError> {
        self.check_ballot(ballot, m)?;
        Ok(match (self, ballot) {
            (Rule::Scoring(alpha), Ballot::Order(order)) => {
                let mut pts = vec![BigUint::zero(); m];
                for (pos, &c) in order.as_slice().iter().enumerate() {
                    pts[c] = alpha.0[pos].clone();
                }
                Some(pts)
            }
            (Rule::Approval, Ballot::Approval(bits)) => {
                Some(bits.iter().map(|&b| BigUint::from(u8::from(b))).collect())
            }
            _ => None,
        })
    }
}

/// One cast vote. The name only matters to name-sensitive rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vote {
    pub name: String,
    pub ballot: Ballot,
    pub weight: BigUint,
}

impl Vote {
    pub fn new(name: impl Into<String>, ballot: Ballot, weight: impl Into<BigUint>) -> Self {
        Vote {
            name: name.into(),
            ballot,
            weight: weight.into(),
        }
    }

    /// An unnamed vote of the given weight.
    pub fn weighted(ballot: Ballot, weight: impl Into<BigUint>) -> Self {
        Vote::new("", ballot, weight)
    }
}

/// Winner set of the election under `rule`. Scoring and Approval winners are
/// the candidates of maximal score (all candidates with zero voters); the
/// gadget rule may return the empty set.
pub fn winner_set<V: Borrow<Vote>>(
    rule: &Rule,
    candidates: &[Candidate],
    votes: &[V],
) -> Result<CandidateSet, ElectionError> {
    rule.check(candidates.len())?;
    match rule {
        Rule::Scoring(_) | Rule::Approval => {
            let m = candidates.len();
            for v in votes {
                rule.check_ballot(&v.borrow().ballot, m)?;
            }
            match scoring::small_winners(rule, m, votes) {
                Some(w) => Ok(w),
                None => Ok(score_table(rule, m, votes)?.winners()),
            }
        }
        Rule::Gadget(g) => {
            for v in votes {
                rule.check_ballot(&v.borrow().ballot, candidates.len())?;
            }
            Ok(gadget_election_eval(g.k, g.mode, candidates, votes))
        }
    }
}
