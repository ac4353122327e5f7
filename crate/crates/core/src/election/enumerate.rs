use itertools::Itertools;

use super::{Ballot, ElectionError, Order, Rule};

/// Upper bounds on the number of candidates for which the ballot space is
/// enumerated (`m!` orders, `2^m` approval vectors).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCaps {
    pub max_order_candidates: usize,
    pub max_approval_candidates: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            max_order_candidates: 7,
            max_approval_candidates: 12,
        }
    }
}

impl EnumerationCaps {
    /// Raises the order cap, keeping the approval cap.
    pub fn with_order_cap(mut self, cap: usize) -> Self {
        self.max_order_candidates = cap;
        self
    }
}

/// Every ballot over `m` candidates, in a fixed order: total orders in
/// lexicographic permutation order of candidate indices, approval vectors in
/// increasing binary value (first candidate is the most significant bit).
pub fn enumerate_ballots(
    rule: &Rule,
    m: usize,
    caps: &EnumerationCaps,
) -> Result<Vec<Ballot>, ElectionError> {
    if rule.uses_approval_ballots() {
        if m > caps.max_approval_candidates {
            return Err(ElectionError::EnumerationCapExceeded {
                candidates: m,
                cap: caps.max_approval_candidates,
            });
        }
        Ok((0u64..1 << m)
            .map(|value| {
                Ballot::Approval((0..m).map(|i| value >> (m - 1 - i) & 1 == 1).collect())
            })
            .collect())
    } else {
        if m > caps.max_order_candidates {
            return Err(ElectionError::EnumerationCapExceeded {
                candidates: m,
                cap: caps.max_order_candidates,
            });
        }
        Ok((0..m)
            .permutations(m)
            .map(|p| Ballot::Order(Order(p)))
            .collect())
    }
}
