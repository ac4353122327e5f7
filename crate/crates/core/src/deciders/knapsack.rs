//! Exact pseudo-polynomial subroutines: maximum-weight bribe sets within a
//! budget, and two-bin splits of a weight multiset.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::DecideError;

/// Largest number of DP cells a knapsack table may use.
pub const KNAPSACK_TABLE_CAP: usize = 1 << 20;
/// Largest total weight the subset-sum table handles.
pub const SUBSET_SUM_CAP: usize = 1 << 24;
/// Largest item count handled by subset enumeration.
pub const ENUMERATION_ITEMS_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackItem {
    pub price: BigUint,
    pub weight: BigUint,
    /// Position of the voter this item stands for.
    pub index: usize,
}

impl KnapsackItem {
    pub fn new(price: impl Into<BigUint>, weight: impl Into<BigUint>, index: usize) -> Self {
        KnapsackItem { price: price.into(), weight: weight.into(), index }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackChoice {
    pub weight: BigUint,
    /// `index` fields of the chosen items, ascending.
    pub chosen: Vec<usize>,
}

pub fn knapsack_max_weight(items: &[KnapsackItem], budget: &BigUint) -> Result<KnapsackChoice, DecideError> {
    knapsack_max_weight_capped(items, budget, None)
}

/// Maximum total weight of a subset with total price at most `budget` and,
/// if given, at most `max_count` items. Among maximizers, items are taken
/// greedily in list order: the first item is in the answer whenever some
/// maximizer contains it, and so on.
pub fn knapsack_max_weight_capped(
    items: &[KnapsackItem],
    budget: &BigUint,
    max_count: Option<usize>,
) -> Result<KnapsackChoice, DecideError> {
    let n = items.len();
    let total: BigUint = items.iter().map(|i| &i.price).sum();
    let budget = budget.min(&total);
    let counts = max_count.map_or(1, |c| c.min(n) + 1);
    let table = budget
        .to_usize()
        .and_then(|b| (b + 1).checked_mul(counts)?.checked_mul(n + 1))
        .filter(|&cells| cells <= KNAPSACK_TABLE_CAP);
    match table {
        Some(_) => Ok(knapsack_dp(items, budget.to_usize().unwrap(), max_count.map(|c| c.min(n)))),
        None if n <= ENUMERATION_ITEMS_CAP => Ok(knapsack_enumerate(items, budget, max_count)),
        None => Err(DecideError::CapExceeded(format!(
            "knapsack over {n} items with budget {budget} exceeds the table cap"
        ))),
    }
}

fn knapsack_dp(items: &[KnapsackItem], budget: usize, max_count: Option<usize>) -> KnapsackChoice {
    let n = items.len();
    let counts = max_count.map_or(1, |c| c + 1);
    let idx = |i: usize, b: usize, c: usize| (i * (budget + 1) + b) * counts + c;
    let mut best = vec![BigUint::zero(); (n + 1) * (budget + 1) * counts];
    let prices: Vec<usize> = items.iter().map(|it| it.price.to_usize().unwrap_or(usize::MAX)).collect();
    // With no count limit the count coordinate is always 0 and never decremented.
    let next_count = |c: usize| if max_count.is_some() { c.checked_sub(1) } else { Some(0) };

    for i in (0..n).rev() {
        for b in 0..=budget {
            for c in 0..counts {
                let mut v = best[idx(i + 1, b, c)].clone();
                if let (true, Some(c2)) = (prices[i] <= b, next_count(c)) {
                    let take = &items[i].weight + &best[idx(i + 1, b - prices[i], c2)];
                    if take > v {
                        v = take;
                    }
                }
                best[idx(i, b, c)] = v;
            }
        }
    }

    let (mut b, mut c) = (budget, counts - 1);
    let mut chosen = Vec::new();
    for i in 0..n {
        if prices[i] > b {
            continue;
        }
        let Some(c2) = next_count(c) else { continue };
        if &items[i].weight + &best[idx(i + 1, b - prices[i], c2)] == best[idx(i, b, c)] {
            chosen.push(items[i].index);
            b -= prices[i];
            c = c2;
        }
    }
    chosen.sort_unstable();
    KnapsackChoice { weight: best[idx(0, budget, counts - 1)].clone(), chosen }
}

fn knapsack_enumerate(items: &[KnapsackItem], budget: &BigUint, max_count: Option<usize>) -> KnapsackChoice {
    let n = items.len();
    let mut best: Option<(BigUint, u32)> = None;
    for mask in 0u32..(1 << n) {
        if max_count.is_some_and(|c| mask.count_ones() as usize > c) {
            continue;
        }
        let members = (0..n).filter(|&i| mask >> i & 1 == 1);
        let price: BigUint = members.clone().map(|i| &items[i].price).sum();
        if &price > budget {
            continue;
        }
        let weight: BigUint = members.map(|i| &items[i].weight).sum();
        // Item 0 is the most significant position of the preference key.
        let key = mask.reverse_bits() >> (32 - n.max(1));
        let better = match &best {
            None => true,
            Some((w, k)) => weight > *w || (weight == *w && key > *k),
        };
        if better {
            best = Some((weight, key));
        }
    }
    let (weight, key) = best.expect("the empty set is always feasible");
    let mask = if n == 0 { 0 } else { key.reverse_bits() >> (32 - n) };
    let mut chosen: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| items[i].index).collect();
    chosen.sort_unstable();
    KnapsackChoice { weight, chosen }
}

/// Every total a sub-multiset of `weights` can reach, ascending.
pub fn subset_sums(weights: &[BigUint]) -> Result<Vec<BigUint>, DecideError> {
    let total: BigUint = weights.iter().sum();
    if let Some(t) = total.to_usize().filter(|&t| t <= SUBSET_SUM_CAP) {
        let mut reach = vec![false; t + 1];
        reach[0] = true;
        let mut hi = 0;
        for w in weights {
            let w = w.to_usize().expect("bounded by total");
            for s in (0..=hi).rev() {
                if reach[s] {
                    reach[s + w] = true;
                }
            }
            hi += w;
        }
        return Ok((0..=t).filter(|&s| reach[s]).map(BigUint::from).collect());
    }
    if weights.len() > ENUMERATION_ITEMS_CAP {
        return Err(DecideError::CapExceeded(format!(
            "subset sums of {} weights totalling {total}",
            weights.len()
        )));
    }
    let mut sums: Vec<BigUint> = (0u32..1 << weights.len())
        .map(|mask| {
            weights
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, w)| w)
                .sum()
        })
        .collect();
    sums.sort();
    sums.dedup();
    Ok(sums)
}

/// Whether the weights can be split into two bins whose totals satisfy
/// `accept(first, second)`.
pub fn partition_feasible(
    weights: &[BigUint],
    accept: impl Fn(&BigUint, &BigUint) -> bool,
) -> Result<bool, DecideError> {
    let total: BigUint = weights.iter().sum();
    Ok(subset_sums(weights)?.iter().any(|s| accept(s, &(&total - s))))
}
