use super::{SolveError, SolverConfig};
use crate::election::{enumerate_ballots, winner_set, Candidate, CandidateSet, Rule, Vote};
use crate::obs::{desired_set, validate_obs, Mode, Obs, Remaining, Variant, VoterRecord};

struct Naive<'a> {
    rule: &'a Rule,
    candidates: &'a [Candidate],
    mode: Mode,
    desired: CandidateSet,
    voters: Vec<&'a VoterRecord>,
    /// `casts[pos][b]`: voter `pos` casting ballot `b`.
    casts: Vec<Vec<Vote>>,
    /// Index of the current voter's own ballot.
    current: usize,
}

impl<'a> Naive<'a> {
    fn win(&'a self, pos: usize, votes: &mut Vec<&'a Vote>, res: &Remaining) -> Result<bool, SolveError> {
        if pos == self.voters.len() {
            let winners = winner_set(self.rule, self.candidates, votes)?;
            return Ok(match self.mode {
                Mode::Constructive => !winners.is_disjoint(&self.desired),
                Mode::Destructive => winners.is_subset(&self.desired),
            });
        }
        let reveals = if pos == 0 { self.current..self.current + 1 } else { 0..self.casts[pos].len() };
        for revealed in reveals {
            if !self.reply(pos, revealed, votes, res)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether some move at `pos` wins once ballot `revealed` is known.
    fn reply(&'a self, pos: usize, revealed: usize, votes: &mut Vec<&'a Vote>, res: &Remaining) -> Result<bool, SolveError> {
        votes.push(&self.casts[pos][revealed]);
        let left = self.win(pos + 1, votes, res);
        votes.pop();
        if left? {
            return Ok(true);
        }
        let price = self.voters[pos].price_or_zero();
        if !res.can_bribe(&price) {
            return Ok(false);
        }
        let after = res.after_bribe(&price);
        // Bribing to the revealed ballot is leaving, at a cost.
        for (_, cast) in self.casts[pos].iter().enumerate().filter(|&(b, _)| b != revealed) {
            votes.push(cast);
            let won = self.win(pos + 1, votes, &after);
            votes.pop();
            if won? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Plain recursion over every revealed ballot and every move, recomputing
/// the winner set at each leaf. Refuses instances whose game tree exceeds
/// `config.naive_work_cap` leaves.
pub fn solve_naive_with(
    obs: &Obs,
    variant: &Variant,
    rule: &Rule,
    config: &SolverConfig,
) -> Result<bool, SolveError> {
    let start = validate_obs(obs, variant, rule)?;
    let ballots = enumerate_ballots(rule, obs.candidates.len(), &config.caps)?;
    let voters: Vec<&VoterRecord> = std::iter::once(&obs.current).chain(&obs.future).collect();

    let b = ballots.len() as u128;
    let mut estimate: u128 = 1;
    for (pos, v) in voters.iter().enumerate() {
        let reveals = if pos == 0 { 1 } else { b };
        let moves = if start.can_bribe(&v.price_or_zero()) { 1 + b } else { 1 };
        estimate = estimate.saturating_mul(reveals * moves);
    }
    if estimate > config.naive_work_cap {
        return Err(SolveError::WorkCapExceeded { estimate, cap: config.naive_work_cap });
    }

    let own = obs.current.ballot.as_ref().expect("validated");
    let current = ballots.iter().position(|b| b == own).expect("every valid ballot is enumerated");
    let casts = voters
        .iter()
        .map(|v| ballots.iter().map(|b| Vote::new(v.name.clone(), b.clone(), v.weight_or_one())).collect())
        .collect();
    let desired = desired_set(&obs.goal(variant.mode)).unwrap_or_default();
    let naive = Naive { rule, candidates: &obs.candidates, mode: variant.mode, desired, voters, casts, current };
    let past = obs.past_votes();
    let mut votes: Vec<&Vote> = past.iter().collect();
    naive.win(0, &mut votes, &start)
}
