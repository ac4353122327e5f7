//! Running engines on instances and comparing their decisions.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use online_bribery::deciders::{approval_decide, plurality_decide, scoring_dp_decide, veto3_decide, DecideError};
use online_bribery::solver::{solve_naive_with, solve_with, SolverConfig};
use online_bribery::{CurrentMove, Rule, SolveError, SolveOutcome};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::document::{ballot_value, serialize_instance, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// The memoized game solver.
    General,
    /// The polynomial decider for the rule, if there is one.
    Fast,
    /// Exhaustive game-tree search.
    Naive,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::General, Engine::Fast, Engine::Naive];
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::General => "general",
            Engine::Fast => "fast",
            Engine::Naive => "naive",
        })
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "general" => Ok(Engine::General),
            "fast" => Ok(Engine::Fast),
            "naive" => Ok(Engine::Naive),
            _ => Err(format!("unknown engine {s:?} (general, fast, naive)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("{engine} engine does not apply: {reason}")]
    Inapplicable { engine: Engine, reason: String },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Decide(DecideError),
}

/// One engine's result on one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    /// SHA-256 of the serialized instance.
    pub digest: String,
    pub engine: Engine,
    pub decision: bool,
    /// The move for the current voter on yes-instances, when the engine
    /// reports one.
    pub witness: Option<Value>,
    pub wall_time_secs: f64,
    /// Whether all engines run on this instance decided alike; absent for
    /// single-engine runs.
    pub agreement: Option<bool>,
}

pub fn digest(inst: &Instance) -> String {
    hex::encode(Sha256::digest(serialize_instance(inst).as_bytes()))
}

fn fast(inst: &Instance) -> Result<SolveOutcome, RunError> {
    let Instance { obs, variant, rule } = inst;
    let inapplicable = |reason: String| RunError::Inapplicable { engine: Engine::Fast, reason };
    let result = match rule {
        Rule::Approval => approval_decide(obs, variant, rule),
        Rule::Scoring(alpha) => {
            let a = alpha.values();
            let plurality_like = a.iter().skip(1).all(|x| *x == a[a.len() - 1]);
            if plurality_like {
                plurality_decide(obs, variant, rule)
            } else if variant.weighted && a.len() == 3 && a[0] == a[1] {
                veto3_decide(obs, variant, rule)
            } else if !variant.weighted {
                scoring_dp_decide(obs, variant, rule)
            } else {
                return Err(inapplicable("no polynomial decider for weighted instances of this scoring rule".into()));
            }
        }
        Rule::Gadget(_) => return Err(inapplicable("no polynomial decider for the gadget rule".into())),
    };
    result.map_err(|e| match e {
        DecideError::WrongRule { .. } | DecideError::WeightedNotSupported | DecideError::CapExceeded(_) => {
            inapplicable(e.to_string())
        }
        other => RunError::Decide(other),
    })
}

/// Runs one engine and reports without an agreement flag.
pub fn run(inst: &Instance, engine: Engine, config: &SolverConfig) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let outcome = match engine {
        Engine::General => solve_with(&inst.obs, &inst.variant, &inst.rule, config)?,
        Engine::Fast => fast(inst)?,
        Engine::Naive => {
            let decision = solve_naive_with(&inst.obs, &inst.variant, &inst.rule, config)?;
            SolveOutcome { decision, action: None }
        }
    };
    let wall_time_secs = start.elapsed().as_secs_f64();
    Ok(RunReport {
        digest: digest(inst),
        engine,
        decision: outcome.decision,
        witness: outcome.action.map(|a| witness_value(&a, inst)),
        wall_time_secs,
        agreement: None,
    })
}

pub fn witness_value(action: &CurrentMove, inst: &Instance) -> Value {
    match action {
        CurrentMove::Leave => Value::from("leave"),
        CurrentMove::BribeTo(b) => {
            let mut map = serde_json::Map::new();
            map.insert("bribe_to".into(), ballot_value(b, &inst.obs.candidates));
            Value::Object(map)
        }
    }
}

/// What happened to one corpus entry.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceResult {
    pub index: usize,
    pub reports: Vec<RunReport>,
    /// Engines skipped as inapplicable, and why.
    pub skipped: Vec<(Engine, String)>,
    /// Engines that failed for another reason.
    pub errors: Vec<(Engine, String)>,
}

impl InstanceResult {
    pub fn agrees(&self) -> bool {
        self.reports.iter().all(|r| r.agreement != Some(false))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub results: Vec<InstanceResult>,
}

impl CheckSummary {
    pub fn instances(&self) -> usize {
        self.results.len()
    }

    pub fn disagreements(&self) -> usize {
        self.results.iter().filter(|r| !r.agrees()).count()
    }

    pub fn errors(&self) -> usize {
        self.results.iter().filter(|r| !r.errors.is_empty()).count()
    }

    /// Instances on which fewer than two engines ran.
    pub fn uncompared(&self) -> usize {
        self.results.iter().filter(|r| r.reports.len() < 2).count()
    }

    pub fn all_agree(&self) -> bool {
        self.disagreements() == 0 && self.errors() == 0
    }
}

/// Runs every engine on every instance. Inapplicable engines are skipped for
/// that instance; the others must agree.
pub fn cross_check(corpus: &[Instance], engines: &[Engine], config: &SolverConfig) -> CheckSummary {
    let results = corpus
        .iter()
        .enumerate()
        .map(|(index, inst)| {
            let mut result = InstanceResult { index, reports: Vec::new(), skipped: Vec::new(), errors: Vec::new() };
            for &engine in engines {
                match run(inst, engine, config) {
                    Ok(r) => result.reports.push(r),
                    Err(RunError::Inapplicable { reason, .. }) => result.skipped.push((engine, reason)),
                    Err(e) => result.errors.push((engine, e.to_string())),
                }
            }
            if result.reports.len() > 1 {
                let first = result.reports[0].decision;
                let agree = result.reports.iter().all(|r| r.decision == first);
                for r in &mut result.reports {
                    r.agreement = Some(agree);
                }
            }
            result
        })
        .collect();
    CheckSummary { results }
}
