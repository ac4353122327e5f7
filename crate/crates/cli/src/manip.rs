//! Manipulation instance documents for `reduce manip`.
//!
//! ```text
//! rule {kind, alpha?}, candidates [name], weighted bool,
//! nonmanipulators [{name, weight?, ballot}], manipulators [weight],
//! goal {prefer: name} | {despise: name}, model "nonunique" | "unique"
//! ```

use num_bigint::BigUint;
use online_bribery::reductions::{ManipGoal, ManipInstance, WinnerModel};
use online_bribery::{Candidate, Mode, Rule, Vote};
use serde_json::Value;

use crate::document::{array, boolean, candidate, natural, object, parse_ballot, parse_rule, required, string, DocError, Path};

pub fn parse_manipulation(text: &str) -> Result<(ManipInstance, Rule), DocError> {
    let root = Path::default();
    let v: Value = serde_json::from_str(text).map_err(|e| DocError::new(&root, e.to_string()))?;
    let top = object(&v, &root, &["rule", "candidates", "weighted", "nonmanipulators", "manipulators", "goal", "model"])?;

    let at = root.key("candidates");
    let candidates = array(required(top, &root, "candidates")?, &at)?
        .iter()
        .enumerate()
        .map(|(i, c)| Candidate::new(string(c, &at.index(i))?).map_err(|e| DocError::new(at.index(i), e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let m = candidates.len();
    // The mode only matters for the gadget rule, which is not a manipulation rule.
    let rule = parse_rule(required(top, &root, "rule")?, &root.key("rule"), m, Mode::Constructive)?;
    let weighted = boolean(required(top, &root, "weighted")?, &root.key("weighted"))?;

    let at = root.key("nonmanipulators");
    let nonmanipulators = array(required(top, &root, "nonmanipulators")?, &at)?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let at = at.index(i);
            let map = object(v, &at, &["name", "weight", "ballot"])?;
            let name = string(required(map, &at, "name")?, &at.key("name"))?;
            let weight = match (map.get("weight"), weighted) {
                (Some(w), true) => natural(w, &at.key("weight"))?,
                (None, false) => BigUint::from(1u32),
                (None, true) => return Err(DocError::new(at.key("weight"), "required when weighted")),
                (Some(_), false) => return Err(DocError::new(at.key("weight"), "only allowed when weighted")),
            };
            let ballot = parse_ballot(required(map, &at, "ballot")?, &at.key("ballot"), &candidates, &rule)?;
            Ok(Vote::new(name, ballot, weight))
        })
        .collect::<Result<Vec<_>, DocError>>()?;

    let at = root.key("manipulators");
    let manipulators = array(required(top, &root, "manipulators")?, &at)?
        .iter()
        .enumerate()
        .map(|(i, w)| natural(w, &at.index(i)))
        .collect::<Result<Vec<_>, _>>()?;

    let at = root.key("goal");
    let g = object(required(top, &root, "goal")?, &at, &["prefer", "despise"])?;
    let goal = match (g.get("prefer"), g.get("despise")) {
        (Some(c), None) => ManipGoal::Prefer(candidate(c, &at.key("prefer"), &candidates)?),
        (None, Some(c)) => ManipGoal::Despise(candidate(c, &at.key("despise"), &candidates)?),
        _ => return Err(DocError::new(&at, "expected exactly one of prefer, despise")),
    };
    let at = root.key("model");
    let model = match string(required(top, &root, "model")?, &at)? {
        "nonunique" => WinnerModel::Nonunique,
        "unique" => WinnerModel::Unique,
        other => return Err(DocError::new(&at, format!("unknown model {other:?}"))),
    };
    Ok((ManipInstance { candidates, nonmanipulators, manipulators, weighted, goal, model }, rule))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        let text = r#"{"rule": {"kind": "plurality"}, "candidates": ["a", "b"], "weighted": false,
            "nonmanipulators": [{"name": "n", "ballot": ["b", "a"]}], "manipulators": [1],
            "goal": {"prefer": "a"}, "model": "nonunique"}"#;
        let (mi, rule) = parse_manipulation(text).unwrap();
        assert_eq!(rule, Rule::plurality(2));
        assert_eq!(mi.goal, ManipGoal::Prefer(0));
        assert_eq!(mi.manipulators.len(), 1);
        let bad = text.replace(r#""prefer": "a""#, r#""prefer": "z""#);
        assert_eq!(parse_manipulation(&bad).unwrap_err().path, "goal.prefer");
    }
}
