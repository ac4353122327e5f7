//! Instance documents: JSON with fixed key names.
//!
//! ```text
//! variant   {mode, priced, weighted, bribe_cap?, k?}
//! rule      {kind, alpha? | gadget_k?}
//! candidates [name], sigma [name], d name
//! past      [{name, price?, weight?, ballot, bribed}]
//! current   {name, price?, weight?, ballot}
//! future    [{name, price?, weight?}]
//! ```
//!
//! Ballots are arrays of candidate names (orders) or of 0/1 (approval).
//! Numbers are nonnegative decimal integers of any size. The gadget rule's
//! mode follows the variant's mode.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use online_bribery::{
    validate_obs, Ballot, Candidate, GadgetMode, IllegalInstance, Mode, Obs, Order, Rule, ScoringVector, Variant,
    VoterRecord,
};
use serde_json::{Map, Number, Value};
use thiserror::Error;

/// An instance: snapshot, variant and rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub obs: Obs,
    pub variant: Variant,
    pub rule: Rule,
}

impl From<online_bribery::reductions::Reduction> for Instance {
    fn from(r: online_bribery::reductions::Reduction) -> Self {
        Instance { obs: r.obs, variant: r.variant, rule: r.rule }
    }
}

/// A rejected document, with the path of the offending field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct DocError {
    pub path: String,
    pub message: String,
}

impl DocError {
    pub fn new(path: impl fmt::Display, message: impl Into<String>) -> Self {
        DocError { path: path.to_string(), message: message.into() }
    }
}

type Result<T> = std::result::Result<T, DocError>;

/// A JSON location, rendered like `past[2].ballot`.
#[derive(Debug, Clone, Default)]
pub(crate) struct Path(String);

impl Path {
    pub(crate) fn key(&self, k: &str) -> Path {
        if self.0.is_empty() {
            Path(k.to_string())
        } else {
            Path(format!("{}.{k}", self.0))
        }
    }

    pub(crate) fn index(&self, i: usize) -> Path {
        Path(format!("{}[{i}]", self.0))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("(document)")
        } else {
            f.write_str(&self.0)
        }
    }
}

pub(crate) fn object<'v>(v: &'v Value, at: &Path, keys: &[&str]) -> Result<&'v Map<String, Value>> {
    let map = v.as_object().ok_or_else(|| DocError::new(at, "expected an object"))?;
    if let Some(k) = map.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(DocError::new(at.key(k), "unknown key"));
    }
    Ok(map)
}

pub(crate) fn required<'v>(map: &'v Map<String, Value>, at: &Path, key: &str) -> Result<&'v Value> {
    map.get(key).ok_or_else(|| DocError::new(at.key(key), "missing"))
}

pub(crate) fn array<'v>(v: &'v Value, at: &Path) -> Result<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| DocError::new(at, "expected an array"))
}

pub(crate) fn string<'v>(v: &'v Value, at: &Path) -> Result<&'v str> {
    v.as_str().ok_or_else(|| DocError::new(at, "expected a string"))
}

pub(crate) fn boolean(v: &Value, at: &Path) -> Result<bool> {
    v.as_bool().ok_or_else(|| DocError::new(at, "expected true or false"))
}

pub(crate) fn natural(v: &Value, at: &Path) -> Result<BigUint> {
    let n = v.as_number().ok_or_else(|| DocError::new(at, "expected a nonnegative integer"))?;
    BigUint::from_str(&n.to_string()).map_err(|_| DocError::new(at, "expected a nonnegative integer"))
}

pub(crate) fn small(v: &Value, at: &Path) -> Result<u64> {
    natural(v, at)?.to_u64().ok_or_else(|| DocError::new(at, "too large"))
}

pub(crate) fn number(n: &BigUint) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal digits"))
}

/// Parses and validates one document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let v: Value = serde_json::from_str(text).map_err(|e| DocError::new(Path::default(), e.to_string()))?;
    instance_from_value(&v)
}

pub fn instance_from_value(v: &Value) -> Result<Instance> {
    let root = Path::default();
    let top = object(v, &root, &["variant", "rule", "candidates", "sigma", "d", "past", "current", "future"])?;

    let at = root.key("variant");
    let vmap = object(required(top, &root, "variant")?, &at, &["mode", "priced", "weighted", "bribe_cap", "k"])?;
    let mode = match string(required(vmap, &at, "mode")?, &at.key("mode"))? {
        "constructive" => Mode::Constructive,
        "destructive" => Mode::Destructive,
        other => return Err(DocError::new(at.key("mode"), format!("unknown mode {other:?}"))),
    };
    let mut variant = Variant::new(
        mode,
        boolean(required(vmap, &at, "priced")?, &at.key("priced"))?,
        boolean(required(vmap, &at, "weighted")?, &at.key("weighted"))?,
    );
    if let Some(cap) = vmap.get("bribe_cap") {
        variant = variant.with_cap(small(cap, &at.key("bribe_cap"))?);
    }
    let k = vmap.get("k").map(|k| natural(k, &at.key("k"))).transpose()?;
    match (variant.has_k(), k.is_some()) {
        (true, false) => return Err(DocError::new(at.key("k"), "required for this variant")),
        (false, true) => return Err(DocError::new(at.key("k"), "not allowed for an unpriced variant with bribe_cap")),
        _ => {}
    }

    let at = root.key("candidates");
    let candidates = array(required(top, &root, "candidates")?, &at)?
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let name = string(c, &at.index(i))?;
            Candidate::new(name).map_err(|e| DocError::new(at.index(i), e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, c) in candidates.iter().enumerate() {
        if candidates[..i].contains(c) {
            return Err(DocError::new(at.index(i), format!("duplicate candidate {:?}", c.name())));
        }
    }
    let m = candidates.len();

    let rule = parse_rule(required(top, &root, "rule")?, &root.key("rule"), m, mode)?;
    let sigma = order_from_names(required(top, &root, "sigma")?, &root.key("sigma"), &candidates)?;
    let d = candidate(required(top, &root, "d")?, &root.key("d"), &candidates)?;

    let voter = |v: &Value, at: &Path, role: Role| -> Result<VoterRecord> {
        let keys: &[&str] = match role {
            Role::Past => &["name", "price", "weight", "ballot", "bribed"],
            Role::Current => &["name", "price", "weight", "ballot"],
            Role::Future => &["name", "price", "weight"],
        };
        let map = object(v, at, keys)?;
        let name = string(required(map, at, "name")?, &at.key("name"))?.to_string();
        let price = attribute(map, at, "price", variant.priced, "priced")?;
        let weight = attribute(map, at, "weight", variant.weighted, "weighted")?;
        let ballot = match role {
            Role::Future => None,
            _ => Some(parse_ballot(required(map, at, "ballot")?, &at.key("ballot"), &candidates, &rule)?),
        };
        let bribed = match role {
            Role::Past => Some(boolean(required(map, at, "bribed")?, &at.key("bribed"))?),
            _ => None,
        };
        Ok(VoterRecord { name, price, weight, ballot, bribed })
    };
    let list = |key: &str, role: Role| -> Result<Vec<VoterRecord>> {
        let at = root.key(key);
        array(required(top, &root, key)?, &at)?
            .iter()
            .enumerate()
            .map(|(i, v)| voter(v, &at.index(i), role))
            .collect()
    };
    let past = list("past", Role::Past)?;
    let current = voter(required(top, &root, "current")?, &root.key("current"), Role::Current)?;
    let future = list("future", Role::Future)?;

    let obs = Obs { candidates, past, current, future, sigma, d, k };
    validate_obs(&obs, &variant, &rule).map_err(|e| match e {
        IllegalInstance::Overspent { .. } => DocError::new(root.key("variant").key("k"), e.to_string()),
        IllegalInstance::OverCap { .. } => DocError::new(root.key("variant").key("bribe_cap"), e.to_string()),
        IllegalInstance::Malformed(_) => DocError::new(&root, e.to_string()),
    })?;
    Ok(Instance { obs, variant, rule })
}

#[derive(Clone, Copy)]
enum Role {
    Past,
    Current,
    Future,
}

fn attribute(map: &Map<String, Value>, at: &Path, key: &str, wanted: bool, what: &str) -> Result<Option<BigUint>> {
    match (map.get(key), wanted) {
        (Some(v), true) => Ok(Some(natural(v, &at.key(key))?)),
        (None, false) => Ok(None),
        (None, true) => Err(DocError::new(at.key(key), format!("required when {what}"))),
        (Some(_), false) => Err(DocError::new(at.key(key), format!("only allowed when {what}"))),
    }
}

pub(crate) fn candidate(v: &Value, at: &Path, candidates: &[Candidate]) -> Result<usize> {
    let name = string(v, at)?;
    candidates
        .iter()
        .position(|c| c.name() == name)
        .ok_or_else(|| DocError::new(at, format!("unknown candidate {name:?}")))
}

fn order_from_names(v: &Value, at: &Path, candidates: &[Candidate]) -> Result<Order> {
    let ids = array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, c)| candidate(c, &at.index(i), candidates))
        .collect::<Result<Vec<_>>>()?;
    Order::new(ids, candidates.len()).map_err(|e| DocError::new(at, e.to_string()))
}

pub(crate) fn parse_ballot(v: &Value, at: &Path, candidates: &[Candidate], rule: &Rule) -> Result<Ballot> {
    if rule.uses_approval_ballots() {
        let bits = array(v, at)?
            .iter()
            .enumerate()
            .map(|(i, b)| match b.as_u64() {
                Some(0) => Ok(false),
                Some(1) => Ok(true),
                _ => Err(DocError::new(at.index(i), "expected 0 or 1")),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.len() != candidates.len() {
            return Err(DocError::new(at, format!("expected {} entries", candidates.len())));
        }
        Ok(Ballot::Approval(bits))
    } else {
        Ok(Ballot::Order(order_from_names(v, at, candidates)?))
    }
}

pub(crate) fn parse_rule(v: &Value, at: &Path, m: usize, mode: Mode) -> Result<Rule> {
    let map = object(v, at, &["kind", "alpha", "gadget_k"])?;
    let kind = string(required(map, at, "kind")?, &at.key("kind"))?;
    let expect_only = |allowed: Option<&str>| -> Result<()> {
        for key in ["alpha", "gadget_k"] {
            if map.contains_key(key) && allowed != Some(key) {
                return Err(DocError::new(at.key(key), format!("not allowed for kind {kind:?}")));
            }
        }
        Ok(())
    };
    let rule = match kind {
        "plurality" | "veto" | "borda" | "approval" => {
            expect_only(None)?;
            match kind {
                "plurality" => Rule::plurality(m),
                "veto" => Rule::veto(m),
                "borda" => Rule::borda(m),
                _ => Rule::Approval,
            }
        }
        "scoring" => {
            expect_only(Some("alpha"))?;
            let a = at.key("alpha");
            let alpha = array(required(map, at, "alpha")?, &a)?
                .iter()
                .enumerate()
                .map(|(i, x)| natural(x, &a.index(i)))
                .collect::<Result<Vec<_>>>()?;
            Rule::Scoring(ScoringVector::new(alpha).map_err(|e| DocError::new(&a, e.to_string()))?)
        }
        "gadget" => {
            expect_only(Some("gadget_k"))?;
            let g = at.key("gadget_k");
            let k = small(required(map, at, "gadget_k")?, &g)?;
            let k = u32::try_from(k).map_err(|_| DocError::new(&g, "too large"))?;
            Rule::gadget(k, gadget_mode(mode))
        }
        other => return Err(DocError::new(at.key("kind"), format!("unknown rule {other:?}"))),
    };
    rule.check(m).map_err(|e| DocError::new(at, e.to_string()))?;
    Ok(rule)
}

pub fn gadget_mode(mode: Mode) -> GadgetMode {
    match mode {
        Mode::Constructive => GadgetMode::WinOnTrue,
        Mode::Destructive => GadgetMode::LoseOnTrue,
    }
}

pub(crate) fn rule_value(rule: &Rule, m: usize) -> Value {
    let mut map = Map::new();
    match rule {
        Rule::Scoring(alpha) => {
            let named = [("plurality", Rule::plurality(m)), ("veto", Rule::veto(m)), ("borda", Rule::borda(m))]
                .into_iter()
                .find(|(_, r)| r == rule);
            match named {
                Some((kind, _)) => {
                    map.insert("kind".into(), kind.into());
                }
                None => {
                    map.insert("kind".into(), "scoring".into());
                    map.insert("alpha".into(), alpha.values().iter().map(number).collect());
                }
            }
        }
        Rule::Approval => {
            map.insert("kind".into(), "approval".into());
        }
        Rule::Gadget(g) => {
            map.insert("kind".into(), "gadget".into());
            map.insert("gadget_k".into(), g.k.into());
        }
    }
    Value::Object(map)
}

pub fn ballot_value(b: &Ballot, candidates: &[Candidate]) -> Value {
    match b {
        Ballot::Order(o) => o.as_slice().iter().map(|&c| Value::from(candidates[c].name())).collect(),
        Ballot::Approval(bits) => bits.iter().map(|&x| Value::from(u8::from(x))).collect(),
    }
}

pub fn instance_to_value(inst: &Instance) -> Value {
    let Instance { obs, variant, rule } = inst;
    let names = &obs.candidates;
    let mut v = Map::new();
    v.insert("mode".into(), variant.mode.to_string().into());
    v.insert("priced".into(), variant.priced.into());
    v.insert("weighted".into(), variant.weighted.into());
    if let Some(cap) = variant.bribe_cap {
        v.insert("bribe_cap".into(), cap.into());
    }
    if let Some(k) = &obs.k {
        v.insert("k".into(), number(k));
    }
    let voter = |r: &VoterRecord| {
        let mut map = Map::new();
        map.insert("name".into(), r.name.clone().into());
        if let Some(p) = &r.price {
            map.insert("price".into(), number(p));
        }
        if let Some(w) = &r.weight {
            map.insert("weight".into(), number(w));
        }
        if let Some(b) = &r.ballot {
            map.insert("ballot".into(), ballot_value(b, names));
        }
        if let Some(b) = r.bribed {
            map.insert("bribed".into(), b.into());
        }
        Value::Object(map)
    };
    let mut top = Map::new();
    top.insert("variant".into(), Value::Object(v));
    top.insert("rule".into(), rule_value(rule, names.len()));
    top.insert("candidates".into(), names.iter().map(|c| Value::from(c.name())).collect());
    top.insert("sigma".into(), obs.sigma.as_slice().iter().map(|&c| Value::from(names[c].name())).collect());
    top.insert("d".into(), names[obs.d].name().into());
    top.insert("past".into(), obs.past.iter().map(voter).collect());
    top.insert("current".into(), voter(&obs.current));
    top.insert("future".into(), obs.future.iter().map(voter).collect());
    Value::Object(top)
}

/// Pretty-printed document. Parsing it gives back `inst`, except that a
/// gadget rule takes its mode from the variant.
pub fn serialize_instance(inst: &Instance) -> String {
    serde_json::to_string_pretty(&instance_to_value(inst)).expect("serializable")
}

/// Every document in `text`: one, or several one after another (e.g. one
/// per line).
pub fn parse_corpus(text: &str) -> Vec<Result<Instance>> {
    let mut out = Vec::new();
    for (i, v) in serde_json::Deserializer::from_str(text).into_iter::<Value>().enumerate() {
        match v {
            Ok(v) => out.push(instance_from_value(&v).map_err(|e| DocError::new(format!("#{i} {}", e.path), e.message))),
            Err(e) => {
                out.push(Err(DocError::new(format!("#{i}"), e.to_string())));
                break;
            }
        }
    }
    out
}
