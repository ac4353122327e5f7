//! Quantified boolean formulas: evaluation, the text format, the guarded
//! ("preinsulated") transformation and quantifier-assignment closure.
//!
//! Text format: a prefix of blocks, each a quantifier letter (`A` or `E`)
//! followed by variable identifiers and terminated by `;`, then the matrix,
//! e.g. `A x1 x2 ; E y1 ; (x1 | !y1) & x2`.

pub mod formula;
pub mod tiered;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use formula::{parse_formula, Formula, SyntaxError};

/// Largest number of variables the brute-force evaluator accepts.
pub const MAX_EVAL_VARIABLES: usize = 24;
/// Largest number of blocks `assignment_closure_eval` reassigns.
pub const MAX_CLOSURE_BLOCKS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QbfError {
    #[error("syntax error {0}")]
    Syntax(SyntaxError),
    #[error("quantifier block {0} declares no variables")]
    EmptyBlock(usize),
    #[error("variable {0:?} declared more than once")]
    DuplicateVariable(String),
    #[error("variable {0:?} is not bound by any quantifier block")]
    UndeclaredVariable(String),
    #[error("malformed quantifier prefix: {0}")]
    BadPrefix(String),
    #[error("{found} variables exceed the evaluation cap of {cap}")]
    TooManyVariables { found: usize, cap: usize },
    #[error("{found} blocks exceed the closure cap of {cap}")]
    TooManyBlocks { found: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    fn letter(self) -> char {
        match self {
            Quantifier::Forall => 'A',
            Quantifier::Exists => 'E',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub quantifier: Quantifier,
    /// Variable ids, in declaration order.
    pub vars: Vec<usize>,
}

/// A prenex QBF. Variables are numbered `0..names.len()`; every variable is
/// bound by exactly one block and every matrix variable is bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Qbf {
    names: Vec<String>,
    blocks: Vec<Block>,
    matrix: Formula<usize>,
}

impl Qbf {
    pub fn new(
        names: Vec<String>,
        blocks: Vec<Block>,
        matrix: Formula<usize>,
    ) -> Result<Self, QbfError> {
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(QbfError::DuplicateVariable(name.clone()));
            }
        }
        let mut bound = vec![false; names.len()];
        for (i, block) in blocks.iter().enumerate() {
            if block.vars.is_empty() {
                return Err(QbfError::EmptyBlock(i));
            }
            for &v in &block.vars {
                let slot = bound
                    .get_mut(v)
                    .ok_or_else(|| QbfError::UndeclaredVariable(format!("#{v}")))?;
                if std::mem::replace(slot, true) {
                    return Err(QbfError::DuplicateVariable(names[v].clone()));
                }
            }
        }
        if let Some(v) = bound.iter().position(|b| !b) {
            return Err(QbfError::UndeclaredVariable(names[v].clone()));
        }
        let mut bad = None;
        matrix.for_each_var(&mut |&v| {
            if v >= names.len() && bad.is_none() {
                bad = Some(v);
            }
        });
        if let Some(v) = bad {
            return Err(QbfError::UndeclaredVariable(format!("#{v}")));
        }
        Ok(Qbf { names, blocks, matrix })
    }

    /// Builds a formula from named blocks and a matrix over names.
    pub fn from_named(
        blocks: &[(Quantifier, Vec<&str>)],
        matrix: &Formula<String>,
    ) -> Result<Self, QbfError> {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        let mut out = Vec::new();
        for (q, vars) in blocks {
            let mut ids = Vec::new();
            for &v in vars {
                if index.insert(v.to_string(), names.len()).is_some() {
                    return Err(QbfError::DuplicateVariable(v.to_string()));
                }
                ids.push(names.len());
                names.push(v.to_string());
            }
            out.push(Block { quantifier: *q, vars: ids });
        }
        let mut missing = None;
        matrix.for_each_var(&mut |v| {
            if !index.contains_key(v) && missing.is_none() {
                missing = Some(v.clone());
            }
        });
        if let Some(v) = missing {
            return Err(QbfError::UndeclaredVariable(v));
        }
        let matrix = matrix.map_vars(&|v| index[v]);
        Qbf::new(names, out, matrix)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn matrix(&self) -> &Formula<usize> {
        &self.matrix
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn exists_blocks(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.quantifier == Quantifier::Exists)
            .count()
    }

    /// `∀ ∃ ∀ … ∀`: alternating, starting and ending with `∀`.
    pub fn is_alternating_forall_odd(&self) -> bool {
        self.blocks.len() % 2 == 1
            && self.blocks.iter().enumerate().all(|(i, b)| {
                b.quantifier == if i % 2 == 0 { Quantifier::Forall } else { Quantifier::Exists }
            })
    }

    /// Whether every block has at least one variable occurring in the matrix.
    pub fn all_blocks_occur(&self) -> bool {
        let mut occurs = vec![false; self.names.len()];
        self.matrix.for_each_var(&mut |&v| occurs[v] = true);
        self.blocks
            .iter()
            .all(|b| b.vars.iter().any(|&v| occurs[v]))
    }

    /// Same variables and matrix under a different quantifier sequence.
    pub fn with_quantifiers(&self, quantifiers: &[Quantifier]) -> Self {
        assert_eq!(quantifiers.len(), self.blocks.len());
        let blocks = self
            .blocks
            .iter()
            .zip(quantifiers)
            .map(|(b, &q)| Block { quantifier: q, vars: b.vars.clone() })
            .collect();
        Qbf { names: self.names.clone(), blocks, matrix: self.matrix.clone() }
    }

    fn render_matrix(&self) -> String {
        let mut out = String::new();
        self.matrix
            .write_canonical(&mut out, &|&v, o| o.write_str(&self.names[v]))
            .expect("writing to a String");
        out
    }
}

impl fmt::Display for Qbf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "{}", b.quantifier.letter())?;
            for &v in &b.vars {
                write!(f, " {}", self.names[v])?;
            }
            f.write_str(" ; ")?;
        }
        f.write_str(&self.render_matrix())
    }
}

fn identifier_len(s: &str) -> usize {
    let bytes = s.as_bytes();
    if bytes.first().is_some_and(|b| b.is_ascii_alphabetic() || *b == b'_') {
        bytes
            .iter()
            .take_while(|b| b.is_ascii_alphanumeric() || **b == b'_')
            .count()
    } else {
        0
    }
}

impl FromStr for Qbf {
    type Err = QbfError;

    fn from_str(text: &str) -> Result<Self, QbfError> {
        let mut parts: Vec<&str> = text.split(';').collect();
        let matrix_text = parts.pop().unwrap_or_default();
        let mut blocks = Vec::new();
        for part in parts {
            let mut tokens = part.split_whitespace();
            let q = match tokens.next() {
                Some("A") => Quantifier::Forall,
                Some("E") => Quantifier::Exists,
                other => {
                    return Err(QbfError::BadPrefix(format!(
                        "expected 'A' or 'E', found {:?}",
                        other.unwrap_or("")
                    )))
                }
            };
            let vars: Vec<&str> = tokens.collect();
            if let Some(bad) = vars.iter().find(|v| identifier_len(v) != v.len()) {
                return Err(QbfError::BadPrefix(format!("bad variable name {bad:?}")));
            }
            if vars.is_empty() {
                return Err(QbfError::EmptyBlock(blocks.len()));
            }
            blocks.push((q, vars));
        }
        let matrix = parse_formula(matrix_text, &mut |s: &str| {
            let len = identifier_len(s);
            (len > 0).then(|| (s[..len].to_string(), len))
        })
        .map_err(QbfError::Syntax)?;
        Qbf::from_named(&blocks, &matrix)
    }
}

/// Truth of `q` under the usual game semantics, by exhaustive recursion over
/// the blocks.
pub fn qbf_eval(q: &Qbf) -> Result<bool, QbfError> {
    if q.num_vars() > MAX_EVAL_VARIABLES {
        return Err(QbfError::TooManyVariables {
            found: q.num_vars(),
            cap: MAX_EVAL_VARIABLES,
        });
    }
    let order: Vec<(Quantifier, usize)> = q
        .blocks
        .iter()
        .flat_map(|b| b.vars.iter().map(move |&v| (b.quantifier, v)))
        .collect();
    let mut assignment = vec![false; q.num_vars()];
    Ok(eval_prefix(q, &order, &mut assignment))
}

fn eval_prefix(q: &Qbf, order: &[(Quantifier, usize)], assignment: &mut [bool]) -> bool {
    let Some((&(quantifier, var), rest)) = order.split_first() else {
        return q.matrix.eval(&|&v| assignment[v]);
    };
    let branch = |value: bool, assignment: &mut [bool]| {
        assignment[var] = value;
        eval_prefix(q, rest, assignment)
    };
    match quantifier {
        Quantifier::Forall => branch(false, assignment) && branch(true, assignment),
        Quantifier::Exists => branch(false, assignment) || branch(true, assignment),
    }
}

/// Adds a fresh guard variable to every block and conjoins the guards of the
/// existential blocks to the matrix. With no existential block the matrix is
/// left unchanged.
pub fn cousin_transform(q: &Qbf) -> Qbf {
    let mut names = q.names.clone();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    let mut blocks = q.blocks.clone();
    let mut guards = Vec::new();
    for (i, block) in blocks.iter_mut().enumerate() {
        let mut name = format!("b{}", i + 1);
        while taken.contains(&name) {
            name.push('_');
        }
        taken.insert(name.clone());
        let id = names.len();
        names.push(name);
        block.vars.push(id);
        if block.quantifier == Quantifier::Exists {
            guards.push(Formula::Var(id));
        }
    }
    let matrix = match Formula::and_all(guards) {
        Some(g) => Formula::and(q.matrix.clone(), g),
        None => q.matrix.clone(),
    };
    Qbf { names, blocks, matrix }
}

/// Disjunction, over every way of re-quantifying the blocks with at most `j`
/// existential blocks, of the truth of the re-quantified formula.
pub fn assignment_closure_eval(q: &Qbf, j: usize) -> Result<bool, QbfError> {
    let l = q.blocks.len();
    if l > MAX_CLOSURE_BLOCKS {
        return Err(QbfError::TooManyBlocks { found: l, cap: MAX_CLOSURE_BLOCKS });
    }
    for mask in 0u32..1 << l {
        if mask.count_ones() as usize > j {
            continue;
        }
        let quantifiers: Vec<Quantifier> = (0..l)
            .map(|i| if mask >> i & 1 == 1 { Quantifier::Exists } else { Quantifier::Forall })
            .collect();
        if qbf_eval(&q.with_quantifiers(&quantifiers))? {
            return Ok(true);
        }
    }
    Ok(false)
}
