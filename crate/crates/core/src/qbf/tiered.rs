//! Tiered formulas: propositional formulas over variables `x[i,m]` whose tier
//! `i` selects a quantifier block and `m` a position inside it. Candidate
//! names of the gadget rule are exactly the canonical encodings produced here.

use super::formula::{parse_formula, Formula};
use super::Qbf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TierVar {
    pub tier: u32,
    pub pos: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TieredFormula {
    matrix: Formula<TierVar>,
}

impl TieredFormula {
    /// Tier and position indices must be positive.
    pub fn new(matrix: Formula<TierVar>) -> Option<Self> {
        let mut ok = true;
        matrix.for_each_var(&mut |v| ok &= v.tier > 0 && v.pos > 0);
        ok.then_some(TieredFormula { matrix })
    }

    /// Renames the matrix of `q`: the `m`th variable of block `i` becomes
    /// `x[i,m]` (both 1-based).
    pub fn from_qbf(q: &Qbf) -> Self {
        let mut place = vec![TierVar { tier: 0, pos: 0 }; q.num_vars()];
        for (i, block) in q.blocks().iter().enumerate() {
            for (m, &v) in block.vars.iter().enumerate() {
                place[v] = TierVar { tier: i as u32 + 1, pos: m as u32 + 1 };
            }
        }
        TieredFormula { matrix: q.matrix().map_vars(&|&v| place[v]) }
    }

    pub fn matrix(&self) -> &Formula<TierVar> {
        &self.matrix
    }

    /// Largest tier index occurring in the formula.
    pub fn subscript_one_max(&self) -> u32 {
        let mut max = 0;
        self.matrix.for_each_var(&mut |v| max = max.max(v.tier));
        max
    }

    /// Largest position index occurring in the formula.
    pub fn subscript_two_max(&self) -> u32 {
        let mut max = 0;
        self.matrix.for_each_var(&mut |v| max = max.max(v.pos));
        max
    }

    /// Whether every tier `1..=subscript_one_max` has an occurring variable.
    pub fn tiers_populated(&self) -> bool {
        let n = self.subscript_one_max() as usize;
        let mut seen = vec![false; n + 1];
        self.matrix.for_each_var(&mut |v| seen[v.tier as usize] = true);
        seen[1..].iter().all(|&s| s)
    }

    /// Evaluates with `x[i,m] = bits[i-1][m-1]`; missing bits read as false.
    pub fn eval(&self, bits: &[Vec<bool>]) -> bool {
        self.matrix.eval(&|v: &TierVar| {
            bits.get(v.tier as usize - 1)
                .and_then(|b| b.get(v.pos as usize - 1))
                .copied()
                .unwrap_or(false)
        })
    }
}

/// Canonical, fully parenthesised encoding, e.g. `(x[1,1]&!x[2,1])`.
pub fn tiered_encode(t: &TieredFormula) -> String {
    let mut out = String::new();
    t.matrix
        .write_canonical(&mut out, &|v, o| write!(o, "x[{},{}]", v.tier, v.pos))
        .expect("writing to a String");
    out
}

/// Parses a candidate name as a tiered formula; `None` if it is not one.
pub fn tiered_parse(name: &str) -> Option<TieredFormula> {
    parse_formula(name, &mut lex_tier_var).ok().and_then(TieredFormula::new)
}

fn lex_tier_var(s: &str) -> Option<(TierVar, usize)> {
    let rest = s.strip_prefix("x[")?;
    let (tier, rest) = positive(rest)?;
    let rest = rest.strip_prefix(',')?;
    let (pos, rest) = positive(rest)?;
    rest.strip_prefix(']')?;
    let len = s.len() - rest.len() + 1;
    Some((TierVar { tier, pos }, len))
}

/// A positive decimal without leading zeros.
fn positive(s: &str) -> Option<(u32, &str)> {
    let digits = s.bytes().take_while(u8::is_ascii_digit).count();
    if digits == 0 || s.starts_with('0') {
        return None;
    }
    let value: u32 = s[..digits].parse().ok()?;
    Some((value, &s[digits..]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(tier: u32, pos: u32) -> Formula<TierVar> {
        Formula::Var(TierVar { tier, pos })
    }

    #[test]
    fn encode_and_parse_back() {
        let t = TieredFormula::new(Formula::and(var(1, 1), var(2, 1))).unwrap();
        let name = tiered_encode(&t);
        assert_eq!(name, "(x[1,1]&x[2,1])");
        let back = tiered_parse(&name).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.subscript_one_max(), 2);
        assert_eq!(back.subscript_two_max(), 1);
        assert!(back.tiers_populated());
    }

    #[test]
    fn junk_is_not_a_formula() {
        for junk in ["hello", "", "x[0,1]", "x[1,01]", "x[1,1", "(x[1,1]&)", "x[1,1]x[1,2]", "y[1,1]"] {
            assert_eq!(tiered_parse(junk), None, "{junk:?}");
        }
    }

    #[test]
    fn unpopulated_tier_detected() {
        let t = tiered_parse("x[1,1]|x[3,2]").unwrap();
        assert_eq!(t.subscript_one_max(), 3);
        assert!(!t.tiers_populated());
    }

    #[test]
    fn from_qbf_numbers_blocks() {
        let q: Qbf = "A a b ; E c ; a & (b | c)".parse().unwrap();
        let t = TieredFormula::from_qbf(&q);
        assert_eq!(tiered_encode(&t), "(x[1,1]&(x[1,2]|x[2,1]))");
        assert!(t.eval(&[vec![true, false], vec![true]]));
        assert!(!t.eval(&[vec![true, false], vec![false]]));
    }
}
