//! Propositional formulas over `!`, `&`, `|` and a small recursive-descent
//! parser shared by the QBF text format and tiered candidate names.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula<V> {
    Var(V),
    Not(Box<Formula<V>>),
    And(Box<Formula<V>>, Box<Formula<V>>),
    Or(Box<Formula<V>>, Box<Formula<V>>),
}

impl<V> Formula<V> {
    pub fn var(v: V) -> Self {
        Formula::Var(v)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Self) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Self, b: Self) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction; `None` for an empty iterator.
    pub fn and_all(parts: impl IntoIterator<Item = Self>) -> Option<Self> {
        parts.into_iter().reduce(Formula::and)
    }

    pub fn eval(&self, value: &impl Fn(&V) -> bool) -> bool {
        match self {
            Formula::Var(v) => value(v),
            Formula::Not(f) => !f.eval(value),
            Formula::And(a, b) => a.eval(value) && b.eval(value),
            Formula::Or(a, b) => a.eval(value) || b.eval(value),
        }
    }

    /// Visits variable occurrences left to right.
    pub fn for_each_var<'a>(&'a self, f: &mut impl FnMut(&'a V)) {
        match self {
            Formula::Var(v) => f(v),
            Formula::Not(x) => x.for_each_var(f),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.for_each_var(f);
                b.for_each_var(f);
            }
        }
    }

    pub fn map_vars<W>(&self, f: &impl Fn(&V) -> W) -> Formula<W> {
        match self {
            Formula::Var(v) => Formula::Var(f(v)),
            Formula::Not(x) => Formula::not(x.map_vars(f)),
            Formula::And(a, b) => Formula::and(a.map_vars(f), b.map_vars(f)),
            Formula::Or(a, b) => Formula::or(a.map_vars(f), b.map_vars(f)),
        }
    }

    /// Fully parenthesised rendering: `!x`, `(a&b)`, `(a|b)`.
    pub fn write_canonical(
        &self,
        out: &mut impl fmt::Write,
        var: &impl Fn(&V, &mut dyn fmt::Write) -> fmt::Result,
    ) -> fmt::Result {
        match self {
            Formula::Var(v) => var(v, out),
            Formula::Not(x) => {
                out.write_char('!')?;
                x.write_canonical(out, var)
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                let op = if matches!(self, Formula::And(..)) { '&' } else { '|' };
                out.write_char('(')?;
                a.write_canonical(out, var)?;
                out.write_char(op)?;
                b.write_canonical(out, var)?;
                out.write_char(')')
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)
    }
}

/// Parses `text` with precedence `!` > `&` > `|` (binary operators associate
/// to the left). `lex_var` is called at the start of every variable token; it
/// returns the variable and its byte length, or `None` if no variable starts
/// there.
pub fn parse_formula<V>(
    text: &str,
    lex_var: &mut dyn FnMut(&str) -> Option<(V, usize)>,
) -> Result<Formula<V>, SyntaxError> {
    let mut p = Parser { text, pos: 0, lex_var };
    let f = p.or()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

struct Parser<'t, 'l, V> {
    text: &'t str,
    pos: usize,
    lex_var: &'l mut dyn FnMut(&str) -> Option<(V, usize)>,
}

impl<V> Parser<'_, '_, V> {
    fn error(&self, message: &str) -> SyntaxError {
        SyntaxError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.text.as_bytes().get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<Formula<V>, SyntaxError> {
        let mut f = self.and()?;
        while self.eat(b'|') {
            f = Formula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula<V>, SyntaxError> {
        let mut f = self.unary()?;
        while self.eat(b'&') {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula<V>, SyntaxError> {
        if self.eat(b'!') {
            return Ok(Formula::not(self.unary()?));
        }
        if self.eat(b'(') {
            let f = self.or()?;
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(f);
        }
        self.skip_ws();
        match (self.lex_var)(&self.text[self.pos..]) {
            Some((v, len)) if len > 0 => {
                self.pos += len;
                Ok(Formula::Var(v))
            }
            _ => Err(self.error("expected variable, '!' or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ident(s: &str) -> Option<(String, usize)> {
        let len = s
            .bytes()
            .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
            .count();
        (len > 0).then(|| (s[..len].to_string(), len))
    }

    fn parse(s: &str) -> Result<Formula<String>, SyntaxError> {
        parse_formula(s, &mut ident)
    }

    fn render(f: &Formula<String>) -> String {
        let mut out = String::new();
        f.write_canonical(&mut out, &|v, o| o.write_str(v)).unwrap();
        out
    }

    #[test]
    fn precedence() {
        assert_eq!(render(&parse("a | b & !c").unwrap()), "(a|(b&!c))");
        assert_eq!(render(&parse("a & b & c").unwrap()), "((a&b)&c)");
        assert_eq!(render(&parse(" !(a|b) ").unwrap()), "!(a|b)");
    }

    #[test]
    fn canonical_reparses() {
        let f = parse("(x | !y) & (z | (x & y))").unwrap();
        assert_eq!(parse(&render(&f)).unwrap(), f);
    }

    #[test]
    fn errors() {
        assert!(parse("").is_err());
        assert!(parse("a &").is_err());
        assert!(parse("(a | b").is_err());
        assert!(parse("a b").is_err());
        assert!(parse("a + b").is_err());
    }

    #[test]
    fn eval_uses_assignment() {
        let f = parse("a & !b | c").unwrap();
        let val = |a: bool, b: bool, c: bool| f.eval(&|v: &String| match v.as_str() {
            "a" => a,
            "b" => b,
            _ => c,
        });
        assert!(val(true, false, false));
        assert!(!val(true, true, false));
        assert!(val(false, true, true));
    }
}
