//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! formula ::= disj
//! disj    ::= conj ( "\/" conj )*
//! conj    ::= unary ( "/\" unary )*
//! unary   ::= "~" unary | "<" ident ">" unary | "[" ident "]" unary
//!           | ("mu" | "nu") ident "." formula
//!           | "true" | "false" | ident | "(" formula ")"
//! ```
//!
//! A binder body extends as far to the right as possible. `~` on anything
//! other than a variable is expanded with [`dualize`](super::dualize) and
//! the position is reported in [`Parsed::expanded_negations`].

use crate::error::{Error, Position, Result};
use crate::names::{Action, Name};

use super::{dualize, Formula, Fp};

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Accept identifiers carrying the reserved boxed-copy suffix (`x#b`,
    /// `x#b2`, ...), as printed by the transformations.
    pub allow_reserved: bool,
}

impl ParseOptions {
    pub fn internal() -> Self {
        ParseOptions {
            allow_reserved: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Parsed {
    pub formula: Formula,
    /// Positions of `~` applied to a compound formula.
    pub expanded_negations: Vec<Position>,
}

/// Parses user input; reserved names are rejected.
pub fn parse(text: &str) -> Result<Formula> {
    parse_with(text, ParseOptions::default()).map(|p| p.formula)
}

pub fn parse_with(text: &str, opts: ParseOptions) -> Result<Parsed> {
    let mut p = Parser {
        text,
        pos: 0,
        opts,
        binders: Vec::new(),
        expanded: Vec::new(),
    };
    let formula = p.formula()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error_here("unexpected trailing input"));
    }
    Ok(Parsed {
        formula,
        expanded_negations: p.expanded,
    })
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    opts: ParseOptions,
    /// Variables bound by enclosing binders, innermost last.
    binders: Vec<Name>,
    expanded: Vec<Position>,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        loop {
            let r = self.rest();
            let trimmed = r.trim_start();
            self.pos += r.len() - trimmed.len();
            // Line comments are allowed so formula files can be annotated.
            if trimmed.starts_with('#') {
                let end = trimmed.find('\n').unwrap_or(trimmed.len());
                self.pos += end;
            } else {
                break;
            }
        }
    }

    fn error_at(&self, offset: usize, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: Position::locate(self.text, offset),
            msg: msg.into(),
        }
    }

    fn error_here(&self, msg: &str) -> Error {
        let found = match self.rest().chars().next() {
            Some(c) => format!("{msg}, found `{c}`"),
            None => format!("{msg}, found end of input"),
        };
        self.error_at(self.pos, found)
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error_here(&format!("expected `{tok}`")))
        }
    }

    /// Scans an identifier-shaped word without consuming it.
    fn peek_word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let r = self.rest();
        let mut chars = r.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() => {}
            _ => return None,
        }
        let mut end = r.len();
        for (i, c) in chars {
            if !(c.is_ascii_alphanumeric() || c == '_') {
                end = i;
                break;
            }
        }
        // Reserved suffix: `#b` optionally followed by digits.
        let tail = &r[end..];
        if let Some(after) = tail.strip_prefix("#b") {
            let digits = after.len() - after.trim_start_matches(|c: char| c.is_ascii_digit()).len();
            end += 2 + digits;
        }
        Some(&r[..end])
    }

    fn ident(&mut self, what: &str) -> Result<(Name, usize)> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let Some(word) = self.peek_word() else {
            return Err(self.error_here(&format!("expected {what}")));
        };
        if matches!(word, "mu" | "nu" | "true" | "false") {
            return Err(self.error_at(start, format!("keyword `{word}` cannot be used as {what}")));
        }
        if word.contains('#') && !self.opts.allow_reserved {
            return Err(self.error_at(
                start,
                format!("`{word}` uses the reserved `#b` suffix"),
            ));
        }
        self.pos += word.len();
        Ok((Name::new(word), start))
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut left = self.conj()?;
        while self.eat("\\/") {
            let right = self.conj()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while self.eat("/\\") {
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("~") {
            let inner = self.unary()?;
            return self.negate(inner, start);
        }
        if self.eat("<") {
            let (a, _) = self.ident("an action")?;
            self.expect(">")?;
            let body = self.unary()?;
            return Ok(Formula::Dia(Action::new(a.as_str()), Box::new(body)));
        }
        if self.eat("[") {
            let (a, _) = self.ident("an action")?;
            self.expect("]")?;
            let body = self.unary()?;
            return Ok(Formula::Nec(Action::new(a.as_str()), Box::new(body)));
        }
        if self.eat("(") {
            let f = self.formula()?;
            self.expect(")")?;
            return Ok(f);
        }
        match self.peek_word() {
            Some(kw @ ("mu" | "nu")) => {
                self.pos += kw.len();
                let q = if kw == "mu" { Fp::Mu } else { Fp::Nu };
                let (z, _) = self.ident("a bound variable")?;
                self.expect(".")?;
                self.binders.push(z.clone());
                let body = self.formula();
                self.binders.pop();
                Ok(Formula::Fix(q, z, Box::new(body?)))
            }
            Some("true") => {
                self.pos += 4;
                Ok(Formula::Top)
            }
            Some("false") => {
                self.pos += 5;
                Ok(Formula::Bot)
            }
            Some(_) => {
                let (v, _) = self.ident("a variable")?;
                Ok(Formula::Var(v))
            }
            None => Err(self.error_here("expected a formula")),
        }
    }

    fn negate(&mut self, inner: Formula, at: usize) -> Result<Formula> {
        let negated = match inner {
            Formula::Var(v) => Formula::NegVar(v),
            other => {
                self.expanded.push(Position::locate(self.text, at));
                dualize(&other)
            }
        };
        for z in self.binders.iter().rev() {
            if !negated.is_positive_in(z) {
                return Err(Error::PositivityViolation {
                    var: z.clone(),
                    pos: Position::locate(self.text, at),
                });
            }
        }
        Ok(negated)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse("mu z. x \\/ <a> z").unwrap(),
            Formula::mu("z", Formula::or(Formula::var("x"), Formula::dia("a", Formula::var("z"))))
        );
        assert_eq!(
            parse("mu x. phi /\\ psi").unwrap(),
            Formula::mu("x", Formula::and(Formula::var("phi"), Formula::var("psi")))
        );
        assert!(matches!(
            parse("mu z. ~z"),
            Err(Error::PositivityViolation { .. })
        ));
    }

    #[test]
    fn precedence() {
        let f = parse("a \\/ b /\\ c").unwrap();
        assert_eq!(
            f,
            Formula::or(Formula::var("a"), Formula::and(Formula::var("b"), Formula::var("c")))
        );
        let g = parse("<a> x /\\ y").unwrap();
        assert_eq!(g, Formula::and(Formula::dia("a", Formula::var("x")), Formula::var("y")));
        let h = parse("x /\\ nu z. y \\/ z").unwrap();
        assert_eq!(
            h,
            Formula::and(
                Formula::var("x"),
                Formula::nu("z", Formula::or(Formula::var("y"), Formula::var("z")))
            )
        );
    }

    #[test]
    fn general_negation_is_expanded() {
        let p = parse_with("~(x /\\ <a> y)", ParseOptions::default()).unwrap();
        assert_eq!(p.formula, parse("~x \\/ [a] ~y").unwrap());
        assert_eq!(p.expanded_negations.len(), 1);
        // Negating a closed fixpoint is fine; negating its variable is not.
        assert!(parse("~(mu z. <a> z)").is_ok());
        assert!(parse("mu z. ~(<a> z)").is_err());
        assert!(parse("mu z. ~(<a> y)").is_ok());
    }

    #[test]
    fn reserved_names() {
        assert!(parse("x#b").is_err());
        let f = parse_with("x#b2 /\\ x", ParseOptions::internal()).unwrap().formula;
        assert_eq!(f, Formula::and(Formula::var("x#b2"), Formula::var("x")));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("x /\\\n  (y") {
            Err(Error::Syntax { pos, .. }) => {
                assert_eq!(pos.line, 2);
                assert_eq!(pos.column, 5);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("mu true. x").is_err());
        assert!(parse("x y").is_err());
        assert!(parse("").is_err());
    }
}
