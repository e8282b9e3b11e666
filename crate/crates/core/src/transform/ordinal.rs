//! Symbolic ordinals built from `0`, `1`, `ω`, `ω₁` and `+`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrdinalAtom {
    One,
    Omega,
    OmegaOne,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrdinalExpr {
    Zero,
    One,
    Omega,
    OmegaOne,
    Sum(Box<OrdinalExpr>, Box<OrdinalExpr>),
}

impl OrdinalExpr {
    pub fn sum(a: OrdinalExpr, b: OrdinalExpr) -> Self {
        OrdinalExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn finite(n: u64) -> Self {
        (0..n).fold(OrdinalExpr::Zero, |acc, _| match acc {
            OrdinalExpr::Zero => OrdinalExpr::One,
            other => OrdinalExpr::sum(other, OrdinalExpr::One),
        })
    }

    fn atoms(&self, out: &mut Vec<OrdinalAtom>) {
        match self {
            OrdinalExpr::Zero => {}
            OrdinalExpr::One => out.push(OrdinalAtom::One),
            OrdinalExpr::Omega => out.push(OrdinalAtom::Omega),
            OrdinalExpr::OmegaOne => out.push(OrdinalAtom::OmegaOne),
            OrdinalExpr::Sum(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
        }
    }

    /// Cantor-style normal form as a weakly decreasing list of atoms.
    pub fn terms(&self) -> Vec<OrdinalAtom> {
        let mut atoms = Vec::new();
        self.atoms(&mut atoms);
        // A term absorbs every strictly smaller term to its left
        // (n + ω = ω, α + ω₁ = ω₁ for countable α).
        let mut stack: Vec<OrdinalAtom> = Vec::new();
        for t in atoms {
            while stack.last().is_some_and(|&s| s < t) {
                stack.pop();
            }
            stack.push(t);
        }
        stack
    }

    pub fn is_finite(&self) -> bool {
        self.terms().iter().all(|&t| t == OrdinalAtom::One)
    }

    pub fn as_finite(&self) -> Option<u64> {
        let t = self.terms();
        t.iter().all(|&a| a == OrdinalAtom::One).then_some(t.len() as u64)
    }
}

/// Canonical representative: right-nested sum of the normal-form terms.
pub fn ord_normalize(e: &OrdinalExpr) -> OrdinalExpr {
    let atom = |a: OrdinalAtom| match a {
        OrdinalAtom::One => OrdinalExpr::One,
        OrdinalAtom::Omega => OrdinalExpr::Omega,
        OrdinalAtom::OmegaOne => OrdinalExpr::OmegaOne,
    };
    e.terms()
        .into_iter()
        .rev()
        .map(atom)
        .reduce(|acc, t| OrdinalExpr::sum(t, acc))
        .unwrap_or(OrdinalExpr::Zero)
}

impl fmt::Display for OrdinalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdinalExpr::Zero => f.write_str("0"),
            OrdinalExpr::One => f.write_str("1"),
            OrdinalExpr::Omega => f.write_str("w"),
            OrdinalExpr::OmegaOne => f.write_str("w1"),
            OrdinalExpr::Sum(a, b) => {
                write!(f, "{a} + ")?;
                match **b {
                    OrdinalExpr::Sum(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}

impl FromStr for OrdinalExpr {
    type Err = Error;

    /// Accepts `0`, `1`, `w`/`ω`, `w1`/`ω₁`, natural numbers, `+` and
    /// parentheses.
    fn from_str(s: &str) -> Result<Self, Error> {
        let toks = tokenize(s)?;
        let mut pos = 0;
        let e = parse_sum(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(Error::InvalidArgument(format!("trailing input in ordinal `{s}`")));
        }
        Ok(e)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Atom(OrdinalExpr),
    Plus,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, Error> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Tok::Plus),
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            'w' | 'ω' => {
                if matches!(chars.peek(), Some('1') | Some('₁')) {
                    chars.next();
                    out.push(Tok::Atom(OrdinalExpr::OmegaOne));
                } else {
                    out.push(Tok::Atom(OrdinalExpr::Omega));
                }
            }
            d if d.is_ascii_digit() => {
                let mut n = d.to_digit(10).unwrap() as u64;
                while let Some(&d) = chars.peek().filter(|c| c.is_ascii_digit()) {
                    n = n * 10 + d.to_digit(10).unwrap() as u64;
                    chars.next();
                }
                out.push(Tok::Atom(OrdinalExpr::finite(n)));
            }
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unexpected `{other}` in ordinal expression"
                )))
            }
        }
    }
    Ok(out)
}

fn parse_sum(toks: &[Tok], pos: &mut usize) -> Result<OrdinalExpr, Error> {
    let mut left = parse_atom(toks, pos)?;
    while toks.get(*pos) == Some(&Tok::Plus) {
        *pos += 1;
        left = OrdinalExpr::sum(left, parse_atom(toks, pos)?);
    }
    Ok(left)
}

fn parse_atom(toks: &[Tok], pos: &mut usize) -> Result<OrdinalExpr, Error> {
    match toks.get(*pos) {
        Some(Tok::Atom(a)) => {
            *pos += 1;
            Ok(a.clone())
        }
        Some(Tok::Open) => {
            *pos += 1;
            let e = parse_sum(toks, pos)?;
            if toks.get(*pos) != Some(&Tok::Close) {
                return Err(Error::InvalidArgument("expected `)` in ordinal".into()));
            }
            *pos += 1;
            Ok(e)
        }
        _ => Err(Error::InvalidArgument("expected an ordinal term".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> OrdinalExpr {
        s.parse().unwrap()
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(ord_normalize(&o("1 + w")), OrdinalExpr::Omega);
        assert_eq!(ord_normalize(&o("w + 1")), o("w + 1"));
        assert_eq!(ord_normalize(&o("(1 + 1) + w1")), OrdinalExpr::OmegaOne);
        assert_eq!(ord_normalize(&o("0 + 0")), OrdinalExpr::Zero);
        assert_eq!(ord_normalize(&o("w + 0 + 1")), o("w + 1"));
        assert_eq!(ord_normalize(&o("w1 + w + 3")), o("w1 + (w + (1 + (1 + 1)))"));
    }

    #[test]
    fn finite_values() {
        assert_eq!(o("2 + 3").as_finite(), Some(5));
        assert_eq!(o("w + 1").as_finite(), None);
        assert_eq!(o("0").as_finite(), Some(0));
    }

    #[test]
    fn display_round_trip() {
        for s in ["w + 1", "w1 + (w + 1)", "0", "1 + w"] {
            assert_eq!(o(s).to_string(), s);
        }
    }
}
