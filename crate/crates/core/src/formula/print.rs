//! Printing in the concrete syntax with minimal parentheses.

use std::fmt::{self, Display, Write};

use super::Formula;

const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_UNARY: u8 = 3;

impl Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, 0, true, f)
    }
}

/// `ctx` is the binding strength demanded by the parent; `rightmost` is
/// false when more input follows within the enclosing group, in which case
/// a binder must be parenthesized to stop its body from swallowing it.
fn write_formula(phi: &Formula, ctx: u8, rightmost: bool, out: &mut impl Write) -> fmt::Result {
    let (prec, is_fix) = match phi {
        Formula::Or(..) => (PREC_OR, false),
        Formula::And(..) => (PREC_AND, false),
        Formula::Fix(..) => (0, true),
        _ => (PREC_UNARY, false),
    };
    let parens = prec < ctx && !is_fix || is_fix && !rightmost;
    let rightmost = rightmost || parens;
    if parens {
        out.write_char('(')?;
    }
    match phi {
        Formula::Var(v) => write!(out, "{v}")?,
        Formula::NegVar(v) => write!(out, "~{v}")?,
        Formula::Top => out.write_str("true")?,
        Formula::Bot => out.write_str("false")?,
        Formula::Or(l, r) => {
            write_formula(l, PREC_OR, false, out)?;
            out.write_str(" \\/ ")?;
            write_formula(r, PREC_AND, rightmost, out)?;
        }
        Formula::And(l, r) => {
            write_formula(l, PREC_AND, false, out)?;
            out.write_str(" /\\ ")?;
            write_formula(r, PREC_UNARY, rightmost, out)?;
        }
        Formula::Dia(a, b) => {
            write!(out, "<{a}> ")?;
            write_formula(b, PREC_UNARY, rightmost, out)?;
        }
        Formula::Nec(a, b) => {
            write!(out, "[{a}] ")?;
            write_formula(b, PREC_UNARY, rightmost, out)?;
        }
        Formula::Fix(q, z, b) => {
            write!(out, "{} {z}. ", q.keyword())?;
            write_formula(b, 0, true, out)?;
        }
    }
    if parens {
        out.write_char(')')?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::{parse, parse_with, ParseOptions};
    use super::*;

    #[test]
    fn examples() {
        let f = Formula::mu(
            "z",
            Formula::or(Formula::var("x"), Formula::dia("a", Formula::var("z"))),
        );
        assert_eq!(f.to_string(), "mu z. x \\/ <a> z");
        assert_eq!(Formula::Top.to_string(), "true");
        assert_eq!(Formula::nec("a", Formula::Bot).to_string(), "[a] false");
    }

    #[test]
    fn parenthesization() {
        for src in [
            "(x \\/ y) /\\ z",
            "x \\/ (y \\/ z)",
            "x /\\ (y /\\ z)",
            "(mu z. <a> z) /\\ y",
            "x /\\ mu z. <a> z \\/ y",
            "<a> (x /\\ y)",
            "<a> (mu z. z) \\/ x",
            "[a] mu z. z",
            "x /\\ (mu z. z) \\/ y",
            "~x \\/ ~y /\\ true",
        ] {
            let f = parse_with(src, ParseOptions::internal()).unwrap().formula;
            assert_eq!(f.to_string(), src);
            assert_eq!(parse(&f.to_string()).unwrap(), f);
        }
    }
}
