use std::collections::BTreeSet;

use crate::names::Name;

use super::Formula;

/// Negation pushed through to the literals: swaps ∧/∨, ⊤/⊥, ◊/□, μ/ν and
/// flips free literals. Bound variables stay positive.
pub fn dualize(phi: &Formula) -> Formula {
    dualize_keeping(phi, &BTreeSet::new())
}

/// As [`dualize`], but free variables in `keep` are not flipped. With
/// `keep = {q}` this yields the negation of `phi[¬q/q]`.
pub fn dualize_keeping(phi: &Formula, keep: &BTreeSet<Name>) -> Formula {
    fn go(f: &Formula, keep: &BTreeSet<Name>, bound: &mut Vec<Name>) -> Formula {
        match f {
            Formula::Var(v) if bound.contains(v) || keep.contains(v) => f.clone(),
            Formula::Var(v) => Formula::NegVar(v.clone()),
            Formula::NegVar(v) if keep.contains(v) && !bound.contains(v) => f.clone(),
            Formula::NegVar(v) => Formula::Var(v.clone()),
            Formula::Top => Formula::Bot,
            Formula::Bot => Formula::Top,
            Formula::And(l, r) => Formula::or(go(l, keep, bound), go(r, keep, bound)),
            Formula::Or(l, r) => Formula::and(go(l, keep, bound), go(r, keep, bound)),
            Formula::Dia(a, b) => Formula::Nec(a.clone(), Box::new(go(b, keep, bound))),
            Formula::Nec(a, b) => Formula::Dia(a.clone(), Box::new(go(b, keep, bound))),
            Formula::Fix(q, z, b) => {
                bound.push(z.clone());
                let body = go(b, keep, bound);
                bound.pop();
                Formula::Fix(q.dual(), z.clone(), Box::new(body))
            }
        }
    }
    go(phi, keep, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(
            dualize(&parse("p /\\ <a> (p /\\ q)").unwrap()),
            parse("~p \\/ [a] (~p \\/ ~q)").unwrap()
        );
        assert_eq!(
            dualize(&parse("mu z. x \\/ <a> z").unwrap()),
            parse("nu z. ~x /\\ [a] z").unwrap()
        );
        let f = parse("nu w. (mu z. ~y \\/ [b] z) /\\ <a> w /\\ true").unwrap();
        assert_eq!(dualize(&dualize(&f)), f);
    }

    #[test]
    fn keeping_a_variable() {
        let keep = BTreeSet::from([Name::new("q")]);
        assert_eq!(
            dualize_keeping(&parse("p /\\ <a> (p /\\ q)").unwrap(), &keep),
            parse("~p \\/ [a] (~p \\/ q)").unwrap()
        );
    }
}
