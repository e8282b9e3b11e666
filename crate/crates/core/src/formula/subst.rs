//! Simultaneous, capture-avoiding substitution and standard contexts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::names::{fresh_suffixed, Name};

use super::{Formula, OccAddress};

/// `[ψ₁/y₁, …, ψₙ/yₙ]`, applied simultaneously. Entries keep insertion
/// order; inserting an existing variable replaces its formula.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    pairs: Vec<(Name, Formula)>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(y: impl Into<Name>, psi: Formula) -> Self {
        Substitution {
            pairs: vec![(y.into(), psi)],
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Name, Formula)>) -> Self {
        let mut s = Substitution::new();
        for (y, psi) in pairs {
            s.insert(y, psi);
        }
        s
    }

    pub fn insert(&mut self, y: Name, psi: Formula) {
        match self.pairs.iter_mut().find(|(v, _)| *v == y) {
            Some(slot) => slot.1 = psi,
            None => self.pairs.push((y, psi)),
        }
    }

    pub fn get(&self, y: &Name) -> Option<&Formula> {
        self.pairs.iter().find(|(v, _)| v == y).map(|(_, f)| f)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Name> {
        self.pairs.iter().map(|(v, _)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Formula)> {
        self.pairs.iter().map(|(v, f)| (v, f))
    }

    /// `σ₁ · σ₂ = [φ₁σ₂/x₁, …, φₙσ₂/xₙ]`: the domain is that of `self`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        Substitution {
            pairs: self
                .pairs
                .iter()
                .map(|(x, f)| (x.clone(), apply_subst(f, other)))
                .collect(),
        }
    }

    pub fn apply(&self, phi: &Formula) -> Formula {
        apply_subst(phi, self)
    }

    fn without(&self, z: &Name) -> Substitution {
        Substitution {
            pairs: self.pairs.iter().filter(|(v, _)| v != z).cloned().collect(),
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (y, psi)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{psi}/{y}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Replaces every free occurrence of each domain variable simultaneously.
/// A binder whose variable would capture a free variable of an inserted
/// formula is renamed to the first unused `z1`, `z2`, ...
pub fn apply_subst(phi: &Formula, sigma: &Substitution) -> Formula {
    if sigma.is_empty() {
        return phi.clone();
    }
    match phi {
        Formula::Var(v) => sigma.get(v).cloned().unwrap_or_else(|| phi.clone()),
        // ¬y[ψ/y] is ¬ψ, pushed back into negation normal form.
        Formula::NegVar(v) => sigma
            .get(v)
            .map(super::dualize)
            .unwrap_or_else(|| phi.clone()),
        Formula::Top | Formula::Bot => phi.clone(),
        Formula::And(l, r) => Formula::and(apply_subst(l, sigma), apply_subst(r, sigma)),
        Formula::Or(l, r) => Formula::or(apply_subst(l, sigma), apply_subst(r, sigma)),
        Formula::Dia(a, b) => Formula::Dia(a.clone(), Box::new(apply_subst(b, sigma))),
        Formula::Nec(a, b) => Formula::Nec(a.clone(), Box::new(apply_subst(b, sigma))),
        Formula::Fix(q, z, b) => {
            let inner = sigma.without(z);
            let live: Vec<&Formula> = inner
                .pairs
                .iter()
                .filter(|(y, _)| b.has_free(y))
                .map(|(_, f)| f)
                .collect();
            if live.is_empty() {
                return phi.clone();
            }
            if live.iter().any(|f| f.has_free(z)) {
                let mut taken = b.all_names();
                taken.insert(z.clone());
                for (y, f) in &inner.pairs {
                    taken.insert(y.clone());
                    taken.extend(f.free_vars());
                }
                let fresh = fresh_suffixed(z.as_str(), &taken);
                let renamed = b.rename_free(&BTreeMap::from([(z.clone(), fresh.clone())]));
                Formula::Fix(*q, fresh, Box::new(apply_subst(&renamed, &inner)))
            } else {
                Formula::Fix(*q, z.clone(), Box::new(apply_subst(b, &inner)))
            }
        }
    }
}

/// The standard context `σ^φ_ψ = [Qⁿzₙ.ψₙ/zₙ] · … · [Q¹z₁.ψ₁/z₁]` of a
/// subformula occurrence, kept as its chain of single-variable factors.
///
/// Factors are stored in application order: the innermost binder first.
/// Collapsing the chain with [`Substitution::compose`] would drop the
/// domains of all but the first factor, so the chain is applied factor by
/// factor instead.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct StandardContext {
    factors: Vec<(Name, Formula)>,
}

impl StandardContext {
    pub fn factors(&self) -> impl Iterator<Item = (&Name, &Formula)> {
        self.factors.iter().map(|(z, f)| (z, f))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn apply(&self, psi: &Formula) -> Formula {
        self.factors.iter().fold(psi.clone(), |acc, (z, f)| {
            apply_subst(&acc, &Substitution::single(z.clone(), f.clone()))
        })
    }

    /// An equivalent single simultaneous substitution: each factor's
    /// formula closed under the factors applied after it.
    pub fn as_simultaneous(&self) -> Substitution {
        let mut out = Substitution::new();
        for (i, (z, f)) in self.factors.iter().enumerate() {
            let rest = StandardContext {
                factors: self.factors[i + 1..].to_vec(),
            };
            out.insert(z.clone(), rest.apply(f));
        }
        out
    }
}

impl fmt::Display for StandardContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("[]");
        }
        for (i, (z, psi)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" · ")?;
            }
            write!(f, "[{psi}/{z}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for StandardContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Standard context of the subformula occurrence at `occ` in a well-named
/// `phi`.
///
/// The binders included are those of `phi` whose variable is free in the
/// occurrence, closed under the variables free in the included binders, so
/// that applying the context always yields a formula without dangling bound
/// variables of `phi`.
pub fn standard_context(phi: &Formula, occ: &OccAddress) -> Result<StandardContext> {
    if !phi.is_well_named() {
        return Err(Error::NotWellNamed);
    }
    let psi = phi.subformula(occ)?;
    // Binder ancestors, outermost first.
    let mut ancestors = Vec::new();
    for depth in 0..occ.0.len() {
        let prefix = OccAddress(occ.0[..depth].to_vec());
        if let Some(f @ Formula::Fix(_, z, _)) = phi.at(&prefix) {
            ancestors.push((z.clone(), f.clone()));
        }
    }
    let mut needed: BTreeSet<Name> = psi.free_vars();
    let mut factors = Vec::new();
    for (z, binder) in ancestors.into_iter().rev() {
        if needed.contains(&z) {
            needed.extend(binder.free_vars());
            factors.push((z, binder));
        }
    }
    Ok(StandardContext { factors })
}

#[cfg(test)]
mod tests {
    use super::super::{parse_with, ParseOptions};
    use super::*;

    fn p(s: &str) -> Formula {
        parse_with(s, ParseOptions::internal()).unwrap().formula
    }

    #[test]
    fn application_examples() {
        let s = Substitution::single("x", p("y"));
        assert_eq!(apply_subst(&p("x \\/ y"), &s), p("y \\/ y"));

        let capture = Substitution::single("x", p("z"));
        assert_eq!(
            apply_subst(&p("mu z. x \\/ <a> z"), &capture),
            p("mu z1. z \\/ <a> z1")
        );

        let f = p("mu z. x \\/ <a> z");
        assert_eq!(apply_subst(&f, &Substitution::new()), f);
    }

    #[test]
    fn simultaneity() {
        let s = Substitution::from_pairs([(Name::new("x"), p("y")), (Name::new("y"), p("x"))]);
        assert_eq!(apply_subst(&p("x /\\ ~y \\/ y"), &s), p("y /\\ ~x \\/ x"));
        let t = Substitution::single("y", p("<a> w"));
        assert_eq!(apply_subst(&p("~y"), &t), p("[a] ~w"));
    }

    #[test]
    fn bound_occurrences_untouched() {
        let s = Substitution::single("z", p("false"));
        assert_eq!(apply_subst(&p("z /\\ mu z. <a> z"), &s), p("false /\\ mu z. <a> z"));
    }

    #[test]
    fn composition_examples() {
        let s1 = Substitution::single("x", p("<a> q"));
        let s2 = Substitution::single("q", p("false"));
        assert_eq!(s1.compose(&s2), Substitution::single("x", p("<a> false")));
        assert_eq!(s1.compose(&Substitution::new()), s1);
        assert_eq!(Substitution::new().compose(&s1), Substitution::new());
    }

    #[test]
    fn composition_contract() {
        let phi = p("x /\\ [a] (x \\/ y)");
        let s1 = Substitution::single("x", p("<a> q"));
        let s2 = Substitution::single("q", p("false"));
        assert_eq!(
            apply_subst(&phi, &s1.compose(&s2)),
            apply_subst(&apply_subst(&phi, &s1), &s2)
        );
    }

    #[test]
    fn standard_context_examples() {
        let phi = p("mu z. x \\/ <a> z");
        let ctx = standard_context(&phi, &OccAddress(vec![0])).unwrap();
        assert_eq!(ctx.factors, vec![(Name::new("z"), phi.clone())]);

        assert!(standard_context(&phi, &OccAddress::root()).unwrap().is_empty());

        let phi = p("mu z1. nu z2. z2 /\\ z1");
        let ctx = standard_context(&phi, &OccAddress(vec![0, 0])).unwrap();
        assert_eq!(
            ctx.factors,
            vec![
                (Name::new("z2"), p("nu z2. z2 /\\ z1")),
                (Name::new("z1"), phi.clone()),
            ]
        );
        let full = ctx.apply(&p("z2 /\\ z1"));
        assert!(full.alpha_eq(&p(
            "(nu z2. z2 /\\ mu z1. nu z2. z2 /\\ z1) /\\ mu z1. nu z2. z2 /\\ z1"
        )));
        assert!(standard_context(&phi, &OccAddress(vec![1])).is_err());
        assert!(standard_context(&p("z /\\ mu z. z"), &OccAddress::root()).is_err());
    }

    #[test]
    fn transitively_needed_binders() {
        let phi = p("mu z1. nu z2. z2 /\\ z1");
        let ctx = standard_context(&phi, &OccAddress(vec![0, 0, 0])).unwrap();
        assert_eq!(ctx.len(), 2);
        assert!(ctx.apply(&p("z2")).free_vars().is_empty());
        let sim = ctx.as_simultaneous();
        assert_eq!(apply_subst(&p("z2"), &sim), ctx.apply(&p("z2")));
    }
}
