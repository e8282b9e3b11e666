//! Translations along `p`-definitions of one frame inside another.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::formula::{apply_subst, dualize_keeping, parse, Formula, Substitution};
use crate::names::{fresh_name, Action, Name};

/// A family `{ψ_b(p, q) | b ∈ B}` describing each source modality `<b>`
/// by a formula over the target signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationScheme {
    /// Marks the states of the embedded structure.
    pub p: Name,
    /// The argument placeholder.
    pub q: Name,
    pub formulas: BTreeMap<Action, Formula>,
}

impl TranslationScheme {
    /// Checks that every `ψ_b` has free variables among `{p, q}` and that
    /// `q` is positive.
    ///
    /// `p` may occur negatively (the referee and Thomason schemes use `¬p`
    /// to step through auxiliary states); translation keeps it as a literal.
    pub fn new(p: Name, q: Name, formulas: BTreeMap<Action, Formula>) -> Result<Self> {
        if p == q {
            return Err(Error::InvalidScheme("p and q must differ".into()));
        }
        for (b, psi) in &formulas {
            if let Some(v) = psi.free_vars().into_iter().find(|v| *v != p && *v != q) {
                return Err(Error::InvalidScheme(format!(
                    "formula for `{b}` has extra free variable `{v}`"
                )));
            }
            if !psi.is_positive_in(&q) {
                return Err(Error::InvalidScheme(format!(
                    "`{q}` is not positive in the formula for `{b}`"
                )));
            }
        }
        Ok(TranslationScheme { p, q, formulas })
    }

    pub fn actions(&self) -> impl Iterator<Item = &Action> {
        self.formulas.keys()
    }

    /// The same scheme with the marker renamed to `p`.
    pub fn with_marker(&self, p: &Name) -> Result<Self> {
        if *p == self.p {
            return Ok(self.clone());
        }
        let mut taken: BTreeSet<Name> = BTreeSet::from([p.clone(), self.p.clone()]);
        for f in self.formulas.values() {
            taken.extend(f.all_names());
        }
        let q = if *p == self.q {
            fresh_name("q", &taken)
        } else {
            self.q.clone()
        };
        let sigma = Substitution::from_pairs([
            (self.p.clone(), Formula::Var(p.clone())),
            (self.q.clone(), Formula::Var(q.clone())),
        ]);
        let formulas = self
            .formulas
            .iter()
            .map(|(b, f)| (b.clone(), apply_subst(f, &sigma)))
            .collect();
        TranslationScheme::new(p.clone(), q, formulas)
    }
}

fn scheme_formula(src: &str) -> Formula {
    parse(src).expect("built-in scheme formula parses")
}

/// `ψ_a = p ∧ <a>(p ∧ q)` for every action: the induced submodel on `p`.
pub fn submodel_scheme<A: Into<Action>>(actions: impl IntoIterator<Item = A>) -> TranslationScheme {
    let formulas = actions
        .into_iter()
        .map(|a| {
            let a = a.into();
            let f = scheme_formula(&format!("p /\\ <{a}> (p /\\ q)"));
            (a, f)
        })
        .collect();
    TranslationScheme::new(Name::new("p"), Name::new("q"), formulas).expect("valid scheme")
}

/// Action of the monomodal target of the bimodal codings.
pub const MONO_ACTION: &str = "a";

/// Horizontal and vertical source actions of the bimodal codings.
pub const H: &str = "h";
pub const V: &str = "v";

/// `ψ_h = p ∧ ◊(p ∧ q)`, `ψ_v = p ∧ ◊(¬p ∧ ◊(p ∧ q))`: vertical edges pass
/// through one auxiliary state.
pub fn referee_scheme() -> TranslationScheme {
    let a = MONO_ACTION;
    bimodal_scheme(
        &format!("p /\\ <{a}> (p /\\ q)"),
        &format!("p /\\ <{a}> (~p /\\ <{a}> (p /\\ q))"),
    )
}

/// `ψ_h = p ∧ ◊(p ∧ q)`, `ψ_v = p ∧ ◊(¬p ∧ ◊(¬p ∧ ◊(p ∧ q)))`.
pub fn thomason_scheme() -> TranslationScheme {
    let a = MONO_ACTION;
    bimodal_scheme(
        &format!("p /\\ <{a}> (p /\\ q)"),
        &format!("p /\\ <{a}> (~p /\\ <{a}> (~p /\\ <{a}> (p /\\ q)))"),
    )
}

fn bimodal_scheme(h: &str, v: &str) -> TranslationScheme {
    let formulas = BTreeMap::from([
        (Action::new(H), scheme_formula(h)),
        (Action::new(V), scheme_formula(v)),
    ]);
    TranslationScheme::new(Name::new("p"), Name::new("q"), formulas).expect("valid scheme")
}

/// `tr(φ)` along `scheme`. Every variable `y` (free or bound) becomes
/// `p ∧ y`, `⊤` becomes `p`, `<b>ψ` becomes `ψ_b[tr ψ/q]` and `[b]ψ`
/// becomes `p ∧ ψ_b^op[tr ψ/q]`, where `ψ_b^op` is the dual of `ψ_b` with
/// `q` kept positive.
pub fn translate(phi: &Formula, scheme: &TranslationScheme) -> Result<Formula> {
    if phi.all_names().contains(&scheme.p) {
        return Err(Error::NotFresh(scheme.p.clone()));
    }
    if let Some(a) = phi.actions().into_iter().find(|a| !scheme.formulas.contains_key(a)) {
        return Err(Error::UnknownAction(a));
    }
    let keep_q = BTreeSet::from([scheme.q.clone()]);
    let duals: BTreeMap<&Action, Formula> = scheme
        .formulas
        .iter()
        .map(|(b, f)| (b, dualize_keeping(f, &keep_q)))
        .collect();
    Ok(tr(phi, scheme, &duals))
}

fn tr(phi: &Formula, scheme: &TranslationScheme, duals: &BTreeMap<&Action, Formula>) -> Formula {
    let p = || Formula::Var(scheme.p.clone());
    let plug = |psi_b: &Formula, arg: Formula| {
        apply_subst(psi_b, &Substitution::single(scheme.q.clone(), arg))
    };
    match phi {
        Formula::Var(_) | Formula::NegVar(_) => Formula::and(p(), phi.clone()),
        Formula::Bot => Formula::Bot,
        Formula::Top => p(),
        Formula::And(l, r) => Formula::and(tr(l, scheme, duals), tr(r, scheme, duals)),
        Formula::Or(l, r) => Formula::or(tr(l, scheme, duals), tr(r, scheme, duals)),
        Formula::Dia(b, body) => plug(&scheme.formulas[b], tr(body, scheme, duals)),
        Formula::Nec(b, body) => Formula::and(p(), plug(&duals[b], tr(body, scheme, duals))),
        Formula::Fix(q, z, body) => Formula::Fix(*q, z.clone(), Box::new(tr(body, scheme, duals))),
    }
}

/// Monomodal formula equivalent, at embedded states of the Thomason
/// model, to a formula over `{h, v}`: the Thomason translation with the
/// marker `p` replaced by `◊□⊥` (and `¬p` by `□◊⊤`).
pub fn thomason_translate(phi: &Formula) -> Result<Formula> {
    let p = fresh_name("p", &phi.all_names());
    let scheme = thomason_scheme().with_marker(&p)?;
    let t = translate(phi, &scheme)?;
    Ok(apply_subst(&t, &Substitution::single(p, thomason_marker())))
}

/// `◊□⊥`, true exactly at the embedded states of a Thomason model.
pub fn thomason_marker() -> Formula {
    Formula::dia(MONO_ACTION, Formula::nec(MONO_ACTION, Formula::Bot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_with, ParseOptions};

    fn p(s: &str) -> Formula {
        parse_with(s, ParseOptions::internal()).unwrap().formula
    }

    #[test]
    fn scheme_examples() {
        let s = submodel_scheme(["a"]);
        assert_eq!(s.formulas[&Action::new("a")], p("p /\\ <a> (p /\\ q)"));
        let t = thomason_scheme();
        assert_eq!(
            t.formulas[&Action::new("v")],
            p("p /\\ <a> (~p /\\ <a> (~p /\\ <a> (p /\\ q)))")
        );
        let r = referee_scheme();
        assert_eq!(r.formulas[&Action::new("h")], p("p /\\ <a> (p /\\ q)"));
    }

    #[test]
    fn translation_examples() {
        let t = thomason_scheme();
        assert_eq!(translate(&p("true"), &t).unwrap(), p("p"));
        assert_eq!(
            translate(&p("<h> y"), &t).unwrap(),
            p("p /\\ <a> (p /\\ (p /\\ y))")
        );
        assert_eq!(
            translate(&p("[h] y"), &t).unwrap(),
            p("p /\\ (~p \\/ [a] (~p \\/ p /\\ y))")
        );
        assert!(matches!(translate(&p("<b> y"), &t), Err(Error::UnknownAction(_))));
        assert!(matches!(translate(&p("<h> p"), &t), Err(Error::NotFresh(_))));
    }

    #[test]
    fn thomason_examples() {
        assert_eq!(thomason_translate(&p("true")).unwrap(), p("<a> [a] false"));
        assert_eq!(thomason_translate(&p("y")).unwrap(), p("<a> [a] false /\\ y"));
        let neg = thomason_translate(&p("[v] y")).unwrap();
        assert!(neg.to_string().contains("[a] <a> true"));
    }

    #[test]
    fn marker_renaming() {
        let s = submodel_scheme(["a"]).with_marker(&Name::new("q")).unwrap();
        assert_eq!(s.p.as_str(), "q");
        assert_eq!(s.formulas[&Action::new("a")], p("q /\\ <a> (q /\\ q1)"));
    }

    #[test]
    fn invalid_schemes() {
        let bad = BTreeMap::from([(Action::new("a"), p("<a> ~q"))]);
        assert!(TranslationScheme::new(Name::new("p"), Name::new("q"), bad).is_err());
        let extra = BTreeMap::from([(Action::new("a"), p("<a> (q /\\ r)"))]);
        assert!(TranslationScheme::new(Name::new("p"), Name::new("q"), extra).is_err());
    }
}
