//! Formulas of the modal μ-calculus in negation normal form.
//!
//! Negation is only ever applied to propositional variables; general
//! negation is available through [`dualize`]. Binders are named, and every
//! operation that pushes formulas under binders renames to avoid capture.

mod closure;
mod dual;
mod parse;
mod print;
mod subst;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::names::{fresh_suffixed, Action, Name};

pub use closure::{closure, closure_by_rules, subformulas, Closure};
pub(crate) use closure::unfold;
pub use dual::{dualize, dualize_keeping};
pub use parse::{parse, parse_with, ParseOptions, Parsed};
pub use subst::{apply_subst, standard_context, StandardContext, Substitution};

/// The two fixpoint quantifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Fp {
    Mu,
    Nu,
}

impl Fp {
    pub fn dual(self) -> Fp {
        match self {
            Fp::Mu => Fp::Nu,
            Fp::Nu => Fp::Mu,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Fp::Mu => "mu",
            Fp::Nu => "nu",
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(Name),
    NegVar(Name),
    Top,
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// `<a> φ`
    Dia(Action, Box<Formula>),
    /// `[a] φ`
    Nec(Action, Box<Formula>),
    Fix(Fp, Name, Box<Formula>),
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Path of child indices from the root of a syntax tree.
///
/// Binary connectives number their operands 0 and 1; unary ones (modalities
/// and binders) have the single child 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OccAddress(pub Vec<u8>);

impl OccAddress {
    pub fn root() -> Self {
        OccAddress(Vec::new())
    }

    pub fn child(&self, i: u8) -> Self {
        let mut v = self.0.clone();
        v.push(i);
        OccAddress(v)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses the dotted form produced by `Display` (`ε` or `-` for the root).
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" || s == "-" {
            return Some(Self::root());
        }
        s.split('.')
            .map(|p| p.parse::<u8>().ok())
            .collect::<Option<Vec<_>>>()
            .map(OccAddress)
    }
}

impl fmt::Display for OccAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Formula {
    pub fn var(n: impl Into<Name>) -> Self {
        Formula::Var(n.into())
    }

    pub fn neg_var(n: impl Into<Name>) -> Self {
        Formula::NegVar(n.into())
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn dia(a: impl Into<Action>, f: Formula) -> Self {
        Formula::Dia(a.into(), Box::new(f))
    }

    pub fn nec(a: impl Into<Action>, f: Formula) -> Self {
        Formula::Nec(a.into(), Box::new(f))
    }

    pub fn mu(z: impl Into<Name>, f: Formula) -> Self {
        Formula::Fix(Fp::Mu, z.into(), Box::new(f))
    }

    pub fn nu(z: impl Into<Name>, f: Formula) -> Self {
        Formula::Fix(Fp::Nu, z.into(), Box::new(f))
    }

    pub fn fix(q: Fp, z: impl Into<Name>, f: Formula) -> Self {
        Formula::Fix(q, z.into(), Box::new(f))
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `false` when empty.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bot)
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Var(_) | Formula::NegVar(_) | Formula::Top | Formula::Bot => vec![],
            Formula::And(l, r) | Formula::Or(l, r) => vec![l, r],
            Formula::Dia(_, b) | Formula::Nec(_, b) | Formula::Fix(_, _, b) => vec![b],
        }
    }

    /// Number of syntax-tree nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(|c| c.depth())
            .max()
            .unwrap_or(0)
    }

    pub fn at(&self, addr: &OccAddress) -> Option<&Formula> {
        let mut cur = self;
        for &i in &addr.0 {
            cur = *cur.children().get(i as usize)?;
        }
        Some(cur)
    }

    /// All occurrences in preorder, paired with their addresses.
    pub fn occurrences(&self) -> Vec<(OccAddress, &Formula)> {
        fn go<'a>(f: &'a Formula, addr: OccAddress, out: &mut Vec<(OccAddress, &'a Formula)>) {
            out.push((addr.clone(), f));
            for (i, c) in f.children().into_iter().enumerate() {
                go(c, addr.child(i as u8), out);
            }
        }
        let mut out = Vec::new();
        go(self, OccAddress::root(), &mut out);
        out
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a Name>, out: &mut BTreeSet<Name>) {
        match self {
            Formula::Var(v) | Formula::NegVar(v) => {
                if !bound.contains(&v) {
                    out.insert(v.clone());
                }
            }
            Formula::Fix(_, z, b) => {
                bound.push(z);
                b.collect_free(bound, out);
                bound.pop();
            }
            _ => {
                for c in self.children() {
                    c.collect_free(bound, out);
                }
            }
        }
    }

    pub fn has_free(&self, x: &Name) -> bool {
        match self {
            Formula::Var(v) | Formula::NegVar(v) => v == x,
            Formula::Fix(_, z, b) => z != x && b.has_free(x),
            _ => self.children().iter().any(|c| c.has_free(x)),
        }
    }

    pub fn bound_vars(&self) -> BTreeSet<Name> {
        self.occurrences()
            .into_iter()
            .filter_map(|(_, f)| match f {
                Formula::Fix(_, z, _) => Some(z.clone()),
                _ => None,
            })
            .collect()
    }

    /// Every variable name occurring anywhere, free, bound, or as a binder.
    pub fn all_names(&self) -> BTreeSet<Name> {
        self.occurrences()
            .into_iter()
            .filter_map(|(_, f)| match f {
                Formula::Var(v) | Formula::NegVar(v) | Formula::Fix(_, v, _) => Some(v.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn actions(&self) -> BTreeSet<Action> {
        self.occurrences()
            .into_iter()
            .filter_map(|(_, f)| match f {
                Formula::Dia(a, _) | Formula::Nec(a, _) => Some(a.clone()),
                _ => None,
            })
            .collect()
    }

    /// No free occurrence of `x` is negated.
    pub fn is_positive_in(&self, x: &Name) -> bool {
        match self {
            Formula::NegVar(v) => v != x,
            Formula::Fix(_, z, b) => z == x || b.is_positive_in(x),
            _ => self.children().iter().all(|c| c.is_positive_in(x)),
        }
    }

    /// Every binder variable occurs only positively in its body.
    pub fn binders_positive(&self) -> bool {
        match self {
            Formula::Fix(_, z, b) => b.is_positive_in(z) && b.binders_positive(),
            _ => self.children().iter().all(|c| c.binders_positive()),
        }
    }

    /// No bound variable is also free, and each bound variable has exactly
    /// one binder.
    pub fn is_well_named(&self) -> bool {
        let free = self.free_vars();
        let mut seen = BTreeSet::new();
        for (_, f) in self.occurrences() {
            if let Formula::Fix(_, z, _) = f {
                if free.contains(z) || !seen.insert(z.clone()) {
                    return false;
                }
            }
        }
        true
    }

    /// Number of fixpoint binders.
    pub fn binder_count(&self) -> usize {
        self.occurrences()
            .iter()
            .filter(|(_, f)| matches!(f, Formula::Fix(..)))
            .count()
    }

    /// α-normal representative: every bound variable renamed to `%d` where
    /// `d` is its binder's nesting level. Two formulas are α-equivalent iff
    /// their canonical forms are equal.
    pub fn canonical(&self) -> Formula {
        fn go(f: &Formula, env: &mut Vec<(Name, Name)>) -> Formula {
            let lookup = |env: &Vec<(Name, Name)>, v: &Name| {
                env.iter()
                    .rev()
                    .find(|(orig, _)| orig == v)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(|| v.clone())
            };
            match f {
                Formula::Var(v) => Formula::Var(lookup(env, v)),
                Formula::NegVar(v) => Formula::NegVar(lookup(env, v)),
                Formula::Top => Formula::Top,
                Formula::Bot => Formula::Bot,
                Formula::And(l, r) => Formula::and(go(l, env), go(r, env)),
                Formula::Or(l, r) => Formula::or(go(l, env), go(r, env)),
                Formula::Dia(a, b) => Formula::Dia(a.clone(), Box::new(go(b, env))),
                Formula::Nec(a, b) => Formula::Nec(a.clone(), Box::new(go(b, env))),
                Formula::Fix(q, z, b) => {
                    let c = Name::new(format!("%{}", env.len()));
                    env.push((z.clone(), c.clone()));
                    let body = go(b, env);
                    env.pop();
                    Formula::Fix(*q, c, Box::new(body))
                }
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        self == other || self.canonical() == other.canonical()
    }

    /// Renames bound variables so the result is well-named.
    ///
    /// Binders are visited in preorder; a binder keeps its name unless that
    /// name is free in the formula or already used by an earlier binder, in
    /// which case it becomes `name1`, `name2`, ... (the first name unused
    /// anywhere). Already well-named formulas are returned unchanged.
    pub fn make_well_named(&self) -> Formula {
        let mut taken = self.all_names();
        let mut used: BTreeSet<Name> = self.free_vars();
        fn go(
            f: &Formula,
            env: &mut Vec<(Name, Name)>,
            used: &mut BTreeSet<Name>,
            taken: &mut BTreeSet<Name>,
        ) -> Formula {
            let lookup = |env: &Vec<(Name, Name)>, v: &Name| {
                env.iter()
                    .rev()
                    .find(|(orig, _)| orig == v)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(|| v.clone())
            };
            match f {
                Formula::Var(v) => Formula::Var(lookup(env, v)),
                Formula::NegVar(v) => Formula::NegVar(lookup(env, v)),
                Formula::Top => Formula::Top,
                Formula::Bot => Formula::Bot,
                Formula::And(l, r) => {
                    let l = go(l, env, used, taken);
                    Formula::and(l, go(r, env, used, taken))
                }
                Formula::Or(l, r) => {
                    let l = go(l, env, used, taken);
                    Formula::or(l, go(r, env, used, taken))
                }
                Formula::Dia(a, b) => Formula::Dia(a.clone(), Box::new(go(b, env, used, taken))),
                Formula::Nec(a, b) => Formula::Nec(a.clone(), Box::new(go(b, env, used, taken))),
                Formula::Fix(q, z, b) => {
                    let new = if used.contains(z) {
                        let n = fresh_suffixed(z.as_str(), taken);
                        taken.insert(n.clone());
                        n
                    } else {
                        z.clone()
                    };
                    used.insert(new.clone());
                    env.push((z.clone(), new.clone()));
                    let body = go(b, env, used, taken);
                    env.pop();
                    Formula::Fix(*q, new, Box::new(body))
                }
            }
        }
        go(self, &mut Vec::new(), &mut used, &mut taken)
    }

    /// Simultaneously renames free occurrences; the new names must not be
    /// bound anywhere in `self`.
    pub(crate) fn rename_free(&self, map: &BTreeMap<Name, Name>) -> Formula {
        match self {
            Formula::Var(v) => Formula::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            Formula::NegVar(v) => {
                Formula::NegVar(map.get(v).cloned().unwrap_or_else(|| v.clone()))
            }
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::And(l, r) => Formula::and(l.rename_free(map), r.rename_free(map)),
            Formula::Or(l, r) => Formula::or(l.rename_free(map), r.rename_free(map)),
            Formula::Dia(a, b) => Formula::Dia(a.clone(), Box::new(b.rename_free(map))),
            Formula::Nec(a, b) => Formula::Nec(a.clone(), Box::new(b.rename_free(map))),
            Formula::Fix(q, z, b) => {
                if map.contains_key(z) {
                    let mut inner = map.clone();
                    inner.remove(z);
                    Formula::Fix(*q, z.clone(), Box::new(b.rename_free(&inner)))
                } else {
                    Formula::Fix(*q, z.clone(), Box::new(b.rename_free(map)))
                }
            }
        }
    }

    /// Replaces free occurrences of the literal `x` by `pos` and of `¬x` by
    /// `neg`. Capture-avoiding.
    pub fn replace_literal(&self, x: &Name, pos: &Formula, neg: &Formula) -> Formula {
        let fresh_x = crate::names::fresh_name(
            "lit",
            &self
                .all_names()
                .union(&pos.all_names())
                .chain(neg.all_names().iter())
                .cloned()
                .collect(),
        );
        // ¬x ↦ fresh, then simultaneous substitution of both.
        let marked = self.map_neg_literal(x, &fresh_x);
        let sigma = Substitution::from_pairs([(x.clone(), pos.clone()), (fresh_x, neg.clone())]);
        apply_subst(&marked, &sigma)
    }

    fn map_neg_literal(&self, x: &Name, to: &Name) -> Formula {
        match self {
            Formula::NegVar(v) if v == x => Formula::Var(to.clone()),
            Formula::Var(_) | Formula::NegVar(_) | Formula::Top | Formula::Bot => self.clone(),
            Formula::And(l, r) => {
                Formula::and(l.map_neg_literal(x, to), r.map_neg_literal(x, to))
            }
            Formula::Or(l, r) => Formula::or(l.map_neg_literal(x, to), r.map_neg_literal(x, to)),
            Formula::Dia(a, b) => Formula::Dia(a.clone(), Box::new(b.map_neg_literal(x, to))),
            Formula::Nec(a, b) => Formula::Nec(a.clone(), Box::new(b.map_neg_literal(x, to))),
            Formula::Fix(q, z, b) if z == x => Formula::Fix(*q, z.clone(), b.clone()),
            Formula::Fix(q, z, b) => Formula::Fix(*q, z.clone(), Box::new(b.map_neg_literal(x, to))),
        }
    }

    /// Fails with [`Error::IllAddressed`] when `addr` is not a valid path.
    pub fn subformula(&self, addr: &OccAddress) -> Result<&Formula> {
        self.at(addr).ok_or_else(|| Error::IllAddressed(addr.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_with(s, ParseOptions::internal()).unwrap().formula
    }

    #[test]
    fn binding_accounting() {
        let f = p("mu z. x \\/ <a> z");
        assert_eq!(f.free_vars(), [Name::new("x")].into_iter().collect());
        let g = p("mu z. nu w. z /\\ w");
        assert_eq!(
            g.bound_vars(),
            [Name::new("z"), Name::new("w")].into_iter().collect()
        );
        let h = p("~y \\/ x");
        assert!(h.is_positive_in(&Name::new("x")));
        assert!(!h.is_positive_in(&Name::new("y")));
    }

    #[test]
    fn well_naming_examples() {
        let f = p("(mu z. <a> z) /\\ (mu z. [a] z)");
        assert!(!f.is_well_named());
        assert_eq!(f.make_well_named(), p("(mu z. <a> z) /\\ (mu z1. [a] z1)"));

        let g = p("z /\\ mu z. <a> z");
        assert_eq!(g.make_well_named(), p("z /\\ mu z1. <a> z1"));

        let h = p("mu z. x \\/ <a> z");
        assert!(h.is_well_named());
        assert_eq!(h.make_well_named(), h);
    }

    #[test]
    fn well_naming_avoids_existing_suffixes() {
        let f = p("(mu z. <a> z) /\\ (mu z. [a] z) /\\ z1");
        let w = f.make_well_named();
        assert!(w.is_well_named());
        assert!(w.alpha_eq(&f));
        assert_eq!(w, p("(mu z. <a> z) /\\ (mu z2. [a] z2) /\\ z1"));
    }

    #[test]
    fn alpha_equivalence() {
        assert!(p("mu z. <a> z").alpha_eq(&p("mu w. <a> w")));
        assert!(!p("mu z. <a> z").alpha_eq(&p("nu z. <a> z")));
        assert!(!p("mu z. <a> x").alpha_eq(&p("mu x. <a> x")));
    }

    #[test]
    fn addresses() {
        let f = p("mu z. x \\/ <a> z");
        let addr = OccAddress(vec![0, 1, 0]);
        assert_eq!(f.at(&addr), Some(&Formula::var("z")));
        assert_eq!(addr.to_string(), "0.1.0");
        assert_eq!(OccAddress::parse("0.1.0"), Some(addr));
        assert_eq!(OccAddress::parse("ε"), Some(OccAddress::root()));
        assert!(f.subformula(&OccAddress(vec![1])).is_err());
    }

    #[test]
    fn replace_literal_handles_both_polarities() {
        let f = p("p /\\ <a> (~p \\/ y)");
        let got = f.replace_literal(&Name::new("p"), &p("<a> [a] false"), &p("[a] <a> true"));
        assert_eq!(got, p("<a> [a] false /\\ <a> ([a] <a> true \\/ y)"));
    }
}
