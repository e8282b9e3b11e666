//! Lifting boxed occurrences, `C(x)`-flattening, boxing, and the continuity
//! normal form built from them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::formula::{apply_subst, Formula, Substitution};
use crate::fragment::is_almost_good;
use crate::names::{boxed_name, Name};

/// Result of [`lift`]: the formula and the fresh name chosen for `x̄`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lifted {
    pub formula: Formula,
    pub boxed_var: Name,
}

/// Renames every boxed occurrence of `x` (one under some `[a]` on its path
/// from the root) to a fresh `x̄`.
pub fn lift(phi: &Formula, x: &Name) -> Result<Lifted> {
    if phi.bound_vars().contains(x) {
        return Err(Error::BoundVariable(x.clone()));
    }
    let boxed_var = boxed_name(x, &phi.all_names());
    let formula = lift_as(phi, x, &boxed_var);
    Ok(Lifted { formula, boxed_var })
}

/// The inductive clauses, with `x̄` supplied by the caller.
fn lift_as(phi: &Formula, x: &Name, xb: &Name) -> Formula {
    match phi {
        Formula::Var(_) | Formula::NegVar(_) | Formula::Top | Formula::Bot => phi.clone(),
        Formula::And(l, r) => Formula::and(lift_as(l, x, xb), lift_as(r, x, xb)),
        Formula::Or(l, r) => Formula::or(lift_as(l, x, xb), lift_as(r, x, xb)),
        Formula::Dia(a, b) => Formula::Dia(a.clone(), Box::new(lift_as(b, x, xb))),
        Formula::Nec(a, b) => Formula::Nec(
            a.clone(),
            Box::new(apply_subst(b, &Substitution::single(x.clone(), Formula::Var(xb.clone())))),
        ),
        Formula::Fix(q, z, b) => Formula::Fix(*q, z.clone(), Box::new(lift_as(b, x, xb))),
    }
}

/// `φ^♭ = lift(φ, x)·[⊥/x̄]`.
pub fn flatten(phi: &Formula, x: &Name) -> Result<Formula> {
    let Lifted { formula, boxed_var } = lift(phi, x)?;
    Ok(apply_subst(&formula, &Substitution::single(boxed_var, Formula::Bot)))
}

/// Rewrites `phi` into an equivalent formula with no very-bad occurrence of
/// any `x ∈ X`. The input is made well-named first.
pub fn boxing(phi: &Formula, xs: &BTreeSet<Name>) -> Result<Formula> {
    let phi = phi.make_well_named();
    if let Some(x) = xs.iter().find(|x| phi.bound_vars().contains(*x)) {
        return Err(Error::BoundVariable(x.clone()));
    }
    boxing_rec(&phi, &mut xs.clone())
}

fn boxing_rec(phi: &Formula, xs: &mut BTreeSet<Name>) -> Result<Formula> {
    if is_almost_good(phi, xs)? {
        return Ok(phi.clone());
    }
    Ok(match phi {
        Formula::Dia(a, b) => Formula::Dia(a.clone(), Box::new(boxing_rec(b, xs)?)),
        Formula::And(l, r) => Formula::and(boxing_rec(l, xs)?, boxing_rec(r, xs)?),
        Formula::Or(l, r) => Formula::or(boxing_rec(l, xs)?, boxing_rec(r, xs)?),
        Formula::Fix(q, z, body) => {
            let added = xs.insert(z.clone());
            let inner = boxing_rec(body, xs);
            if added {
                xs.remove(z);
            }
            let inner = inner?;
            // ψ₂ = lift_z(⌊ψ⌋_{X∪{z}}), ψ₀ = Qz.ψ₂, ψ₁ = Qz̄.ψ₀, result ψ₀[ψ₁/z̄].
            let zb = boxed_name(z, &inner.all_names());
            let psi2 = lift_as(&inner, z, &zb);
            let psi0 = Formula::Fix(*q, z.clone(), Box::new(psi2));
            let psi1 = Formula::Fix(*q, zb.clone(), Box::new(psi0.clone()));
            apply_subst(&psi0, &Substitution::single(zb, psi1))
        }
        // Remaining shapes are literals, constants and boxes, all of which
        // satisfy the base case.
        _ => unreachable!("base case covers {phi}"),
    })
}

/// `flatten(make_well_named(boxing(φ, {x})), x)`, a formula in `C(x)`
/// equivalent to `φ` whenever `φ` is equivalent to some formula of `C(x)`.
pub fn continuity_normal_form(phi: &Formula, x: &Name) -> Result<Formula> {
    if !phi.is_positive_in(x) {
        return Err(Error::NotPositive(x.clone()));
    }
    let xs = BTreeSet::from([x.clone()]);
    let boxed = boxing(phi, &xs)?;
    flatten(&boxed.make_well_named(), x)
}
