//! Master modality, the ordinal-sum formula and the total-lfp construction.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::formula::{apply_subst, dualize, Formula, Substitution};
use crate::names::{fresh_name, Action, Name};

use super::translate::{submodel_scheme, translate};

/// `□_U χ = νz.(χ ∧ ⋀_a [a] z)`: χ holds at every reachable state.
pub fn master_box<A: Into<Action>>(chi: &Formula, actions: impl IntoIterator<Item = A>) -> Formula {
    let z = fresh_name("z", &chi.all_names());
    let boxes = actions
        .into_iter()
        .map(|a| Formula::nec(a, Formula::Var(z.clone())));
    let body = boxes.fold(chi.clone(), Formula::and);
    Formula::nu(z, body)
}

/// The three formulas of the ordinal-sum construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumFormula {
    /// `χ = χ₀ ∧ χ₁`, the acceptability condition.
    pub chi: Formula,
    pub chi0: Formula,
    pub chi1: Formula,
    /// `ψ(x)`, whose closure ordinal on acceptable models is the sum.
    pub psi: Formula,
    /// `Ψ(x) = □_U χ ∧ ψ(x)`.
    pub big_psi: Formula,
}

/// Builds, for monomodal `φ₀(x)` and `φ₁(x)` over `action`,
///
/// ```text
/// χ₀ = p ∨ ([a]¬p ∧ μz.φ₀(z))      χ₁ = ¬p ∨ μz.tr(φ₁(z))
/// ψ(x) = (¬p ∧ φ₀(x)) ∨ (tr(φ₁)(x) ∧ [a](p ∨ x))
/// Ψ(x) = □_U(χ₀ ∧ χ₁) ∧ ψ(x)
/// ```
///
/// where `tr` is the submodel translation with marker `p`.
pub fn sum_formula(
    phi0: &Formula,
    phi1: &Formula,
    x: &Name,
    p: &Name,
    action: &Action,
) -> Result<SumFormula> {
    for phi in [phi0, phi1] {
        if phi.all_names().contains(p) {
            return Err(Error::NotFresh(p.clone()));
        }
        if let Some(a) = phi.actions().into_iter().find(|a| a != action) {
            return Err(Error::UnknownAction(a));
        }
        if phi.bound_vars().contains(x) {
            return Err(Error::BoundVariable(x.clone()));
        }
        if !phi.is_positive_in(x) {
            return Err(Error::NotPositive(x.clone()));
        }
    }
    let scheme = submodel_scheme([action.clone()]).with_marker(p)?;
    let pv = Formula::Var(p.clone());
    let np = Formula::NegVar(p.clone());

    let mut taken: BTreeSet<Name> = phi0.all_names();
    taken.extend(phi1.all_names());
    taken.insert(p.clone());
    taken.insert(x.clone());
    let z = fresh_name("z", &taken);
    let at_z = |phi: &Formula| apply_subst(phi, &Substitution::single(x.clone(), Formula::Var(z.clone())));

    let chi0 = Formula::or(
        pv.clone(),
        Formula::and(
            Formula::Nec(action.clone(), Box::new(np.clone())),
            Formula::mu(z.clone(), at_z(phi0)),
        ),
    );
    let chi1 = Formula::or(np.clone(), Formula::mu(z.clone(), translate(&at_z(phi1), &scheme)?));
    let chi = Formula::and(chi0.clone(), chi1.clone());
    let psi = Formula::or(
        Formula::and(np, phi0.clone()),
        Formula::and(
            translate(phi1, &scheme)?,
            Formula::Nec(action.clone(), Box::new(Formula::or(pv, Formula::Var(x.clone())))),
        ),
    );
    let big_psi = Formula::and(master_box(&chi, [action.clone()]), psi.clone());
    Ok(SumFormula {
        chi,
        chi0,
        chi1,
        psi,
        big_psi,
    })
}

/// `(μx.ψ)^op ∨ ψ[x ∧ μx.ψ / x]`: its least fixpoint is every state, and
/// on each model it has the closure ordinal of `ψ` when that is non-zero.
///
/// Read as an implication, `μx.ψ → ψ(x ∧ μx.ψ)` is the same formula in
/// negation normal form.
pub fn totalize(psi: &Formula, x: &Name) -> Result<Formula> {
    if psi.bound_vars().contains(x) {
        return Err(Error::BoundVariable(x.clone()));
    }
    if !psi.is_positive_in(x) {
        return Err(Error::NotPositive(x.clone()));
    }
    // The inner binder gets a fresh name so that `x` stays free in the result.
    let w = fresh_name(&format!("{x}"), &psi.all_names());
    let lfp = Formula::mu(w.clone(), psi.rename_free(&BTreeMap::from([(x.clone(), w)])));
    let shifted = apply_subst(
        psi,
        &Substitution::single(x.clone(), Formula::and(Formula::Var(x.clone()), lfp.clone())),
    );
    Ok(Formula::or(dualize(&lfp), shifted))
}
