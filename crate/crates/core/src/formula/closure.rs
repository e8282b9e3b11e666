//! The closure `CL(φ)`, computed two independent ways.

use std::collections::{HashMap, VecDeque};

use super::{standard_context, Formula, Substitution};

/// A finite set of formulas compared up to α-equivalence, in insertion
/// order. Each member keeps the first representative that was inserted.
#[derive(Debug, Clone, Default)]
pub struct Closure {
    items: Vec<Formula>,
    index: HashMap<Formula, usize>,
}

impl Closure {
    /// Inserts `f` unless an α-variant is present; returns its index and
    /// whether it was new.
    pub fn insert(&mut self, f: Formula) -> (usize, bool) {
        let key = f.canonical();
        if let Some(&i) = self.index.get(&key) {
            return (i, false);
        }
        let i = self.items.len();
        self.items.push(f);
        self.index.insert(key, i);
        (i, true)
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.index.get(&f.canonical()).copied()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.index_of(f).is_some()
    }

    pub fn get(&self, i: usize) -> &Formula {
        &self.items[i]
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.items.iter()
    }

    /// Same members up to α-equivalence, regardless of order.
    pub fn same_set(&self, other: &Closure) -> bool {
        self.len() == other.len() && self.items.iter().all(|f| other.contains(f))
    }
}

/// Distinct subformulas `Sub(φ)`, in preorder of first occurrence.
pub fn subformulas(phi: &Formula) -> Vec<&Formula> {
    let mut seen = std::collections::HashSet::new();
    phi.occurrences()
        .into_iter()
        .map(|(_, f)| f)
        .filter(|f| seen.insert(*f))
        .collect()
}

/// `CL(φ) = { ψ·σ^φ_ψ | ψ ∈ Sub(φ) }`. The formula is well-named first.
pub fn closure(phi: &Formula) -> Closure {
    let phi = phi.make_well_named();
    let mut out = Closure::default();
    for (addr, psi) in phi.occurrences() {
        let ctx = standard_context(&phi, &addr).expect("address taken from the formula itself");
        out.insert(ctx.apply(psi));
    }
    out
}

/// The least set containing `φ` and closed under the decomposition rules
/// (binary, modal) and fixpoint unfolding `Qz.ψ ↦ ψ[Qz.ψ/z]`.
pub fn closure_by_rules(phi: &Formula) -> Closure {
    let mut out = Closure::default();
    let mut queue = VecDeque::new();
    let (_, fresh) = out.insert(phi.clone());
    if fresh {
        queue.push_back(phi.clone());
    }
    while let Some(f) = queue.pop_front() {
        for succ in closure_successors(&f) {
            let (_, fresh) = out.insert(succ.clone());
            if fresh {
                queue.push_back(succ);
            }
        }
    }
    out
}

/// Immediate successors of a closure member under the four rules.
pub(crate) fn closure_successors(f: &Formula) -> Vec<Formula> {
    match f {
        Formula::And(l, r) | Formula::Or(l, r) => vec![(**l).clone(), (**r).clone()],
        Formula::Dia(_, b) | Formula::Nec(_, b) => vec![(**b).clone()],
        Formula::Fix(_, z, b) => vec![unfold(z, b, f)],
        _ => vec![],
    }
}

/// `ψ[Qz.ψ/z]`.
pub(crate) fn unfold(z: &super::Name, body: &Formula, whole: &Formula) -> Formula {
    super::apply_subst(body, &Substitution::single(z.clone(), whole.clone()))
}
