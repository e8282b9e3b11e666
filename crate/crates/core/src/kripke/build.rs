//! Model constructions: restrictions, unions, variants and the generators
//! used for closure ordinals.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::names::{Action, Name};
use crate::transform::{master_box, H, MONO_ACTION, V};

use super::{eval, KripkeModel, StateSet};

pub const LEFT_TAG: &str = "L.";
pub const RIGHT_TAG: &str = "R.";

fn check_universe(m: &KripkeModel, s: &StateSet) -> Result<()> {
    if s.universe() != m.len() {
        return Err(Error::InvalidModel(format!(
            "state set over {} states used with a model of {}",
            s.universe(),
            m.len()
        )));
    }
    Ok(())
}

/// `M|S`: states `S`, relations and valuation restricted to `S`. All
/// actions and variables stay declared.
pub fn induced_submodel(m: &KripkeModel, s: &StateSet) -> Result<KripkeModel> {
    check_universe(m, s)?;
    let keep: Vec<usize> = s.iter().collect();
    let mut out = KripkeModel::new(keep.iter().map(|&i| m.id(i).to_string()))?;
    let new_index = |old: usize| keep.binary_search(&old).ok();
    for a in m.actions() {
        out.add_action(a.clone());
        for (src, dst) in m.edges(a) {
            if let (Some(i), Some(j)) = (new_index(src), new_index(dst)) {
                out.add_edge(a.clone(), i, j);
            }
        }
    }
    for p in m.props() {
        let v = m.valuation(p).expect("listed variable");
        let set = StateSet::from_indices(keep.len(), v.iter().filter_map(new_index));
        out.set_valuation(p.clone(), set);
    }
    Ok(out)
}

/// `M₁ ⊎ M₂` with ids tagged [`LEFT_TAG`] and [`RIGHT_TAG`]; the states of
/// `M₂` follow those of `M₁`.
pub fn disjoint_union(m1: &KripkeModel, m2: &KripkeModel) -> KripkeModel {
    let ids = m1
        .ids()
        .iter()
        .map(|i| format!("{LEFT_TAG}{i}"))
        .chain(m2.ids().iter().map(|i| format!("{RIGHT_TAG}{i}")));
    let mut out = KripkeModel::new(ids).expect("tagged ids stay valid and distinct");
    let off = m1.len();
    for (m, shift) in [(m1, 0), (m2, off)] {
        for a in m.actions() {
            out.add_action(a.clone());
            for (s, t) in m.edges(a) {
                out.add_edge(a.clone(), s + shift, t + shift);
            }
        }
    }
    let props: BTreeSet<&Name> = m1.props().chain(m2.props()).collect();
    for p in props {
        let mut set = out.empty_set();
        for (m, shift) in [(m1, 0), (m2, off)] {
            if let Some(v) = m.valuation(p) {
                for s in v.iter() {
                    set.insert(s + shift);
                }
            }
        }
        out.set_valuation(p.clone(), set);
    }
    out
}

/// `M[x ↦ S]`.
pub fn variant(m: &KripkeModel, x: &Name, s: &StateSet) -> Result<KripkeModel> {
    check_universe(m, s)?;
    let mut out = m.clone();
    out.set_valuation(x.clone(), s.clone());
    Ok(out)
}

/// Whether `S` is closed under every relation.
pub fn is_closed(m: &KripkeModel, s: &StateSet) -> bool {
    s.iter().all(|i| m.all_successors(i).is_subset(s))
}

/// `s0 → s1 → … → s{n-1}` along `action`, with `p` true only at the end.
pub fn chain_model(n: usize, p: impl Into<Name>, action: impl Into<Action>) -> Result<KripkeModel> {
    if n == 0 {
        return Err(Error::InvalidArgument("a chain needs at least one state".into()));
    }
    let mut m = KripkeModel::with_states(n);
    let a = action.into();
    m.add_action(a.clone());
    for i in 1..n {
        m.add_edge(a.clone(), i - 1, i);
    }
    m.set_valuation(p, StateSet::from_indices(n, [n - 1]));
    Ok(m)
}

/// States `0 … n-1` with an `h` self-loop at each and `v`-edges `k+1 → k`.
pub fn ordinal_chain_model(n: usize) -> Result<KripkeModel> {
    if n == 0 {
        return Err(Error::InvalidArgument("an ordinal chain needs at least one state".into()));
    }
    let mut m = KripkeModel::new((0..n).map(|i| i.to_string()))?;
    m.add_action(H);
    m.add_action(V);
    for k in 0..n {
        m.add_edge(H, k, k);
        if k > 0 {
            m.add_edge(V, k, k - 1);
        }
    }
    Ok(m)
}

/// The monomodal simulation of an `{h, v}`-model and its embedding
/// `s ↦ (s, h)`.
#[derive(Debug, Clone)]
pub struct ThomasonModel {
    pub model: KripkeModel,
    /// `embedding[s]` is the index of `(s, h)`.
    pub embedding: Vec<usize>,
}

impl ThomasonModel {
    /// The image of the embedding.
    pub fn image(&self) -> StateSet {
        StateSet::from_indices(self.model.len(), self.embedding.iter().copied())
    }

    /// Maps a set of original states to the simulating model.
    pub fn embed(&self, s: &StateSet) -> StateSet {
        StateSet::from_indices(self.model.len(), s.iter().map(|i| self.embedding[i]))
    }
}

/// States `(x, h)`, `(x, v)` (ids `h.x`, `v.x`) and a pit; `a`-edges
/// `(x,h) → (y,h)` for `x →h y`, `(x,v) → (y,v)` for `x →v y`, and
/// `(x,v) → (x,h)`, `(x,h) → (x,v)`, `(x,h) → pit` for every `x`. Both
/// copies of `x` carry the valuation of `x`.
pub fn thomason_model(m: &KripkeModel) -> Result<ThomasonModel> {
    let (h, v) = (Action::new(H), Action::new(V));
    if let Some(a) = m.actions().find(|a| **a != h && **a != v) {
        return Err(Error::UnknownAction(a.clone()));
    }
    let n = m.len();
    let ids = m
        .ids()
        .iter()
        .map(|i| format!("h.{i}"))
        .chain(m.ids().iter().map(|i| format!("v.{i}")))
        .chain(std::iter::once("pit".to_string()));
    let mut out = KripkeModel::new(ids)?;
    let a = Action::new(MONO_ACTION);
    let (hc, vc, pit) = (|x: usize| x, |x: usize| n + x, 2 * n);
    out.add_action(a.clone());
    for (x, y) in m.edges(&h) {
        out.add_edge(a.clone(), hc(x), hc(y));
    }
    for (x, y) in m.edges(&v) {
        out.add_edge(a.clone(), vc(x), vc(y));
    }
    for x in 0..n {
        out.add_edge(a.clone(), vc(x), hc(x));
        out.add_edge(a.clone(), hc(x), vc(x));
        out.add_edge(a.clone(), hc(x), pit);
    }
    for p in m.props() {
        let val = m.valuation(p).expect("listed variable");
        let set = StateSet::from_indices(2 * n + 1, val.iter().flat_map(|x| [hc(x), vc(x)]));
        out.set_valuation(p.clone(), set);
    }
    Ok(ThomasonModel {
        model: out,
        embedding: (0..n).collect(),
    })
}

/// `Mα ⊎ Mβ` plus an edge from every `Mβ`-state to every `Mα`-state, with
/// `p` true exactly on `Mβ`. Both models may only use `action`.
pub fn sum_witness_model(
    m_alpha: &KripkeModel,
    m_beta: &KripkeModel,
    p: &Name,
    action: &Action,
) -> Result<KripkeModel> {
    for m in [m_alpha, m_beta] {
        if m.valuation(p).is_some() {
            return Err(Error::NotFresh(p.clone()));
        }
        if let Some(a) = m.actions().find(|a| *a != action) {
            return Err(Error::UnknownAction(a.clone()));
        }
    }
    let mut out = disjoint_union(m_alpha, m_beta);
    let off = m_alpha.len();
    out.add_action(action.clone());
    for s in 0..m_beta.len() {
        for t in 0..off {
            out.add_edge(action.clone(), off + s, t);
        }
    }
    let beta = StateSet::from_indices(out.len(), off..out.len());
    out.set_valuation(p.clone(), beta);
    Ok(out)
}

/// Whether `□_U χ` holds everywhere, with `□_U` over the model's actions.
pub fn is_acceptable(m: &KripkeModel, chi: &Formula) -> Result<bool> {
    let boxed = master_box(chi, m.actions().cloned());
    Ok(eval(m, &boxed)?.is_full())
}
