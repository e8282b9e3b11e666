//! Finite Kripke models, their semantics, bisimulation and the model
//! constructions used for closure ordinals.

mod batch;
mod bisim;
mod build;
mod eval;
mod format;
mod stateset;

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::names::{Action, Name};

pub use batch::ModelBatch;
pub use bisim::{bisimilar, bisimulation_partition, Partition};
pub use build::{
    chain_model, disjoint_union, induced_submodel, is_acceptable, is_closed, ordinal_chain_model,
    sum_witness_model, thomason_model, variant, ThomasonModel, LEFT_TAG, RIGHT_TAG,
};
pub use eval::{
    approximants, closure_ordinal_on, eval, eval_at, Evaluator, IterationTrace,
};
pub use format::parse_model;
pub use stateset::StateSet;

/// `⟨|M|, {R_a}, v⟩` with opaque string state ids.
#[derive(Clone, PartialEq, Eq)]
pub struct KripkeModel {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    /// Successor sets, per action and state.
    relations: BTreeMap<Action, Vec<StateSet>>,
    valuation: BTreeMap<Name, StateSet>,
}

impl KripkeModel {
    /// A model with the given states and no transitions or valuation.
    pub fn new<S: Into<String>>(ids: impl IntoIterator<Item = S>) -> Result<Self> {
        let ids: Vec<String> = ids.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if id.is_empty()
                || id.contains("->")
                || id.chars().any(|c| c.is_whitespace() || c == ',' || c == '#')
            {
                return Err(Error::InvalidModel(format!("invalid state id `{id}`")));
            }
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidModel(format!("duplicate state `{id}`")));
            }
        }
        Ok(KripkeModel {
            ids,
            index,
            relations: BTreeMap::new(),
            valuation: BTreeMap::new(),
        })
    }

    /// States named `s0 … s{n-1}`.
    pub fn with_states(n: usize) -> Self {
        Self::new((0..n).map(|i| format!("s{i}"))).expect("generated ids are valid")
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, s: usize) -> &str {
        &self.ids[s]
    }

    pub fn state(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::InvalidModel(format!("unknown state `{id}`")))
    }

    pub fn empty_set(&self) -> StateSet {
        StateSet::empty(self.len())
    }

    pub fn full_set(&self) -> StateSet {
        StateSet::full(self.len())
    }

    pub fn set_of(&self, ids: &[&str]) -> Result<StateSet> {
        let mut s = self.empty_set();
        for id in ids {
            s.insert(self.state(id)?);
        }
        Ok(s)
    }

    pub fn actions(&self) -> impl Iterator<Item = &Action> {
        self.relations.keys()
    }

    pub fn props(&self) -> impl Iterator<Item = &Name> {
        self.valuation.keys()
    }

    /// Declares `a` with an empty relation if it is not yet present.
    pub fn add_action(&mut self, a: impl Into<Action>) {
        let n = self.len();
        self.relations
            .entry(a.into())
            .or_insert_with(|| vec![StateSet::empty(n); n]);
    }

    pub fn add_edge(&mut self, a: impl Into<Action>, s: usize, t: usize) {
        let n = self.len();
        assert!(s < n && t < n, "edge endpoint out of range");
        self.relations
            .entry(a.into())
            .or_insert_with(|| vec![StateSet::empty(n); n])[s]
            .insert(t);
    }

    pub fn has_edge(&self, a: &Action, s: usize, t: usize) -> bool {
        self.relations.get(a).is_some_and(|r| r[s].contains(t))
    }

    pub fn successors(&self, a: &Action, s: usize) -> Option<&StateSet> {
        self.relations.get(a).map(|r| &r[s])
    }

    pub fn relation(&self, a: &Action) -> Option<&[StateSet]> {
        self.relations.get(a).map(Vec::as_slice)
    }

    /// All edges of `a` as `(source, target)` pairs, sorted.
    pub fn edges(&self, a: &Action) -> Vec<(usize, usize)> {
        match self.relations.get(a) {
            Some(r) => r
                .iter()
                .enumerate()
                .flat_map(|(s, ts)| ts.iter().map(move |t| (s, t)))
                .collect(),
            None => Vec::new(),
        }
    }

    pub fn set_valuation(&mut self, p: impl Into<Name>, states: StateSet) {
        assert_eq!(states.universe(), self.len(), "valuation over the wrong universe");
        self.valuation.insert(p.into(), states);
    }

    pub fn valuation(&self, p: &Name) -> Option<&StateSet> {
        self.valuation.get(p)
    }

    /// Union of the successor sets of `s` over all actions.
    pub fn all_successors(&self, s: usize) -> StateSet {
        let mut out = self.empty_set();
        for r in self.relations.values() {
            out.union_with(&r[s]);
        }
        out
    }

    /// States reachable from `from` (inclusive) along any action.
    pub fn reachable(&self, from: &StateSet) -> StateSet {
        let mut seen = from.clone();
        let mut frontier: Vec<usize> = from.iter().collect();
        while let Some(s) = frontier.pop() {
            for t in self.all_successors(s).iter() {
                if !seen.contains(t) {
                    seen.insert(t);
                    frontier.push(t);
                }
            }
        }
        seen
    }
}

impl std::fmt::Debug for KripkeModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}
