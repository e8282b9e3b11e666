//! Many equally sized models evaluated at once.
//!
//! Model `m` of a batch with `k` states per model occupies the bits
//! `m*k .. m*k + k` of one wide [`StateSet`]. Since no edge crosses a lane,
//! `◊S` is a union over lane offsets `d = i - j` of `E_d ∩ shift(S, d)`,
//! where `E_d` marks the sources `i` of edges `i → j`. One formula
//! evaluation then covers the whole batch, and fixpoint iteration costs the
//! maximum rather than the sum of the per-model iteration counts.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::names::{Action, Name};

use super::{KripkeModel, StateSet};

#[derive(Debug, Clone)]
pub struct ModelBatch {
    k: usize,
    count: usize,
    /// Per action: `(d, E_d)` for each lane offset with at least one edge.
    pub(super) relations: BTreeMap<Action, Vec<(isize, StateSet)>>,
    pub(super) valuation: BTreeMap<Name, StateSet>,
}

impl ModelBatch {
    /// Packs `models`, which must be non-empty and all of the same size. An
    /// action or variable missing from some model reads as empty there.
    pub fn new(models: &[KripkeModel]) -> Result<Self> {
        let Some(first) = models.first() else {
            return Err(Error::InvalidModel("empty batch".into()));
        };
        let k = first.len();
        if k == 0 || models.iter().any(|m| m.len() != k) {
            return Err(Error::InvalidModel(
                "batch models must be non-empty and of equal size".into(),
            ));
        }
        let total = k * models.len();
        let actions: BTreeSet<&Action> = models.iter().flat_map(|m| m.actions()).collect();
        let props: BTreeSet<&Name> = models.iter().flat_map(|m| m.props()).collect();

        let mut relations = BTreeMap::new();
        for a in actions {
            let mut by_offset: Vec<StateSet> = vec![StateSet::empty(total); 2 * k - 1];
            for (mi, m) in models.iter().enumerate() {
                for (i, j) in m.edges(a) {
                    let d = i as isize - j as isize;
                    by_offset[(d + k as isize - 1) as usize].insert(mi * k + i);
                }
            }
            let masks = by_offset
                .into_iter()
                .enumerate()
                .filter(|(_, s)| !s.is_empty())
                .map(|(ix, s)| (ix as isize - (k as isize - 1), s))
                .collect();
            relations.insert(a.clone(), masks);
        }

        let mut valuation = BTreeMap::new();
        for p in props {
            let mut set = StateSet::empty(total);
            for (mi, m) in models.iter().enumerate() {
                if let Some(v) = m.valuation(p) {
                    for s in v.iter() {
                        set.insert(mi * k + s);
                    }
                }
            }
            valuation.insert(p.clone(), set);
        }
        Ok(ModelBatch {
            k,
            count: models.len(),
            relations,
            valuation,
        })
    }

    /// Assembles a batch from precomputed lane masks, as produced by the
    /// model enumerator.
    pub(crate) fn from_raw(
        k: usize,
        count: usize,
        relations: BTreeMap<Action, Vec<(isize, StateSet)>>,
        valuation: BTreeMap<Name, StateSet>,
    ) -> Self {
        ModelBatch {
            k,
            count,
            relations,
            valuation,
        }
    }

    pub fn states_per_model(&self) -> usize {
        self.k
    }

    /// Number of packed models.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Width of the packed state sets.
    pub fn universe(&self) -> usize {
        self.k * self.count
    }

    /// The part of a packed set belonging to model `m`.
    pub fn lane(&self, set: &StateSet, m: usize) -> StateSet {
        StateSet::from_indices(
            self.k,
            (0..self.k).filter(|&s| set.contains(m * self.k + s)),
        )
    }

    /// First `(model, state)` at which the two packed sets differ.
    pub fn first_difference(&self, a: &StateSet, b: &StateSet) -> Option<(usize, usize)> {
        let mut diff = a.difference(b);
        diff.union_with(&b.difference(a));
        diff.first().map(|bit| (bit / self.k, bit % self.k))
    }
}
