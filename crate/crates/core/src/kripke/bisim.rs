//! `(P, B)`-bisimilarity by signature refinement.

use std::collections::{BTreeSet, HashMap};

use crate::names::{Action, Name};

use super::build::disjoint_union;
use super::{KripkeModel, StateSet};

/// The coarsest `(P, B)`-bisimulation of a model, as block numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    block: Vec<usize>,
    count: usize,
}

impl Partition {
    pub fn block_of(&self, s: usize) -> usize {
        self.block[s]
    }

    pub fn same(&self, s: usize, t: usize) -> bool {
        self.block[s] == self.block[t]
    }

    pub fn block_count(&self) -> usize {
        self.count
    }

    /// The blocks, each as a sorted list of states, ordered by their least
    /// member.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (s, &b) in self.block.iter().enumerate() {
            out[b].push(s);
        }
        out
    }
}

/// Numbers keys in order of first appearance.
fn renumber<K: std::hash::Hash + Eq>(keys: Vec<K>) -> Partition {
    let mut ix: HashMap<K, usize> = HashMap::new();
    let block = keys
        .into_iter()
        .map(|k| {
            let next = ix.len();
            *ix.entry(k).or_insert(next)
        })
        .collect();
    Partition {
        block,
        count: ix.len(),
    }
}

/// Refines the valuation partition on `props` until the successor-block
/// signatures along `actions` are stable. Missing variables and actions are
/// read as empty.
pub fn bisimulation_partition(
    model: &KripkeModel,
    props: &BTreeSet<Name>,
    actions: &BTreeSet<Action>,
) -> Partition {
    let n = model.len();
    let empty = StateSet::empty(n);
    let vals: Vec<&StateSet> = props
        .iter()
        .map(|p| model.valuation(p).unwrap_or(&empty))
        .collect();
    let rels: Vec<Option<&[StateSet]>> = actions.iter().map(|a| model.relation(a)).collect();

    let mut part = renumber(
        (0..n)
            .map(|s| vals.iter().map(|v| v.contains(s)).collect::<Vec<bool>>())
            .collect(),
    );
    loop {
        let sigs: Vec<(usize, Vec<BTreeSet<usize>>)> = (0..n)
            .map(|s| {
                let succ_blocks = rels
                    .iter()
                    .map(|r| match r {
                        Some(r) => r[s].iter().map(|t| part.block[t]).collect(),
                        None => BTreeSet::new(),
                    })
                    .collect();
                (part.block[s], succ_blocks)
            })
            .collect();
        let next = renumber(sigs);
        if next.count == part.count {
            return next;
        }
        part = next;
    }
}

/// Whether some `(P, B)`-bisimulation relates `s` in `m` to `t` in `n`.
pub fn bisimilar(
    m: &KripkeModel,
    s: usize,
    n: &KripkeModel,
    t: usize,
    props: &BTreeSet<Name>,
    actions: &BTreeSet<Action>,
) -> bool {
    let u = disjoint_union(m, n);
    bisimulation_partition(&u, props, actions).same(s, m.len() + t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::parse_model;

    fn sig(ps: &[&str], acts: &[&str]) -> (BTreeSet<Name>, BTreeSet<Action>) {
        (
            ps.iter().map(|p| Name::new(*p)).collect(),
            acts.iter().map(|a| Action::new(*a)).collect(),
        )
    }

    #[test]
    fn loops_and_cycles() {
        let (p, b) = sig(&["p"], &["a"]);
        let one = parse_model("states: s\nrel a: s->s\nval p: s").unwrap();
        let two = parse_model("states: t u\nrel a: t->u, u->t\nval p: t u").unwrap();
        assert!(bisimilar(&one, 0, &one, 0, &p, &b));
        assert!(bisimilar(&one, 0, &two, 1, &p, &b));
        let off = parse_model("states: t u\nrel a: t->u, u->t\nval p: t").unwrap();
        assert!(!bisimilar(&one, 0, &off, 0, &p, &b));
        // Without `p` in the signature the valuations are invisible.
        let (none, _) = sig(&[], &[]);
        assert!(bisimilar(&one, 0, &off, 0, &none, &b));
    }

    #[test]
    fn chains_are_minimal() {
        let m = parse_model("states: s0 s1 s2 s3\nrel a: s0->s1, s1->s2, s2->s3\nval p: s3").unwrap();
        let (p, b) = sig(&["p"], &["a"]);
        assert_eq!(bisimulation_partition(&m, &p, &b).block_count(), 4);
    }
}
