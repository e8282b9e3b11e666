//! Continuity checking: the grammar shortcuts, then a bounded search for a
//! model on which `φ` and its continuity normal form differ.
//!
//! Models are enumerated size by size. A model on `n` states over sorted
//! actions `a₀ …` and variables `p₀ …` is encoded as an integer whose bit
//! `i·n² + s·n + t` is the edge `s →aᵢ t` and whose bit `|A|·n² + j·n + s`
//! says that `pⱼ` holds at `s`. Within a size, models come in increasing
//! code order; with isomorphism pruning only the least code of each
//! isomorphism class is kept. Sizes whose code space is too large for
//! exhaustive enumeration are covered by seeded random sampling.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::fragment::{in_c, in_c0, var_set};
use crate::game::model_check_via_game;
use crate::kripke::{eval, Evaluator, KripkeModel, ModelBatch, StateSet};
use crate::names::{Action, Name};
use crate::random::random_model;
use crate::transform::continuity_normal_form;

/// Largest code width enumerated exhaustively.
pub const EXHAUSTIVE_BITS: usize = 22;
/// Isomorphism pruning is applied up to this many states.
pub const PRUNE_STATES: usize = 3;
const CHUNK: usize = 2048;
const DENSITIES: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_states: usize,
    pub max_actions: usize,
    pub max_props: usize,
    /// Random models drawn for sizes that are not enumerated exhaustively.
    pub samples: usize,
    pub seed: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_states: 3,
            max_actions: 2,
            max_props: 3,
            samples: 2000,
            seed: 0,
            time_limit: None,
        }
    }
}

impl SearchBudget {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("max states", self.max_states),
            ("max actions", self.max_actions),
            ("max props", self.max_props),
            ("samples", self.samples),
        ] {
            if v == 0 {
                return Err(Error::InvalidBudget(format!("{name} must be at least 1")));
            }
        }
        if self.time_limit == Some(Duration::ZERO) {
            return Err(Error::InvalidBudget("time limit must be positive".into()));
        }
        Ok(())
    }
}

fn code_bits(n: usize, actions: usize, props: usize) -> usize {
    actions * n * n + props * n
}

/// Decodes a model code (see the module documentation).
pub fn model_from_code(n: usize, actions: &[Action], props: &[Name], code: u64) -> KripkeModel {
    let mut m = KripkeModel::with_states(n);
    for (ai, a) in actions.iter().enumerate() {
        m.add_action(a.clone());
        for s in 0..n {
            for t in 0..n {
                if code >> (ai * n * n + s * n + t) & 1 == 1 {
                    m.add_edge(a.clone(), s, t);
                }
            }
        }
    }
    let base = actions.len() * n * n;
    for (pi, p) in props.iter().enumerate() {
        let set = StateSet::from_indices(n, (0..n).filter(|s| code >> (base + pi * n + s) & 1 == 1));
        m.set_valuation(p.clone(), set);
    }
    m
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn permute_code(code: u64, n: usize, actions: usize, props: usize, pi: &[usize]) -> u64 {
    let mut out = 0u64;
    for a in 0..actions {
        for s in 0..n {
            for t in 0..n {
                if code >> (a * n * n + s * n + t) & 1 == 1 {
                    out |= 1 << (a * n * n + pi[s] * n + pi[t]);
                }
            }
        }
    }
    let base = actions * n * n;
    for p in 0..props {
        for (s, &ps) in pi.iter().enumerate() {
            if code >> (base + p * n + s) & 1 == 1 {
                out |= 1 << (base + p * n + ps);
            }
        }
    }
    out
}

/// Codes of size-`n` models in increasing order, keeping only the least
/// code of each isomorphism class when `prune` is set. `None` when the code
/// space exceeds [`EXHAUSTIVE_BITS`].
fn size_codes(n: usize, actions: usize, props: usize, prune: bool) -> Option<Vec<u64>> {
    let bits = code_bits(n, actions, props);
    if bits > EXHAUSTIVE_BITS {
        return None;
    }
    let all = 0..(1u64 << bits);
    if !prune || n < 2 {
        return Some(all.collect());
    }
    let perms: Vec<Vec<usize>> = permutations(n);
    Some(
        all.filter(|&c| {
            perms
                .iter()
                .all(|pi| permute_code(c, n, actions, props, pi) >= c)
        })
        .collect(),
    )
}

/// Every model with `1 ..= max_states` states over the signature, in code
/// order, stopping before the first size beyond [`EXHAUSTIVE_BITS`].
pub fn enumerate_models(
    actions: &[Action],
    props: &[Name],
    max_states: usize,
) -> impl Iterator<Item = KripkeModel> {
    enumerate(actions, props, max_states, false)
}

/// As [`enumerate_models`], with one representative per isomorphism class
/// for sizes up to [`PRUNE_STATES`].
pub fn enumerate_models_up_to_iso(
    actions: &[Action],
    props: &[Name],
    max_states: usize,
) -> impl Iterator<Item = KripkeModel> {
    enumerate(actions, props, max_states, true)
}

fn enumerate(
    actions: &[Action],
    props: &[Name],
    max_states: usize,
    prune: bool,
) -> impl Iterator<Item = KripkeModel> {
    let (actions, props) = (actions.to_vec(), props.to_vec());
    (1..=max_states)
        .map_while(move |n| {
            let codes = size_codes(n, actions.len(), props.len(), prune && n <= PRUNE_STATES)?;
            let (a, p) = (actions.clone(), props.clone());
            Some(codes.into_iter().map(move |c| model_from_code(n, &a, &p, c)))
        })
        .flatten()
}

#[derive(Debug, Clone)]
enum ChunkModels {
    Codes(Vec<u64>),
    Explicit(Vec<KripkeModel>),
}

#[derive(Debug, Clone)]
struct Chunk {
    n: usize,
    models: ChunkModels,
    batch: ModelBatch,
}

/// A fixed collection of models over one signature, packed for batch
/// evaluation.
#[derive(Debug, Clone)]
pub struct ModelSpace {
    actions: Vec<Action>,
    props: Vec<Name>,
    chunks: Vec<Chunk>,
}

/// Outcome of comparing two formulas over a [`ModelSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Probe {
    Agree,
    Differ { model: KripkeModel, state: usize },
    TimedOut,
}

impl ModelSpace {
    /// All size-`n` models (up to isomorphism if `prune`), or `None` when
    /// the code space is too large.
    pub fn exhaustive_size(actions: &[Action], props: &[Name], n: usize, prune: bool) -> Option<Self> {
        let codes = size_codes(n, actions.len(), props.len(), prune && n <= PRUNE_STATES)?;
        let chunks = codes
            .chunks(CHUNK)
            .map(|cs| Chunk {
                n,
                batch: batch_from_codes(n, actions, props, cs),
                models: ChunkModels::Codes(cs.to_vec()),
            })
            .collect();
        Some(ModelSpace {
            actions: actions.to_vec(),
            props: props.to_vec(),
            chunks,
        })
    }

    /// All models with at most `max_states` states.
    pub fn exhaustive(
        actions: &[Action],
        props: &[Name],
        max_states: usize,
        prune: bool,
    ) -> Result<Self> {
        let mut chunks = Vec::new();
        for n in 1..=max_states {
            let space = Self::exhaustive_size(actions, props, n, prune).ok_or_else(|| {
                Error::InvalidBudget(format!("{n}-state models are too many to enumerate"))
            })?;
            chunks.extend(space.chunks);
        }
        Ok(ModelSpace {
            actions: actions.to_vec(),
            props: props.to_vec(),
            chunks,
        })
    }

    /// `samples` random models, spread round-robin over `sizes` and the
    /// edge densities 0.1, 0.25, 0.5, 0.75, 0.9.
    pub fn random(actions: &[Action], props: &[Name], sizes: &[usize], samples: usize, seed: u64) -> Self {
        let mut by_size: BTreeMap<usize, Vec<KripkeModel>> = BTreeMap::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..samples {
            let n = sizes[i % sizes.len()];
            let density = DENSITIES[(i / sizes.len()) % DENSITIES.len()];
            let mut sub = ChaCha8Rng::seed_from_u64(rng.gen());
            by_size
                .entry(n)
                .or_default()
                .push(random_model(&mut sub, n, actions, props, density));
        }
        let mut chunks = Vec::new();
        for (n, models) in by_size {
            for ms in models.chunks(CHUNK) {
                chunks.push(Chunk {
                    n,
                    batch: ModelBatch::new(ms).expect("equal-size non-empty models"),
                    models: ChunkModels::Explicit(ms.to_vec()),
                });
            }
        }
        ModelSpace {
            actions: actions.to_vec(),
            props: props.to_vec(),
            chunks,
        }
    }

    pub fn len(&self) -> usize {
        self.chunks.iter().map(|c| c.batch.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.chunks.is_empty()
    }

    pub fn actions(&self) -> &[Action] {
        &self.actions
    }

    pub fn props(&self) -> &[Name] {
        &self.props
    }

    /// The models, in order.
    pub fn models(&self) -> impl Iterator<Item = KripkeModel> + '_ {
        self.chunks.iter().flat_map(move |c| {
            (0..c.batch.len()).map(move |i| self.chunk_model(c, i))
        })
    }

    fn chunk_model(&self, c: &Chunk, i: usize) -> KripkeModel {
        match &c.models {
            ChunkModels::Codes(codes) => model_from_code(c.n, &self.actions, &self.props, codes[i]),
            ChunkModels::Explicit(ms) => ms[i].clone(),
        }
    }

    /// The first model (in order) and least state where `f1` and `f2`
    /// differ. Chunks are checked in parallel; the earliest difference wins.
    pub fn first_difference(&self, f1: &Formula, f2: &Formula, deadline: Option<Instant>) -> Result<Probe> {
        let found = self
            .chunks
            .par_iter()
            .map(|c| -> Option<Result<Probe>> {
                if deadline.is_some_and(|d| Instant::now() > d) {
                    return Some(Ok(Probe::TimedOut));
                }
                let run = || -> Result<Option<(usize, usize)>> {
                    let a = Evaluator::for_batch(&c.batch, f1, &[])?.eval();
                    let b = Evaluator::for_batch(&c.batch, f2, &[])?.eval();
                    Ok(c.batch.first_difference(&a, &b))
                };
                match run() {
                    Err(e) => Some(Err(e)),
                    Ok(None) => None,
                    Ok(Some((i, s))) => Some(Ok(Probe::Differ {
                        model: self.chunk_model(c, i),
                        state: s,
                    })),
                }
            })
            .find_map_first(|r| r);
        found.unwrap_or(Ok(Probe::Agree))
    }

    /// Whether `⟦f⟧ ⊆ ⟦g⟧` on every model of the space.
    pub fn entails(&self, f: &Formula, g: &Formula) -> Result<bool> {
        for c in &self.chunks {
            let a = Evaluator::for_batch(&c.batch, f, &[])?.eval();
            let b = Evaluator::for_batch(&c.batch, g, &[])?.eval();
            if !a.is_subset(&b) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn batch_from_codes(n: usize, actions: &[Action], props: &[Name], codes: &[u64]) -> ModelBatch {
    let total = n * codes.len();
    let mut relations = BTreeMap::new();
    for (ai, a) in actions.iter().enumerate() {
        let mut by_offset = vec![StateSet::empty(total); 2 * n - 1];
        for (mi, &code) in codes.iter().enumerate() {
            for s in 0..n {
                for t in 0..n {
                    if code >> (ai * n * n + s * n + t) & 1 == 1 {
                        by_offset[s + n - 1 - t].insert(mi * n + s);
                    }
                }
            }
        }
        let masks = by_offset
            .into_iter()
            .enumerate()
            .filter(|(_, m)| !m.is_empty())
            .map(|(ix, m)| (ix as isize - (n as isize - 1), m))
            .collect();
        relations.insert(a.clone(), masks);
    }
    let base = actions.len() * n * n;
    let mut valuation = BTreeMap::new();
    for (pi, p) in props.iter().enumerate() {
        let mut set = StateSet::empty(total);
        for (mi, &code) in codes.iter().enumerate() {
            for s in 0..n {
                if code >> (base + pi * n + s) & 1 == 1 {
                    set.insert(mi * n + s);
                }
            }
        }
        valuation.insert(p.clone(), set);
    }
    ModelBatch::from_raw(n, codes.len(), relations, valuation)
}

/// A pointed model on which two formulas differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub model: KripkeModel,
    pub state: usize,
    /// Whether the first formula is the one that holds.
    pub first_holds: bool,
}

/// Result of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub witness: Option<Witness>,
    /// Largest `n` such that every model with at most `n` states was
    /// checked.
    pub exhaustive_bound: usize,
    pub timed_out: bool,
}

/// The joint signature of two formulas, checked against the budget.
fn signature(f1: &Formula, f2: &Formula, budget: &SearchBudget) -> Result<(Vec<Action>, Vec<Name>)> {
    let mut actions = f1.actions();
    actions.extend(f2.actions());
    let mut props = f1.free_vars();
    props.extend(f2.free_vars());
    if actions.len() > budget.max_actions {
        return Err(Error::InvalidBudget(format!(
            "formulas use {} actions, budget allows {}",
            actions.len(),
            budget.max_actions
        )));
    }
    if props.len() > budget.max_props {
        return Err(Error::InvalidBudget(format!(
            "formulas use {} variables, budget allows {}",
            props.len(),
            budget.max_props
        )));
    }
    Ok((actions.into_iter().collect(), props.into_iter().collect()))
}

/// Exhaustive enumeration of the small sizes, then random sampling of the
/// remaining ones. Witnesses are re-checked with both the denotational and
/// the game semantics.
pub fn search_distinguishing_model(f1: &Formula, f2: &Formula, budget: &SearchBudget) -> Result<SearchReport> {
    budget.validate()?;
    let (actions, props) = signature(f1, f2, budget)?;
    let deadline = budget.time_limit.map(|d| Instant::now() + d);
    let mut exhaustive_bound = 0;
    let report = |probe: Probe, bound: usize| -> Result<Option<SearchReport>> {
        Ok(match probe {
            Probe::Agree => None,
            Probe::TimedOut => Some(SearchReport {
                witness: None,
                exhaustive_bound: bound,
                timed_out: true,
            }),
            Probe::Differ { model, state } => Some(SearchReport {
                witness: Some(verify_witness(f1, f2, model, state)?),
                exhaustive_bound: bound,
                timed_out: false,
            }),
        })
    };

    for n in 1..=budget.max_states {
        let Some(space) = ModelSpace::exhaustive_size(&actions, &props, n, true) else {
            break;
        };
        if let Some(r) = report(space.first_difference(f1, f2, deadline)?, exhaustive_bound)? {
            return Ok(r);
        }
        exhaustive_bound = n;
    }
    if exhaustive_bound < budget.max_states {
        let sizes: Vec<usize> = (exhaustive_bound + 1..=budget.max_states).collect();
        let space = ModelSpace::random(&actions, &props, &sizes, budget.samples, budget.seed);
        if let Some(r) = report(space.first_difference(f1, f2, deadline)?, exhaustive_bound)? {
            return Ok(r);
        }
    }
    Ok(SearchReport {
        witness: None,
        exhaustive_bound,
        timed_out: false,
    })
}

fn verify_witness(f1: &Formula, f2: &Formula, model: KripkeModel, state: usize) -> Result<Witness> {
    let a = eval(&model, f1)?.contains(state);
    let b = eval(&model, f2)?.contains(state);
    let ga = model_check_via_game(&model, state, f1)?;
    let gb = model_check_via_game(&model, state, f2)?;
    if a == b || a != ga || b != gb {
        return Err(Error::Invariant(format!(
            "witness at state {state} not confirmed (eval {a}/{b}, game {ga}/{gb}) on\n{model}"
        )));
    }
    Ok(Witness {
        model,
        state,
        first_holds: a,
    })
}

/// A pointed model where `f1` and `f2` differ, if the budget finds one.
pub fn find_distinguishing_model(f1: &Formula, f2: &Formula, budget: &SearchBudget) -> Result<Option<Witness>> {
    Ok(search_distinguishing_model(f1, f2, budget)?.witness)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// In the grammar `C₀(x)`: ℵ₀-continuous.
    InC0,
    /// In `C(x)` but not `C₀(x)`: ℵ₁-continuous.
    InC1,
    /// No model with at most `bound` states separates `φ` from its normal
    /// form.
    EquivalentToNormalFormUpToBound { bound: usize, normal_form: Formula },
    /// `φ` differs from its normal form at `state`, so it is not
    /// κ-continuous for any regular κ.
    NotContinuous {
        model: KripkeModel,
        state: usize,
        normal_form: Formula,
    },
    /// The budget ran out before the exhaustive tier completed.
    Exhausted { budget: SearchBudget, normal_form: Formula },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::InC0 => "InC0",
            Verdict::InC1 => "InC1",
            Verdict::EquivalentToNormalFormUpToBound { .. } => "EquivalentToNormalFormUpToBound",
            Verdict::NotContinuous { .. } => "NotContinuous",
            Verdict::Exhausted { .. } => "Exhausted",
        }
    }

    pub fn normal_form(&self) -> Option<&Formula> {
        match self {
            Verdict::InC0 | Verdict::InC1 => None,
            Verdict::EquivalentToNormalFormUpToBound { normal_form, .. }
            | Verdict::NotContinuous { normal_form, .. }
            | Verdict::Exhausted { normal_form, .. } => Some(normal_form),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::InC0 | Verdict::InC1 => write!(f, "{}", self.name()),
            Verdict::EquivalentToNormalFormUpToBound { bound, normal_form } => write!(
                f,
                "{}\nbound: {bound}\nnormal form: {normal_form}",
                self.name()
            ),
            Verdict::NotContinuous {
                model,
                state,
                normal_form,
            } => write!(
                f,
                "{}\nnormal form: {normal_form}\nstate: {}\n{model}",
                self.name(),
                model.id(*state)
            ),
            Verdict::Exhausted { budget, normal_form } => write!(
                f,
                "{}\nmax states: {}\nsamples: {}\nnormal form: {normal_form}",
                self.name(),
                budget.max_states,
                budget.samples
            ),
        }
    }
}

/// Grammar shortcuts first, then a search for a model separating `φ` from
/// `flatten(boxing(φ))`.
pub fn check_continuity(phi: &Formula, x: &Name, budget: &SearchBudget) -> Result<Verdict> {
    budget.validate()?;
    let xs = var_set([x.clone()]);
    if phi.bound_vars().contains(x) {
        return Err(Error::BoundVariable(x.clone()));
    }
    if !phi.is_positive_in(x) {
        return Err(Error::NotPositive(x.clone()));
    }
    if in_c0(phi, &xs)? {
        return Ok(Verdict::InC0);
    }
    if in_c(phi, &xs)? {
        return Ok(Verdict::InC1);
    }
    let normal_form = continuity_normal_form(phi, x)?;
    let report = search_distinguishing_model(phi, &normal_form, budget)?;
    Ok(match report.witness {
        Some(w) => Verdict::NotContinuous {
            model: w.model,
            state: w.state,
            normal_form,
        },
        None if !report.timed_out && report.exhaustive_bound == budget.max_states => {
            Verdict::EquivalentToNormalFormUpToBound {
                bound: report.exhaustive_bound,
                normal_form,
            }
        }
        None => Verdict::Exhausted {
            budget: budget.clone(),
            normal_form,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn acts(a: &[&str]) -> Vec<Action> {
        a.iter().map(|s| Action::new(*s)).collect()
    }

    fn names(a: &[&str]) -> Vec<Name> {
        a.iter().map(|s| Name::new(*s)).collect()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_models(&acts(&["a"]), &names(&["p"]), 1).count(), 4);
        assert_eq!(enumerate_models(&acts(&["a"]), &[], 1).count(), 2);
        assert_eq!(enumerate_models(&acts(&["a"]), &[], 2).count(), 2 + 16);
        // Unlabelled digraphs with loops: 10 on two vertices, 104 on three.
        assert_eq!(enumerate_models_up_to_iso(&acts(&["a"]), &[], 3).count(), 2 + 10 + 104);
        let a: Vec<String> = enumerate_models(&acts(&["a"]), &names(&["p"]), 2)
            .map(|m| m.to_string())
            .collect();
        let b: Vec<String> = enumerate_models(&acts(&["a"]), &names(&["p"]), 2)
            .map(|m| m.to_string())
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn batches_decode_like_models() {
        let (a, p) = (acts(&["a", "b"]), names(&["p"]));
        let space = ModelSpace::exhaustive(&a, &p, 2, false).unwrap();
        let phi = f("mu z. p \\/ <a> z /\\ [b] z");
        let models: Vec<KripkeModel> = space.models().collect();
        assert_eq!(models.len(), 8 + (1 << 10));
        let probe = space.first_difference(&phi, &phi, None).unwrap();
        assert_eq!(probe, Probe::Agree);
        let probe = space.first_difference(&phi, &f("p"), None).unwrap();
        let Probe::Differ { model, state } = probe else {
            panic!("expected a difference");
        };
        assert_ne!(
            eval(&model, &phi).unwrap().contains(state),
            eval(&model, &f("p")).unwrap().contains(state)
        );
    }

    #[test]
    fn distinguishing_examples() {
        let b = SearchBudget::default();
        assert_eq!(find_distinguishing_model(&f("<a> x"), &f("<a> x"), &b).unwrap(), None);
        let w = find_distinguishing_model(&f("[a] x"), &f("[a] false"), &b).unwrap().unwrap();
        assert!(w.model.len() <= 2);
        assert!(w.first_holds);
        assert!(SearchBudget { samples: 0, ..b.clone() }.validate().is_err());
    }

    #[test]
    fn verdicts() {
        let x = Name::new("x");
        let b = SearchBudget::default();
        assert_eq!(check_continuity(&f("<a> x"), &x, &b).unwrap(), Verdict::InC0);
        assert_eq!(check_continuity(&f("nu z. x /\\ <a> z"), &x, &b).unwrap(), Verdict::InC1);
        for phi in ["[a] x", "mu z. x \\/ [a] z"] {
            let v = check_continuity(&f(phi), &x, &b).unwrap();
            let Verdict::NotContinuous { model, .. } = &v else {
                panic!("{phi}: {v}");
            };
            assert!(model.len() <= 2);
        }
        assert!(check_continuity(&f("~x"), &x, &b).is_err());
    }
}
