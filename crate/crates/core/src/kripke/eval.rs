//! Denotational semantics by fixpoint iteration.
//!
//! A formula is compiled once against a model (or a [`ModelBatch`]) into a
//! flat node array; bound variables become environment slots, so shadowing
//! and a variable that is both free and bound are handled by scope. Closed
//! fixpoint subterms are evaluated once per call.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::formula::{Formula, Fp};
use crate::names::{Action, Name};

use super::batch::ModelBatch;
use super::{KripkeModel, StateSet};

#[derive(Debug, Clone, Copy)]
enum Node {
    Top,
    Bot,
    Set(u32),
    CoSet(u32),
    Slot(u32),
    CoSlot(u32),
    And(u32, u32),
    Or(u32, u32),
    Dia(u32, u32),
    Nec(u32, u32),
    Fix {
        fp: Fp,
        slot: u32,
        body: u32,
        closed: bool,
    },
}

#[derive(Debug, Clone)]
enum Rel {
    Successors(Vec<StateSet>),
    Lanes(Vec<(isize, StateSet)>),
}

impl Rel {
    fn dia(&self, s: &StateSet) -> StateSet {
        let mut out = StateSet::empty(s.universe());
        match self {
            Rel::Successors(succ) => {
                for (st, ts) in succ.iter().enumerate() {
                    if ts.intersects(s) {
                        out.insert(st);
                    }
                }
            }
            Rel::Lanes(masks) => {
                for (d, m) in masks {
                    let mut moved = s.shifted(*d);
                    moved.intersect_with(m);
                    out.union_with(&moved);
                }
            }
        }
        out
    }
}

/// A formula compiled against one model or batch.
#[derive(Debug, Clone)]
pub struct Evaluator {
    nodes: Vec<Node>,
    root: u32,
    consts: Vec<StateSet>,
    rels: Vec<Rel>,
    slots: usize,
    params: Vec<Name>,
    universe: StateSet,
}

struct Compiler<'a> {
    nodes: Vec<Node>,
    consts: Vec<StateSet>,
    const_ix: HashMap<Name, u32>,
    rels: Vec<Rel>,
    rel_ix: HashMap<Action, u32>,
    scope: Vec<(Name, u32)>,
    slots: u32,
    param_slots: usize,
    prop: &'a dyn Fn(&Name) -> Option<StateSet>,
    rel: &'a dyn Fn(&Action) -> Option<Rel>,
}

impl Compiler<'_> {
    fn push(&mut self, n: Node) -> u32 {
        self.nodes.push(n);
        (self.nodes.len() - 1) as u32
    }

    fn lookup(&self, x: &Name) -> Option<u32> {
        self.scope.iter().rev().find(|(n, _)| n == x).map(|&(_, s)| s)
    }

    fn constant(&mut self, x: &Name) -> Result<u32> {
        if let Some(&i) = self.const_ix.get(x) {
            return Ok(i);
        }
        let set = (self.prop)(x).ok_or_else(|| Error::UnknownVariable(x.clone()))?;
        self.consts.push(set);
        let i = (self.consts.len() - 1) as u32;
        self.const_ix.insert(x.clone(), i);
        Ok(i)
    }

    fn relation(&mut self, a: &Action) -> Result<u32> {
        if let Some(&i) = self.rel_ix.get(a) {
            return Ok(i);
        }
        let r = (self.rel)(a).ok_or_else(|| Error::UnknownAction(a.clone()))?;
        self.rels.push(r);
        let i = (self.rels.len() - 1) as u32;
        self.rel_ix.insert(a.clone(), i);
        Ok(i)
    }

    /// Returns the node and the slots it reads.
    fn compile(&mut self, f: &Formula) -> Result<(u32, BTreeSet<u32>)> {
        let mut deps = BTreeSet::new();
        let node = match f {
            Formula::Top => Node::Top,
            Formula::Bot => Node::Bot,
            Formula::Var(x) => match self.lookup(x) {
                Some(s) => {
                    deps.insert(s);
                    Node::Slot(s)
                }
                None => Node::Set(self.constant(x)?),
            },
            Formula::NegVar(x) => match self.lookup(x) {
                Some(s) if s as usize >= self.param_slots => {
                    return Err(Error::NotPositive(x.clone()))
                }
                Some(s) => {
                    deps.insert(s);
                    Node::CoSlot(s)
                }
                None => Node::CoSet(self.constant(x)?),
            },
            Formula::And(l, r) | Formula::Or(l, r) => {
                let (l, dl) = self.compile(l)?;
                let (r, dr) = self.compile(r)?;
                deps.extend(dl);
                deps.extend(dr);
                if matches!(f, Formula::And(..)) {
                    Node::And(l, r)
                } else {
                    Node::Or(l, r)
                }
            }
            Formula::Dia(a, g) | Formula::Nec(a, g) => {
                let rel = self.relation(a)?;
                let (g, dg) = self.compile(g)?;
                deps = dg;
                if matches!(f, Formula::Dia(..)) {
                    Node::Dia(rel, g)
                } else {
                    Node::Nec(rel, g)
                }
            }
            Formula::Fix(fp, z, body) => {
                let slot = self.slots;
                self.slots += 1;
                self.scope.push((z.clone(), slot));
                let compiled = self.compile(body);
                self.scope.pop();
                let (body, db) = compiled?;
                deps = db;
                deps.remove(&slot);
                Node::Fix {
                    fp: *fp,
                    slot,
                    body,
                    closed: deps.is_empty(),
                }
            }
        };
        Ok((self.push(node), deps))
    }
}

impl Evaluator {
    /// Compiles `phi`; free variables are read from the valuation.
    pub fn new(model: &KripkeModel, phi: &Formula) -> Result<Self> {
        Self::with_params(model, phi, &[])
    }

    /// Compiles `phi` with the free variables `params` left as arguments of
    /// [`Evaluator::eval_with`], in that order.
    pub fn with_params(model: &KripkeModel, phi: &Formula, params: &[Name]) -> Result<Self> {
        let prop = |x: &Name| model.valuation(x).cloned();
        let rel = |a: &Action| model.relation(a).map(|r| Rel::Successors(r.to_vec()));
        Self::build(phi, params, model.full_set(), &prop, &rel)
    }

    /// Compiles `phi` against every model of a batch at once.
    pub fn for_batch(batch: &ModelBatch, phi: &Formula, params: &[Name]) -> Result<Self> {
        let universe = batch.universe();
        let prop = |x: &Name| {
            Some(
                batch
                    .valuation
                    .get(x)
                    .cloned()
                    .unwrap_or_else(|| StateSet::empty(universe)),
            )
        };
        let rel = |a: &Action| Some(Rel::Lanes(batch.relations.get(a).cloned().unwrap_or_default()));
        Self::build(phi, params, StateSet::full(universe), &prop, &rel)
    }

    fn build(
        phi: &Formula,
        params: &[Name],
        universe: StateSet,
        prop: &dyn Fn(&Name) -> Option<StateSet>,
        rel: &dyn Fn(&Action) -> Option<Rel>,
    ) -> Result<Self> {
        let mut c = Compiler {
            nodes: Vec::new(),
            consts: Vec::new(),
            const_ix: HashMap::new(),
            rels: Vec::new(),
            rel_ix: HashMap::new(),
            scope: params
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i as u32))
                .collect(),
            slots: params.len() as u32,
            param_slots: params.len(),
            prop,
            rel,
        };
        let (root, _) = c.compile(phi)?;
        Ok(Evaluator {
            nodes: c.nodes,
            root,
            consts: c.consts,
            rels: c.rels,
            slots: c.slots as usize,
            params: params.to_vec(),
            universe,
        })
    }

    pub fn params(&self) -> &[Name] {
        &self.params
    }

    pub fn universe(&self) -> usize {
        self.universe.universe()
    }

    /// Denotation with no parameters.
    pub fn eval(&self) -> StateSet {
        self.eval_with(&[])
    }

    /// Denotation with the parameters bound to `args`.
    pub fn eval_with(&self, args: &[StateSet]) -> StateSet {
        assert_eq!(args.len(), self.params.len(), "wrong number of arguments");
        let mut env: Vec<StateSet> = Vec::with_capacity(self.slots);
        env.extend(args.iter().cloned());
        env.resize(self.slots, StateSet::empty(self.universe()));
        let mut cache = vec![None; self.nodes.len()];
        self.ev(self.root, &mut env, &mut cache)
    }

    /// The approximants `f^0(∅) ⊆ f^1(∅) ⊆ …` of the single parameter, until
    /// two consecutive entries agree. The parameter must occur positively.
    pub fn iterate(&self) -> IterationTrace {
        assert_eq!(self.params.len(), 1, "iteration needs exactly one parameter");
        let mut sets = vec![StateSet::empty(self.universe())];
        loop {
            let next = self.eval_with(std::slice::from_ref(sets.last().unwrap()));
            let done = &next == sets.last().unwrap();
            sets.push(next);
            if done {
                return IterationTrace { sets };
            }
        }
    }

    fn ev(&self, i: u32, env: &mut Vec<StateSet>, cache: &mut Vec<Option<StateSet>>) -> StateSet {
        match self.nodes[i as usize] {
            Node::Top => self.universe.clone(),
            Node::Bot => StateSet::empty(self.universe()),
            Node::Set(c) => self.consts[c as usize].clone(),
            Node::CoSet(c) => self.universe.difference(&self.consts[c as usize]),
            Node::Slot(s) => env[s as usize].clone(),
            Node::CoSlot(s) => self.universe.difference(&env[s as usize]),
            Node::And(l, r) => {
                let mut a = self.ev(l, env, cache);
                if !a.is_empty() {
                    a.intersect_with(&self.ev(r, env, cache));
                }
                a
            }
            Node::Or(l, r) => {
                let mut a = self.ev(l, env, cache);
                if a != self.universe {
                    a.union_with(&self.ev(r, env, cache));
                }
                a
            }
            Node::Dia(a, g) => {
                let s = self.ev(g, env, cache);
                self.rels[a as usize].dia(&s)
            }
            Node::Nec(a, g) => {
                let s = self.ev(g, env, cache);
                let out = self.rels[a as usize].dia(&self.universe.difference(&s));
                self.universe.difference(&out)
            }
            Node::Fix {
                fp,
                slot,
                body,
                closed,
            } => {
                if closed {
                    if let Some(v) = &cache[i as usize] {
                        return v.clone();
                    }
                }
                let mut cur = match fp {
                    Fp::Mu => StateSet::empty(self.universe()),
                    Fp::Nu => self.universe.clone(),
                };
                loop {
                    env[slot as usize] = cur.clone();
                    let next = self.ev(body, env, cache);
                    if next == cur {
                        break;
                    }
                    cur = next;
                }
                if closed {
                    cache[i as usize] = Some(cur.clone());
                }
                cur
            }
        }
    }
}

/// `∅ = S₀ ⊆ S₁ ⊆ … ⊆ S_k = S_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationTrace {
    sets: Vec<StateSet>,
}

impl IterationTrace {
    pub fn sets(&self) -> &[StateSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The least `k` with `S_k = S_{k+1}`.
    pub fn closure_ordinal(&self) -> usize {
        self.sets.len() - 2
    }

    /// The least fixpoint.
    pub fn limit(&self) -> &StateSet {
        self.sets.last().expect("traces are never empty")
    }

    /// `S_k`, which is the limit for every `k` past stabilization.
    pub fn step(&self, k: usize) -> &StateSet {
        &self.sets[k.min(self.sets.len() - 1)]
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl FnMut(&StateSet) -> StateSet) -> IterationTrace {
        IterationTrace {
            sets: self.sets.iter().map(f).collect(),
        }
    }
}

pub fn eval(model: &KripkeModel, phi: &Formula) -> Result<StateSet> {
    Ok(Evaluator::new(model, phi)?.eval())
}

pub fn eval_at(model: &KripkeModel, s: usize, phi: &Formula) -> Result<bool> {
    Ok(eval(model, phi)?.contains(s))
}

/// Approximants of `phi` in the variable `x`.
pub fn approximants(model: &KripkeModel, phi: &Formula, x: &Name) -> Result<IterationTrace> {
    if !phi.is_positive_in(x) {
        return Err(Error::NotPositive(x.clone()));
    }
    Ok(Evaluator::with_params(model, phi, std::slice::from_ref(x))?.iterate())
}

/// `cl_M(φ)`: the stage at which the approximants stabilize.
pub fn closure_ordinal_on(model: &KripkeModel, phi: &Formula, x: &Name) -> Result<usize> {
    Ok(approximants(model, phi, x)?.closure_ordinal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::kripke::parse_model;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn chain3() -> KripkeModel {
        parse_model("states: s0 s1 s2\nrel a: s0->s1, s1->s2\nval x: s2\nval p: s2").unwrap()
    }

    fn ids(m: &KripkeModel, s: &StateSet) -> Vec<String> {
        s.iter().map(|i| m.id(i).to_string()).collect()
    }

    #[test]
    fn basic_clauses() {
        let one = parse_model("states: s\nrel a:").unwrap();
        assert!(eval_at(&one, 0, &f("[a] false")).unwrap());
        let m = chain3();
        assert_eq!(ids(&m, &eval(&m, &f("mu z. x \\/ <a> z")).unwrap()), ["s0", "s1", "s2"]);
        let lp = parse_model("states: s\nrel a: s->s\nval x:").unwrap();
        assert!(eval_at(&lp, 0, &f("nu z. <a> z")).unwrap());
        assert!(!eval_at(&lp, 0, &f("mu z. <a> z")).unwrap());
    }

    #[test]
    fn errors() {
        let m = chain3();
        assert_eq!(eval(&m, &f("<b> true")), Err(Error::UnknownAction(Action::new("b"))));
        assert_eq!(eval(&m, &f("q")), Err(Error::UnknownVariable(Name::new("q"))));
        assert!(approximants(&m, &f("~x"), &Name::new("x")).is_err());
    }

    #[test]
    fn traces() {
        let m = chain3();
        let x = Name::new("x");
        let t = approximants(&m, &f("p \\/ <a> x"), &x).unwrap();
        let got: Vec<Vec<String>> = t.sets().iter().map(|s| ids(&m, s)).collect();
        assert_eq!(
            got,
            vec![
                vec![],
                vec!["s2".to_string()],
                vec!["s1".into(), "s2".into()],
                vec!["s0".into(), "s1".into(), "s2".into()],
                vec!["s0".into(), "s1".into(), "s2".into()],
            ]
        );
        assert_eq!(t.closure_ordinal(), 3);
        assert_eq!(approximants(&m, &f("<a> x"), &x).unwrap().len(), 2);
        assert_eq!(approximants(&m, &f("true"), &x).unwrap().len(), 3);
    }

    #[test]
    fn shadowed_parameter() {
        // The bound `x` is a different variable from the parameter.
        let m = chain3();
        let x = Name::new("x");
        let phi = f("(nu x. [a] x) \\/ <a> (x /\\ mu x. <a> x)");
        let t = approximants(&m, &phi, &x).unwrap();
        assert!(t.limit().is_full());
        assert_eq!(t.closure_ordinal(), 1);
    }

    #[test]
    fn batch_matches_single_models() {
        let models: Vec<KripkeModel> = [
            "states: s0 s1 s2\nrel a: s0->s1, s1->s2, s2->s0\nval x: s1",
            "states: s0 s1 s2\nrel a: s2->s1, s1->s0, s0->s0\nval x: s0 s2",
            "states: s0 s1 s2\nrel a: s1->s1\nval x:",
        ]
        .iter()
        .map(|t| parse_model(t).unwrap())
        .collect();
        let batch = ModelBatch::new(&models).unwrap();
        for phi in ["mu z. x \\/ <a> z", "nu z. [a] z /\\ (x \\/ <a> true)", "[a] x", "~x"] {
            let phi = f(phi);
            let packed = Evaluator::for_batch(&batch, &phi, &[]).unwrap().eval();
            for (i, m) in models.iter().enumerate() {
                assert_eq!(batch.lane(&packed, i), eval(m, &phi).unwrap(), "{phi} on model {i}");
            }
        }
    }
}
