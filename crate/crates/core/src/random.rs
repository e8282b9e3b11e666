//! Seeded generators of formulas and models for property tests and the
//! checker's random tier.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::formula::{Formula, Fp};
use crate::kripke::{KripkeModel, StateSet};
use crate::names::{Action, Name};

/// Shape of random formulas. Binders are named `z0, z1, …` in order of
/// creation, so outputs are well-named whenever no free variable is
/// called `z<n>`.
#[derive(Debug, Clone)]
pub struct FormulaGen {
    /// Bound on the syntax tree depth (a leaf has depth 1).
    pub max_depth: usize,
    pub actions: Vec<Action>,
    /// Free variables that only occur positively.
    pub positive_vars: Vec<Name>,
    /// Free variables that may also occur negated.
    pub literal_vars: Vec<Name>,
    pub fixpoints: bool,
}

impl FormulaGen {
    pub fn new<A: Into<Action>, N: Into<Name>>(
        max_depth: usize,
        actions: impl IntoIterator<Item = A>,
        positive_vars: impl IntoIterator<Item = N>,
    ) -> Self {
        FormulaGen {
            max_depth,
            actions: actions.into_iter().map(Into::into).collect(),
            positive_vars: positive_vars.into_iter().map(Into::into).collect(),
            literal_vars: Vec::new(),
            fixpoints: true,
        }
    }

    pub fn with_literals<N: Into<Name>>(mut self, vars: impl IntoIterator<Item = N>) -> Self {
        self.literal_vars = vars.into_iter().map(Into::into).collect();
        self
    }

    pub fn without_fixpoints(mut self) -> Self {
        self.fixpoints = false;
        self
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        let mut counter = 0;
        let depth = rng.gen_range(1..=self.max_depth.max(1));
        self.node(rng, depth, &mut Vec::new(), &mut counter)
    }

    fn leaf<R: Rng + ?Sized>(&self, rng: &mut R, scope: &[Name]) -> Formula {
        // Bound variables are preferred so that binders are not vacuous.
        if !scope.is_empty() && rng.gen_bool(0.5) {
            return Formula::Var(scope.choose(rng).unwrap().clone());
        }
        let n_pos = self.positive_vars.len();
        let n_lit = self.literal_vars.len();
        let roll = rng.gen_range(0..(2 + n_pos + 2 * n_lit));
        match roll {
            0 => Formula::Top,
            1 => Formula::Bot,
            r if r < 2 + n_pos => Formula::Var(self.positive_vars[r - 2].clone()),
            r => {
                let i = r - 2 - n_pos;
                let v = self.literal_vars[i / 2].clone();
                if i.is_multiple_of(2) {
                    Formula::Var(v)
                } else {
                    Formula::NegVar(v)
                }
            }
        }
    }

    fn node<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        depth: usize,
        scope: &mut Vec<Name>,
        counter: &mut usize,
    ) -> Formula {
        if depth <= 1 {
            return self.leaf(rng, scope);
        }
        let modal = !self.actions.is_empty();
        let kinds = 2 + if modal { 2 } else { 0 } + if self.fixpoints { 2 } else { 0 };
        let mut k = rng.gen_range(0..kinds + 1);
        if k == kinds {
            return self.leaf(rng, scope);
        }
        if k < 2 {
            let l = self.node(rng, depth - 1, scope, counter);
            let rd = rng.gen_range(1..depth);
            let r = self.node(rng, rd, scope, counter);
            let (l, r) = if rng.gen_bool(0.5) { (l, r) } else { (r, l) };
            return if k == 0 { Formula::and(l, r) } else { Formula::or(l, r) };
        }
        k -= 2;
        if modal {
            if k < 2 {
                let a = self.actions.choose(rng).unwrap().clone();
                let b = self.node(rng, depth - 1, scope, counter);
                return if k == 0 { Formula::dia(a, b) } else { Formula::nec(a, b) };
            }
            k -= 2;
        }
        let z = Name::new(format!("z{counter}"));
        *counter += 1;
        scope.push(z.clone());
        let body = self.node(rng, depth - 1, scope, counter);
        scope.pop();
        Formula::fix(if k == 0 { Fp::Mu } else { Fp::Nu }, z, body)
    }
}

/// A model on `n` states where each edge is present with probability
/// `density` and each variable holds at each state with probability 1/2.
pub fn random_model<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    actions: &[Action],
    props: &[Name],
    density: f64,
) -> KripkeModel {
    let mut m = KripkeModel::with_states(n);
    for a in actions {
        m.add_action(a.clone());
        for s in 0..n {
            for t in 0..n {
                if rng.gen_bool(density) {
                    m.add_edge(a.clone(), s, t);
                }
            }
        }
    }
    for p in props {
        let set = StateSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
        m.set_valuation(p.clone(), set);
    }
    m
}

/// A random subset of `{0, …, n-1}`.
pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, n: usize) -> StateSet {
    StateSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn formulas_respect_shape() {
        let g = FormulaGen::new(5, ["a"], ["x"]).with_literals(["p"]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let f = g.sample(&mut rng);
            assert!(f.depth() <= 5);
            assert!(f.is_well_named(), "{f}");
            assert!(f.binders_positive());
            assert!(f.is_positive_in(&Name::new("x")));
            assert!(f.free_vars().iter().all(|v| v.as_str() == "x" || v.as_str() == "p"));
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let g = FormulaGen::new(6, ["a", "b"], ["x", "y"]);
        let a: Vec<Formula> = {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            (0..20).map(|_| g.sample(&mut rng)).collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b: Vec<Formula> = (0..20).map(|_| g.sample(&mut rng)).collect();
        assert_eq!(a, b);
    }
}
