//! Properties of the semantic layer, each against an independent oracle:
//! textbook Knaster-Tarski iteration, naive greatest bisimulation,
//! brute-force model counts.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use mucalc_core::continuity::{enumerate_models, enumerate_models_up_to_iso, ModelSpace};
use mucalc_core::formula::{parse, Formula, Fp};
use mucalc_core::kripke::{
    approximants, bisimulation_partition, eval, KripkeModel, ModelBatch, StateSet,
};
use mucalc_core::random::{random_model, FormulaGen};
use mucalc_core::transform::continuity_normal_form;
use mucalc_core::{Action, Name};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn acts() -> Vec<Action> {
    vec![Action::new("a"), Action::new("b")]
}

fn props() -> Vec<Name> {
    vec![Name::new("p"), Name::new("x")]
}

fn sample(seed: u64, depth: usize) -> (Formula, KripkeModel) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phi = FormulaGen::new(depth, ["a", "b"], ["x"]).with_literals(["p"]).sample(&mut rng);
    let n = rng.gen_range(1..=5);
    let density = rng.gen_range(0.1..0.6);
    let m = random_model(&mut rng, n, &acts(), &props(), density);
    (phi, m)
}

/// Denotation by direct recursion with fresh Knaster-Tarski iteration at
/// every fixpoint, under an explicit environment.
fn naive(m: &KripkeModel, f: &Formula, env: &mut Vec<(Name, StateSet)>) -> StateSet {
    let n = m.len();
    let lookup = |env: &Vec<(Name, StateSet)>, v: &Name| {
        env.iter()
            .rev()
            .find(|(w, _)| w == v)
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| m.valuation(v).cloned().unwrap_or(StateSet::empty(n)))
    };
    match f {
        Formula::Top => StateSet::full(n),
        Formula::Bot => StateSet::empty(n),
        Formula::Var(v) => lookup(env, v),
        Formula::NegVar(v) => lookup(env, v).complement(),
        Formula::And(l, r) => naive(m, l, env).intersection(&naive(m, r, env)),
        Formula::Or(l, r) => naive(m, l, env).union(&naive(m, r, env)),
        Formula::Dia(a, b) => {
            let t = naive(m, b, env);
            StateSet::from_indices(n, (0..n).filter(|&s| m.edges(a).iter().any(|&(u, v)| u == s && t.contains(v))))
        }
        Formula::Nec(a, b) => {
            let t = naive(m, b, env);
            StateSet::from_indices(n, (0..n).filter(|&s| m.edges(a).iter().all(|&(u, v)| u != s || t.contains(v))))
        }
        Formula::Fix(q, z, b) => {
            let mut cur = if *q == Fp::Mu { StateSet::empty(n) } else { StateSet::full(n) };
            loop {
                env.push((z.clone(), cur.clone()));
                let next = naive(m, b, env);
                env.pop();
                if next == cur {
                    return cur;
                }
                cur = next;
            }
        }
    }
}

/// The greatest bisimulation as a relation, by deleting violating pairs.
fn naive_bisim(m: &KripkeModel) -> Vec<Vec<bool>> {
    let n = m.len();
    let mut rel = vec![vec![true; n]; n];
    for p in m.props() {
        let v = m.valuation(p).unwrap();
        for s in 0..n {
            for t in 0..n {
                if v.contains(s) != v.contains(t) {
                    rel[s][t] = false;
                }
            }
        }
    }
    let acts: Vec<Action> = m.actions().cloned().collect();
    loop {
        let mut changed = false;
        for s in 0..n {
            for t in 0..n {
                if !rel[s][t] {
                    continue;
                }
                let ok = acts.iter().all(|a| {
                    let (ss, ts) = (m.successors(a, s).unwrap(), m.successors(a, t).unwrap());
                    ss.iter().all(|s2| ts.iter().any(|t2| rel[s2][t2]))
                        && ts.iter().all(|t2| ss.iter().any(|s2| rel[s2][t2]))
                });
                if !ok {
                    rel[s][t] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn evaluator_matches_naive_iteration(seed in any::<u64>()) {
        let (phi, m) = sample(seed, 7);
        prop_assert_eq!(eval(&m, &phi).unwrap(), naive(&m, &phi, &mut Vec::new()), "{}", phi);
    }

    #[test]
    fn approximants_climb_to_the_least_fixpoint(seed in any::<u64>()) {
        let (phi, m) = sample(seed, 6);
        let x = Name::new("x");
        let trace = approximants(&m, &phi, &x).unwrap();
        for w in trace.sets().windows(2) {
            prop_assert!(w[0].is_subset(&w[1]));
        }
        prop_assert!(trace.sets()[0].is_empty());
        let lfp = Formula::mu(x, phi.clone());
        prop_assert_eq!(trace.limit(), &eval(&m, &lfp).unwrap());
        let k = trace.closure_ordinal();
        prop_assert_eq!(trace.step(k), trace.limit());
        prop_assert!(k == 0 || trace.step(k - 1) != trace.limit());
    }

    #[test]
    fn normal_form_entails_formula(seed in any::<u64>()) {
        let (phi, m) = sample(seed, 6);
        let cnf = continuity_normal_form(&phi, &Name::new("x")).unwrap();
        prop_assert!(eval(&m, &cnf).unwrap().is_subset(&eval(&m, &phi).unwrap()), "{} vs {}", phi, cnf);
    }

    #[test]
    fn batches_match_single_models(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = FormulaGen::new(6, ["a", "b"], ["x"]).with_literals(["p"]).sample(&mut rng);
        let n = rng.gen_range(1..=4);
        let models: Vec<KripkeModel> = (0..rng.gen_range(1..40))
            .map(|_| random_model(&mut rng, n, &acts(), &props(), 0.3))
            .collect();
        let batch = ModelBatch::new(&models).unwrap();
        let packed = mucalc_core::kripke::Evaluator::for_batch(&batch, &phi, &[]).unwrap().eval();
        for (i, m) in models.iter().enumerate() {
            prop_assert_eq!(batch.lane(&packed, i), eval(m, &phi).unwrap());
        }
    }

    #[test]
    fn partition_is_greatest_bisimulation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=7);
        let density = rng.gen_range(0.1..0.5);
        let m = random_model(&mut rng, n, &acts(), &props(), density);
        let part = bisimulation_partition(
            &m,
            &props().into_iter().collect(),
            &acts().into_iter().collect(),
        );
        let rel = naive_bisim(&m);
        for s in 0..n {
            for t in 0..n {
                prop_assert_eq!(part.same(s, t), rel[s][t]);
            }
        }
    }

    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let (phi, _) = sample(seed, 8);
        prop_assert_eq!(parse(&phi.to_string()).unwrap(), phi);
    }
}

#[test]
fn enumeration_counts_match_formula() {
    let one = [Action::new("a")];
    let p = [Name::new("p")];
    for (a, q) in [(&one[..], &p[..]), (&one[..], &[][..]), (&[][..], &p[..])] {
        let got = enumerate_models(a, q, 3).count();
        let want: usize = (1..=3).map(|n| 1usize << (a.len() * n * n + q.len() * n)).sum();
        assert_eq!(got, want);
    }
}

#[test]
fn iso_pruning_keeps_one_model_per_class() {
    let a = [Action::new("a")];
    let p = [Name::new("p")];
    let all: Vec<KripkeModel> = enumerate_models(&a, &p, 3).collect();
    let reps: Vec<KripkeModel> = enumerate_models_up_to_iso(&a, &p, 3).collect();
    // Brute force: two models are isomorphic iff some permutation maps one
    // onto the other.
    let key = |m: &KripkeModel| -> BTreeSet<String> {
        let n = m.len();
        let perms = permutations(n);
        perms
            .iter()
            .map(|pi| {
                let mut k = KripkeModel::with_states(n);
                k.add_action("a");
                for (s, t) in m.edges(&a[0]) {
                    k.add_edge("a", pi[s], pi[t]);
                }
                let v = m.valuation(&p[0]).unwrap();
                k.set_valuation("p", StateSet::from_indices(n, v.iter().map(|s| pi[s])));
                k.to_string()
            })
            .collect()
    };
    let classes: BTreeSet<BTreeSet<String>> = all.iter().map(key).collect();
    assert_eq!(reps.len(), classes.len());
    let rep_classes: BTreeSet<BTreeSet<String>> = reps.iter().map(key).collect();
    assert_eq!(rep_classes, classes);

    let space = ModelSpace::exhaustive(&a, &p, 3, true).unwrap();
    assert_eq!(space.len(), reps.len());
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
