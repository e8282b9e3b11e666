//! The model-checking parity game `𝒢(M, φ)` and its solution.
//!
//! Positions are pairs `(s, ψ)` with `ψ ∈ CL(φ)`. Eva owns `∨`, `◊` and `μ`
//! positions, Adam owns `∧`, `□` and `ν` positions. A player who cannot
//! move loses, so `(s, ⊤)` and true literals are Adam's dead ends and
//! `(s, ⊥)` and false literals are Eva's. Infinite plays are won by Eva
//! iff the largest priority seen infinitely often is even.

mod format;
mod solve;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{closure, standard_context, unfold, Closure, Formula, Fp, OccAddress};
use crate::kripke::KripkeModel;

pub use format::parse_game;
pub use solve::{solve, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Player {
    Eva,
    Adam,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Eva => Player::Adam,
            Player::Adam => Player::Eva,
        }
    }

    /// The player favoured by a priority.
    pub fn of_priority(p: u32) -> Player {
        if p.is_multiple_of(2) {
            Player::Eva
        } else {
            Player::Adam
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Eva => "Eva",
            Player::Adam => "Adam",
        })
    }
}

/// A finite parity game arena with optional position labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParityGame {
    owner: Vec<Player>,
    priority: Vec<u32>,
    edges: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl ParityGame {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_position(&mut self, owner: Player, priority: u32, label: impl Into<String>) -> usize {
        self.owner.push(owner);
        self.priority.push(priority);
        self.edges.push(Vec::new());
        self.labels.push(label.into());
        self.owner.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize) {
        assert!(to < self.len(), "edge target out of range");
        if !self.edges[from].contains(&to) {
            self.edges[from].push(to);
        }
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn priority(&self, v: usize) -> u32 {
        self.priority[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.edges[v]
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// The game with owners swapped and priorities raised by one; its
    /// winning regions are those of `self`, swapped.
    pub fn dual(&self) -> ParityGame {
        ParityGame {
            owner: self.owner.iter().map(|p| p.opponent()).collect(),
            priority: self.priority.iter().map(|p| p + 1).collect(),
            edges: self.edges.clone(),
            labels: self.labels.clone(),
        }
    }
}

/// `ρ : CL(φ) → ℕ`, indexed like the closure.
#[derive(Debug, Clone)]
pub struct RankFunction {
    closure: Closure,
    ranks: Vec<u32>,
}

impl RankFunction {
    pub fn closure(&self) -> &Closure {
        &self.closure
    }

    pub fn rank(&self, i: usize) -> u32 {
        self.ranks[i]
    }

    pub fn rank_of(&self, f: &Formula) -> Option<u32> {
        self.closure.index_of(f).map(|i| self.ranks[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Formula, u32)> {
        self.closure.iter().zip(self.ranks.iter().copied())
    }
}

/// Fixpoint subformulas are ranked innermost first: each gets the least
/// number of its parity (odd for `μ`, even for `ν`) that is at least the
/// rank of every fixpoint below it. Everything else gets rank 0.
pub fn rank_function(phi: &Formula) -> Result<RankFunction> {
    if !phi.is_well_named() {
        return Err(Error::NotWellNamed);
    }
    let cl = closure(phi);
    let mut ranks = vec![0u32; cl.len()];
    assign_ranks(phi, phi, OccAddress::root(), &cl, &mut ranks);
    Ok(RankFunction { closure: cl, ranks })
}

/// Returns the largest fixpoint rank inside `f` (itself included).
fn assign_ranks(
    root: &Formula,
    f: &Formula,
    addr: OccAddress,
    cl: &Closure,
    ranks: &mut [u32],
) -> u32 {
    let inner = f
        .children()
        .into_iter()
        .enumerate()
        .map(|(i, c)| assign_ranks(root, c, addr.child(i as u8), cl, ranks))
        .max()
        .unwrap_or(0);
    let Formula::Fix(fp, ..) = f else {
        return inner;
    };
    let parity = match fp {
        Fp::Mu => 1,
        Fp::Nu => 0,
    };
    let r = if inner % 2 == parity { inner } else { inner + 1 };
    let ctx = standard_context(root, &addr).expect("address from the formula");
    let i = cl.index_of(&ctx.apply(f)).expect("closure contains every ψ·σ");
    ranks[i] = ranks[i].max(r);
    r
}

/// `𝒢(M, φ)` together with the position numbering.
#[derive(Debug, Clone)]
pub struct ModelCheckingGame {
    pub game: ParityGame,
    pub ranks: RankFunction,
    states: usize,
}

impl ModelCheckingGame {
    /// Index of the position `(s, ψ)` for the closure member `i`.
    pub fn position(&self, s: usize, i: usize) -> usize {
        s * self.ranks.closure.len() + i
    }

    /// Index of `(s, φ)`.
    pub fn root(&self, s: usize) -> usize {
        self.position(s, 0)
    }

    pub fn states(&self) -> usize {
        self.states
    }
}

/// Builds the game for a well-named `phi` whose free variables are all
/// valued in `model`.
pub fn build_game(model: &KripkeModel, phi: &Formula) -> Result<ModelCheckingGame> {
    let ranks = rank_function(phi)?;
    let cl = &ranks.closure;
    debug_assert!(cl.get(0).alpha_eq(phi));
    let k = cl.len();
    let mut game = ParityGame::new();
    for s in 0..model.len() {
        for i in 0..k {
            let f = cl.get(i);
            let owner = match f {
                Formula::Top => Player::Adam,
                Formula::Bot => Player::Eva,
                Formula::Var(p) | Formula::NegVar(p) => {
                    let val = model
                        .valuation(p)
                        .ok_or_else(|| Error::UnknownVariable(p.clone()))?;
                    let holds = val.contains(s) == matches!(f, Formula::Var(_));
                    if holds {
                        Player::Adam
                    } else {
                        Player::Eva
                    }
                }
                Formula::And(..) | Formula::Nec(..) | Formula::Fix(Fp::Nu, ..) => Player::Adam,
                Formula::Or(..) | Formula::Dia(..) | Formula::Fix(Fp::Mu, ..) => Player::Eva,
            };
            game.add_position(owner, ranks.ranks[i], format!("({}, {f})", model.id(s)));
        }
    }
    let at = |s: usize, g: &Formula| s * k + cl.index_of(g).expect("closure is closed under the rules");
    for s in 0..model.len() {
        for i in 0..k {
            let v = s * k + i;
            match cl.get(i) {
                Formula::And(l, r) | Formula::Or(l, r) => {
                    game.add_edge(v, at(s, l));
                    game.add_edge(v, at(s, r));
                }
                Formula::Dia(a, g) | Formula::Nec(a, g) => {
                    let succ = model
                        .successors(a, s)
                        .ok_or_else(|| Error::UnknownAction(a.clone()))?;
                    for t in succ.iter() {
                        game.add_edge(v, at(t, g));
                    }
                }
                f @ Formula::Fix(_, z, body) => {
                    game.add_edge(v, at(s, &unfold(z, body, f)));
                }
                _ => {}
            }
        }
    }
    Ok(ModelCheckingGame {
        game,
        ranks,
        states: model.len(),
    })
}

/// Whether Eva wins `(s, φ)`; `φ` is well-named first.
pub fn model_check_via_game(model: &KripkeModel, s: usize, phi: &Formula) -> Result<bool> {
    if s >= model.len() {
        return Err(Error::InvalidArgument(format!("state {s} out of range")));
    }
    let g = build_game(model, &phi.make_well_named())?;
    Ok(solve(&g.game).winner(g.root(s)) == Player::Eva)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::kripke::{eval, parse_model};

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn self_loop_games() {
        let m = parse_model("states: s\nrel a: s->s").unwrap();
        let g = build_game(&m, &f("nu z. <a> z")).unwrap();
        assert_eq!(g.game.len(), 2);
        let sol = solve(&g.game);
        assert!((0..g.game.len()).all(|v| sol.winner(v) == Player::Eva));
        let g = build_game(&m, &f("mu z. <a> z")).unwrap();
        let sol = solve(&g.game);
        assert!((0..g.game.len()).all(|v| sol.winner(v) == Player::Adam));
    }

    #[test]
    fn terminal_positions() {
        let m = parse_model("states: s t\nrel a: s->t\nval p: s").unwrap();
        assert!(model_check_via_game(&m, 0, &f("true")).unwrap());
        assert!(!model_check_via_game(&m, 0, &f("false")).unwrap());
        assert!(model_check_via_game(&m, 0, &f("p")).unwrap());
        assert!(!model_check_via_game(&m, 1, &f("p")).unwrap());
        assert!(model_check_via_game(&m, 1, &f("~p")).unwrap());
        assert!(model_check_via_game(&m, 1, &f("[a] false")).unwrap());
        assert!(!model_check_via_game(&m, 1, &f("<a> true")).unwrap());
        assert!(build_game(&m, &f("q")).is_err());
        assert!(build_game(&m, &f("<b> p")).is_err());
        assert_eq!(build_game(&m, &f("(mu z. z) /\\ mu z. z")).unwrap_err(), Error::NotWellNamed);
    }

    #[test]
    fn ranks_respect_nesting() {
        let r = rank_function(&f("mu z. p \\/ <a> z")).unwrap();
        assert_eq!(r.rank_of(&f("mu z. p \\/ <a> z")), Some(1));
        assert_eq!(r.rank_of(&f("p")), Some(0));

        let phi = f("nu z. mu w. (p /\\ <a> z) \\/ <a> w");
        let r = rank_function(&phi).unwrap();
        let nu = r.rank_of(&phi).unwrap();
        let mu = r.rank_of(&f("mu w. (p /\\ <a> (nu z. mu w. (p /\\ <a> z) \\/ <a> w)) \\/ <a> w")).unwrap();
        assert_eq!((mu, nu), (1, 2));
    }

    #[test]
    fn agrees_with_eval_on_small_cases() {
        let m = parse_model(
            "states: s0 s1 s2\nrel a: s0->s1, s1->s2, s2->s0, s1->s1\nrel b: s0->s2\nval p: s1",
        )
        .unwrap();
        for phi in [
            "nu z. mu w. (p /\\ <a> z) \\/ <a> w",
            "mu z. nu w. (p \\/ [a] z) /\\ [b] w",
            "<b> [a] p \\/ mu z. p \\/ <a> <a> z",
            "nu z. <a> z /\\ (mu w. p \\/ <a> w)",
        ] {
            let phi = f(phi);
            let want = eval(&m, &phi).unwrap();
            for s in 0..m.len() {
                assert_eq!(model_check_via_game(&m, s, &phi).unwrap(), want.contains(s), "{phi} at {s}");
            }
        }
    }
}
