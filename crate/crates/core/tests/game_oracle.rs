//! Zielonka's solutions checked against a direct certificate check: fixing
//! the winner's strategy leaves a one-player graph in which the opponent
//! can neither get the winner stuck nor close a cycle whose largest
//! priority favours the opponent.

use mucalc_core::game::{solve, ParityGame, Player};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_game(seed: u64, n: usize) -> ParityGame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = ParityGame::new();
    for i in 0..n {
        let owner = if rng.gen_bool(0.5) { Player::Eva } else { Player::Adam };
        g.add_position(owner, rng.gen_range(0..5), format!("v{i}"));
    }
    for v in 0..n {
        // Some dead ends on purpose.
        if rng.gen_bool(0.1) {
            continue;
        }
        for w in 0..n {
            if rng.gen_bool(0.25) {
                g.add_edge(v, w);
            }
        }
    }
    g
}

/// Edges left once `p` plays `strategy` at its own positions.
fn restricted(g: &ParityGame, p: Player, strategy: &[Option<usize>]) -> Vec<Vec<usize>> {
    (0..g.len())
        .map(|v| {
            if g.owner(v) == p {
                strategy[v].into_iter().collect()
            } else {
                g.successors(v).to_vec()
            }
        })
        .collect()
}

fn reach(edges: &[Vec<usize>], from: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; edges.len()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        for &w in &edges[v] {
            if allowed(w) && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Whether `p`, playing `strategy`, wins every play from `start`.
fn certifies(g: &ParityGame, p: Player, strategy: &[Option<usize>], start: usize) -> bool {
    let edges = restricted(g, p, strategy);
    let reachable = reach(&edges, start, |_| true);
    for v in (0..g.len()).filter(|&v| reachable[v]) {
        if edges[v].is_empty() && g.owner(v) == p {
            return false;
        }
        let prio = g.priority(v);
        if Player::of_priority(prio) == p {
            continue;
        }
        // A cycle through v whose priorities are all ≤ prio is won by the opponent.
        let low = |w: usize| g.priority(w) <= prio;
        if edges[v].iter().any(|&w| low(w) && reach(&edges, w, low)[v]) {
            return false;
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn winners_hold_certified_strategies(seed in any::<u64>(), n in 1usize..10) {
        let g = random_game(seed, n);
        let sol = solve(&g);
        let strategy: Vec<Option<usize>> = (0..n).map(|v| sol.strategy(v)).collect();
        for v in 0..n {
            let w = sol.winner(v);
            prop_assert!(certifies(&g, w, &strategy, v), "position {v} for {w}\n{g}");
            prop_assert!(!certifies(&g, w.opponent(), &strategy, v));
            if g.owner(v) == w && !g.successors(v).is_empty() {
                let s = strategy[v].expect("winner has a move");
                prop_assert!(g.successors(v).contains(&s));
                prop_assert_eq!(sol.winner(s), w);
            }
        }
    }

    #[test]
    fn dual_game_swaps_winners(seed in any::<u64>(), n in 1usize..10) {
        let g = random_game(seed, n);
        let (a, b) = (solve(&g), solve(&g.dual()));
        for v in 0..n {
            prop_assert_eq!(a.winner(v), b.winner(v).opponent());
        }
    }
}
