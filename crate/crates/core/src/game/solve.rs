//! Recursive Zielonka solving with positional strategies.
//!
//! Dead ends are first redirected to two self-looping sinks, one of odd and
//! one of even priority, so that every subgame visited by the recursion is
//! total.

use super::{ParityGame, Player};

/// Winning regions and positional strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    winner: Vec<Player>,
    strategy: Vec<Option<usize>>,
}

impl Solution {
    pub fn winner(&self, v: usize) -> Player {
        self.winner[v]
    }

    /// The chosen move at a position owned by its winner, unless that
    /// position is a dead end.
    pub fn strategy(&self, v: usize) -> Option<usize> {
        self.strategy[v]
    }

    pub fn region(&self, p: Player) -> Vec<usize> {
        (0..self.winner.len()).filter(|&v| self.winner[v] == p).collect()
    }
}

struct Arena {
    owner: Vec<Player>,
    priority: Vec<u32>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

type Strategy = Vec<Option<usize>>;

impl Arena {
    fn len(&self) -> usize {
        self.owner.len()
    }

    /// `Attr_p(target)` inside `live`, with the attracting moves of `p`.
    fn attractor(&self, p: Player, live: &[bool], target: &[usize], strat: &mut Strategy) -> Vec<bool> {
        let n = self.len();
        let mut inside = vec![false; n];
        let mut remaining: Vec<usize> = (0..n)
            .map(|v| self.succ[v].iter().filter(|&&w| live[w]).count())
            .collect();
        let mut queue: Vec<usize> = Vec::new();
        for &t in target {
            if !inside[t] {
                inside[t] = true;
                queue.push(t);
            }
        }
        while let Some(w) = queue.pop() {
            for &v in &self.pred[w] {
                if !live[v] || inside[v] {
                    continue;
                }
                if self.owner[v] == p {
                    inside[v] = true;
                    strat[v] = Some(w);
                    queue.push(v);
                } else {
                    remaining[v] -= 1;
                    if remaining[v] == 0 {
                        inside[v] = true;
                        queue.push(v);
                    }
                }
            }
        }
        inside
    }

    /// Returns the winner of each live position; `strat` receives moves for
    /// positions owned by their winner.
    fn zielonka(&self, live: &[bool], strat: &mut Strategy) -> Vec<Option<Player>> {
        let n = self.len();
        let mut win: Vec<Option<Player>> = vec![None; n];
        let Some(top) = (0..n).filter(|&v| live[v]).map(|v| self.priority[v]).max() else {
            return win;
        };
        let i = Player::of_priority(top);
        let target: Vec<usize> = (0..n)
            .filter(|&v| live[v] && self.priority[v] == top)
            .collect();
        let mut attr_strat = vec![None; n];
        let a = self.attractor(i, live, &target, &mut attr_strat);
        let rest: Vec<bool> = (0..n).map(|v| live[v] && !a[v]).collect();
        let mut sub_strat = vec![None; n];
        let sub = self.zielonka(&rest, &mut sub_strat);
        let opp = i.opponent();

        if !sub.contains(&Some(opp)) {
            for v in 0..n {
                if !live[v] {
                    continue;
                }
                win[v] = Some(i);
                if self.owner[v] == i {
                    strat[v] = if rest[v] {
                        sub_strat[v]
                    } else if let Some(w) = attr_strat[v] {
                        Some(w)
                    } else {
                        // A top-priority position: any move inside the subgame.
                        self.succ[v].iter().copied().find(|&w| live[w])
                    };
                }
            }
            return win;
        }

        let opp_region: Vec<usize> = (0..n).filter(|&v| sub[v] == Some(opp)).collect();
        let mut b_strat = vec![None; n];
        let b = self.attractor(opp, live, &opp_region, &mut b_strat);
        let rest2: Vec<bool> = (0..n).map(|v| live[v] && !b[v]).collect();
        let mut sub2_strat = vec![None; n];
        let sub2 = self.zielonka(&rest2, &mut sub2_strat);
        for v in 0..n {
            if !live[v] {
                continue;
            }
            if b[v] {
                win[v] = Some(opp);
                if self.owner[v] == opp {
                    strat[v] = if sub[v] == Some(opp) {
                        sub_strat[v]
                    } else {
                        b_strat[v]
                    };
                }
            } else {
                win[v] = sub2[v];
                if Some(self.owner[v]) == sub2[v] {
                    strat[v] = sub2_strat[v];
                }
            }
        }
        win
    }
}

pub fn solve(game: &ParityGame) -> Solution {
    let n = game.len();
    let max = game.priority.iter().copied().max().unwrap_or(0);
    // Sinks: `n` is lost by Eva, `n + 1` by Adam.
    let (eva_loses, adam_loses) = (n, n + 1);
    let odd = max + 1 + max % 2;
    let even = max + 2 - max % 2;
    let mut owner = game.owner.clone();
    let mut priority = game.priority.clone();
    let mut succ = game.edges.clone();
    owner.extend([Player::Adam, Player::Eva]);
    priority.extend([odd, even]);
    succ.extend([vec![eva_loses], vec![adam_loses]]);
    for v in 0..n {
        if succ[v].is_empty() {
            succ[v].push(match owner[v] {
                Player::Eva => eva_loses,
                Player::Adam => adam_loses,
            });
        }
    }
    let mut pred = vec![Vec::new(); n + 2];
    for (v, ws) in succ.iter().enumerate() {
        for &w in ws {
            pred[w].push(v);
        }
    }
    let arena = Arena {
        owner,
        priority,
        succ,
        pred,
    };
    let mut strat = vec![None; n + 2];
    let win = arena.zielonka(&vec![true; n + 2], &mut strat);
    Solution {
        winner: win[..n].iter().map(|w| w.expect("every position is won")).collect(),
        strategy: (0..n)
            .map(|v| strat[v].filter(|&w| w < n))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stuck_player_loses() {
        let mut g = ParityGame::new();
        g.add_position(Player::Eva, 0, "");
        assert_eq!(solve(&g).winner(0), Player::Adam);
        let mut g = ParityGame::new();
        let v = g.add_position(Player::Adam, 0, "");
        g.add_edge(v, v);
        assert_eq!(solve(&g).winner(0), Player::Eva);
    }

    #[test]
    fn choice_between_cycles() {
        // Eva at 0 chooses between an odd loop (1) and an even loop (2).
        let mut g = ParityGame::new();
        let v0 = g.add_position(Player::Eva, 0, "");
        let v1 = g.add_position(Player::Adam, 3, "");
        let v2 = g.add_position(Player::Adam, 2, "");
        g.add_edge(v0, v1);
        g.add_edge(v0, v2);
        g.add_edge(v1, v1);
        g.add_edge(v2, v2);
        let s = solve(&g);
        assert_eq!(s.winner(v0), Player::Eva);
        assert_eq!(s.strategy(v0), Some(v2));
        assert_eq!(s.winner(v1), Player::Adam);
        let d = solve(&g.dual());
        assert_eq!(d.winner(v0), Player::Adam);
        assert_eq!(d.winner(v1), Player::Eva);
    }
}
