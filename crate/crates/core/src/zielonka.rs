//! Zielonka's recursive algorithm. Serves as an independent oracle for the
//! winning regions computed by strategy iteration.

use std::collections::BTreeSet;

use crate::game::{GameGraph, NodeId, ParityGame, Player};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningSets {
    pub w0: BTreeSet<NodeId>,
    pub w1: BTreeSet<NodeId>,
}

impl WinningSets {
    pub fn of(&self, player: Player) -> &BTreeSet<NodeId> {
        match player {
            Player::Even => &self.w0,
            Player::Odd => &self.w1,
        }
    }
}

/// Least set containing `target` from which `player` can force a visit to
/// `target`.
pub fn attractor(game: &ParityGame, player: Player, target: &BTreeSet<NodeId>) -> BTreeSet<NodeId> {
    let all = vec![true; game.node_count()];
    let preds = predecessors(game);
    let mut mask = vec![false; game.node_count()];
    for v in target {
        mask[v.index()] = true;
    }
    to_set(&attract(game, &preds, &all, player, mask))
}

pub fn zielonka_solve(game: &ParityGame) -> WinningSets {
    let preds = predecessors(game);
    let all = vec![true; game.node_count()];
    let [w0, w1] = solve(game, &preds, &all);
    WinningSets {
        w0: to_set(&w0),
        w1: to_set(&w1),
    }
}

fn to_set(mask: &[bool]) -> BTreeSet<NodeId> {
    mask.iter()
        .enumerate()
        .filter(|&(_, &b)| b)
        .map(|(i, _)| NodeId(i))
        .collect()
}

fn predecessors(game: &ParityGame) -> Vec<Vec<NodeId>> {
    let mut preds = vec![Vec::new(); game.node_count()];
    for v in game.nodes() {
        for &w in game.successors(v) {
            preds[w.index()].push(v);
        }
    }
    preds
}

/// Attractor inside the subgame `within`, starting from `mask` (which is
/// extended in place and returned).
fn attract(
    game: &ParityGame,
    preds: &[Vec<NodeId>],
    within: &[bool],
    player: Player,
    mut mask: Vec<bool>,
) -> Vec<bool> {
    let mut escapes: Vec<usize> = game
        .nodes()
        .map(|v| {
            game.successors(v)
                .iter()
                .filter(|w| within[w.index()])
                .count()
        })
        .collect();
    let mut stack: Vec<NodeId> = game.nodes().filter(|v| mask[v.index()]).collect();
    while let Some(x) = stack.pop() {
        for &y in &preds[x.index()] {
            if !within[y.index()] || mask[y.index()] {
                continue;
            }
            let take = if game.owner(y) == player {
                true
            } else {
                escapes[y.index()] -= 1;
                escapes[y.index()] == 0
            };
            if take {
                mask[y.index()] = true;
                stack.push(y);
            }
        }
    }
    mask
}

fn solve(game: &ParityGame, preds: &[Vec<NodeId>], within: &[bool]) -> [Vec<bool>; 2] {
    let n = game.node_count();
    let Some(top) = game
        .nodes()
        .filter(|v| within[v.index()])
        .map(|v| game.priority(v))
        .max()
    else {
        return [vec![false; n], vec![false; n]];
    };
    let player = Player::of_priority(top);
    let opponent = player.opponent();

    let heads: Vec<bool> = game
        .nodes()
        .map(|v| within[v.index()] && game.priority(v) == top)
        .collect();
    let a = attract(game, preds, within, player, heads);
    let rest = minus(within, &a);
    let sub = solve(game, preds, &rest);

    if !sub[opponent.index()].iter().any(|&b| b) {
        let mut won = [vec![false; n], vec![false; n]];
        won[player.index()] = within.to_vec();
        return won;
    }
    let b = attract(game, preds, within, opponent, sub[opponent.index()].clone());
    let rest = minus(within, &b);
    let mut won = solve(game, preds, &rest);
    for (w, &x) in won[opponent.index()].iter_mut().zip(&b) {
        *w |= x;
    }
    won
}

fn minus(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| x && !y).collect()
}
