//! Seeded random games for oracle-equivalence testing.

use std::ops::RangeInclusive;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GameError;
use crate::game::{Node, NodeId, ParityGame, Player, Priority};

/// A total game without self-loops whose priorities are a permutation of
/// `0..node_count`. The same `(node_count, out_degree, seed)` always yields
/// the same game.
pub fn random_game(
    node_count: usize,
    out_degree: RangeInclusive<usize>,
    seed: u64,
) -> Result<ParityGame, GameError> {
    let (lo, hi) = (*out_degree.start(), *out_degree.end());
    if node_count < 2 {
        return Err(GameError::InfeasibleParameters(format!(
            "{node_count} node(s) cannot form a total game without self-loops"
        )));
    }
    if lo == 0 || lo > hi || hi > node_count - 1 {
        return Err(GameError::InfeasibleParameters(format!(
            "out-degree range {lo}..={hi} must lie within 1..={}",
            node_count - 1
        )));
    }
    if node_count > Priority::MAX as usize {
        return Err(GameError::InfeasibleParameters("too many nodes".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut priorities: Vec<Priority> = (0..node_count as Priority).collect();
    priorities.shuffle(&mut rng);

    let nodes = (0..node_count)
        .map(|v| {
            let owner = if rng.gen_bool(0.5) {
                Player::Even
            } else {
                Player::Odd
            };
            let degree = rng.gen_range(lo..=hi);
            // Sample among the other nodes, then shift past `v` itself.
            let successors = index::sample(&mut rng, node_count - 1, degree)
                .into_iter()
                .map(|w| NodeId(if w >= v { w + 1 } else { w }))
                .collect();
            Node::new(owner, priorities[v], successors)
        })
        .collect();
    ParityGame::new(nodes)
}
