//! Node valuations and every ordering the improvement algorithm compares by.
//!
//! Two node orders are in play: *relevance* compares priorities, *reward*
//! compares signed rewards (even priorities count positive, odd negative).
//! Sets of nodes are compared by their most relevant differing node, and
//! node valuations lexicographically on (cycle node, relevant set, length).

use std::cmp::Ordering;
use std::ops::Index;

use crate::error::GameError;
use crate::game::{GameGraph, NodeId};

/// `(cycle node, nodes on the path more relevant than it, path length)`.
///
/// The relevant set is kept sorted by descending priority, which makes
/// equality structural and set comparison a single merge pass.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NodeValuation {
    cycle_node: NodeId,
    relevant: Vec<NodeId>,
    path_length: usize,
}

impl NodeValuation {
    pub fn new<G: GameGraph>(
        game: &G,
        cycle_node: NodeId,
        relevant: impl IntoIterator<Item = NodeId>,
        path_length: usize,
    ) -> Self {
        NodeValuation {
            cycle_node,
            relevant: canonical_set(game, relevant),
            path_length,
        }
    }

    /// Caller guarantees `relevant` is sorted by descending priority
    /// without duplicates.
    pub(crate) fn from_sorted(
        cycle_node: NodeId,
        relevant: Vec<NodeId>,
        path_length: usize,
    ) -> Self {
        NodeValuation {
            cycle_node,
            relevant,
            path_length,
        }
    }

    pub fn cycle_node(&self) -> NodeId {
        self.cycle_node
    }

    /// Relevant nodes, most relevant first.
    pub fn relevant_set(&self) -> &[NodeId] {
        &self.relevant
    }

    pub fn path_length(&self) -> usize {
        self.path_length
    }
}

/// `Ξ`: one node valuation per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameValuation(Vec<NodeValuation>);

impl GameValuation {
    pub fn new(values: Vec<NodeValuation>) -> Self {
        GameValuation(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: NodeId) -> Option<&NodeValuation> {
        self.0.get(v.index())
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, &NodeValuation)> {
        self.0.iter().enumerate().map(|(i, x)| (NodeId(i), x))
    }
}

impl Index<NodeId> for GameValuation {
    type Output = NodeValuation;

    fn index(&self, v: NodeId) -> &NodeValuation {
        &self.0[v.index()]
    }
}

/// Sorts by descending priority and removes duplicates.
pub fn canonical_set<G: GameGraph>(
    game: &G,
    nodes: impl IntoIterator<Item = NodeId>,
) -> Vec<NodeId> {
    let mut v: Vec<NodeId> = nodes.into_iter().collect();
    v.sort_unstable_by(|a, b| relevance_cmp(game, *b, *a));
    v.dedup();
    v
}

/// Priority order; ties (only possible in non-injective games) fall back
/// to node ids so the order stays total.
#[inline]
pub fn relevance_cmp<G: GameGraph>(game: &G, u: NodeId, v: NodeId) -> Ordering {
    game.priority(u)
        .cmp(&game.priority(v))
        .then_with(|| u.cmp(&v))
}

#[inline]
pub fn reward_cmp<G: GameGraph>(game: &G, u: NodeId, v: NodeId) -> Ordering {
    game.reward(u).cmp(&game.reward(v)).then_with(|| u.cmp(&v))
}

pub fn relevance_less<G: GameGraph>(game: &G, u: NodeId, v: NodeId) -> bool {
    game.priority(u) < game.priority(v)
}

pub fn reward_less<G: GameGraph>(game: &G, u: NodeId, v: NodeId) -> bool {
    game.reward(u) < game.reward(v)
}

/// Compares two node sets given as slices sorted by descending priority.
pub fn sorted_set_cmp<G: GameGraph>(game: &G, m: &[NodeId], n: &[NodeId]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        let (in_m, d) = match (m.get(i), n.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(&a), None) => (true, a),
            (None, Some(&b)) => (false, b),
            (Some(&a), Some(&b)) if a == b => {
                i += 1;
                j += 1;
                continue;
            }
            (Some(&a), Some(&b)) => match relevance_cmp(game, a, b) {
                Ordering::Greater => (true, a),
                _ => (false, b),
            },
        };
        // The most relevant node of the symmetric difference decides: the set
        // holding it is greater iff it is profitable for player 0.
        let profitable = game.reward(d) >= 0;
        return if in_m == profitable {
            Ordering::Greater
        } else {
            Ordering::Less
        };
    }
}

/// `M ≺ N` for arbitrary node sets.
pub fn set_less<G: GameGraph>(game: &G, m: &[NodeId], n: &[NodeId]) -> bool {
    let m = canonical_set(game, m.iter().copied());
    let n = canonical_set(game, n.iter().copied());
    sorted_set_cmp(game, &m, &n) == Ordering::Less
}

pub fn valuation_cmp<G: GameGraph>(game: &G, a: &NodeValuation, b: &NodeValuation) -> Ordering {
    if a.cycle_node != b.cycle_node {
        return reward_cmp(game, a.cycle_node, b.cycle_node);
    }
    sorted_set_cmp(game, &a.relevant, &b.relevant).then_with(|| {
        if game.reward(a.cycle_node) < 0 {
            a.path_length.cmp(&b.path_length)
        } else {
            b.path_length.cmp(&a.path_length)
        }
    })
}

pub fn valuation_less<G: GameGraph>(game: &G, a: &NodeValuation, b: &NodeValuation) -> bool {
    valuation_cmp(game, a, b) == Ordering::Less
}

/// `X ◁ Y`: pointwise `⪯` and not identical.
pub fn game_valuation_less<G: GameGraph>(
    game: &G,
    x: &GameValuation,
    y: &GameValuation,
) -> Result<bool, GameError> {
    if x.len() != y.len() {
        return Err(GameError::ValuationMismatch(x.len(), y.len()));
    }
    let mut strict = false;
    for (a, b) in x.0.iter().zip(&y.0) {
        match valuation_cmp(game, a, b) {
            Ordering::Greater => return Ok(false),
            Ordering::Less => strict = true,
            Ordering::Equal => {}
        }
    }
    Ok(strict)
}
