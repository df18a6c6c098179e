//! Strategy valuations `Ξ_σ`.
//!
//! [`evaluate_bruteforce`] follows the definition literally: enumerate every
//! loopless path of `G|σ` that ends in a dominating cycle node and keep the
//! least valuation. [`evaluate`] computes the same map in polynomial time:
//!
//! 1. cycle nodes are taken in ascending reward order and claim every
//!    still-unassigned node that can reach them;
//! 2. inside each class the more relevant nodes are processed from the top
//!    down, cutting the edges that a player-1 path to the cycle node would
//!    never take, which fixes the relevant-set component;
//! 3. the remaining edges form a DAG towards the cycle node, on which path
//!    lengths are a shortest (odd cycle node) or longest (even cycle node)
//!    path computation.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use crate::error::GameError;
use crate::game::{restrict, validate, GameGraph, NodeId, ParityGame, Player, Strategy};
use crate::orderings::{relevance_cmp, reward_cmp, valuation_cmp, GameValuation, NodeValuation};

/// Subgames up to this many nodes are always enumerated.
pub const BRUTEFORCE_NODE_LIMIT: usize = 12;
/// Larger subgames are enumerated when the product of out-degrees stays below this.
pub const BRUTEFORCE_PATH_LIMIT: u64 = 1_000_000;

/// An injective, edge-respecting node sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LooplessPath(Vec<NodeId>);

impl LooplessPath {
    pub fn new<G: GameGraph>(game: &G, nodes: Vec<NodeId>) -> Result<Self, GameError> {
        if nodes.is_empty() {
            return Err(GameError::InvalidPath);
        }
        let mut seen = BTreeSet::new();
        for (i, &v) in nodes.iter().enumerate() {
            if !game.contains(v) {
                return Err(GameError::InvalidNode(v));
            }
            if !seen.insert(v) {
                return Err(GameError::InvalidPath);
            }
            if i + 1 < nodes.len() && !game.successors(v).contains(&nodes[i + 1]) {
                return Err(GameError::InvalidPath);
            }
        }
        Ok(LooplessPath(nodes))
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.0
    }

    pub fn last(&self) -> NodeId {
        *self.0.last().unwrap()
    }
}

/// Marks, for each node, whether it is a dominating cycle node: it lies on a
/// cycle on which it has the highest priority. A self-loop is such a cycle.
pub fn dominating_cycle_mask<G: GameGraph>(game: &G) -> Vec<bool> {
    let n = game.node_count();
    let mut stamp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    game.nodes()
        .map(|v| {
            stack.clear();
            stack.push(v);
            stamp[v.index()] = v.index();
            while let Some(x) = stack.pop() {
                for &y in game.successors(x) {
                    if y == v {
                        return true;
                    }
                    if stamp[y.index()] != v.index() && relevance_cmp(game, y, v) == Ordering::Less
                    {
                        stamp[y.index()] = v.index();
                        stack.push(y);
                    }
                }
            }
            false
        })
        .collect()
}

pub fn dominating_cycle_nodes<G: GameGraph>(game: &G) -> BTreeSet<NodeId> {
    dominating_cycle_mask(game)
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c)
        .map(|(i, _)| NodeId(i))
        .collect()
}

/// `ϑ_π`: the last node, the path nodes more relevant than it, and the
/// number of edges.
pub fn path_valuation<G: GameGraph>(
    game: &G,
    path: &LooplessPath,
) -> Result<NodeValuation, GameError> {
    let last = path.last();
    if !dominating_cycle_mask(game)[last.index()] {
        return Err(GameError::InvalidPath);
    }
    Ok(valuation_of_path(game, path.nodes()))
}

fn valuation_of_path<G: GameGraph>(game: &G, path: &[NodeId]) -> NodeValuation {
    let last = *path.last().unwrap();
    let relevant = path
        .iter()
        .copied()
        .filter(|&v| relevance_cmp(game, v, last) == Ordering::Greater);
    NodeValuation::new(game, last, relevant, path.len() - 1)
}

/// Evaluates `σ` by enumerating all loopless paths of `G|σ`.
pub fn evaluate_bruteforce(
    game: &ParityGame,
    sigma: &Strategy,
) -> Result<GameValuation, GameError> {
    let sub = restrict(game, sigma)?;
    validate(&sub).into_result()?;
    if sub.node_count() > BRUTEFORCE_NODE_LIMIT {
        let product = sub.nodes().try_fold(1u64, |acc, v| {
            acc.checked_mul(sub.successors(v).len() as u64)
                .filter(|&p| p <= BRUTEFORCE_PATH_LIMIT)
        });
        if product.is_none() {
            return Err(GameError::TooLarge(format!(
                "{} nodes and more than {BRUTEFORCE_PATH_LIMIT} path prefixes",
                sub.node_count()
            )));
        }
    }
    Ok(evaluate_bruteforce_graph(&sub))
}

fn for_each_loopless_path<G: GameGraph>(game: &G, start: NodeId, f: &mut impl FnMut(&[NodeId])) {
    fn go<G: GameGraph>(
        game: &G,
        path: &mut Vec<NodeId>,
        on: &mut [bool],
        f: &mut impl FnMut(&[NodeId]),
    ) {
        f(path);
        let last = *path.last().unwrap();
        for &w in game.successors(last) {
            if !on[w.index()] {
                on[w.index()] = true;
                path.push(w);
                go(game, path, on, f);
                path.pop();
                on[w.index()] = false;
            }
        }
    }
    let mut on = vec![false; game.node_count()];
    on[start.index()] = true;
    go(game, &mut vec![start], &mut on, f);
}

/// Dominating cycle nodes by enumeration, independent of
/// [`dominating_cycle_mask`].
pub fn dominating_cycle_nodes_bruteforce<G: GameGraph>(game: &G) -> BTreeSet<NodeId> {
    game.nodes()
        .filter(|&v| {
            let mut found = false;
            for_each_loopless_path(game, v, &mut |p| {
                let closes = game.successors(*p.last().unwrap()).contains(&v);
                if closes && p.iter().all(|&u| game.priority(u) <= game.priority(v)) {
                    found = true;
                }
            });
            found
        })
        .collect()
}

fn evaluate_bruteforce_graph<G: GameGraph>(game: &G) -> GameValuation {
    let cycles = dominating_cycle_nodes_bruteforce(game);
    let values = game
        .nodes()
        .map(|v| {
            let mut best: Option<NodeValuation> = None;
            for_each_loopless_path(game, v, &mut |p| {
                if cycles.contains(p.last().unwrap()) {
                    let val = valuation_of_path(game, p);
                    if best
                        .as_ref()
                        .is_none_or(|b| valuation_cmp(game, &val, b) == Ordering::Less)
                    {
                        best = Some(val);
                    }
                }
            });
            best.expect("every node of a total game reaches a dominating cycle node")
        })
        .collect();
    GameValuation::new(values)
}

/// Evaluates `σ` in polynomial time.
pub fn evaluate(game: &ParityGame, sigma: &Strategy) -> Result<GameValuation, GameError> {
    validate(game).into_result()?;
    if sigma.player() != Player::Even {
        return Err(GameError::ForeignChoice(
            sigma.iter().next().map_or(NodeId(0), |(v, _)| v),
        ));
    }
    let sub = restrict(game, sigma)?;
    Ok(evaluate_graph(&sub))
}

/// Valuation of a total graph with injective priorities in which every
/// remaining choice belongs to the minimizing player.
pub(crate) fn evaluate_graph<G: GameGraph>(game: &G) -> GameValuation {
    let n = game.node_count();
    let cycle_of = assign_cycle_nodes(game);

    let mut classes: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for v in game.nodes() {
        classes[cycle_of[v.index()].index()].push(v);
    }

    let mut result: Vec<Option<NodeValuation>> = vec![None; n];
    let mut local = vec![usize::MAX; n];
    for (w, members) in classes.iter().enumerate() {
        if members.is_empty() {
            continue;
        }
        for (i, &v) in members.iter().enumerate() {
            local[v.index()] = i;
        }
        let w = NodeId(w);
        let class = ClassGraph::build(game, w, members, &cycle_of, &local);
        for (v, val) in class.solve(game) {
            result[v.index()] = Some(val);
        }
    }
    GameValuation::new(result.into_iter().map(|v| v.unwrap()).collect())
}

/// For every node, the reward-least dominating cycle node it can reach.
fn assign_cycle_nodes<G: GameGraph>(game: &G) -> Vec<NodeId> {
    let n = game.node_count();
    let mask = dominating_cycle_mask(game);
    let mut candidates: Vec<NodeId> = game.nodes().filter(|v| mask[v.index()]).collect();
    candidates.sort_unstable_by(|&a, &b| reward_cmp(game, a, b));

    let mut preds: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for v in game.nodes() {
        for &w in game.successors(v) {
            preds[w.index()].push(v);
        }
    }

    let mut cycle_of: Vec<Option<NodeId>> = vec![None; n];
    let mut stack = Vec::new();
    for w in candidates {
        if cycle_of[w.index()].is_some() {
            continue;
        }
        cycle_of[w.index()] = Some(w);
        stack.push(w);
        while let Some(x) = stack.pop() {
            for &y in &preds[x.index()] {
                if cycle_of[y.index()].is_none() {
                    cycle_of[y.index()] = Some(w);
                    stack.push(y);
                }
            }
        }
    }
    cycle_of
        .into_iter()
        .map(|c| c.expect("every node of a total game reaches a dominating cycle node"))
        .collect()
}

/// The nodes sharing one cycle node, with the edges that stay inside the
/// class. The cycle node's own out-edges are dropped: paths end there.
struct ClassGraph<'a> {
    cycle: usize,
    members: &'a [NodeId],
    edges: Vec<(usize, usize)>,
    alive: Vec<bool>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl<'a> ClassGraph<'a> {
    fn build<G: GameGraph>(
        game: &G,
        cycle: NodeId,
        members: &'a [NodeId],
        cycle_of: &[NodeId],
        local: &[usize],
    ) -> Self {
        let m = members.len();
        let mut edges = Vec::new();
        let mut out_edges = vec![Vec::new(); m];
        let mut in_edges = vec![Vec::new(); m];
        for (i, &v) in members.iter().enumerate() {
            if v == cycle {
                continue;
            }
            for &s in game.successors(v) {
                if cycle_of[s.index()] == cycle {
                    let j = local[s.index()];
                    out_edges[i].push(edges.len());
                    in_edges[j].push(edges.len());
                    edges.push((i, j));
                }
            }
        }
        ClassGraph {
            cycle: local[cycle.index()],
            members,
            alive: vec![true; edges.len()],
            edges,
            out_edges,
            in_edges,
        }
    }

    /// Local nodes that reach `start` over live edges without passing `blocked`.
    fn reach_back(&self, start: usize, blocked: usize) -> Vec<bool> {
        let mut mark = vec![false; self.members.len()];
        mark[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &e in &self.in_edges[x] {
                let y = self.edges[e].0;
                if self.alive[e] && y != blocked && !mark[y] {
                    mark[y] = true;
                    stack.push(y);
                }
            }
        }
        mark
    }

    fn cut_out_edges(&mut self, v: usize, keep: impl Fn(usize) -> bool) {
        for &e in &self.out_edges[v] {
            if !keep(self.edges[e].1) {
                self.alive[e] = false;
            }
        }
    }

    fn solve<G: GameGraph>(mut self, game: &G) -> Vec<(NodeId, NodeValuation)> {
        let m = self.members.len();
        let w = self.members[self.cycle];
        let mut relevant: Vec<usize> = (0..m)
            .filter(|&i| relevance_cmp(game, self.members[i], w) == Ordering::Greater)
            .collect();
        relevant.sort_unstable_by(|&a, &b| relevance_cmp(game, self.members[b], self.members[a]));

        let mut sets: Vec<Vec<NodeId>> = vec![Vec::new(); m];
        for u in relevant {
            let node = self.members[u];
            if game.reward(node) >= 0 {
                // Player 1 avoids `u` wherever it can still reach the cycle node without it.
                let avoid = self.reach_back(self.cycle, u);
                for v in 0..m {
                    if !avoid[v] {
                        sets[v].push(node);
                    }
                }
                for v in (0..m).filter(|&v| avoid[v] || v == u) {
                    self.cut_out_edges(v, |t| avoid[t]);
                }
            } else {
                // Player 1 passes `u` wherever it can reach it.
                let via = self.reach_back(u, self.cycle);
                for v in 0..m {
                    if via[v] {
                        sets[v].push(node);
                    }
                }
                for v in (0..m).filter(|&v| via[v] && v != u) {
                    self.cut_out_edges(v, |t| via[t]);
                }
                self.cut_out_edges(u, |t| !via[t]);
            }
        }

        let lengths = self.path_lengths(game.reward(w) < 0);
        sets.into_iter()
            .zip(lengths)
            .enumerate()
            .map(|(i, (set, len))| (self.members[i], NodeValuation::from_sorted(w, set, len)))
            .collect()
    }

    /// Shortest (`shortest`) or longest path length to the cycle node over
    /// live edges. Longest paths are only asked for in classes whose live
    /// edges form a DAG; classes of an odd cycle node may keep cycles among
    /// nodes below the cycle node, which breadth-first search handles.
    fn path_lengths(&self, shortest: bool) -> Vec<usize> {
        let m = self.members.len();
        let mut dist: Vec<Option<usize>> = vec![None; m];
        dist[self.cycle] = Some(0);
        let mut queue = VecDeque::from([self.cycle]);
        if shortest {
            while let Some(x) = queue.pop_front() {
                let dx = dist[x].unwrap() + 1;
                for &e in &self.in_edges[x] {
                    let y = self.edges[e].0;
                    if self.alive[e] && dist[y].is_none() {
                        dist[y] = Some(dx);
                        queue.push_back(y);
                    }
                }
            }
        } else {
            let mut remaining: Vec<usize> = (0..m)
                .map(|v| self.out_edges[v].iter().filter(|&&e| self.alive[e]).count())
                .collect();
            let mut done = 0;
            while let Some(x) = queue.pop_front() {
                done += 1;
                let dx = dist[x].unwrap() + 1;
                for &e in &self.in_edges[x] {
                    if !self.alive[e] {
                        continue;
                    }
                    let y = self.edges[e].0;
                    dist[y] = Some(dist[y].map_or(dx, |d| d.max(dx)));
                    remaining[y] -= 1;
                    if remaining[y] == 0 {
                        queue.push_back(y);
                    }
                }
            }
            debug_assert_eq!(done, m, "reduced class graph must be acyclic");
        }
        debug_assert!(
            dist.iter().all(Option::is_some),
            "every member keeps a path to the cycle node"
        );
        dist.into_iter().map(|d| d.unwrap_or(0)).collect()
    }
}

/// Admissible successors per player-0 node: those valued at least as high
/// as the current choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImprovementArena {
    admissible: Vec<Option<Vec<NodeId>>>,
}

impl ImprovementArena {
    /// `None` for player-1 nodes, all of whose edges stay in the arena.
    pub fn admissible(&self, v: NodeId) -> Option<&[NodeId]> {
        self.admissible[v.index()].as_deref()
    }

    pub fn contains_edge<G: GameGraph>(&self, game: &G, v: NodeId, u: NodeId) -> bool {
        match &self.admissible[v.index()] {
            Some(adm) => adm.contains(&u),
            None => game.successors(v).contains(&u),
        }
    }
}

pub fn improvement_arena(
    game: &ParityGame,
    sigma: &Strategy,
    xi: &GameValuation,
) -> ImprovementArena {
    let admissible = game
        .nodes()
        .map(|v| {
            let current = &xi[sigma.get(v)?];
            Some(
                game.successors(v)
                    .iter()
                    .copied()
                    .filter(|&u| valuation_cmp(game, current, &xi[u]) != Ordering::Greater)
                    .collect(),
            )
        })
        .collect();
    ImprovementArena { admissible }
}

/// Some player-0 node has a successor valued strictly above its current choice.
pub fn is_improvable(game: &ParityGame, sigma: &Strategy, xi: &GameValuation) -> bool {
    game.nodes_of(Player::Even).any(|v| {
        let chosen = sigma.get(v).expect("strategy is total on player-0 nodes");
        game.successors(v)
            .iter()
            .any(|&u| u != chosen && valuation_cmp(game, &xi[chosen], &xi[u]) == Ordering::Less)
    })
}
