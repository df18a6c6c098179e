//! Parity games, positional strategies and strategy subgames.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::GameError;

/// Node priority. Injective priorities are required by the strategy
/// improvement solver, but not by the data model.
pub type Priority = u32;

/// Dense node index into a [`ParityGame`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Even,
    Odd,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Even => Player::Odd,
            Player::Odd => Player::Even,
        }
    }

    /// The player who wins a play whose highest recurring priority is `p`.
    pub fn of_priority(p: Priority) -> Player {
        if p.is_multiple_of(2) {
            Player::Even
        } else {
            Player::Odd
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::Even => 0,
            Player::Odd => 1,
        }
    }

    pub fn from_index(i: u8) -> Option<Player> {
        match i {
            0 => Some(Player::Even),
            1 => Some(Player::Odd),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// `rew(v)`: the priority if it is even, its negation otherwise.
#[inline]
pub fn signed_reward(p: Priority) -> i64 {
    if p.is_multiple_of(2) {
        i64::from(p)
    } else {
        -i64::from(p)
    }
}

/// Read-only access to a game graph. Implemented by full games and by
/// strategy subgames so that validation and evaluation work on both.
pub trait GameGraph {
    fn node_count(&self) -> usize;
    fn owner(&self, v: NodeId) -> Player;
    fn priority(&self, v: NodeId) -> Priority;
    fn successors(&self, v: NodeId) -> &[NodeId];

    fn nodes(&self) -> NodeIter {
        NodeIter {
            next: 0,
            end: self.node_count(),
        }
    }

    fn reward(&self, v: NodeId) -> i64 {
        signed_reward(self.priority(v))
    }

    fn edge_count(&self) -> usize {
        self.nodes().map(|v| self.successors(v).len()).sum()
    }

    fn contains(&self, v: NodeId) -> bool {
        v.index() < self.node_count()
    }
}

pub struct NodeIter {
    next: usize,
    end: usize,
}

impl Iterator for NodeIter {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        if self.next < self.end {
            self.next += 1;
            Some(NodeId(self.next - 1))
        } else {
            None
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.end - self.next;
        (r, Some(r))
    }
}

impl ExactSizeIterator for NodeIter {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub owner: Player,
    pub priority: Priority,
    pub successors: Vec<NodeId>,
    pub label: Option<String>,
}

impl Node {
    pub fn new(owner: Player, priority: Priority, successors: Vec<NodeId>) -> Self {
        Node {
            owner,
            priority,
            successors,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

/// A finite parity game with dense node ids.
///
/// Construction guarantees that every successor id is in range and that
/// labels are representable in the text format. Totality and priority
/// injectivity are reported by [`validate`] instead of being enforced here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGame {
    nodes: Vec<Node>,
}

impl ParityGame {
    pub fn new(nodes: Vec<Node>) -> Result<Self, GameError> {
        let n = nodes.len();
        for (i, node) in nodes.iter().enumerate() {
            if let Some(&bad) = node.successors.iter().find(|s| s.index() >= n) {
                return Err(GameError::DanglingEdge {
                    from: NodeId(i),
                    to: bad,
                });
            }
            if let Some(label) = &node.label {
                if label.chars().any(|c| c == '"' || c.is_control()) {
                    return Err(GameError::InvalidLabel(NodeId(i)));
                }
            }
        }
        Ok(ParityGame { nodes })
    }

    pub fn node(&self, v: NodeId) -> &Node {
        &self.nodes[v.index()]
    }

    pub fn get(&self, v: NodeId) -> Result<&Node, GameError> {
        self.nodes.get(v.index()).ok_or(GameError::InvalidNode(v))
    }

    pub fn label(&self, v: NodeId) -> Option<&str> {
        self.nodes[v.index()].label.as_deref()
    }

    /// The label if present, the numeric id otherwise.
    pub fn display_name(&self, v: NodeId) -> String {
        match self.label(v) {
            Some(l) => l.to_string(),
            None => v.to_string(),
        }
    }

    pub fn max_priority(&self) -> Option<Priority> {
        self.nodes.iter().map(|n| n.priority).max()
    }

    pub fn nodes_of(&self, player: Player) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(move |(_, n)| n.owner == player)
            .map(|(i, _)| NodeId(i))
    }

    pub fn into_nodes(self) -> Vec<Node> {
        self.nodes
    }

    pub fn raw_nodes(&self) -> &[Node] {
        &self.nodes
    }
}

impl GameGraph for ParityGame {
    #[inline]
    fn node_count(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    fn owner(&self, v: NodeId) -> Player {
        self.nodes[v.index()].owner
    }

    #[inline]
    fn priority(&self, v: NodeId) -> Priority {
        self.nodes[v.index()].priority
    }

    #[inline]
    fn successors(&self, v: NodeId) -> &[NodeId] {
        &self.nodes[v.index()].successors
    }
}

/// A positional strategy: one chosen successor per node of `player`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Strategy {
    player: Player,
    choices: Vec<Option<NodeId>>,
}

impl Strategy {
    /// A strategy without any decisions yet; fill it with [`Strategy::set`].
    pub fn empty(player: Player, node_count: usize) -> Self {
        Strategy {
            player,
            choices: vec![None; node_count],
        }
    }

    /// Builds a strategy by asking `choose` for every node owned by `player`.
    pub fn from_fn<G: GameGraph>(
        game: &G,
        player: Player,
        mut choose: impl FnMut(NodeId) -> NodeId,
    ) -> Self {
        let mut s = Strategy::empty(player, game.node_count());
        for v in game.nodes() {
            if game.owner(v) == player {
                s.choices[v.index()] = Some(choose(v));
            }
        }
        s
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn node_count(&self) -> usize {
        self.choices.len()
    }

    #[inline]
    pub fn get(&self, v: NodeId) -> Option<NodeId> {
        self.choices.get(v.index()).copied().flatten()
    }

    pub fn set(&mut self, v: NodeId, to: NodeId) {
        self.choices[v.index()] = Some(to);
    }

    /// `(node, choice)` pairs in ascending node order.
    pub fn iter(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.choices
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|c| (NodeId(i), c)))
    }

    /// Checks that the strategy is total on the player's nodes, defined
    /// nowhere else, and follows edges.
    pub fn check<G: GameGraph>(&self, game: &G) -> Result<(), GameError> {
        if self.choices.len() != game.node_count() {
            return Err(GameError::StrategySize {
                expected: game.node_count(),
                found: self.choices.len(),
            });
        }
        for v in game.nodes() {
            let owned = game.owner(v) == self.player;
            match self.choices[v.index()] {
                None if owned => return Err(GameError::MissingChoice(v)),
                Some(_) if !owned => return Err(GameError::ForeignChoice(v)),
                Some(to) if !game.successors(v).contains(&to) => {
                    return Err(GameError::NotASuccessor { from: v, to })
                }
                _ => {}
            }
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn choice_ref(&self, v: NodeId) -> Option<&NodeId> {
        self.choices[v.index()].as_ref()
    }
}

/// `G|σ`: the game in which every node of the strategy's player keeps only
/// its chosen edge.
#[derive(Clone, Copy, Debug)]
pub struct StrategySubgame<'a> {
    game: &'a ParityGame,
    strategy: &'a Strategy,
}

impl<'a> StrategySubgame<'a> {
    pub fn game(&self) -> &'a ParityGame {
        self.game
    }

    pub fn strategy(&self) -> &'a Strategy {
        self.strategy
    }
}

impl GameGraph for StrategySubgame<'_> {
    #[inline]
    fn node_count(&self) -> usize {
        self.game.node_count()
    }

    #[inline]
    fn owner(&self, v: NodeId) -> Player {
        self.game.owner(v)
    }

    #[inline]
    fn priority(&self, v: NodeId) -> Priority {
        self.game.priority(v)
    }

    #[inline]
    fn successors(&self, v: NodeId) -> &[NodeId] {
        match self.strategy.choice_ref(v) {
            Some(c) => std::slice::from_ref(c),
            None => self.game.successors(v),
        }
    }
}

/// Restricts `game` to the edges chosen by `strategy`.
pub fn restrict<'a>(
    game: &'a ParityGame,
    strategy: &'a Strategy,
) -> Result<StrategySubgame<'a>, GameError> {
    strategy.check(game)?;
    Ok(StrategySubgame { game, strategy })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub is_total: bool,
    pub dead_ends: BTreeSet<NodeId>,
    pub duplicate_priorities: BTreeSet<Priority>,
    pub self_loop_nodes: BTreeSet<NodeId>,
    pub dangling_edges: BTreeSet<(NodeId, NodeId)>,
}

impl ValidationReport {
    /// No defects of any kind, self-loops included.
    pub fn is_clean(&self) -> bool {
        self.is_total
            && self.duplicate_priorities.is_empty()
            && self.self_loop_nodes.is_empty()
            && self.dangling_edges.is_empty()
    }

    /// Acceptable input for strategy iteration. Self-loops are fine.
    pub fn is_solvable(&self) -> bool {
        self.is_total && self.duplicate_priorities.is_empty() && self.dangling_edges.is_empty()
    }

    pub fn into_result(self) -> Result<(), GameError> {
        if !self.dangling_edges.is_empty() {
            let &(from, to) = self.dangling_edges.iter().next().unwrap();
            return Err(GameError::DanglingEdge { from, to });
        }
        if !self.is_total {
            return Err(GameError::NotTotal(self.dead_ends.into_iter().collect()));
        }
        if !self.duplicate_priorities.is_empty() {
            return Err(GameError::DuplicatePriorities(
                self.duplicate_priorities.into_iter().collect(),
            ));
        }
        Ok(())
    }
}

pub fn validate<G: GameGraph>(game: &G) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut seen = BTreeSet::new();
    for v in game.nodes() {
        let succ = game.successors(v);
        if succ.is_empty() {
            report.dead_ends.insert(v);
        }
        for &w in succ {
            if !game.contains(w) {
                report.dangling_edges.insert((v, w));
            } else if w == v {
                report.self_loop_nodes.insert(v);
            }
        }
        if !seen.insert(game.priority(v)) {
            report.duplicate_priorities.insert(game.priority(v));
        }
    }
    report.is_total = report.dead_ends.is_empty();
    report
}
