//! The strategy iteration driver.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::GameError;
use crate::game::{validate, GameGraph, NodeId, ParityGame, Player, Priority, Strategy};
use crate::orderings::{reward_cmp, valuation_cmp, GameValuation};
use crate::valuation::{evaluate, improvement_arena, is_improvable, ImprovementArena};

/// Maps a strategy and its valuation to the next strategy. Implementations
/// must only choose arena edges, and must change the valuation whenever the
/// strategy is improvable.
pub trait ImprovementPolicy {
    fn name(&self) -> &'static str;

    fn improve(
        &self,
        game: &ParityGame,
        sigma: &Strategy,
        xi: &GameValuation,
        arena: &ImprovementArena,
    ) -> Strategy;
}

/// Switches every player-0 node to a best-valued successor, preferring the
/// successor with the highest reward among equally valued ones.
#[derive(Clone, Copy, Debug, Default)]
pub struct LocallyOptimizing;

impl ImprovementPolicy for LocallyOptimizing {
    fn name(&self) -> &'static str {
        "locally-optimizing"
    }

    fn improve(
        &self,
        game: &ParityGame,
        sigma: &Strategy,
        xi: &GameValuation,
        _arena: &ImprovementArena,
    ) -> Strategy {
        improve_locally(game, sigma, xi)
    }
}

/// Each player-0 node moves to its reward-maximal successor.
pub fn initial_strategy(game: &ParityGame) -> Strategy {
    Strategy::from_fn(game, Player::Even, |v| {
        *game
            .successors(v)
            .iter()
            .max_by(|&&a, &&b| reward_cmp(game, a, b))
            .expect("game is total")
    })
}

/// `I^loc`. The new choice depends only on `xi`; `_sigma` is the strategy it
/// was computed from.
pub fn improve_locally(game: &ParityGame, _sigma: &Strategy, xi: &GameValuation) -> Strategy {
    Strategy::from_fn(game, Player::Even, |v| {
        best_by(game.successors(v), |a, b| {
            valuation_cmp(game, &xi[a], &xi[b]).then_with(|| reward_cmp(game, a, b))
        })
    })
}

/// Player-1 counter strategy: valuation-minimal successor, ties broken by
/// lowest reward.
pub fn extract_counter_strategy(game: &ParityGame, xi: &GameValuation) -> Strategy {
    Strategy::from_fn(game, Player::Odd, |v| {
        best_by(game.successors(v), |a, b| {
            valuation_cmp(game, &xi[b], &xi[a]).then_with(|| reward_cmp(game, b, a))
        })
    })
}

fn best_by(nodes: &[NodeId], cmp: impl Fn(NodeId, NodeId) -> Ordering) -> NodeId {
    *nodes
        .iter()
        .max_by(|&&a, &&b| cmp(a, b))
        .expect("game is total")
}

/// Nodes whose cycle node is profitable for player 0, and the rest.
pub fn extract_winners(
    game: &ParityGame,
    xi: &GameValuation,
) -> (BTreeSet<NodeId>, BTreeSet<NodeId>) {
    xi.iter()
        .map(|(v, val)| (v, game.reward(val.cycle_node()) >= 0))
        .fold(
            (BTreeSet::new(), BTreeSet::new()),
            |(mut w0, mut w1), (v, even)| {
                if even {
                    w0.insert(v)
                } else {
                    w1.insert(v)
                };
                (w0, w1)
            },
        )
}

#[derive(Clone, Debug)]
pub struct IterationResult {
    pub w0: BTreeSet<NodeId>,
    pub w1: BTreeSet<NodeId>,
    pub sigma_final: Strategy,
    pub tau: Strategy,
    pub valuation: GameValuation,
    /// Number of policy applications.
    pub iteration_count: usize,
    /// Every visited `(σ, Ξ_σ)`, starting with the initial strategy.
    pub trace: Option<Vec<(Strategy, GameValuation)>>,
}

impl IterationResult {
    pub fn winner(&self, v: NodeId) -> Player {
        if self.w0.contains(&v) {
            Player::Even
        } else {
            Player::Odd
        }
    }
}

pub fn run(
    game: &ParityGame,
    policy: &dyn ImprovementPolicy,
    record_trace: bool,
) -> Result<IterationResult, GameError> {
    let mut trace = record_trace.then(Vec::new);
    let mut result = run_with(game, policy, None, |_, sigma, xi| {
        if let Some(t) = trace.as_mut() {
            t.push((sigma.clone(), xi.clone()));
        }
    })?;
    result.trace = trace;
    Ok(result)
}

/// Runs strategy iteration from [`initial_strategy`], calling `observe`
/// with the step index, strategy and valuation of every visited strategy.
/// Fails with [`GameError::TooLarge`] once more than `max_iterations`
/// improvements would be needed.
pub fn run_with(
    game: &ParityGame,
    policy: &dyn ImprovementPolicy,
    max_iterations: Option<usize>,
    mut observe: impl FnMut(usize, &Strategy, &GameValuation),
) -> Result<IterationResult, GameError> {
    validate(game).into_result()?;
    let mut sigma = initial_strategy(game);
    let mut iterations = 0;
    loop {
        let xi = evaluate(game, &sigma)?;
        observe(iterations, &sigma, &xi);
        if !is_improvable(game, &sigma, &xi) {
            let (w0, w1) = extract_winners(game, &xi);
            let tau = extract_counter_strategy(game, &xi);
            return Ok(IterationResult {
                w0,
                w1,
                sigma_final: sigma,
                tau,
                valuation: xi,
                iteration_count: iterations,
                trace: None,
            });
        }
        if max_iterations.is_some_and(|m| iterations >= m) {
            return Err(GameError::TooLarge(format!(
                "no fixpoint after {iterations} iterations"
            )));
        }
        let arena = improvement_arena(game, &sigma, &xi);
        sigma = policy.improve(game, &sigma, &xi, &arena);
        iterations += 1;
    }
}

/// Follows the unique play from `start` under both positional strategies
/// and returns the highest priority on the cycle it ends up in.
pub fn lasso_cycle_max(
    game: &ParityGame,
    sigma: &Strategy,
    tau: &Strategy,
    start: NodeId,
) -> Priority {
    let mut first_visit = vec![usize::MAX; game.node_count()];
    let mut path = Vec::new();
    let mut v = start;
    while first_visit[v.index()] == usize::MAX {
        first_visit[v.index()] = path.len();
        path.push(v);
        v = match game.owner(v) {
            Player::Even => sigma.get(v),
            Player::Odd => tau.get(v),
        }
        .expect("strategies are total");
    }
    path[first_visit[v.index()]..]
        .iter()
        .map(|&u| game.priority(u))
        .max()
        .unwrap()
}
