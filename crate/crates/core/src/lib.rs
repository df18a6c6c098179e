//! Discrete strategy improvement for parity games.
//!
//! Strategies of player 0 are evaluated by a path-profile valuation, improved
//! with the locally optimizing policy, and iterated to a fixpoint that yields
//! both winning regions and optimal positional strategies. The crate also
//! builds the worst-case game family `G_n`, on which the iteration count is
//! exponential, and checks runs against its closed-form strategy trace.

pub mod bits;
pub mod error;
pub mod family;
pub mod format;
pub mod game;
pub mod improvement;
pub mod orderings;
pub mod random;
pub mod valuation;
pub mod zielonka;

pub use bits::BitState;
pub use error::{FamilyError, GameError, ParseError, ParseErrorKind};
pub use family::{
    expected_counts, expected_iterations, generate, LowerBoundGame, MacroState, Role,
};
pub use game::{
    restrict, signed_reward, validate, GameGraph, Node, NodeId, ParityGame, Player, Priority,
    Strategy, ValidationReport,
};
pub use improvement::{
    extract_counter_strategy, extract_winners, improve_locally, initial_strategy, run, run_with,
    ImprovementPolicy, IterationResult, LocallyOptimizing,
};
pub use orderings::{GameValuation, NodeValuation};
pub use valuation::{evaluate, evaluate_bruteforce, improvement_arena, is_improvable};
pub use zielonka::{zielonka_solve, WinningSets};
