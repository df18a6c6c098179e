use thiserror::Error;

use crate::game::{NodeId, Priority};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("node {0} does not exist")]
    InvalidNode(NodeId),
    #[error("edge {from} -> {to} points outside the game")]
    DanglingEdge { from: NodeId, to: NodeId },
    #[error("label of node {0} contains a quote or control character")]
    InvalidLabel(NodeId),
    #[error("game is not total, nodes without successors: {0:?}")]
    NotTotal(Vec<NodeId>),
    #[error("priorities are not pairwise distinct: {0:?}")]
    DuplicatePriorities(Vec<Priority>),
    #[error("strategy covers {found} nodes, game has {expected}")]
    StrategySize { expected: usize, found: usize },
    #[error("strategy has no choice for node {0}")]
    MissingChoice(NodeId),
    #[error("strategy chooses for node {0}, which belongs to the other player")]
    ForeignChoice(NodeId),
    #[error("strategy moves {from} -> {to}, which is not an edge")]
    NotASuccessor { from: NodeId, to: NodeId },
    #[error("game valuations cover different node sets ({0} vs {1})")]
    ValuationMismatch(usize, usize),
    #[error("path is not a loopless path ending in a dominating cycle node")]
    InvalidPath,
    #[error("enumeration guard exceeded: {0}")]
    TooLarge(String),
    #[error("infeasible random game parameters: {0}")]
    InfeasibleParameters(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("negative priority")]
    NegativePriority,
    #[error("number out of range")]
    Overflow,
    #[error("successor {0} does not exist")]
    DanglingSuccessor(usize),
    #[error("node {0} defined twice")]
    DuplicateNode(usize),
    #[error("node {0} is never defined")]
    MissingNode(usize),
    #[error("header declares max id {declared}, found {found}")]
    HeaderMismatch { declared: usize, found: usize },
    #[error("empty game")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("n must be at least {min}, got {n}")]
    SizeTooSmall { n: usize, min: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}
