//! The lower-bound game family `G_n`: a binary counter built from `n`
//! three-node stubborn cycles and one deceleration lane, on which strategy
//! iteration with the locally optimizing policy needs `13·2^n − 9`
//! improvement steps.
//!
//! Besides the generator this module carries the three closed-form strategy
//! families (initialization, counting, finalization) whose concatenation is
//! the exact sequence of strategies visited by the solver, and checks a real
//! run against it.

use std::fmt;

use crate::bits::BitState;
use crate::error::{FamilyError, GameError};
use crate::game::{Node, NodeId, ParityGame, Player, Priority, Strategy};
use crate::improvement::{improve_locally, initial_strategy, run_with, LocallyOptimizing};
use crate::valuation::{evaluate, is_improvable};

/// Node roles of `G_n`. Indexed roles carry their subscript.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    S,
    T,
    Y,
    W,
    B(usize),
    A(usize),
    C,
    D,
    X,
    E(usize),
    F(usize),
    G(usize),
    H(usize),
    L(usize),
    Z(usize),
    K(usize),
    M(usize),
    Q,
    P,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::S => write!(f, "s"),
            Role::T => write!(f, "t"),
            Role::Y => write!(f, "y"),
            Role::W => write!(f, "w"),
            Role::B(i) => write!(f, "b{i}"),
            Role::A(i) => write!(f, "a{i}"),
            Role::C => write!(f, "c"),
            Role::D => write!(f, "d"),
            Role::X => write!(f, "x"),
            Role::E(i) => write!(f, "e{i}"),
            Role::F(i) => write!(f, "f{i}"),
            Role::G(i) => write!(f, "g{i}"),
            Role::H(i) => write!(f, "h{i}"),
            Role::L(i) => write!(f, "l{i}"),
            Role::Z(i) => write!(f, "z{i}"),
            Role::K(i) => write!(f, "k{i}"),
            Role::M(i) => write!(f, "m{i}"),
            Role::Q => write!(f, "q"),
            Role::P => write!(f, "p"),
        }
    }
}

/// `G_n` together with its role table. Node ids follow the row order of the
/// game's defining table, so output is stable across runs.
#[derive(Clone, Debug)]
pub struct LowerBoundGame {
    n: usize,
    game: ParityGame,
    roles: Vec<Role>,
}

/// `(nodes, edges, max priority)` of `G_n`: `(14n+11, 3n²+28n+17, 16n+16)`.
pub fn expected_counts(n: usize) -> (usize, usize, u64) {
    (14 * n + 11, 3 * n * n + 28 * n + 17, 16 * n as u64 + 16)
}

/// `13·2^n − 9`.
pub fn expected_iterations(n: usize) -> u128 {
    13 * (1u128 << n) - 9
}

pub fn generate(n: usize) -> Result<LowerBoundGame, FamilyError> {
    LowerBoundGame::new(n)
}

impl LowerBoundGame {
    pub fn new(n: usize) -> Result<Self, FamilyError> {
        if n == 0 {
            return Err(FamilyError::SizeTooSmall { n, min: 1 });
        }
        // Keeps 16n+16 within `Priority`.
        if n > (Priority::MAX as usize - 16) / 16 {
            return Err(FamilyError::OutOfRange(format!(
                "n = {n} overflows priorities"
            )));
        }
        let roles = Self::role_order(n);
        let mut lb = LowerBoundGame {
            n,
            game: ParityGame::new(Vec::new()).unwrap(),
            roles,
        };
        let nodes = lb
            .roles
            .iter()
            .map(|&r| {
                let (owner, priority, succ) = lb.row(r);
                Node::new(
                    owner,
                    priority,
                    succ.into_iter().map(|s| lb.id(s)).collect(),
                )
                .with_label(r.to_string())
            })
            .collect();
        lb.game = ParityGame::new(nodes).expect("generated game is well-formed");
        Ok(lb)
    }

    fn role_order(n: usize) -> Vec<Role> {
        let lane = 3 * n + 1;
        let mut r = vec![Role::S, Role::T, Role::Y, Role::W];
        r.extend((0..lane).map(Role::B));
        r.extend((0..lane).map(Role::A));
        r.extend([Role::C, Role::D, Role::X]);
        for make in [
            Role::E,
            Role::F,
            Role::G,
            Role::H,
            Role::L,
            Role::Z,
            Role::K,
            Role::M,
        ] {
            r.extend((0..n).map(make));
        }
        r.extend([Role::Q, Role::P]);
        r
    }

    /// Owner, priority and successors of one table row.
    fn row(&self, role: Role) -> (Player, Priority, Vec<Role>) {
        use Player::{Even, Odd};
        use Role::*;
        let n = self.n;
        let p = |x: usize| x as Priority;
        match role {
            S => (Even, 2, std::iter::once(P).chain((0..n).map(K)).collect()),
            T => (Even, 3, vec![X, S]),
            Y => (Even, 5, vec![L(0), W]),
            W => (Even, 7, [P, Y].into_iter().chain((1..n).map(L)).collect()),
            B(0) => (Even, p(6 * n + 9), vec![S, X, D]),
            B(i) => (Even, p(6 * n + 2 * i + 9), vec![S, X, B(i - 1)]),
            A(i) => (Odd, p(6 * n + 2 * i + 10), vec![B(i)]),
            C => (Odd, p(12 * n + 11), vec![D]),
            D => (Even, p(12 * n + 12), vec![T, X]),
            X => (Even, p(12 * n + 14), vec![W, Y]),
            E(i) => (
                Even,
                p(6 * i + 9),
                [S, F(i), C]
                    .into_iter()
                    .chain((0..=i).map(|j| A(3 * j + 2)))
                    .collect(),
            ),
            F(i) => (
                Even,
                p(6 * i + 11),
                std::iter::once(G(i))
                    .chain((0..=i).map(|j| A(3 * j + 1)))
                    .chain((0..n).map(K))
                    .collect(),
            ),
            G(i) => (
                Even,
                p(6 * i + 13),
                std::iter::once(H(i))
                    .chain((0..=i + 1).map(|j| A(3 * j)))
                    .collect(),
            ),
            H(i) => (Odd, p(6 * i + 14), vec![E(i), M(i)]),
            L(i) => (Even, p(6 * i + 10), vec![K(i), Z(i)]),
            Z(i) => (
                Even,
                p(12 * n + 4 * i + 15),
                std::iter::once(P).chain((i + 1..n).map(L)).collect(),
            ),
            K(i) => (Odd, p(12 * n + 4 * i + 17), vec![H(i)]),
            M(i) => (Odd, p(12 * n + 4 * i + 18), vec![Z(i)]),
            Q => (Odd, 1, vec![Q]),
            P => (Odd, p(16 * n + 16), vec![Q]),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn game(&self) -> &ParityGame {
        &self.game
    }

    pub fn into_game(self) -> ParityGame {
        self.game
    }

    pub fn role(&self, v: NodeId) -> Role {
        self.roles[v.index()]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn id(&self, role: Role) -> NodeId {
        let n = self.n;
        let lane = 3 * n + 1;
        let block = 2 * lane + 7;
        NodeId(match role {
            Role::S => 0,
            Role::T => 1,
            Role::Y => 2,
            Role::W => 3,
            Role::B(i) => 4 + i,
            Role::A(i) => 4 + lane + i,
            Role::C => block - 3,
            Role::D => block - 2,
            Role::X => block - 1,
            Role::E(i) => block + i,
            Role::F(i) => block + n + i,
            Role::G(i) => block + 2 * n + i,
            Role::H(i) => block + 3 * n + i,
            Role::L(i) => block + 4 * n + i,
            Role::Z(i) => block + 5 * n + i,
            Role::K(i) => block + 6 * n + i,
            Role::M(i) => block + 7 * n + i,
            Role::Q => block + 8 * n,
            Role::P => block + 8 * n + 1,
        })
    }

    fn strategy(&self, mut choose: impl FnMut(Role) -> Role) -> Strategy {
        Strategy::from_fn(&self.game, Player::Even, |v| self.id(choose(self.role(v))))
    }

    /// Initialization family `σ⁰_{(n,β)}`, `−2 ≤ β ≤ 8`.
    pub fn sigma_init(&self, beta: i64) -> Result<Strategy, FamilyError> {
        use Role::*;
        if !(-2..=8).contains(&beta) {
            return Err(FamilyError::OutOfRange(format!("β = {beta} not in −2..=8")));
        }
        let b = beta;
        let reset = b == -1 || b == 8;
        Ok(self.strategy(|role| match role {
            B(0) if reset => S,
            B(0) if b == -2 => X,
            B(0) => D,
            B(_) if reset => S,
            B(j) if b < j as i64 => X,
            B(j) => B(j - 1),
            L(0) if b >= 7 => K(0),
            L(j) => Z(j),
            S if b >= 7 => K(0),
            S => P,
            T if reset => S,
            T => X,
            X if b == -2 => Y,
            X => W,
            Y if b == -2 || b == 8 => L(0),
            Y => W,
            E(j) if b == -2 => A(3 * j + 2),
            E(j) if b == -1 || (b == 8 && j > 0) => S,
            E(_) if b == 0 || b == 1 => C,
            E(_) if b == 3 || b == 4 => A(2),
            E(j) if (b == 6 || b == 7) && j > 0 => A(5),
            E(j) => F(j),
            F(j) if (b == 7 || b == 8) && j > 0 => K(0),
            F(j) if b == -2 => A(3 * j + 1),
            F(_) if b == 2 || b == 3 => A(1),
            F(j) if (b == 5 || b == 6) && j > 0 => A(4),
            F(j) => G(j),
            G(j) if b < 1 => A(3 * j + 3),
            G(_) if b == 1 || b == 2 => A(0),
            G(_) if b == 4 || b == 5 => A(3),
            G(j) if b >= 7 && j > 0 => A(6),
            G(j) => H(j),
            D => X,
            W => P,
            Z(_) => P,
            other => unreachable!("{other} is not a player-0 node"),
        }))
    }

    /// Counting family `σ¹_{(n,α,β)}`, `α ∉ {0_n, 1_n}`, `−2 ≤ β ≤ γ_α`.
    pub fn sigma_count(&self, alpha: &BitState, beta: i64) -> Result<Strategy, FamilyError> {
        use Role::*;
        let n = self.n;
        if alpha.len() != n {
            return Err(FamilyError::OutOfRange(format!(
                "α has {} bits, expected {n}",
                alpha.len()
            )));
        }
        if alpha.is_zero() || alpha.is_full() {
            return Err(FamilyError::OutOfRange(format!(
                "α = {alpha} must not be 0_n or 1_n"
            )));
        }
        let mu = alpha.mu()?;
        let nu = alpha.nu();
        let gamma = alpha.gamma()? as i64;
        if !(-2..=gamma).contains(&beta) {
            return Err(FamilyError::OutOfRange(format!(
                "β = {beta} not in −2..={gamma}"
            )));
        }
        let succ = alpha.increment()?;
        let pred = alpha.decrement()?;
        // Length of the lane sweep in the previous counter round.
        let lane_before = pred.gamma()? as i64;
        let b = beta;
        let bit = |j: usize| alpha.bit(j);
        let open = |j: usize| !alpha.bit(j);
        let reset = b == -2 || b == gamma;
        let a = |i: i64| A(usize::try_from(i).expect("lane index is non-negative"));

        Ok(self.strategy(|role| match role {
            B(0) if reset => S,
            B(0) if b == -1 => X,
            B(0) => D,
            B(_) if reset => S,
            B(j) if -2 < b && b < j as i64 => X,
            B(j) => B(j - 1),
            D if b == -2 => T,
            D => X,
            L(j) if bit(j) || (b >= gamma - 1 && j == mu) => K(j),
            L(j) => Z(j),
            S if b < gamma - 1 => K(nu),
            S => K(mu),
            T if reset => S,
            T => X,
            W if bit(0) && b < gamma => Y,
            W if bit(0) && b == gamma => L(mu),
            W => L(nu),
            X if bit(0) => Y,
            X => W,
            Y if bit(0) || b == gamma => L(0),
            Y => W,
            Z(j) if b == gamma && j < mu => L(mu),
            Z(j) => {
                let next = alpha.restrict_above(j).nu();
                if j < next && next < n && (b < gamma || mu <= j) {
                    L(next)
                } else {
                    P
                }
            }
            E(j) if open(j) && (b == -1 || b == 0) => C,
            E(j) if !succ.bit(j) && b == gamma => S,
            E(j) if open(j) && b == -2 => A(3 * j + 2),
            E(j) if b > 0 && b % 3 == 0 && open(j) && (b < gamma - 1 || mu < j) => a(b - 1),
            E(j) => F(j),
            F(j) if b == -2
                && open(j)
                && (pred.bit(j) || (!pred.bit(j) && lane_before <= 3 * j as i64 + 1)) =>
            {
                A(3 * j + 1)
            }
            F(j) if b > 0 && b % 3 == 2 && open(j) && (b < gamma - 2 || mu < j) => a(b - 1),
            F(j) if !succ.bit(j) && b >= gamma - 1 => K(mu),
            F(j) => G(j),
            G(j) if open(j) && b < 0 => A(3 * j + 3),
            G(j) if b > 0 && b % 3 == 1 && open(j) && (b < gamma || mu < j) => a(b - 1),
            G(j) => H(j),
            other => unreachable!("{other} is not a player-0 node"),
        }))
    }

    /// Finalization family `σ²_{(n,β)}`, `−2 ≤ β ≤ 3n`.
    pub fn sigma_final(&self, beta: i64) -> Result<Strategy, FamilyError> {
        use Role::*;
        let n = self.n;
        let top = 3 * n as i64;
        if !(-2..=top).contains(&beta) {
            return Err(FamilyError::OutOfRange(format!(
                "β = {beta} not in −2..={top}"
            )));
        }
        let b = beta;
        Ok(self.strategy(|role| match role {
            B(0) if b == -2 => S,
            B(0) if b == -1 => X,
            B(0) => D,
            B(_) if b == -2 => S,
            B(j) if -2 < b && b < j as i64 => X,
            B(j) => B(j - 1),
            Z(j) if j == n - 1 => P,
            Z(j) => L(j + 1),
            D if b == -2 => T,
            D => X,
            T if b == -2 => S,
            T => X,
            L(j) => K(j),
            S => K(0),
            W | X => Y,
            Y => L(0),
            E(j) => F(j),
            F(j) => G(j),
            G(j) => H(j),
            other => unreachable!("{other} is not a player-0 node"),
        }))
    }

    /// The full sequence of strategies a run on `G_n` visits, labelled.
    /// Needs `n ≥ 2`: for `n = 1` the counting phase is empty and the
    /// transitions into and out of it are not defined.
    pub fn expected_trace(&self) -> Result<Vec<(TraceLabel, Strategy)>, FamilyError> {
        let n = self.n;
        if n < 2 {
            return Err(FamilyError::SizeTooSmall { n, min: 2 });
        }
        let mut out = vec![(TraceLabel::Initial, initial_strategy(&self.game))];
        for beta in -2..=8 {
            out.push((TraceLabel::Init(beta), self.sigma_init(beta)?));
        }
        let mut alpha = BitState::zeros(n)?.increment()?;
        while !alpha.is_full() {
            for beta in -2..=alpha.gamma()? as i64 {
                out.push((
                    TraceLabel::Count(alpha.clone(), beta),
                    self.sigma_count(&alpha, beta)?,
                ));
            }
            alpha = alpha.increment()?;
        }
        for beta in -2..=3 * n as i64 {
            out.push((TraceLabel::Final(beta), self.sigma_final(beta)?));
        }
        Ok(out)
    }

    /// Macroscopic state of the deceleration lane under `sigma`.
    pub fn macro_state(&self, sigma: &Strategy) -> MacroState {
        use Role::*;
        let to = |r: Role| sigma.get(self.id(r)).map(|v| self.role(v));
        let lane = 3 * self.n + 1;
        if to(D) == Some(T) {
            return MacroState::T;
        }
        if (0..lane).all(|j| to(B(j)) == Some(S)) {
            return MacroState::S;
        }
        if (0..lane).all(|j| to(B(j)) == Some(X)) {
            return MacroState::X;
        }
        if to(B(0)) != Some(D) {
            return MacroState::Mixed;
        }
        let chain = (1..lane)
            .take_while(|&j| to(B(j)) == Some(B(j - 1)))
            .count();
        MacroState::Digit(chain)
    }

    /// Counter value read off the strategy: bit `i` is set iff stubborn
    /// cycle `i` is closed.
    pub fn closed_cycles(&self, sigma: &Strategy) -> BitState {
        use Role::*;
        let to = |r: Role| sigma.get(self.id(r)).map(|v| self.role(v));
        let bits = (0..self.n)
            .map(|i| to(E(i)) == Some(F(i)) && to(F(i)) == Some(G(i)) && to(G(i)) == Some(H(i)))
            .collect();
        BitState::from_bits(bits).expect("n ≥ 1")
    }

    /// Runs the solver on `G_n` and checks its iteration count. With
    /// `check_trace` (and `n ≥ 2`) it also checks every step of
    /// [`LowerBoundGame::expected_trace`]: applying the policy to element `i`
    /// must give element `i + 1`, the last element must be a fixpoint, and
    /// the recorded run must equal the sequence element by element.
    pub fn verify(&self, check_trace: bool) -> Result<VerifyReport, GameError> {
        let expected = if check_trace {
            self.expected_trace().ok()
        } else {
            None
        };
        let mut recorded = Vec::new();
        let result = run_with(&self.game, &LocallyOptimizing, None, |_, sigma, _| {
            if expected.is_some() {
                recorded.push(sigma.clone());
            }
        })?;

        let mut report = VerifyReport {
            n: self.n,
            iterations: result.iteration_count,
            expected_iterations: expected_iterations(self.n),
            player1_wins_all: result.w0.is_empty(),
            trace: None,
        };
        let Some(expected) = expected else {
            return Ok(report);
        };

        let find = |sigma: &Strategy| {
            expected
                .iter()
                .find(|(_, s)| s == sigma)
                .map(|(l, _)| l.clone())
        };
        let mut steps = Vec::with_capacity(expected.len());
        for pair in expected.windows(2) {
            let (from, sigma) = &pair[0];
            let (to, want) = &pair[1];
            let xi = evaluate(&self.game, sigma)?;
            let got = improve_locally(&self.game, sigma, &xi);
            let holds = &got == want;
            steps.push(StepCheck {
                from: from.clone(),
                to: to.clone(),
                holds,
                actual: if holds { None } else { find(&got) },
            });
        }
        let (last_label, last) = expected.last().expect("trace is non-empty");
        let xi = evaluate(&self.game, last)?;
        let fixpoint = !is_improvable(&self.game, last, &xi);

        let labels: Vec<TraceLabel> = expected.iter().map(|(l, _)| l.clone()).collect();
        let first_divergence = (0..recorded.len().max(expected.len()))
            .find(|&i| recorded.get(i) != expected.get(i).map(|(_, s)| s))
            .map(|i| Divergence {
                step: i,
                expected: labels.get(i).cloned(),
                differences: match (expected.get(i), recorded.get(i)) {
                    (Some((_, want)), Some(got)) => self.differences(want, got),
                    _ => Vec::new(),
                },
            });
        report.trace = Some(TraceCheck {
            initial_is_first: expected[0].1 == expected[1].1,
            steps,
            fixpoint: (last_label.clone(), fixpoint),
            recorded_len: recorded.len(),
            expected_len: expected.len(),
            first_divergence,
        });
        Ok(report)
    }

    /// Player-0 nodes on which two strategies differ, as `(node, a, b)` names.
    pub fn differences(
        &self,
        a: &Strategy,
        b: &Strategy,
    ) -> Vec<(Role, Option<Role>, Option<Role>)> {
        self.game
            .nodes_of(Player::Even)
            .filter(|&v| a.get(v) != b.get(v))
            .map(|v| {
                (
                    self.role(v),
                    a.get(v).map(|u| self.role(u)),
                    b.get(v).map(|u| self.role(u)),
                )
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceLabel {
    Initial,
    Init(i64),
    Count(BitState, i64),
    Final(i64),
}

impl fmt::Display for TraceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceLabel::Initial => write!(f, "initial"),
            TraceLabel::Init(b) => write!(f, "init(β={b})"),
            TraceLabel::Count(a, b) => write!(f, "count(α={a}, β={b})"),
            TraceLabel::Final(b) => write!(f, "final(β={b})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MacroState {
    X,
    S,
    T,
    /// Lane chained from `b_0` up to `b_k`.
    Digit(usize),
    Mixed,
}

impl fmt::Display for MacroState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MacroState::X => write!(f, "X"),
            MacroState::S => write!(f, "S"),
            MacroState::T => write!(f, "T"),
            MacroState::Digit(k) => write!(f, "{k}"),
            MacroState::Mixed => write!(f, "mixed"),
        }
    }
}

/// One transition of the expected sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepCheck {
    pub from: TraceLabel,
    pub to: TraceLabel,
    pub holds: bool,
    /// What the policy produced instead, when that is a member of the
    /// expected sequence.
    pub actual: Option<TraceLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    /// Index into the recorded run.
    pub step: usize,
    pub expected: Option<TraceLabel>,
    /// `(node, expected choice, actual choice)`.
    pub differences: Vec<(Role, Option<Role>, Option<Role>)>,
}

#[derive(Clone, Debug)]
pub struct TraceCheck {
    /// The initial strategy already equals the first initialization
    /// strategy, so the step between them cannot happen.
    pub initial_is_first: bool,
    pub steps: Vec<StepCheck>,
    pub fixpoint: (TraceLabel, bool),
    pub recorded_len: usize,
    pub expected_len: usize,
    pub first_divergence: Option<Divergence>,
}

impl TraceCheck {
    pub fn matched_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.holds).count()
    }

    pub fn transitions_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds) && self.fixpoint.1
    }

    /// The recorded run equals the expected sequence element by element.
    pub fn run_matches(&self) -> bool {
        self.first_divergence.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub n: usize,
    /// Policy applications in the real run.
    pub iterations: usize,
    pub expected_iterations: u128,
    pub player1_wins_all: bool,
    pub trace: Option<TraceCheck>,
}

impl VerifyReport {
    pub fn count_matches(&self) -> bool {
        self.iterations as u128 == self.expected_iterations
    }

    pub fn passed(&self) -> bool {
        self.count_matches()
            && self
                .trace
                .as_ref()
                .is_none_or(|t| t.transitions_hold() && t.run_matches())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(t) = &self.trace {
            if t.initial_is_first {
                writeln!(
                    f,
                    "note: {} coincides with {}",
                    t.steps[0].from, t.steps[0].to
                )?;
            }
            for (i, s) in t.steps.iter().enumerate() {
                if s.holds {
                    writeln!(f, "OK {i} {} -> {}", s.from, s.to)?;
                } else {
                    let got = s.actual.as_ref().map_or(
                        "a strategy outside the sequence".to_string(),
                        ToString::to_string,
                    );
                    writeln!(
                        f,
                        "DIVERGED {i} {} -> {} (policy gives {got})",
                        s.from, s.to
                    )?;
                }
            }
            let (label, ok) = &t.fixpoint;
            writeln!(
                f,
                "{} {label} is a fixpoint",
                if *ok { "OK" } else { "DIVERGED" }
            )?;
            match &t.first_divergence {
                None => writeln!(f, "run matches the expected sequence")?,
                Some(d) => {
                    write!(f, "run diverges at strategy {}", d.step)?;
                    if let Some(l) = &d.expected {
                        write!(f, " (expected {l})")?;
                    }
                    writeln!(
                        f,
                        "; recorded {} strategies, expected {}",
                        t.recorded_len, t.expected_len
                    )?;
                    for (node, want, got) in &d.differences {
                        let show = |r: &Option<Role>| r.map_or("-".to_string(), |r| r.to_string());
                        writeln!(f, "  {node}: expected {} got {}", show(want), show(got))?;
                    }
                }
            }
        }
        let matched = self.trace.as_ref().map_or(0, TraceCheck::matched_steps);
        writeln!(
            f,
            "n={} steps={} expected={} matched={}",
            self.n, self.iterations, self.expected_iterations, matched
        )?;
        if let Some(t) = &self.trace {
            writeln!(f, "{}/{} steps matched", matched, t.steps.len())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{validate, GameGraph};
    use std::collections::BTreeSet;

    #[test]
    fn counts_small() {
        assert_eq!(expected_counts(1), (25, 48, 32));
        assert_eq!(expected_counts(2), (39, 85, 48));
        assert_eq!(expected_counts(3), (53, 128, 64));
        assert_eq!(expected_iterations(1), 17);
        assert_eq!(expected_iterations(2), 43);
        assert_eq!(expected_iterations(3), 95);
        assert!(generate(0).is_err());
    }

    #[test]
    fn table_rows() {
        let g = generate(2).unwrap();
        let f0 = g.id(Role::F(0));
        assert_eq!(g.game().priority(f0), 11);
        let succ: BTreeSet<Role> = g.game().successors(f0).iter().map(|&v| g.role(v)).collect();
        assert_eq!(
            succ,
            BTreeSet::from([Role::G(0), Role::A(1), Role::K(0), Role::K(1)])
        );
        let r = validate(g.game());
        assert!(r.is_total && r.duplicate_priorities.is_empty());
        assert_eq!(r.self_loop_nodes, BTreeSet::from([g.id(Role::Q)]));
    }

    #[test]
    fn roles_round_trip_through_ids() {
        for n in 1..=4 {
            let g = generate(n).unwrap();
            for (i, &r) in g.roles().iter().enumerate() {
                assert_eq!(g.id(r), NodeId(i));
                assert_eq!(g.game().label(NodeId(i)), Some(r.to_string().as_str()));
            }
        }
    }

    #[test]
    fn family_ranges() {
        let g = generate(2).unwrap();
        assert!(g.sigma_init(-3).is_err());
        assert!(g.sigma_init(9).is_err());
        assert!(g.sigma_final(7).is_err());
        let one = BitState::from_value(2, 1).unwrap();
        assert!(g.sigma_count(&one, 11).is_err());
        assert!(g.sigma_count(&BitState::zeros(2).unwrap(), 0).is_err());
        assert!(g.sigma_count(&BitState::ones(2).unwrap(), 0).is_err());
        assert!(g
            .sigma_count(&BitState::from_value(3, 1).unwrap(), 0)
            .is_err());
        assert!(generate(1).unwrap().expected_trace().is_err());
    }

    #[test]
    fn expected_trace_length() {
        let g = generate(2).unwrap();
        assert_eq!(g.expected_trace().unwrap().len() - 1, 43);
        let g = generate(3).unwrap();
        let alphas: Vec<String> = g
            .expected_trace()
            .unwrap()
            .into_iter()
            .filter_map(|(l, _)| match l {
                TraceLabel::Count(a, -2) => Some(a.to_string()),
                _ => None,
            })
            .collect();
        assert_eq!(alphas, ["001", "010", "011", "100", "101", "110"]);
    }
}
