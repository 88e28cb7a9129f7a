//! Rationalizability and strict-dominance operators on the restrictions
//! of a fixed finite game.
//!
//! The `G*` operators justify removals against the initial game `H`
//! (best responses in `H`, dominators from `T_i`); the `L*` operators use
//! the current restriction `G` (best responses in `G`, dominators from
//! `S_i`). The `M*` operators allow mixed dominators. Every base step
//! returns a subset of `T_1 × … × T_n` that is *not* intersected with its
//! argument; the `*bar` variants add that meet.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{FiniteGame, Restriction};
use crate::lp::{lp_feasible, lp_solve, Constraint, LinearProgram, LpResult, Sense};
use crate::rational::{one, zero, Rational};

/// Which beliefs a player may hold about the opponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BeliefStructure {
    /// Joint pure strategies of the opponents, narrowed to `S_{-i}`.
    Point,
    /// Distributions over joint opponent strategies, narrowed to `Δ S_{-i}`.
    CorrelatedMixed,
    /// Products of independent mixed strategies. Only two-player games are
    /// supported, where this coincides with [`BeliefStructure::CorrelatedMixed`].
    IndependentMixed,
}

impl BeliefStructure {
    pub const ALL: [BeliefStructure; 3] =
        [BeliefStructure::Point, BeliefStructure::CorrelatedMixed, BeliefStructure::IndependentMixed];

    pub fn token(self) -> &'static str {
        match self {
            BeliefStructure::Point => "point",
            BeliefStructure::CorrelatedMixed => "correlated",
            BeliefStructure::IndependentMixed => "independent",
        }
    }

    fn check_supported(self, game: &FiniteGame) -> Result<()> {
        if self == BeliefStructure::IndependentMixed && game.player_count() > 2 {
            return Err(Error::UnsupportedBeliefs(format!(
                "independent mixed beliefs need 2 players, game has {}",
                game.player_count()
            )));
        }
        Ok(())
    }

    fn is_mixed(self) -> bool {
        self != BeliefStructure::Point
    }
}

impl fmt::Display for BeliefStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for BeliefStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BeliefStructure::ALL
            .into_iter()
            .find(|b| b.token() == s)
            .ok_or_else(|| Error::UnknownToken { kind: "belief structure", token: s.to_string() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorName {
    GR,
    GRbar,
    LR,
    LRbar,
    GS,
    GSbar,
    LS,
    LSbar,
    MGS,
    MGSbar,
    MLS,
    MLSbar,
}

impl OperatorName {
    pub const ALL: [OperatorName; 12] = [
        OperatorName::GR,
        OperatorName::GRbar,
        OperatorName::LR,
        OperatorName::LRbar,
        OperatorName::GS,
        OperatorName::GSbar,
        OperatorName::LS,
        OperatorName::LSbar,
        OperatorName::MGS,
        OperatorName::MGSbar,
        OperatorName::MLS,
        OperatorName::MLSbar,
    ];

    /// Lower-case command-line token (`gr`, `grbar`, …).
    pub fn token(self) -> &'static str {
        match self {
            OperatorName::GR => "gr",
            OperatorName::GRbar => "grbar",
            OperatorName::LR => "lr",
            OperatorName::LRbar => "lrbar",
            OperatorName::GS => "gs",
            OperatorName::GSbar => "gsbar",
            OperatorName::LS => "ls",
            OperatorName::LSbar => "lsbar",
            OperatorName::MGS => "mgs",
            OperatorName::MGSbar => "mgsbar",
            OperatorName::MLS => "mls",
            OperatorName::MLSbar => "mlsbar",
        }
    }

    pub fn is_bar(self) -> bool {
        matches!(
            self,
            OperatorName::GRbar
                | OperatorName::LRbar
                | OperatorName::GSbar
                | OperatorName::LSbar
                | OperatorName::MGSbar
                | OperatorName::MLSbar
        )
    }

    /// The operator without the contracting wrapper.
    pub fn base(self) -> OperatorName {
        match self {
            OperatorName::GRbar => OperatorName::GR,
            OperatorName::LRbar => OperatorName::LR,
            OperatorName::GSbar => OperatorName::GS,
            OperatorName::LSbar => OperatorName::LS,
            OperatorName::MGSbar => OperatorName::MGS,
            OperatorName::MLSbar => OperatorName::MLS,
            base => base,
        }
    }

    /// The contracting version.
    pub fn bar(self) -> OperatorName {
        match self {
            OperatorName::GR => OperatorName::GRbar,
            OperatorName::LR => OperatorName::LRbar,
            OperatorName::GS => OperatorName::GSbar,
            OperatorName::LS => OperatorName::LSbar,
            OperatorName::MGS => OperatorName::MGSbar,
            OperatorName::MLS => OperatorName::MLSbar,
            bar => bar,
        }
    }

    pub fn is_rationalizability(self) -> bool {
        matches!(self.base(), OperatorName::GR | OperatorName::LR)
    }

    /// Whether removals are justified against the initial game.
    pub fn is_global(self) -> bool {
        matches!(self.base(), OperatorName::GR | OperatorName::GS | OperatorName::MGS)
    }

    /// Contracting for every argument.
    pub fn is_contracting(self) -> bool {
        self.is_bar()
    }

    /// Monotonic for every finite game; the global operators and their
    /// contracting versions.
    pub fn is_monotonic_by_theory(self) -> bool {
        self.is_global()
    }
}

impl fmt::Display for OperatorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            OperatorName::GR => "GR",
            OperatorName::GRbar => "GRbar",
            OperatorName::LR => "LR",
            OperatorName::LRbar => "LRbar",
            OperatorName::GS => "GS",
            OperatorName::GSbar => "GSbar",
            OperatorName::LS => "LS",
            OperatorName::LSbar => "LSbar",
            OperatorName::MGS => "MGS",
            OperatorName::MGSbar => "MGSbar",
            OperatorName::MLS => "MLS",
            OperatorName::MLSbar => "MLSbar",
        };
        f.write_str(name)
    }
}

impl FromStr for OperatorName {
    type Err = Error;

    /// Accepts the lower-case tokens and the mixed-case display names.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        OperatorName::ALL
            .into_iter()
            .find(|op| op.token() == lower)
            .ok_or_else(|| Error::UnknownToken { kind: "operator", token: s.to_string() })
    }
}

/// Where best responses and dominators are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain<'a> {
    /// The initial game: `T_i`.
    Full,
    /// A restriction: `S_i`.
    Restriction(&'a Restriction),
}

/// A belief of player `i`. Opponent profiles list one strategy per
/// opponent, in player order with player `i` skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Belief {
    Point(Vec<usize>),
    Correlated(Vec<(Vec<usize>, Rational)>),
}

fn expand_profile(game: &FiniteGame, player: usize, opponents: &[usize]) -> Result<Vec<usize>> {
    if opponents.len() + 1 != game.player_count() {
        return Err(Error::InvalidBelief(format!(
            "opponent profile has {} entries, expected {}",
            opponents.len(),
            game.player_count() - 1
        )));
    }
    let mut joint = Vec::with_capacity(game.player_count());
    joint.extend_from_slice(&opponents[..player]);
    joint.push(0);
    joint.extend_from_slice(&opponents[player..]);
    for (j, &s) in joint.iter().enumerate() {
        if j != player {
            game.check_strategy(j, s)?;
        }
    }
    Ok(joint)
}

fn payoff_with(game: &FiniteGame, player: usize, strategy: usize, profile: &mut [usize]) -> Rational {
    profile[player] = strategy;
    game.payoff(player, profile).clone()
}

fn domain_strategies(game: &FiniteGame, player: usize, domain: Domain<'_>) -> Vec<usize> {
    match domain {
        Domain::Full => (0..game.strategy_count(player)).collect(),
        Domain::Restriction(r) => r.strategies(player).collect(),
    }
}

/// `s_i ∈ BR_D(μ_i)`: no strategy of the domain earns strictly more
/// against `belief`. With [`Domain::Restriction`] the belief must be
/// supported on the narrowed opponent set `S_{-i}`.
pub fn is_best_response(
    game: &FiniteGame,
    player: usize,
    strategy: usize,
    belief: &Belief,
    domain: Domain<'_>,
) -> Result<bool> {
    game.check_strategy(player, strategy)?;
    if let Domain::Restriction(r) = domain {
        game.check(r)?;
    }
    let weighted: Vec<(Vec<usize>, Rational)> = match belief {
        Belief::Point(opponents) => vec![(expand_profile(game, player, opponents)?, one())],
        Belief::Correlated(entries) => {
            let mut total = zero();
            let mut out = Vec::with_capacity(entries.len());
            for (opponents, p) in entries {
                if p.is_negative() {
                    return Err(Error::InvalidBelief("negative probability".into()));
                }
                total += p;
                out.push((expand_profile(game, player, opponents)?, p.clone()));
            }
            if total != one() {
                return Err(Error::InvalidBelief(format!("probabilities sum to {total}")));
            }
            out
        }
    };
    if let Domain::Restriction(r) = domain {
        let outside = weighted.iter().any(|(joint, p)| {
            !p.is_zero() && joint.iter().enumerate().any(|(j, &s)| j != player && !r.contains(j, s))
        });
        if outside {
            return Err(Error::SupportOutsideNarrowing);
        }
    }
    let expected = |s: usize| -> Rational {
        weighted
            .iter()
            .map(|(joint, p)| {
                let mut joint = joint.clone();
                p * payoff_with(game, player, s, &mut joint)
            })
            .sum()
    };
    let own = expected(strategy);
    Ok(domain_strategies(game, player, domain).into_iter().all(|alt| own >= expected(alt)))
}

/// `dominator ≻_G dominated` for `player`: strictly better against every
/// joint opponent strategy in `S_{-i}`. Vacuously true when `S_{-i}` is
/// empty. Both strategies range over `T_i`.
pub fn strictly_dominates(
    game: &FiniteGame,
    restriction: &Restriction,
    player: usize,
    dominator: usize,
    dominated: usize,
) -> Result<bool> {
    game.check(restriction)?;
    game.check_strategy(player, dominator)?;
    game.check_strategy(player, dominated)?;
    let profiles = game.opponent_profiles(restriction, player);
    Ok(dominates_on(game, &profiles, player, dominator, dominated))
}

fn dominates_on(game: &FiniteGame, profiles: &[Vec<usize>], player: usize, better: usize, worse: usize) -> bool {
    profiles.iter().all(|profile| {
        let mut joint = profile.clone();
        payoff_with(game, player, better, &mut joint) > payoff_with(game, player, worse, &mut joint)
    })
}

fn response_domain(game: &FiniteGame, restriction: &Restriction, player: usize, global: bool) -> Vec<usize> {
    if global {
        (0..game.strategy_count(player)).collect()
    } else {
        restriction.strategies(player).collect()
    }
}

fn pure_dominance_step(game: &FiniteGame, restriction: &Restriction, global: bool) -> Result<Restriction> {
    game.check(restriction)?;
    let mut out = game.empty();
    for player in 0..game.player_count() {
        let profiles = game.opponent_profiles(restriction, player);
        let dominators = response_domain(game, restriction, player, global);
        for s in 0..game.strategy_count(player) {
            if !dominators.iter().any(|&d| dominates_on(game, &profiles, player, d, s)) {
                out.insert(player, s);
            }
        }
    }
    Ok(out)
}

/// `GS(G)`: strategies of `T_i` not strictly dominated on `G` by any
/// strategy of `T_i`.
pub fn gs_step(game: &FiniteGame, restriction: &Restriction) -> Result<Restriction> {
    pure_dominance_step(game, restriction, true)
}

/// `LS(G)`: strategies of `T_i` not strictly dominated on `G` by any
/// strategy of `S_i`.
pub fn ls_step(game: &FiniteGame, restriction: &Restriction) -> Result<Restriction> {
    pure_dominance_step(game, restriction, false)
}

/// Decides `∃ m ∈ Δ D: m ≻_G s` by maximizing the dominance margin `ε`:
///
/// ```text
/// max ε  s.t.  Σ_d m_d p_i(d, c) − ε ≥ p_i(s, c)   for every c ∈ S_{-i}
///              Σ_d m_d = 1,  m ≥ 0,  ε = ε⁺ − ε⁻
/// ```
///
/// `s` is dominated iff the optimum is positive. With `S_{-i}` empty every
/// distribution dominates vacuously, so the answer is `D ≠ ∅`.
pub fn dominated_by_mixed(
    game: &FiniteGame,
    restriction: &Restriction,
    player: usize,
    strategy: usize,
    dominators: Domain<'_>,
) -> Result<bool> {
    game.check(restriction)?;
    game.check_strategy(player, strategy)?;
    if let Domain::Restriction(r) = dominators {
        game.check(r)?;
    }
    let support = domain_strategies(game, player, dominators);
    let profiles = game.opponent_profiles(restriction, player);
    mixed_dominance_lp(game, &profiles, player, strategy, &support)
}

fn mixed_dominance_lp(
    game: &FiniteGame,
    profiles: &[Vec<usize>],
    player: usize,
    strategy: usize,
    support: &[usize],
) -> Result<bool> {
    if support.is_empty() {
        return Ok(false);
    }
    if profiles.is_empty() {
        return Ok(true);
    }
    let k = support.len();
    let mut constraints = Vec::with_capacity(profiles.len() + 1);
    for profile in profiles {
        let mut joint = profile.clone();
        let mut row: Vec<Rational> =
            support.iter().map(|&d| payoff_with(game, player, d, &mut joint)).collect();
        row.push(-one());
        row.push(one());
        let rhs = payoff_with(game, player, strategy, &mut joint);
        constraints.push(Constraint::new(row, Sense::Ge, rhs));
    }
    let mut simplex = vec![one(); k];
    simplex.extend([zero(), zero()]);
    constraints.push(Constraint::new(simplex, Sense::Eq, one()));
    let mut objective = vec![zero(); k];
    objective.extend([one(), -one()]);
    match lp_solve(&LinearProgram::new(objective, constraints))? {
        LpResult::Optimal { value, .. } => Ok(value.is_positive()),
        LpResult::Unbounded => Ok(true),
        LpResult::Infeasible => Err(Error::LpVerificationFailed),
    }
}

fn mixed_dominance_step(game: &FiniteGame, restriction: &Restriction, global: bool) -> Result<Restriction> {
    game.check(restriction)?;
    let mut out = game.empty();
    for player in 0..game.player_count() {
        let profiles = game.opponent_profiles(restriction, player);
        let support = response_domain(game, restriction, player, global);
        for s in 0..game.strategy_count(player) {
            // a pure dominator is a degenerate mixed one; a best response to
            // a point belief is dominated by no mixture
            let dominated = support.iter().any(|&d| dominates_on(game, &profiles, player, d, s))
                || (!point_best_response(game, &profiles, player, s, &support)
                    && mixed_dominance_lp(game, &profiles, player, s, &support)?);
            if !dominated {
                out.insert(player, s);
            }
        }
    }
    Ok(out)
}

/// `MGS(G)`: strategies not strictly dominated on `G` by a mixed
/// strategy over `T_i`.
pub fn mgs_step(game: &FiniteGame, restriction: &Restriction) -> Result<Restriction> {
    mixed_dominance_step(game, restriction, true)
}

/// `MLS(G)`: strategies not strictly dominated on `G` by a mixed
/// strategy over `S_i`.
pub fn mls_step(game: &FiniteGame, restriction: &Restriction) -> Result<Restriction> {
    mixed_dominance_step(game, restriction, false)
}

/// Decides `∃ μ ∈ Δ S_{-i}` with `s ∈ BR_D(μ)` by phase-one feasibility of
///
/// ```text
/// Σ_c μ_c (p_i(s, c) − p_i(d, c)) ≥ 0   for every d ∈ D
/// Σ_c μ_c = 1,  μ ≥ 0
/// ```
///
/// No beliefs survive narrowing to an empty `S_{-i}`.
pub fn correlated_best_response_exists(
    game: &FiniteGame,
    restriction: &Restriction,
    player: usize,
    strategy: usize,
    responses: Domain<'_>,
) -> Result<bool> {
    game.check(restriction)?;
    game.check_strategy(player, strategy)?;
    if let Domain::Restriction(r) = responses {
        game.check(r)?;
    }
    let alternatives = domain_strategies(game, player, responses);
    let profiles = game.opponent_profiles(restriction, player);
    correlated_lp(game, &profiles, player, strategy, &alternatives)
}

fn correlated_lp(
    game: &FiniteGame,
    profiles: &[Vec<usize>],
    player: usize,
    strategy: usize,
    alternatives: &[usize],
) -> Result<bool> {
    if profiles.is_empty() {
        return Ok(false);
    }
    let gains: Vec<Vec<Rational>> = profiles
        .iter()
        .map(|profile| {
            let mut joint = profile.clone();
            let own = payoff_with(game, player, strategy, &mut joint);
            alternatives.iter().map(|&d| &own - payoff_with(game, player, d, &mut joint)).collect()
        })
        .collect();
    let mut constraints: Vec<Constraint> = alternatives
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d != strategy)
        .map(|(k, _)| Constraint::new(gains.iter().map(|g| g[k].clone()).collect(), Sense::Ge, zero()))
        .collect();
    constraints.push(Constraint::new(vec![one(); profiles.len()], Sense::Eq, one()));
    Ok(lp_feasible(profiles.len(), &constraints)?.is_some())
}

/// Point-belief best responses: `s` is kept iff some `c ∈ S_{-i}` makes it
/// at least as good as every alternative.
fn point_best_response(game: &FiniteGame, profiles: &[Vec<usize>], player: usize, strategy: usize, alternatives: &[usize]) -> bool {
    profiles.iter().any(|profile| {
        let mut joint = profile.clone();
        let own = payoff_with(game, player, strategy, &mut joint);
        alternatives.iter().all(|&d| own >= payoff_with(game, player, d, &mut joint))
    })
}

fn rationalizability_step(
    game: &FiniteGame,
    beliefs: BeliefStructure,
    restriction: &Restriction,
    global: bool,
) -> Result<Restriction> {
    game.check(restriction)?;
    beliefs.check_supported(game)?;
    let mut out = game.empty();
    for player in 0..game.player_count() {
        let profiles = game.opponent_profiles(restriction, player);
        let alternatives = response_domain(game, restriction, player, global);
        for s in 0..game.strategy_count(player) {
            // point beliefs are degenerate correlated ones
            let kept = point_best_response(game, &profiles, player, s, &alternatives)
                || (beliefs.is_mixed() && correlated_lp(game, &profiles, player, s, &alternatives)?);
            if kept {
                out.insert(player, s);
            }
        }
    }
    Ok(out)
}

/// `GR(G)`: strategies of `T_i` that are a best response in `H` to some
/// belief narrowed to `G`.
pub fn gr_step(game: &FiniteGame, beliefs: BeliefStructure, restriction: &Restriction) -> Result<Restriction> {
    rationalizability_step(game, beliefs, restriction, true)
}

/// `LR(G)`: strategies of `T_i` that are a best response in `G` to some
/// belief narrowed to `G`.
pub fn lr_step(game: &FiniteGame, beliefs: BeliefStructure, restriction: &Restriction) -> Result<Restriction> {
    rationalizability_step(game, beliefs, restriction, false)
}

/// One of the twelve operators, bound to a game (and a belief structure
/// for the rationalizability family).
#[derive(Debug, Clone)]
pub struct GameOperator {
    name: OperatorName,
    game: Arc<FiniteGame>,
    beliefs: Option<BeliefStructure>,
}

impl GameOperator {
    pub fn name(&self) -> OperatorName {
        self.name
    }

    pub fn game(&self) -> &FiniteGame {
        &self.game
    }

    pub fn shared_game(&self) -> Arc<FiniteGame> {
        Arc::clone(&self.game)
    }

    pub fn beliefs(&self) -> Option<BeliefStructure> {
        self.beliefs
    }

    pub fn is_contracting(&self) -> bool {
        self.name.is_contracting()
    }

    pub fn is_monotonic_by_theory(&self) -> bool {
        self.name.is_monotonic_by_theory()
    }

    /// `GRbar[point]`-style label.
    pub fn label(&self) -> String {
        match self.beliefs {
            Some(b) => format!("{}[{}]", self.name, b),
            None => self.name.to_string(),
        }
    }

    fn base_step(&self, restriction: &Restriction) -> Result<Restriction> {
        let game = &*self.game;
        match self.name.base() {
            OperatorName::GR => gr_step(game, self.beliefs.expect("checked in make_operator"), restriction),
            OperatorName::LR => lr_step(game, self.beliefs.expect("checked in make_operator"), restriction),
            OperatorName::GS => gs_step(game, restriction),
            OperatorName::LS => ls_step(game, restriction),
            OperatorName::MGS => mgs_step(game, restriction),
            OperatorName::MLS => mls_step(game, restriction),
            bar => unreachable!("{bar} is not a base operator"),
        }
    }

    pub fn step(&self, restriction: &Restriction) -> Result<Restriction> {
        let base = self.base_step(restriction)?;
        if self.name.is_bar() {
            base.meet(restriction)
        } else {
            Ok(base)
        }
    }

    /// The same operator with (or without) the contracting wrapper.
    pub fn with_name(&self, name: OperatorName) -> Result<GameOperator> {
        make_operator(name, Arc::clone(&self.game), self.beliefs)
    }
}

/// Binds `name` to `game`. Beliefs must be given exactly for the
/// rationalizability operators.
pub fn make_operator(
    name: OperatorName,
    game: Arc<FiniteGame>,
    beliefs: Option<BeliefStructure>,
) -> Result<GameOperator> {
    match (name.is_rationalizability(), beliefs) {
        (true, None) => {
            return Err(Error::UnsupportedBeliefs(format!("{name} needs a belief structure")));
        }
        (false, Some(b)) => {
            return Err(Error::UnsupportedBeliefs(format!("{name} takes no beliefs, got {b}")));
        }
        (true, Some(b)) => b.check_supported(&game)?,
        (false, None) => {}
    }
    Ok(GameOperator { name, game, beliefs })
}
