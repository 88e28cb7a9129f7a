//! The infinite example games: payoffs, hand-derived step functions, and
//! closed-form stages.

use std::sync::Arc;

use crate::engine::{LatticePoint, Operator, Verdict};
use crate::error::Result;
use crate::ordinal::Ordinal;
use crate::rational::{int, ratio, Rational};

use super::set::{SymbolicRestriction, SymbolicSet};

type SR = SymbolicRestriction;

/// Which definition a step function implements, for spot checks against
/// the payoffs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// Point-belief best responses, compared against `T_i` (global) or
    /// `S_i` (local).
    Rationalizability { global: bool },
    /// Strict dominance by a pure strategy of `T_i` (global) or `S_i`.
    Dominance { global: bool },
}

pub type ChooseFn = Arc<dyn Fn(Ordinal, &SR, &SR) -> SR + Send + Sync>;

/// A named relaxation of an example's operator with its expected result.
#[derive(Clone)]
pub struct ScriptedRelaxation {
    pub name: String,
    pub choose: ChooseFn,
    pub expected_outcome: SR,
    pub expected_closure: Ordinal,
}

/// An infinite game with an operator replayed on it in closed form.
pub struct SymbolicExample {
    pub name: &'static str,
    pub description: &'static str,
    pub operator: &'static str,
    pub players: usize,
    /// `None` when the step is not an operator from the catalogue
    /// (scripted relaxations replayed on their own).
    pub kind: Option<StepKind>,
    pub bar: bool,
    pub expected_verdict: Verdict,
    pub expected_outcome: Option<SR>,
    /// Replays a relaxation of this other example's operator.
    pub relaxation_of: Option<&'static str>,
    pub(crate) top: fn() -> SR,
    pub(crate) step: fn(&SR) -> Result<SR>,
    pub(crate) stage: fn(Ordinal) -> SR,
    pub(crate) payoff: fn(usize, &[Rational]) -> Rational,
    pub(crate) grid: fn(u64) -> Vec<Rational>,
    pub(crate) relaxations: fn() -> Vec<ScriptedRelaxation>,
}

impl SymbolicExample {
    pub fn top(&self) -> SR {
        (self.top)()
    }

    pub fn step(&self, point: &SR) -> Result<SR> {
        (self.step)(point)
    }

    /// The closed-form stage at `alpha`.
    pub fn stage(&self, alpha: Ordinal) -> SR {
        (self.stage)(alpha)
    }

    pub fn payoff(&self, player: usize, profile: &[Rational]) -> Rational {
        (self.payoff)(player, profile)
    }

    pub fn grid(&self, finite_upto: u64) -> Vec<Rational> {
        (self.grid)(finite_upto)
    }

    pub fn relaxations(&self) -> Vec<ScriptedRelaxation> {
        (self.relaxations)()
    }

    pub fn expected_closure(&self) -> Option<Ordinal> {
        match self.expected_verdict {
            Verdict::FixpointAt(a) => Some(a),
            _ => None,
        }
    }
}

impl Operator<SR> for SymbolicExample {
    fn label(&self) -> String {
        self.operator.to_string()
    }

    fn top(&self) -> SR {
        SymbolicExample::top(self)
    }

    fn apply(&self, point: &SR) -> Result<SR> {
        self.step(point)
    }

    fn is_contracting(&self) -> bool {
        self.bar
    }
}

fn pair(a: SymbolicSet, b: SymbolicSet) -> SR {
    SR::new(vec![a, b])
}

fn meet(base: SR, point: &SR) -> Result<SR> {
    base.meet(point)
}

fn no_relaxations() -> Vec<ScriptedRelaxation> {
    Vec::new()
}

// ---- Bertrand competition on (0, 100] ----

fn prices() -> SymbolicSet {
    SymbolicSet::interval(int(0), int(100))
}

fn bertrand_top() -> SR {
    SR::uniform(prices(), 2)
}

fn profit(x: &Rational) -> Rational {
    x * (int(100) - x)
}

/// Lower price takes the market `100 − p`; a tie splits it.
fn bertrand_payoff(player: usize, profile: &[Rational]) -> Rational {
    let (own, other) = (&profile[player], &profile[1 - player]);
    match own.cmp(other) {
        std::cmp::Ordering::Less => profit(own),
        std::cmp::Ordering::Equal => profit(own) / int(2),
        std::cmp::Ordering::Greater => int(0),
    }
}

fn price_grid(_: u64) -> Vec<Rational> {
    let mut grid = vec![ratio(1, 8), ratio(1, 2), int(1), int(10), int(25), int(49), ratio(99, 2), int(50)];
    grid.extend([ratio(101, 2), int(51), int(75), int(99), int(100)]);
    grid
}

/// `50` is the unique best response in `H` to any `s_{-i} > 50`; prices
/// `≤ 50` have no best response, since undercutting them is always better
/// and the infimum is not attained.
fn bertrand_gr(point: &SR) -> Result<SR> {
    let fifty = int(50);
    let respond = |other: &SymbolicSet| {
        if other.meets(Some(&fifty), None) {
            SymbolicSet::ints([50])
        } else {
            SymbolicSet::Empty
        }
    };
    meet(pair(respond(point.get(1)), respond(point.get(0))), point)
}

fn bertrand_gr_stage(alpha: Ordinal) -> SR {
    match alpha.as_finite() {
        Some(0) => bertrand_top(),
        Some(1) => SR::uniform(SymbolicSet::ints([50]), 2),
        _ => SR::empty(2),
    }
}

/// Best responses within `own` to the prices in `other`.
///
/// For an interval `own = (a, b]` and a rival price `c`:
/// - `c ≤ a`: every own price loses the market, so all of `own` ties at 0;
/// - `a < c ≤ b`: prices below `c` earn `x(100 − x)`, which has a maximum
///   below `c` only when `50 < c` and `a < 50` (at 50);
/// - `c > b`: the maximum of `x(100 − x)` on `(a, b]`: 50 if `a < 50 ≤ b`,
///   `b` if `b < 50`, none if `a ≥ 50`.
///
/// For a finite `own` the answer depends only on where `c` falls relative
/// to the points of `own`, so one representative per gap suffices.
fn bertrand_local(own: &SymbolicSet, other: &SymbolicSet) -> Result<SymbolicSet> {
    let fifty = int(50);
    match own {
        SymbolicSet::Empty => Ok(SymbolicSet::Empty),
        SymbolicSet::IntervalLoc { lo: a, hi: b } => {
            if other.meets(None, Some(a)) {
                return Ok(own.clone());
            }
            let mut kept = Vec::new();
            if *a < fifty && other.meets(Some(&fifty), Some(b)) {
                kept.push(fifty.clone());
            }
            if other.meets(Some(b), None) {
                if *a < fifty && fifty <= *b {
                    kept.push(fifty.clone());
                } else if *b < fifty {
                    kept.push(b.clone());
                }
            }
            Ok(SymbolicSet::finite(kept))
        }
        SymbolicSet::Finite(points) => {
            let rivals: Vec<Rational> = match other {
                SymbolicSet::Empty => Vec::new(),
                SymbolicSet::Finite(values) => values.iter().cloned().collect(),
                SymbolicSet::IntervalLoc { lo, hi } => gap_representatives(points.iter(), lo, hi),
                SymbolicSet::CofinNatMinus(_) => {
                    return Err(crate::error::Error::UnsupportedShape(other.to_string()))
                }
            };
            let mut kept = Vec::new();
            for c in rivals {
                let value = |x: &Rational| bertrand_payoff(0, &[x.clone(), c.clone()]);
                let best = points.iter().map(value).max().expect("non-empty");
                kept.extend(points.iter().filter(|x| value(x) == best).cloned());
            }
            Ok(SymbolicSet::finite(kept))
        }
        SymbolicSet::CofinNatMinus(_) => Err(crate::error::Error::UnsupportedShape(own.to_string())),
    }
}

/// One point of `(lo, hi]` in each region cut out by `points`: the points
/// themselves and the open gaps between them.
fn gap_representatives<'a>(points: impl Iterator<Item = &'a Rational>, lo: &Rational, hi: &Rational) -> Vec<Rational> {
    let points: Vec<&Rational> = points.collect();
    let mut reps: Vec<Rational> = points.iter().filter(|p| lo < **p && **p <= hi).map(|p| (*p).clone()).collect();
    let mut bounds: Vec<Option<&Rational>> = vec![None];
    bounds.extend(points.iter().map(|p| Some(*p)));
    bounds.push(None);
    for w in bounds.windows(2) {
        let left = match w[0] {
            Some(a) if a > lo => a,
            _ => lo,
        };
        match w[1] {
            Some(b) if b <= hi => {
                if left < b {
                    reps.push((left + b) / int(2));
                }
            }
            _ => {
                if left < hi {
                    reps.push(hi.clone());
                }
            }
        }
    }
    reps
}

fn bertrand_lr(point: &SR) -> Result<SR> {
    Ok(pair(bertrand_local(point.get(0), point.get(1))?, bertrand_local(point.get(1), point.get(0))?))
}

fn bertrand_lr_stage(alpha: Ordinal) -> SR {
    if alpha == Ordinal::ZERO {
        bertrand_top()
    } else {
        SR::uniform(SymbolicSet::ints([50]), 2)
    }
}

fn low_prices() -> SR {
    SR::uniform(SymbolicSet::interval(int(0), int(50)), 2)
}

/// `R(H) = ((0, 50], (0, 50])`, and `LRbar` everywhere else.
fn bertrand_r(point: &SR) -> Result<SR> {
    if *point == bertrand_top() {
        Ok(low_prices())
    } else {
        bertrand_lr(point)
    }
}

fn bertrand_r_stage(alpha: Ordinal) -> SR {
    match alpha.as_finite() {
        Some(0) => bertrand_top(),
        Some(1) => low_prices(),
        _ => SR::empty(2),
    }
}

fn bertrand_relaxations() -> Vec<ScriptedRelaxation> {
    vec![ScriptedRelaxation {
        name: "R".into(),
        choose: Arc::new(|_, point, proposal| {
            if *point == bertrand_top() {
                low_prices()
            } else {
                proposal.clone()
            }
        }),
        expected_outcome: SR::empty(2),
        expected_closure: Ordinal::finite(2),
    }]
}

// ---- production with a discontinuity at (100, 100) ----

/// `p_i = s_i`, except that `(100, 100)` pays nothing.
fn production_payoff(player: usize, profile: &[Rational]) -> Rational {
    if profile.iter().all(|s| *s == int(100)) {
        int(0)
    } else {
        profile[player].clone()
    }
}

/// Against any rival set containing a price other than 100, only 100 is
/// undominated; against `{100}` (or nothing) everything is dominated.
fn production_gs(point: &SR) -> Result<SR> {
    let respond = |other: &SymbolicSet| {
        if other.is_empty() || *other == SymbolicSet::ints([100]) {
            SymbolicSet::Empty
        } else {
            SymbolicSet::ints([100])
        }
    };
    meet(pair(respond(point.get(1)), respond(point.get(0))), point)
}

fn production_stage(alpha: Ordinal) -> SR {
    match alpha.as_finite() {
        Some(0) => bertrand_top(),
        Some(1) => SR::uniform(SymbolicSet::ints([100]), 2),
        _ => SR::empty(2),
    }
}

// ---- strategies ℕ ∪ {−1} ----

fn nat_minus_top() -> SR {
    SR::uniform(SymbolicSet::nat_minus(), 2)
}

fn nat_minus_payoff(player: usize, profile: &[Rational]) -> Rational {
    let k = profile[0].to_integer();
    let l = profile[1].to_integer();
    let minus = num_bigint::BigInt::from(-1);
    let one = num_bigint::BigInt::from(1);
    let value = if player == 0 {
        if k == minus {
            &l + &one
        } else if l == minus {
            k
        } else if k == &l + &one {
            &l + &one
        } else {
            0.into()
        }
    } else if l == minus {
        k
    } else if k == minus {
        l
    } else if k == l {
        k
    } else {
        0.into()
    };
    Rational::from_integer(value)
}

fn integer_grid(low: i64) -> impl Fn(u64) -> Vec<Rational> {
    move |upto| (low..=upto as i64 + 6).map(int).collect()
}

fn nat_minus_grid(upto: u64) -> Vec<Rational> {
    integer_grid(-1)(upto)
}

fn naturals_grid(upto: u64) -> Vec<Rational> {
    integer_grid(0)(upto)
}

fn minus_one() -> SymbolicSet {
    SymbolicSet::ints([-1])
}

fn minus_one_if(condition: bool) -> SymbolicSet {
    if condition {
        minus_one()
    } else {
        SymbolicSet::Empty
    }
}

/// Player 1's best responses in `H`: `{ℓ + 1, −1}` to `ℓ ≥ 0`, none to −1.
/// Player 2's: `{k, −1}` to `k ≥ 1`, everything to 0, none to −1.
fn nat_minus_gr(point: &SR) -> Result<SR> {
    let (s1, s2) = (point.get(0), point.get(1));
    let first = minus_one_if(!s2.naturals_part().is_empty()).union(&s2.shift_naturals_up()?)?;
    let second = if s1.contains_int(0) {
        SymbolicSet::nat_minus()
    } else {
        minus_one_if(!s1.naturals_part().is_empty()).union(&s1.at_least(1))?
    };
    meet(pair(first, second), point)
}

/// Finite stage `n` removes `{0, …, ⌈n/2⌉ − 1}` for player 1 and
/// `{0, …, ⌊n/2⌋ − 1}` for player 2.
fn nat_minus_finite_stage(n: u64) -> SR {
    let n = n as i64;
    pair(SymbolicSet::nat_minus_without_below((n + 1) / 2), SymbolicSet::nat_minus_without_below(n / 2))
}

fn nat_minus_gr_stage(alpha: Ordinal) -> SR {
    match (alpha.omega_coefficient(), alpha.finite_part()) {
        (0, n) => nat_minus_finite_stage(n),
        (1, 0) => SR::uniform(minus_one(), 2),
        _ => SR::empty(2),
    }
}

/// Best responses within the current restriction, to every point belief
/// in it. With `M` the best payoff available in `S_i` against a belief:
///
/// player 1 against `ℓ ≥ 0`: `{ℓ + 1, −1}` when `S_1` meets it, else all
///   of `ℕ ∪ {−1}` (everything pays at least 0);
/// player 1 against −1: nothing if `S_1 ∩ ℕ` is infinite, `{k ≥ M}` for
///   `M = max(S_1 ∩ ℕ) > 0`, everything otherwise;
/// player 2 against `k ≥ 1`: `{k, −1}` when `S_2` meets it, else all;
///   against 0: all; against −1: nothing if `S_2 ∩ ℕ` is infinite,
///   `{ℓ ≥ M}` for `M = max(S_2 ∩ ℕ)`, all when `S_2 ∩ ℕ = ∅`.
fn nat_minus_lr(point: &SR) -> Result<SR> {
    let (s1, s2) = (point.get(0), point.get(1));
    let everything = SymbolicSet::nat_minus;

    let first = (|| -> Result<SymbolicSet> {
        let mut out = SymbolicSet::Empty;
        let targets = s2.shift_naturals_up()?;
        if !targets.is_empty() {
            if s1.contains_int(-1) || targets.is_subset(s1) {
                out = out.union(&minus_one())?.union(&targets)?;
            } else {
                return Ok(everything());
            }
        }
        if s2.contains_int(-1) {
            let own = s1.naturals_part();
            if own.is_finite() {
                match own.greatest().and_then(|m| m.to_integer().try_into().ok()) {
                    Some(m) if m > 0 => out = out.union(&SymbolicSet::naturals_from(m))?,
                    _ => return Ok(everything()),
                }
            }
        }
        Ok(out)
    })()?;

    let second = (|| -> Result<SymbolicSet> {
        let mut out = SymbolicSet::Empty;
        let positives = s1.at_least(1);
        if !positives.is_empty() {
            if s2.contains_int(-1) || positives.is_subset(s2) {
                out = out.union(&minus_one())?.union(&positives)?;
            } else {
                return Ok(everything());
            }
        }
        if s1.contains_int(0) {
            return Ok(everything());
        }
        if s1.contains_int(-1) {
            let own = s2.naturals_part();
            if own.is_finite() {
                match own.greatest().and_then(|m| m.to_integer().try_into().ok()) {
                    Some(m) => out = out.union(&SymbolicSet::naturals_from(m))?,
                    None => return Ok(everything()),
                }
            }
        }
        Ok(out)
    })()?;

    Ok(pair(first, second))
}

/// Same finite stages as `GRbar`; `({−1}, {−1})` at `ω`, after which the
/// whole game comes back and the sequence repeats.
fn nat_minus_lr_stage(alpha: Ordinal) -> SR {
    match (alpha.omega_coefficient(), alpha.finite_part()) {
        (0, n) => nat_minus_finite_stage(n),
        (_, 0) => SR::uniform(minus_one(), 2),
        (_, j) => nat_minus_finite_stage(j - 1),
    }
}

// ---- strategies ℕ, payoff = own number ----

fn naturals_top() -> SR {
    SR::uniform(SymbolicSet::naturals(), 2)
}

fn own_number_payoff(player: usize, profile: &[Rational]) -> Rational {
    profile[player].clone()
}

/// A strategy is dominated by every larger one once the rival set is
/// non-empty, and by everything (itself included) when it is empty.
fn naturals_ls_component(own: &SymbolicSet, other: &SymbolicSet) -> SymbolicSet {
    if own.is_empty() {
        SymbolicSet::naturals()
    } else if other.is_empty() || !own.is_finite() {
        SymbolicSet::Empty
    } else {
        let m = own.greatest().expect("non-empty finite").to_integer().try_into().unwrap_or(i64::MAX);
        SymbolicSet::naturals_from(m)
    }
}

fn naturals_ls(point: &SR) -> Result<SR> {
    Ok(pair(naturals_ls_component(point.get(0), point.get(1)), naturals_ls_component(point.get(1), point.get(0))))
}

fn naturals_ls_bar(point: &SR) -> Result<SR> {
    meet(naturals_ls(point)?, point)
}

fn naturals_ls_stage(alpha: Ordinal) -> SR {
    // H, ∅, H, ∅, …; the limit ω is the intersection ∅, then H again
    let odd = match (alpha.omega_coefficient(), alpha.finite_part()) {
        (0, n) => n % 2 == 1,
        (_, j) => j % 2 == 0,
    };
    if odd {
        SR::empty(2)
    } else {
        naturals_top()
    }
}

fn naturals_ls_bar_stage(alpha: Ordinal) -> SR {
    if alpha == Ordinal::ZERO {
        naturals_top()
    } else {
        SR::empty(2)
    }
}

fn pick_relaxations() -> Vec<ScriptedRelaxation> {
    [0i64, 1, 7]
        .into_iter()
        .map(|i| {
            let target = SR::uniform(SymbolicSet::ints([i]), 2);
            let choice = target.clone();
            ScriptedRelaxation {
                name: format!("pick_{i}"),
                choose: Arc::new(move |_, point, proposal| {
                    if *point == naturals_top() {
                        choice.clone()
                    } else {
                        proposal.clone()
                    }
                }),
                expected_outcome: target,
                expected_closure: Ordinal::finite(1),
            }
        })
        .collect()
}

// ---- three players on ℕ ----

fn three_top() -> SR {
    SR::uniform(SymbolicSet::naturals(), 3)
}

/// `p_1 = ℓ + 1` if `k = ℓ + 1`, `p_2 = k` if `k = ℓ`, `p_3 = 0`.
fn three_payoff(player: usize, profile: &[Rational]) -> Rational {
    let (k, l) = (&profile[0], &profile[1]);
    match player {
        0 if *k == l + int(1) => k.clone(),
        1 if k == l => k.clone(),
        _ => int(0),
    }
}

/// Best responses in `H`: `ℓ + 1` for player 1, `k` for player 2 (all of
/// `ℕ` against 0), anything for player 3; each needs a non-empty set of
/// opponent profiles.
fn three_gr(point: &SR) -> Result<SR> {
    let (s1, s2, s3) = (point.get(0), point.get(1), point.get(2));
    let first = if s3.is_empty() { SymbolicSet::Empty } else { s2.shift_naturals_up()? };
    let second = if s3.is_empty() {
        SymbolicSet::Empty
    } else if s1.contains_int(0) {
        SymbolicSet::naturals()
    } else {
        s1.at_least(1)
    };
    let third = if s1.is_empty() || s2.is_empty() { SymbolicSet::Empty } else { SymbolicSet::naturals() };
    meet(SR::new(vec![first, second, third]), point)
}

fn three_stage(alpha: Ordinal) -> SR {
    match (alpha.omega_coefficient(), alpha.finite_part()) {
        (0, n) => {
            let n = n as i64;
            SR::new(vec![
                SymbolicSet::naturals_from((n + 1) / 2),
                SymbolicSet::naturals_from(n / 2),
                SymbolicSet::naturals(),
            ])
        }
        (1, 0) => SR::new(vec![SymbolicSet::Empty, SymbolicSet::Empty, SymbolicSet::naturals()]),
        _ => SR::empty(3),
    }
}

/// All built-in symbolic examples.
pub fn symbolic_examples() -> Vec<SymbolicExample> {
    let w1 = Ordinal::OMEGA.succ();
    vec![
        SymbolicExample {
            name: "bertrand_GRbar",
            description: "Bertrand duopoly on (0,100], global rationalizability: 50 survives one round, then falls",
            operator: "GRbar",
            players: 2,
            kind: Some(StepKind::Rationalizability { global: true }),
            bar: true,
            expected_verdict: Verdict::FixpointAt(Ordinal::finite(2)),
            expected_outcome: Some(SR::empty(2)),
            relaxation_of: None,
            top: bertrand_top,
            step: bertrand_gr,
            stage: bertrand_gr_stage,
            payoff: bertrand_payoff,
            grid: price_grid,
            relaxations: no_relaxations,
        },
        SymbolicExample {
            name: "bertrand_LRbar",
            description: "Bertrand duopoly, local rationalizability: stops at ({50},{50})",
            operator: "LRbar",
            players: 2,
            kind: Some(StepKind::Rationalizability { global: false }),
            bar: true,
            expected_verdict: Verdict::FixpointAt(Ordinal::finite(1)),
            expected_outcome: Some(SR::uniform(SymbolicSet::ints([50]), 2)),
            relaxation_of: None,
            top: bertrand_top,
            step: bertrand_lr,
            stage: bertrand_lr_stage,
            payoff: bertrand_payoff,
            grid: price_grid,
            relaxations: bertrand_relaxations,
        },
        SymbolicExample {
            name: "bertrand_LRbar_relaxation_R",
            description: "Bertrand duopoly, a relaxation of LRbar that first keeps (0,50] and reaches the empty game",
            operator: "R",
            players: 2,
            kind: None,
            bar: true,
            expected_verdict: Verdict::FixpointAt(Ordinal::finite(2)),
            expected_outcome: Some(SR::empty(2)),
            relaxation_of: Some("bertrand_LRbar"),
            top: bertrand_top,
            step: bertrand_r,
            stage: bertrand_r_stage,
            payoff: bertrand_payoff,
            grid: price_grid,
            relaxations: no_relaxations,
        },
        SymbolicExample {
            name: "production_GSbar",
            description: "production with a discontinuity at (100,100), global strict dominance",
            operator: "GSbar",
            players: 2,
            kind: Some(StepKind::Dominance { global: true }),
            bar: true,
            expected_verdict: Verdict::FixpointAt(Ordinal::finite(2)),
            expected_outcome: Some(SR::empty(2)),
            relaxation_of: None,
            top: bertrand_top,
            step: production_gs,
            stage: production_stage,
            payoff: production_payoff,
            grid: price_grid,
            relaxations: no_relaxations,
        },
        SymbolicExample {
            name: "nat_minus_one_GRbar",
            description: "two players on N ∪ {-1}, global rationalizability needs ω+1 rounds",
            operator: "GRbar",
            players: 2,
            kind: Some(StepKind::Rationalizability { global: true }),
            bar: true,
            expected_verdict: Verdict::FixpointAt(w1),
            expected_outcome: Some(SR::empty(2)),
            relaxation_of: None,
            top: nat_minus_top,
            step: nat_minus_gr,
            stage: nat_minus_gr_stage,
            payoff: nat_minus_payoff,
            grid: nat_minus_grid,
            relaxations: no_relaxations,
        },
        SymbolicExample {
            name: "nat_minus_one_LR",
            description: "two players on N ∪ {-1}, local rationalizability without the meet: the game returns after ω",
            operator: "LR",
            players: 2,
            kind: Some(StepKind::Rationalizability { global: false }),
            bar: false,
            expected_verdict: Verdict::CycleDetected { period: w1, first_stage: Ordinal::ZERO },
            expected_outcome: None,
            relaxation_of: None,
            top: nat_minus_top,
            step: nat_minus_lr,
            stage: nat_minus_lr_stage,
            payoff: nat_minus_payoff,
            grid: nat_minus_grid,
            relaxations: no_relaxations,
        },
        SymbolicExample {
            name: "naturals_LS",
            description: "two players on N paid their own number, local dominance without the meet oscillates",
            operator: "LS",
            players: 2,
            kind: Some(StepKind::Dominance { global: false }),
            bar: false,
            expected_verdict: Verdict::CycleDetected { period: Ordinal::finite(2), first_stage: Ordinal::ZERO },
            expected_outcome: None,
            relaxation_of: None,
            top: naturals_top,
            step: naturals_ls,
            stage: naturals_ls_stage,
            payoff: own_number_payoff,
            grid: naturals_grid,
            relaxations: no_relaxations,
        },
        SymbolicExample {
            name: "naturals_LSbar",
            description: "two players on N paid their own number, local dominance: empty outcome, ({i},{i}) for relaxations",
            operator: "LSbar",
            players: 2,
            kind: Some(StepKind::Dominance { global: false }),
            bar: true,
            expected_verdict: Verdict::FixpointAt(Ordinal::finite(1)),
            expected_outcome: Some(SR::empty(2)),
            relaxation_of: None,
            top: naturals_top,
            step: naturals_ls_bar,
            stage: naturals_ls_bar_stage,
            payoff: own_number_payoff,
            grid: naturals_grid,
            relaxations: pick_relaxations,
        },
        SymbolicExample {
            name: "three_player_nat_GRbar",
            description: "three players on N with an indifferent third player, closure ω+1",
            operator: "GRbar",
            players: 3,
            kind: Some(StepKind::Rationalizability { global: true }),
            bar: true,
            expected_verdict: Verdict::FixpointAt(w1),
            expected_outcome: Some(SR::empty(3)),
            relaxation_of: None,
            top: three_top,
            step: three_gr,
            stage: three_stage,
            payoff: three_payoff,
            grid: naturals_grid,
            relaxations: no_relaxations,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example(name: &str) -> SymbolicExample {
        symbolic_examples().into_iter().find(|e| e.name == name).unwrap()
    }

    #[test]
    fn stage_zero_is_the_top() {
        for e in symbolic_examples() {
            assert_eq!(e.stage(Ordinal::ZERO), e.top(), "{}", e.name);
            assert_eq!(e.top().player_count(), e.players);
        }
    }

    #[test]
    fn bertrand_local_responses() {
        let e = example("bertrand_LRbar");
        assert_eq!(e.step(&e.top()).unwrap(), SR::uniform(SymbolicSet::ints([50]), 2));
        assert_eq!(e.step(&low_prices()).unwrap(), SR::empty(2));
        // a rival price at or below the whole interval leaves it intact
        let g = pair(SymbolicSet::interval(int(60), int(80)), SymbolicSet::ints([30, 70]));
        assert_eq!(e.step(&g).unwrap().get(0), &SymbolicSet::interval(int(60), int(80)));
        // a finite set against an interval: 40 is best against rivals above 40
        let g = pair(SymbolicSet::ints([40, 60]), SymbolicSet::interval(int(0), int(100)));
        assert_eq!(e.step(&g).unwrap().get(0), &SymbolicSet::ints([40, 60]));
    }

    #[test]
    fn gap_representatives_cover_every_region() {
        let points = [int(40), int(60)];
        let reps = gap_representatives(points.iter(), &int(0), &int(100));
        assert_eq!(reps, vec![int(40), int(60), int(20), int(50), int(100)]);
        let reps = gap_representatives(points.iter(), &int(50), &int(60));
        assert_eq!(reps, vec![int(60), int(55)]);
    }

    #[test]
    fn nat_minus_payoffs() {
        let p = |i, k: i64, l: i64| nat_minus_payoff(i, &[int(k), int(l)]);
        assert_eq!(p(0, 3, 2), int(3));
        assert_eq!(p(0, 4, 2), int(0));
        assert_eq!(p(0, -1, 2), int(3));
        assert_eq!(p(0, 5, -1), int(5));
        assert_eq!(p(0, -1, -1), int(0));
        assert_eq!(p(1, 2, 2), int(2));
        assert_eq!(p(1, 2, -1), int(2));
        assert_eq!(p(1, -1, 4), int(4));
        assert_eq!(p(1, -1, -1), int(-1));
    }

    #[test]
    fn local_rationalizability_returns_to_the_top() {
        let e = example("nat_minus_one_LR");
        assert_eq!(e.step(&SR::uniform(minus_one(), 2)).unwrap(), nat_minus_top());
    }
}
