//! Validation of the closed-form stages against one-step recurrences.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::engine::{check_relaxation, closure_ordinal, iterate, IterationTrace, LatticePoint, RelaxationReport, Verdict};
use crate::error::{Error, Result};
use crate::game::{FiniteGame, Restriction};
use crate::operators::{make_operator, BeliefStructure, OperatorName};
use crate::ordinal::Ordinal;
use crate::rational::{int, ratio, render_rational, Rational};
use crate::relaxation::{run_relaxation, RelaxationScript};

use super::examples::{symbolic_examples, StepKind, SymbolicExample};
use super::set::{SymbolicRestriction, SymbolicSet};

type SR = SymbolicRestriction;

/// Default number of finite stages checked.
pub const DEFAULT_FINITE_UPTO: u64 = 8;
/// Default number of stages checked past `ω`.
pub const DEFAULT_PAST_LIMIT: u64 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelaxationReplay {
    pub name: String,
    pub trace: IterationTrace<SR>,
    pub report: RelaxationReport,
    pub differs_from_base: bool,
}

/// Outcome of a successful replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayReport {
    pub example: String,
    pub operator: String,
    /// Stages `0..=finite_upto`, then `ω, ω+1, …` up to the verdict.
    pub trace: IterationTrace<SR>,
    pub expected_verdict: Verdict,
    pub expected_outcome: Option<SR>,
    /// Number of one-step, limit and membership checks performed.
    pub checks: usize,
    pub relaxations: Vec<RelaxationReplay>,
}

impl ReplayReport {
    pub fn closure(&self) -> Option<Ordinal> {
        closure_ordinal(&self.trace)
    }
}

pub fn find_example(name: &str) -> Result<SymbolicExample> {
    symbolic_examples()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownToken { kind: "example", token: name.to_string() })
}

fn failed(example: &SymbolicExample, detail: impl Into<String>) -> Error {
    Error::ReplayCheckFailed { example: example.name.to_string(), detail: detail.into() }
}

fn check_step(example: &SymbolicExample, alpha: Ordinal) -> Result<()> {
    let computed = example.step(&example.stage(alpha))?;
    let expected = example.stage(alpha.succ());
    if computed != expected {
        return Err(Error::StageMismatch {
            ordinal: alpha.succ(),
            expected: expected.to_string(),
            computed: computed.to_string(),
        });
    }
    Ok(())
}

/// The stage at `ω` must be the intersection of the finite stages: it is
/// contained in each checked finite stage exactly, and every sampled
/// strategy it drops is dropped by some finite stage.
fn check_limit(example: &SymbolicExample, finite_upto: u64) -> Result<usize> {
    let limit = example.stage(Ordinal::OMEGA);
    let mut checks = 0;
    for n in 0..=finite_upto + 1 {
        if !limit.leq(&example.stage(Ordinal::finite(n)))? {
            return Err(failed(example, format!("stage w is not inside stage {n}")));
        }
        checks += 1;
    }
    let grid = example.grid(finite_upto);
    let horizon = grid.iter().filter_map(|x| x.to_integer().try_into().ok()).max().unwrap_or(0u64).saturating_mul(4) + 8;
    let top = example.stage(Ordinal::ZERO);
    for player in 0..example.players {
        for x in grid.iter().filter(|x| top.get(player).contains(x) && !limit.get(player).contains(x)) {
            let dropped = (0..=horizon).any(|n| !example.stage(Ordinal::finite(n)).get(player).contains(x));
            if !dropped {
                return Err(failed(
                    example,
                    format!("{} is missing at w but survives every finite stage up to {horizon}", render_rational(x)),
                ));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

/// Candidate deviations for `x` against the profile `c`, inside `own`.
fn alternatives(x: &Rational, c: &[Rational], grid: &[Rational], own: &SymbolicSet) -> Vec<Rational> {
    let eighth = ratio(1, 8);
    let mut alts: Vec<Rational> = grid.to_vec();
    alts.extend([x.clone(), x + &eighth, x - &eighth, x + int(1), (x + int(100)) / int(2), int(10000)]);
    for v in c {
        alts.extend([v + &eighth, v - &eighth, v + int(1), v / int(2)]);
    }
    if let SymbolicSet::Finite(points) = own {
        alts.extend(points.iter().cloned());
    }
    alts.retain(|a| own.contains(a));
    alts.sort();
    alts.dedup();
    alts
}

/// Joint opponent values from the grid, in player order with a
/// placeholder at `player`.
fn opponent_profiles(point: &SR, player: usize, grid: &[Rational]) -> Vec<Vec<Rational>> {
    let mut profiles = vec![Vec::new()];
    for j in 0..point.player_count() {
        let values: Vec<Rational> = if j == player {
            vec![int(0)]
        } else {
            grid.iter().filter(|v| point.get(j).contains(v)).cloned().collect()
        };
        profiles = profiles
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect();
    }
    profiles
}

/// Membership of `x` in the operator's image, evaluated directly from the
/// payoffs over finite certificate sets.
fn brute_member(example: &SymbolicExample, kind: StepKind, point: &SR, player: usize, x: &Rational, grid: &[Rational]) -> bool {
    let universe = example.top();
    if example.bar && !point.get(player).contains(x) {
        return false;
    }
    let global = match kind {
        StepKind::Rationalizability { global } | StepKind::Dominance { global } => global,
    };
    let domain = if global { universe.get(player) } else { point.get(player) };
    let payoff_at = |s: &Rational, c: &[Rational]| {
        let mut profile = c.to_vec();
        profile[player] = s.clone();
        example.payoff(player, &profile)
    };
    let profiles = opponent_profiles(point, player, grid);
    match kind {
        StepKind::Rationalizability { .. } => profiles.iter().any(|c| {
            let own = payoff_at(x, c);
            alternatives(x, c, grid, domain).iter().all(|a| own >= payoff_at(a, c))
        }),
        StepKind::Dominance { .. } => {
            let mut alts: Vec<Rational> = profiles.iter().flat_map(|c| alternatives(x, c, grid, domain)).collect();
            alts.extend(alternatives(x, &[], grid, domain));
            alts.sort();
            alts.dedup();
            !alts.iter().any(|a| profiles.iter().all(|c| payoff_at(a, c) > payoff_at(x, c)))
        }
    }
}

fn spot_check(example: &SymbolicExample, kind: StepKind, point: &SR, image: &SR, grid: &[Rational]) -> Result<usize> {
    let universe = example.top();
    let mut checks = 0;
    for player in 0..example.players {
        for x in grid.iter().filter(|x| universe.get(player).contains(x)) {
            let brute = brute_member(example, kind, point, player, x, grid);
            if brute != image.get(player).contains(x) {
                return Err(failed(
                    example,
                    format!(
                        "player {} strategy {} at {point}: step says {}, payoffs say {}",
                        player + 1,
                        render_rational(x),
                        image.get(player).contains(x),
                        brute
                    ),
                ));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

fn run_scripted(example: &SymbolicExample, cap: Ordinal) -> Result<(Vec<RelaxationReplay>, usize)> {
    let own = closure_ordinal(&iterate(example, cap)?);
    let base_outcome = example.expected_outcome.clone();
    let mut replays = Vec::new();
    let mut checks = 0;
    for relaxation in example.relaxations() {
        let choose = relaxation.choose.clone();
        let script = RelaxationScript::scripted(example, relaxation.name.clone(), Box::new(move |a, g, t| Ok(choose(a, g, t))));
        let trace = run_relaxation(&script, cap)?;
        let report = check_relaxation(example, &trace)?;
        if !report.is_valid() {
            return Err(failed(example, format!("relaxation {} is invalid: {report:?}", relaxation.name)));
        }
        if closure_ordinal(&trace) != Some(relaxation.expected_closure)
            || trace.outcome() != Some(&relaxation.expected_outcome)
        {
            return Err(failed(example, format!("relaxation {} ended with {}", relaxation.name, trace.verdict)));
        }
        let differs = trace.outcome() != base_outcome.as_ref();
        checks += trace.stages.len();
        replays.push(RelaxationReplay { name: relaxation.name, trace, report, differs_from_base: differs });
    }
    let _ = own;
    Ok((replays, checks))
}

/// Replays `example`: checks the recurrence at `0..=finite_upto`, the
/// limit at `ω`, and the recurrence at `ω + j` for `j < past_limit`;
/// then derives the verdict from the checked stages and compares it, and
/// the outcome, with the expected ones.
pub fn replay(example: &SymbolicExample, finite_upto: u64, past_limit: u64) -> Result<ReplayReport> {
    if finite_upto < 2 {
        return Err(failed(example, "at least two finite stages must be checked"));
    }
    if example.stage(Ordinal::ZERO) != example.top() {
        return Err(failed(example, "stage 0 is not the full game"));
    }
    let mut checks = 1;
    let mut ordinals: Vec<Ordinal> = (0..=finite_upto).map(Ordinal::finite).collect();
    ordinals.extend((0..past_limit).map(|j| Ordinal::new(1, j)));
    for &alpha in &ordinals {
        check_step(example, alpha)?;
        checks += 1;
    }
    checks += check_limit(example, finite_upto)?;

    // Spot checks at every checked stage, against the operator being
    // replayed or, for a relaxation, its base.
    let base = example.relaxation_of.map(find_example).transpose()?;
    let checker = base.as_ref().unwrap_or(example);
    let grid = example.grid(finite_upto);
    let mut spotted = HashSet::new();
    if let Some(kind) = checker.kind {
        for &alpha in &ordinals {
            let point = example.stage(alpha);
            if spotted.insert(point.clone()) {
                checks += spot_check(checker, kind, &point, &checker.step(&point)?, &grid)?;
            }
        }
    }

    // The verdict: the first checked stage that is a fixpoint or whose
    // successor revisits an earlier stage.
    let mut seen: HashMap<SR, Ordinal> = HashMap::new();
    let mut stages = Vec::new();
    let mut verdict = None;
    for &alpha in &ordinals {
        let current = example.stage(alpha);
        seen.entry(current.clone()).or_insert(alpha);
        stages.push((alpha, current.clone()));
        let next = example.stage(alpha.succ());
        if next == current {
            verdict = Some(Verdict::FixpointAt(alpha));
            break;
        }
        if let Some(&first) = seen.get(&next) {
            let period = first.distance_to(alpha.succ()).expect("earlier stage");
            verdict = Some(Verdict::CycleDetected { period, first_stage: first });
            break;
        }
    }
    let Some(verdict) = verdict else {
        return Err(failed(example, "no fixpoint or cycle among the checked stages"));
    };
    let trace = IterationTrace { operator: example.operator.to_string(), stages, verdict };
    if verdict != example.expected_verdict {
        return Err(failed(example, format!("expected {}, replay gives {verdict}", example.expected_verdict)));
    }
    if trace.outcome() != example.expected_outcome.as_ref() {
        return Err(failed(example, "outcome differs from the expected one"));
    }

    if let Some(base) = &base {
        let report = check_relaxation(base, &trace)?;
        if !report.is_valid() {
            return Err(failed(example, format!("not a relaxation of {}: {report:?}", base.name)));
        }
        checks += 1;
    }

    let cap = Ordinal::finite(finite_upto.max(16));
    let (relaxations, relaxation_checks) = run_scripted(example, cap)?;
    checks += relaxation_checks;
    for relaxation in &relaxations {
        if let Some(kind) = example.kind {
            for (_, point) in relaxation.trace.stages.iter().filter(|(_, p)| spotted.insert(p.clone())) {
                checks += spot_check(example, kind, point, &example.step(point)?, &grid)?;
            }
        }
    }

    Ok(ReplayReport {
        example: example.name.to_string(),
        operator: example.operator.to_string(),
        trace,
        expected_verdict: example.expected_verdict,
        expected_outcome: example.expected_outcome.clone(),
        checks,
        relaxations,
    })
}

/// A finite game on which `LRbar` is not monotonic.
#[derive(Debug, Clone)]
pub struct NonMonotoneWitness {
    pub game: Arc<FiniteGame>,
    pub trace: IterationTrace<Restriction>,
    pub image_of_top: Restriction,
    pub smaller: Restriction,
    pub image_of_smaller: Restriction,
}

impl NonMonotoneWitness {
    /// `smaller ⊆ H` yet its image is not inside the image of `H`.
    pub fn violates_monotonicity(&self) -> Result<bool> {
        Ok(self.smaller.leq(&self.game.full())? && !self.image_of_smaller.leq(&self.image_of_top)?)
    }
}

/// Both players choose from `{1, …, n}`; player 1 is paid its own choice
/// and player 2 is always paid 1. Correlated beliefs.
pub fn finite_nonmonotone_witness(n: usize) -> Result<NonMonotoneWitness> {
    let labels: Vec<Vec<String>> = vec![(1..=n).map(|k| k.to_string()).collect(); 2];
    let game = Arc::new(FiniteGame::from_fn("finite_nonmonotone", labels, |j| vec![int(j[0] as i64 + 1), int(1)])?);
    let op = make_operator(OperatorName::LRbar, game.clone(), Some(BeliefStructure::CorrelatedMixed))?;
    let trace = iterate(&op, Ordinal::omega_times(2))?;
    let image_of_top = op.step(&game.full())?;
    let smaller = game.parse_restriction("{1} | {1}")?;
    let image_of_smaller = op.step(&smaller)?;
    Ok(NonMonotoneWitness { game, trace, image_of_top, smaller, image_of_smaller })
}

/// The finite restriction as a symbolic one, reading labels as numbers.
pub fn to_symbolic(game: &FiniteGame, restriction: &Restriction) -> SR {
    SR::new(
        (0..game.player_count())
            .map(|i| {
                SymbolicSet::finite(restriction.strategies(i).map(|s| {
                    crate::rational::parse_rational(game.label(i, s)).expect("numeric labels")
                }))
            })
            .collect(),
    )
}

pub const FINITE_NONMONOTONE: &str = "finite_nonmonotone_LRbar";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub name: String,
    pub description: String,
    pub operator: String,
    pub expected_closure: Option<Ordinal>,
}

/// Every built-in example, including the finite non-monotonicity fixture.
pub fn list_examples() -> Vec<CatalogueEntry> {
    let mut entries: Vec<CatalogueEntry> = symbolic_examples()
        .iter()
        .map(|e| CatalogueEntry {
            name: e.name.to_string(),
            description: e.description.to_string(),
            operator: e.operator.to_string(),
            expected_closure: e.expected_closure(),
        })
        .collect();
    entries.push(CatalogueEntry {
        name: FINITE_NONMONOTONE.to_string(),
        description: "players choose from {1,2,3}, only player 1 cares; LRbar shrinks a restriction outside its image of H"
            .to_string(),
        operator: "LRbar".to_string(),
        expected_closure: Some(Ordinal::finite(1)),
    });
    entries
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(name: &str) -> ReplayReport {
        replay(&find_example(name).unwrap(), DEFAULT_FINITE_UPTO, DEFAULT_PAST_LIMIT).unwrap()
    }

    #[test]
    fn every_example_replays() {
        for e in symbolic_examples() {
            let report = replay(&e, DEFAULT_FINITE_UPTO, DEFAULT_PAST_LIMIT)
                .unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert_eq!(report.trace.verdict, e.expected_verdict);
            assert!(report.checks > 10, "{}", e.name);
        }
    }

    #[test]
    fn longer_replays() {
        for e in symbolic_examples() {
            replay(&e, 14, 4).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        }
    }

    #[test]
    fn nat_minus_one_global_stages() {
        let r = run("nat_minus_one_GRbar");
        let stage = |a: Ordinal| r.trace.stage(a).unwrap().to_string();
        assert_eq!(stage(Ordinal::finite(1)), "N'\\{0} | N'");
        assert_eq!(stage(Ordinal::finite(2)), "N'\\{0} | N'\\{0}");
        assert_eq!(stage(Ordinal::OMEGA), "{-1} | {-1}");
        assert_eq!(stage(Ordinal::OMEGA.succ()), "{} | {}");
        assert_eq!(r.closure(), Some("w+1".parse().unwrap()));
    }

    #[test]
    fn nat_minus_one_local_has_no_outcome() {
        let e = find_example("nat_minus_one_LR").unwrap();
        let r = run("nat_minus_one_LR");
        assert_eq!(r.closure(), None);
        assert_eq!(e.stage(Ordinal::OMEGA.succ()).to_string(), "N' | N'");
        assert_eq!(r.trace.last().to_string(), "{-1} | {-1}");
    }

    #[test]
    fn bertrand_relaxation_differs() {
        let r = run("bertrand_LRbar");
        assert_eq!(r.relaxations.len(), 1);
        assert!(r.relaxations[0].differs_from_base);
        assert_eq!(r.relaxations[0].trace.stages[1].1.to_string(), "(0,50] | (0,50]");
        let standalone = run("bertrand_LRbar_relaxation_R");
        assert_eq!(standalone.trace.outcome(), Some(&SR::empty(2)));
    }

    #[test]
    fn pick_relaxations_end_where_they_start() {
        let r = run("naturals_LSbar");
        assert!(!r.relaxations.is_empty());
        for relaxation in &r.relaxations {
            let outcome = relaxation.trace.outcome().unwrap();
            assert_eq!(outcome.get(0), outcome.get(1));
            assert!(outcome.get(0).is_finite() && !outcome.get(0).is_empty());
        }
    }

    #[test]
    fn a_wrong_closed_form_is_rejected() {
        let mut e = find_example("bertrand_GRbar").unwrap();
        e.stage = |a| if a == Ordinal::ZERO { SR::uniform(SymbolicSet::interval(int(0), int(100)), 2) } else { SR::empty(2) };
        assert!(matches!(replay(&e, 8, 2), Err(Error::StageMismatch { .. })));
    }

    #[test]
    fn a_mistranscribed_step_is_caught_by_spot_checks() {
        let mut e = find_example("production_GSbar").unwrap();
        // claims 99 also survives
        e.step = |g| {
            let keep = SymbolicSet::ints([99, 100]);
            g.meet(&SR::uniform(keep, 2))
        };
        e.stage = |a| match a.as_finite() {
            Some(0) => SR::uniform(SymbolicSet::interval(int(0), int(100)), 2),
            _ => SR::uniform(SymbolicSet::ints([99, 100]), 2),
        };
        e.expected_verdict = Verdict::FixpointAt(Ordinal::finite(1));
        assert!(matches!(replay(&e, 8, 2), Err(Error::ReplayCheckFailed { .. })));
    }

    #[test]
    fn nonmonotone_fixture() {
        let w = finite_nonmonotone_witness(3).unwrap();
        assert_eq!(to_symbolic(&w.game, &w.image_of_top).to_string(), "{3} | {1,2,3}");
        assert_eq!(to_symbolic(&w.game, &w.image_of_smaller).to_string(), "{1} | {1}");
        assert!(w.violates_monotonicity().unwrap());
        assert_eq!(closure_ordinal(&w.trace), Some(Ordinal::finite(1)));
    }

    #[test]
    fn catalogue() {
        let all = list_examples();
        assert_eq!(all.len(), 10);
        let closure = |n: &str| all.iter().find(|e| e.name == n).unwrap().expected_closure;
        assert_eq!(closure("nat_minus_one_GRbar"), Some("w+1".parse().unwrap()));
        assert_eq!(closure("bertrand_GRbar"), Some(Ordinal::finite(2)));
        assert_eq!(closure("naturals_LS"), None);
    }
}
