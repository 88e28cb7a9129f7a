//! Acceptance criteria, one line each. Run with
//! `cargo test -p eliminax --test acceptance`.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use eliminax::engine::{compare_operators, iterate, Comparison, IterationTrace, Operator};
use eliminax::operators::{correlated_best_response_exists, dominated_by_mixed};
use eliminax::relaxation::{order_independence_trial, run_relaxation, sample_relaxation};
use eliminax::symbolic::{
    finite_nonmonotone_witness, find_example, replay, to_symbolic, SymbolicRestriction, SymbolicSet,
    DEFAULT_FINITE_UPTO, DEFAULT_PAST_LIMIT,
};
use eliminax::{
    lp_solve, make_operator, random_corpus, BeliefStructure, Constraint, Domain, FiniteGame, GameOperator, GameShape,
    LinearProgram, LpResult, OperatorName, Ordinal, Rational, Restriction, Sense, Verdict,
};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CAP: Ordinal = Ordinal::omega_times(2);
const CORPUS_SEED: u64 = 0x5EED_0001;
const TRIAL_SEED: u64 = 0x5EED_0002;

type Outcome = Result<(), String>;

fn corpus(count: usize) -> Vec<Arc<FiniteGame>> {
    random_corpus(GameShape::default(), CORPUS_SEED, count).into_iter().map(Arc::new).collect()
}

fn op(name: OperatorName, game: &Arc<FiniteGame>, beliefs: Option<BeliefStructure>) -> GameOperator {
    make_operator(name, game.clone(), beliefs).expect("operator")
}

fn must_coincide(game: &Arc<FiniteGame>, names: &[OperatorName], beliefs: Option<BeliefStructure>) -> Outcome {
    let ops: Vec<GameOperator> = names.iter().map(|&n| op(n, game, beliefs)).collect();
    let refs: Vec<&dyn Operator<Restriction>> = ops.iter().map(|o| o as &dyn Operator<Restriction>).collect();
    match compare_operators(&refs, CAP).map_err(|e| e.to_string())? {
        Comparison::Coincide { verdict: Verdict::FixpointAt(_), .. } => Ok(()),
        Comparison::Coincide { verdict, .. } => Err(format!("{}: no common fixpoint ({verdict})", game.name())),
        Comparison::Diverge { stage, first, second, .. } => {
            Err(format!("{}: {} and {} differ at stage {stage}", game.name(), refs[first].label(), refs[second].label()))
        }
    }
}

fn over_corpus(games: &[Arc<FiniteGame>], check: impl Fn(&Arc<FiniteGame>) -> Outcome + Sync + Send) -> Outcome {
    games.par_iter().map(check).collect::<Vec<_>>().into_iter().collect()
}

fn within(budget: Duration, elapsed: Duration) -> Outcome {
    if elapsed <= budget {
        Ok(())
    } else {
        Err(format!("took {elapsed:.1?}, budget {budget:?}"))
    }
}

fn criterion_1(games: &[Arc<FiniteGame>]) -> Outcome {
    use OperatorName::*;
    over_corpus(games, |g| must_coincide(g, &[GS, GSbar, LSbar, LS], None))
}

fn criterion_2(games: &[Arc<FiniteGame>]) -> Outcome {
    use OperatorName::*;
    over_corpus(games, |g| {
        must_coincide(g, &[GRbar, LRbar, LR], Some(BeliefStructure::Point))?;
        must_coincide(g, &[GRbar, LRbar, LR], Some(BeliefStructure::CorrelatedMixed))
    })
}

fn criterion_3(games: &[Arc<FiniteGame>]) -> Outcome {
    use OperatorName::*;
    over_corpus(games, |g| must_coincide(g, &[MGS, MGSbar, MLSbar, MLS], None))
}

fn single_outcome(games: &[Arc<FiniteGame>], operators: &[(OperatorName, Option<BeliefStructure>)]) -> Outcome {
    over_corpus(games, |g| {
        for &(name, beliefs) in operators {
            let report = order_independence_trial(&op(name, g, beliefs), 20, TRIAL_SEED, CAP).map_err(|e| e.to_string())?;
            if !report.is_order_independent() || report.unfinished > 0 {
                return Err(format!(
                    "{}: {} has {} outcomes, {} unfinished trials",
                    g.name(),
                    report.operator,
                    report.outcomes.len(),
                    report.unfinished
                ));
            }
        }
        Ok(())
    })
}

fn criterion_4(games: &[Arc<FiniteGame>]) -> Outcome {
    use OperatorName::*;
    single_outcome(
        games,
        &[(GSbar, None), (MGSbar, None), (GRbar, Some(BeliefStructure::Point)), (GRbar, Some(BeliefStructure::CorrelatedMixed))],
    )
}

fn criterion_5(games: &[Arc<FiniteGame>]) -> Outcome {
    use OperatorName::*;
    single_outcome(
        games,
        &[(LSbar, None), (LRbar, Some(BeliefStructure::Point)), (LRbar, Some(BeliefStructure::CorrelatedMixed))],
    )
}

fn criterion_6() -> Outcome {
    let two = random_corpus(GameShape::default().with_players(2), CORPUS_SEED ^ 2, 100);
    let three = random_corpus(GameShape::default().with_players(3), CORPUS_SEED ^ 3, 50);
    let games: Vec<Arc<FiniteGame>> = two.into_iter().chain(three).map(Arc::new).collect();
    over_corpus(&games, |g| {
        let trace = iterate(&op(OperatorName::GRbar, g, Some(BeliefStructure::CorrelatedMixed)), CAP).map_err(|e| e.to_string())?;
        for (alpha, r) in &trace.stages {
            for player in 0..g.player_count() {
                for s in 0..g.strategy_count(player) {
                    let nbr = !correlated_best_response_exists(g, r, player, s, Domain::Full).map_err(|e| e.to_string())?;
                    let dominated = dominated_by_mixed(g, r, player, s, Domain::Full).map_err(|e| e.to_string())?;
                    if nbr != dominated {
                        return Err(format!(
                            "{}: stage {alpha}, player {} strategy {}: never best response {nbr}, dominated {dominated}",
                            g.name(),
                            player + 1,
                            g.label(player, s)
                        ));
                    }
                }
            }
        }
        Ok(())
    })
}

fn criterion_7() -> Outcome {
    let expect = |name: &str, stages: &[(&str, &str)], closure: Option<&str>| -> Outcome {
        let example = find_example(name).map_err(|e| e.to_string())?;
        let report = replay(&example, DEFAULT_FINITE_UPTO, DEFAULT_PAST_LIMIT).map_err(|e| e.to_string())?;
        for (alpha, text) in stages {
            let alpha: Ordinal = alpha.parse().map_err(|e: eliminax::Error| e.to_string())?;
            let got = example.stage(alpha).to_string();
            if got != *text {
                return Err(format!("{name} stage {alpha}: {got}, expected {text}"));
            }
        }
        let closure = closure.map(|c| c.parse::<Ordinal>().expect("ordinal"));
        if report.closure() != closure {
            return Err(format!("{name}: closure {:?}, expected {closure:?}", report.closure()));
        }
        Ok(())
    };
    expect("bertrand_GRbar", &[("1", "{50} | {50}"), ("2", "{} | {}")], Some("2"))?;
    expect("bertrand_LRbar", &[("1", "{50} | {50}"), ("2", "{50} | {50}")], Some("1"))?;
    let lr = replay(&find_example("bertrand_LRbar").map_err(|e| e.to_string())?, 8, 2).map_err(|e| e.to_string())?;
    let scripted = lr.relaxations.first().ok_or("bertrand_LRbar has no scripted relaxation")?;
    if scripted.trace.outcome() != Some(&SymbolicRestriction::empty(2)) || !scripted.differs_from_base {
        return Err("Bertrand relaxation should end empty, apart from LRbar".into());
    }
    expect("bertrand_LRbar_relaxation_R", &[("1", "(0,50] | (0,50]"), ("2", "{} | {}")], Some("2"))?;
    expect("production_GSbar", &[("1", "{100} | {100}"), ("2", "{} | {}")], Some("2"))?;
    expect(
        "nat_minus_one_GRbar",
        &[("1", "N'\\{0} | N'"), ("2", "N'\\{0} | N'\\{0}"), ("w", "{-1} | {-1}"), ("w+1", "{} | {}")],
        Some("w+1"),
    )?;
    expect("nat_minus_one_LR", &[("w", "{-1} | {-1}"), ("w+1", "N' | N'")], None)?;
    let cycle = replay(&find_example("naturals_LS").map_err(|e| e.to_string())?, 8, 2).map_err(|e| e.to_string())?;
    if cycle.trace.verdict != (Verdict::CycleDetected { period: Ordinal::finite(2), first_stage: Ordinal::ZERO }) {
        return Err(format!("naturals_LS: {}", cycle.trace.verdict));
    }
    expect("naturals_LS", &[("1", "{} | {}"), ("2", "N | N")], None)?;
    expect("naturals_LSbar", &[("1", "{} | {}")], Some("1"))?;
    let picks = replay(&find_example("naturals_LSbar").map_err(|e| e.to_string())?, 8, 2).map_err(|e| e.to_string())?;
    for relaxation in &picks.relaxations {
        let i: i64 = relaxation.name.trim_start_matches("pick_").parse().map_err(|_| "pick name")?;
        if relaxation.trace.outcome() != Some(&SymbolicRestriction::uniform(SymbolicSet::ints([i]), 2)) {
            return Err(format!("{}: wrong outcome", relaxation.name));
        }
    }
    expect("three_player_nat_GRbar", &[("w", "{} | {} | N"), ("w+1", "{} | {} | {}")], Some("w+1"))?;
    let witness = finite_nonmonotone_witness(3).map_err(|e| e.to_string())?;
    let top = to_symbolic(&witness.game, &witness.image_of_top).to_string();
    let small = to_symbolic(&witness.game, &witness.image_of_smaller).to_string();
    if top != "{3} | {1,2,3}" || small != "{1} | {1}" || !witness.violates_monotonicity().map_err(|e| e.to_string())? {
        return Err(format!("non-monotone fixture: LRbar(H) = {top}, LRbar({{1}},{{1}}) = {small}"));
    }
    Ok(())
}

fn criterion_8(games: &[Arc<FiniteGame>]) -> Outcome {
    use OperatorName::*;
    over_corpus(games, |g| {
        for name in OperatorName::ALL.into_iter().filter(|n| !n.is_bar()) {
            if !(name.is_monotonic_by_theory() || name.is_contracting()) {
                continue;
            }
            let beliefs = [Some(BeliefStructure::Point), Some(BeliefStructure::CorrelatedMixed)];
            let belief_options: &[Option<BeliefStructure>] = if matches!(name, GR | LR) { &beliefs } else { &[None] };
            for &b in belief_options {
                let plain = iterate(&op(name, g, b), CAP).map_err(|e| e.to_string())?;
                let bar = iterate(&op(name.bar(), g, b), CAP).map_err(|e| e.to_string())?;
                if plain.stages != bar.stages || plain.verdict != bar.verdict {
                    return Err(format!("{}: {} and its contracting version differ", g.name(), plain.operator));
                }
            }
        }
        Ok(())
    })
}

fn included_stagewise(base: &IterationTrace<Restriction>, relaxed: &IterationTrace<Restriction>) -> bool {
    relaxed.stages.iter().all(|(alpha, r)| base.stage(*alpha).is_some_and(|b| b.leq(r).unwrap_or(false)))
}

fn criterion_9(games: &[Arc<FiniteGame>]) -> Outcome {
    use OperatorName::*;
    over_corpus(games, |g| {
        for (name, beliefs) in [(GSbar, None), (GRbar, Some(BeliefStructure::Point)), (GRbar, Some(BeliefStructure::CorrelatedMixed))] {
            let base = op(name, g, beliefs);
            let own = iterate(&base, CAP).map_err(|e| e.to_string())?;
            for k in 0..20 {
                let script = sample_relaxation(&base, eliminax::engine::trial_seed(TRIAL_SEED, k)).map_err(|e| e.to_string())?;
                let relaxed = run_relaxation(&script, CAP).map_err(|e| e.to_string())?;
                if !included_stagewise(&own, &relaxed) {
                    return Err(format!("{}: {} trial {k} drops below the operator", g.name(), base.label()));
                }
            }
        }
        Ok(())
    })
}

// ---- LP oracle: enumerate basic solutions ----

fn solve_square(mut rows: Vec<Vec<Rational>>, n: usize) -> Option<Vec<Rational>> {
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let p = rows[col][col].clone();
        for v in rows[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot_row = rows[col].clone();
                for (v, q) in rows[r].iter_mut().zip(&pivot_row) {
                    *v -= &f * q;
                }
            }
        }
    }
    Some(rows.into_iter().map(|r| r[n].clone()).collect())
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << m).filter(|s| s.count_ones() as usize == k).map(|s| (0..m).filter(|i| s >> i & 1 == 1).collect()).collect()
}

/// Vertices of `{x ≥ 0 : constraints}`, each the unique solution of `n`
/// tight rows taken from the constraints and the bounds `x_j = 0`.
fn vertices(n: usize, constraints: &[Constraint]) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = constraints.iter().map(|c| [c.coefficients.clone(), vec![c.rhs.clone()]].concat()).collect();
    for j in 0..n {
        let mut e = vec![Rational::zero(); n + 1];
        e[j] = Rational::from_integer(1.into());
        rows.push(e);
    }
    subsets(rows.len(), n)
        .into_iter()
        .filter_map(|pick| solve_square(pick.iter().map(|&i| rows[i].clone()).collect(), n))
        .filter(|x| x.iter().all(|v| !v.is_negative()) && constraints.iter().all(|c| c.is_satisfied_by(x)))
        .collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Infeasible with no vertex; unbounded when some extreme ray of the
/// recession cone (normalized by `Σ d = 1`) improves the objective;
/// otherwise the best vertex.
fn oracle(lp: &LinearProgram) -> LpResult {
    let n = lp.objective.len();
    let points = vertices(n, &lp.constraints);
    if points.is_empty() {
        return LpResult::Infeasible;
    }
    let mut cone: Vec<Constraint> = lp
        .constraints
        .iter()
        .map(|c| Constraint::new(c.coefficients.clone(), c.sense, Rational::zero()))
        .collect();
    cone.push(Constraint::new(vec![Rational::from_integer(1.into()); n], Sense::Eq, Rational::from_integer(1.into())));
    if vertices(n, &cone).iter().any(|d| dot(&lp.objective, d).is_positive()) {
        return LpResult::Unbounded;
    }
    let best = points.into_iter().max_by_key(|x| dot(&lp.objective, x)).expect("non-empty");
    LpResult::Optimal { value: dot(&lp.objective, &best), witness: best }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.random_range(-5i64..=5);
    let den = loop {
        let d = rng.random_range(-5i64..=5);
        if d != 0 {
            break d;
        }
    };
    Rational::new(num.into(), den.into())
}

fn random_lp(seed: u64) -> LinearProgram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=3);
    let m = rng.random_range(0..=6);
    let constraints = (0..m)
        .map(|_| {
            let sense = [Sense::Le, Sense::Le, Sense::Ge, Sense::Eq][rng.random_range(0..4)];
            Constraint::new((0..n).map(|_| random_rational(&mut rng)).collect(), sense, random_rational(&mut rng))
        })
        .collect();
    LinearProgram::new((0..n).map(|_| random_rational(&mut rng)).collect(), constraints)
}

fn criterion_10() -> Outcome {
    let mut tally = [0usize; 3];
    for seed in 0..500 {
        let lp = random_lp(seed);
        let got = lp_solve(&lp).map_err(|e| format!("lp {seed}: {e}"))?;
        let want = oracle(&lp);
        let agree = match (&got, &want) {
            (LpResult::Optimal { value: a, .. }, LpResult::Optimal { value: b, .. }) => a == b,
            _ => got.status() == want.status(),
        };
        if !agree {
            return Err(format!("lp {seed}: simplex {:?}, oracle {:?}", got.status(), want.status()));
        }
        tally[got.status() as usize] += 1;
    }
    println!("           lp verdicts (optimal, infeasible, unbounded): {tally:?}");
    Ok(())
}

fn main() -> ExitCode {
    let games = corpus(200);
    let trial_games = &games[..100];
    let criteria: Vec<(&str, Option<Duration>, Box<dyn Fn() -> Outcome>)> = vec![
        ("finite coincidence of GS, GSbar, LSbar, LS", Some(Duration::from_secs(10)), Box::new(|| criterion_1(&games))),
        ("finite coincidence of GRbar, LRbar, LR", Some(Duration::from_secs(30)), Box::new(|| criterion_2(&games))),
        ("coincidence of MGS, MGSbar, MLSbar, MLS", Some(Duration::from_secs(60)), Box::new(|| criterion_3(&games))),
        ("order independence of GSbar, MGSbar, GRbar", None, Box::new(|| criterion_4(trial_games))),
        ("order independence of LSbar, LRbar", None, Box::new(|| criterion_5(trial_games))),
        ("never-best-response and mixed dominance agree", None, Box::new(criterion_6)),
        ("infinite example replays", Some(Duration::from_secs(5)), Box::new(criterion_7)),
        ("contracting versions leave stages unchanged", None, Box::new(|| criterion_8(&games))),
        ("relaxation stages contain the operator's", None, Box::new(|| criterion_9(trial_games))),
        ("simplex agrees with vertex enumeration", Some(Duration::from_secs(10)), Box::new(criterion_10)),
    ];
    let mut failures = 0;
    for (k, (title, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let (Ok(()), Some(budget)) = (&outcome, budget) {
            outcome = within(*budget, elapsed);
        }
        match &outcome {
            Ok(()) => println!("criterion {:>2} PASS  {title}  ({elapsed:.2?})", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {title}  ({elapsed:.2?}): {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
