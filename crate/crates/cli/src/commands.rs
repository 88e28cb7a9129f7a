//! Command implementations. Each renders into a string so output can be
//! compared byte for byte.

use std::fmt::Write as _;
use std::sync::Arc;

use eliminax::engine::{compare_traces, IterationTrace};
use eliminax::properties::{check_property_b, check_property_c_at, check_property_d_at, check_property_e_at};
use eliminax::relaxation::TrialReport;
use eliminax::symbolic::{
    find_example, finite_nonmonotone_witness, list_examples, to_symbolic, ReplayReport, SymbolicRestriction,
    DEFAULT_FINITE_UPTO, DEFAULT_PAST_LIMIT, FINITE_NONMONOTONE,
};
use eliminax::{
    iterate, make_operator, order_independence_trial, replay, BeliefStructure, Comparison, FiniteGame, GameOperator,
    OperatorName, Ordinal, Restriction, Verdict,
};
use serde_json::json;

use crate::tokens::{Format, Property};
use crate::CliError;

/// Rendered output and whether the command's own check failed.
pub struct Rendered {
    pub text: String,
    pub failed: bool,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Rendered { text, failed: false }
    }
}

fn engine_error(e: eliminax::Error) -> CliError {
    CliError::Input(e.to_string())
}

fn operator(game: &Arc<FiniteGame>, name: OperatorName, beliefs: Option<BeliefStructure>) -> Result<GameOperator, CliError> {
    // beliefs only apply to the rationalizability family
    let beliefs = match (name.is_rationalizability(), beliefs) {
        (true, None) => Some(BeliefStructure::Point),
        (false, _) => None,
        (true, b) => b,
    };
    make_operator(name, game.clone(), beliefs).map_err(engine_error)
}

fn verdict_json(verdict: &Verdict) -> serde_json::Value {
    match verdict {
        Verdict::FixpointAt(a) => json!({"verdict": "fixpoint", "ordinal": a.to_string()}),
        Verdict::CycleDetected { period, first_stage } => {
            json!({"verdict": "cycle", "period": period.to_string(), "first_stage": first_stage.to_string()})
        }
        Verdict::CapReached(a) => json!({"verdict": "cap", "ordinal": a.to_string()}),
    }
}

fn write_trace(out: &mut String, game: &FiniteGame, trace: &IterationTrace<Restriction>, format: Format) {
    for (alpha, r) in &trace.stages {
        match format {
            Format::Text => writeln!(out, "stage {alpha} : {}", game.render_restriction(r)),
            Format::Jsonl => writeln!(
                out,
                "{}",
                json!({"operator": trace.operator, "stage": alpha.to_string(), "restriction": game.render_restriction(r)})
            ),
        }
        .expect("write to string");
    }
    match format {
        Format::Text => writeln!(out, "{}", trace.verdict),
        Format::Jsonl => {
            let mut v = verdict_json(&trace.verdict);
            v["operator"] = json!(trace.operator);
            writeln!(out, "{v}")
        }
    }
    .expect("write to string");
}

pub fn eliminate(
    game: Arc<FiniteGame>,
    name: OperatorName,
    beliefs: Option<BeliefStructure>,
    cap: Ordinal,
    format: Format,
) -> Result<Rendered, CliError> {
    let op = operator(&game, name, beliefs)?;
    let trace = iterate(&op, cap).map_err(engine_error)?;
    let mut out = String::new();
    write_trace(&mut out, &game, &trace, format);
    Ok(Rendered::ok(out))
}

pub fn compare(
    game: Arc<FiniteGame>,
    names: &[OperatorName],
    beliefs: Option<BeliefStructure>,
    cap: Ordinal,
    format: Format,
    expect_coincide: bool,
) -> Result<Rendered, CliError> {
    if names.len() < 2 {
        return Err(CliError::Input("compare needs at least two operators".into()));
    }
    let ops: Vec<GameOperator> = names.iter().map(|&n| operator(&game, n, beliefs)).collect::<Result<_, _>>()?;
    let traces: Vec<IterationTrace<Restriction>> =
        ops.iter().map(|op| iterate(op, cap)).collect::<Result<_, _>>().map_err(engine_error)?;
    let comparison = compare_traces(&traces).map_err(engine_error)?;
    let render = |r: &Option<Restriction>| r.as_ref().map_or("undetermined".to_string(), |r| game.render_restriction(r));
    let mut out = String::new();
    match (&comparison, format) {
        (Comparison::Coincide { through, verdict }, Format::Text) => {
            let kind = match verdict {
                Verdict::FixpointAt(_) => "fixpoint",
                Verdict::CycleDetected { .. } => "cycle",
                Verdict::CapReached(_) => "cap",
            };
            writeln!(out, "coincide through {kind}").unwrap();
            writeln!(out, "{verdict} (stages 0..{through})").unwrap();
        }
        (Comparison::Coincide { through, verdict }, Format::Jsonl) => {
            let mut v = verdict_json(verdict);
            v["coincide"] = json!(true);
            v["through"] = json!(through.to_string());
            writeln!(out, "{v}").unwrap();
        }
        (Comparison::Diverge { stage, first, second, values }, Format::Text) => {
            writeln!(out, "diverge at stage {stage}").unwrap();
            writeln!(out, "  {} : {}", traces[*first].operator, render(&values.0)).unwrap();
            writeln!(out, "  {} : {}", traces[*second].operator, render(&values.1)).unwrap();
        }
        (Comparison::Diverge { stage, first, second, values }, Format::Jsonl) => {
            let v = json!({
                "coincide": false,
                "stage": stage.to_string(),
                "operators": [traces[*first].operator, traces[*second].operator],
                "restrictions": [render(&values.0), render(&values.1)],
            });
            writeln!(out, "{v}").unwrap();
        }
    }
    Ok(Rendered { text: out, failed: expect_coincide && !comparison.coincide() })
}

pub fn order_independence(
    game: Arc<FiniteGame>,
    name: OperatorName,
    beliefs: Option<BeliefStructure>,
    cap: Ordinal,
    trials: usize,
    seed: u64,
    format: Format,
) -> Result<Rendered, CliError> {
    let op = operator(&game, name, beliefs)?;
    let report: TrialReport = order_independence_trial(&op, trials, seed, cap).map_err(engine_error)?;
    let mut out = String::new();
    match format {
        Format::Text => {
            writeln!(out, "{} : {} trials, seed {}", report.operator, report.trials, report.seed).unwrap();
            for o in &report.outcomes {
                let closures: Vec<String> = o.closure_ordinals.iter().map(Ordinal::to_string).collect();
                writeln!(out, "outcome {} : {} trials, closure {}", game.render_restriction(&o.outcome), o.count, closures.join(","))
                    .unwrap();
            }
            if report.unfinished > 0 {
                writeln!(out, "unfinished : {} trials", report.unfinished).unwrap();
            }
            let verdict = if report.is_order_independent() { "order independent" } else { "order dependent" };
            let n = report.outcomes.len();
            writeln!(out, "{verdict}: {n} distinct outcome{}", if n == 1 { "" } else { "s" }).unwrap();
        }
        Format::Jsonl => {
            for o in &report.outcomes {
                let closures: Vec<String> = o.closure_ordinals.iter().map(Ordinal::to_string).collect();
                let v = json!({
                    "operator": report.operator,
                    "outcome": game.render_restriction(&o.outcome),
                    "count": o.count,
                    "closure_ordinals": closures,
                    "omega_outcome": o.omega_outcome,
                });
                writeln!(out, "{v}").unwrap();
            }
            let v = json!({
                "operator": report.operator,
                "trials": report.trials,
                "seed": report.seed,
                "unfinished": report.unfinished,
                "order_independent": report.is_order_independent(),
            });
            writeln!(out, "{v}").unwrap();
        }
    }
    Ok(Rendered::ok(out))
}

fn write_symbolic_stage(out: &mut String, example: &str, alpha: Ordinal, stage: &SymbolicRestriction, format: Format) {
    match format {
        Format::Text => writeln!(out, "stage {alpha} : {stage}"),
        Format::Jsonl => {
            writeln!(out, "{}", json!({"example": example, "stage": alpha.to_string(), "restriction": stage.to_string()}))
        }
    }
    .unwrap();
}

fn write_replay(out: &mut String, report: &ReplayReport, upto: Option<Ordinal>, format: Format) {
    for (alpha, stage) in report.trace.stages.iter().filter(|(a, _)| upto.is_none_or(|u| *a < u)) {
        write_symbolic_stage(out, &report.example, *alpha, stage, format);
    }
    match format {
        Format::Text => {
            match report.trace.verdict {
                Verdict::FixpointAt(a) => writeln!(out, "closure {a}"),
                other => writeln!(out, "no outcome: {other}"),
            }
            .unwrap();
            for r in &report.relaxations {
                let outcome = r.trace.outcome().map_or("none".to_string(), SymbolicRestriction::to_string);
                let relation = if r.differs_from_base { "differs from" } else { "matches" };
                writeln!(out, "relaxation {} : outcome {outcome}, {}, {relation} the operator's", r.name, r.trace.verdict)
                    .unwrap();
            }
            writeln!(out, "validated ({} checks)", report.checks).unwrap();
        }
        Format::Jsonl => {
            let mut v = verdict_json(&report.trace.verdict);
            v["example"] = json!(report.example);
            v["validated"] = json!(true);
            v["checks"] = json!(report.checks);
            writeln!(out, "{v}").unwrap();
        }
    }
}

fn nonmonotone(upto: Option<Ordinal>, format: Format) -> Result<Rendered, CliError> {
    let w = finite_nonmonotone_witness(3).map_err(engine_error)?;
    let mut out = String::new();
    for (alpha, r) in w.trace.stages.iter().filter(|(a, _)| upto.is_none_or(|u| *a < u)) {
        write_symbolic_stage(&mut out, FINITE_NONMONOTONE, *alpha, &to_symbolic(&w.game, r), format);
    }
    let violated = w.violates_monotonicity().map_err(engine_error)?;
    let top = to_symbolic(&w.game, &w.image_of_top);
    let small = to_symbolic(&w.game, &w.smaller);
    let image = to_symbolic(&w.game, &w.image_of_smaller);
    match format {
        Format::Text => {
            writeln!(out, "{}", w.trace.verdict).unwrap();
            writeln!(out, "LRbar(H) = {top}").unwrap();
            writeln!(out, "LRbar({small}) = {image}, not inside LRbar(H)").unwrap();
            writeln!(out, "{}", if violated { "validated" } else { "monotonicity witness failed" }).unwrap();
        }
        Format::Jsonl => {
            let v = json!({
                "example": FINITE_NONMONOTONE,
                "image_of_top": top.to_string(),
                "smaller": small.to_string(),
                "image_of_smaller": image.to_string(),
                "validated": violated,
            });
            writeln!(out, "{v}").unwrap();
        }
    }
    Ok(Rendered { text: out, failed: !violated })
}

pub fn example(name: &str, upto: Option<Ordinal>, format: Format) -> Result<Rendered, CliError> {
    if name == FINITE_NONMONOTONE {
        return nonmonotone(upto, format);
    }
    let example = find_example(name).map_err(engine_error)?;
    let finite = upto.and_then(Ordinal::as_finite).unwrap_or(0).max(DEFAULT_FINITE_UPTO);
    let past = match upto {
        Some(u) if u.omega_coefficient() >= 1 => u.finite_part().max(DEFAULT_PAST_LIMIT),
        _ => DEFAULT_PAST_LIMIT,
    };
    let mut out = String::new();
    match replay(&example, finite, past) {
        Ok(report) => {
            write_replay(&mut out, &report, upto, format);
            Ok(Rendered::ok(out))
        }
        Err(e @ (eliminax::Error::StageMismatch { .. } | eliminax::Error::ReplayCheckFailed { .. })) => {
            writeln!(out, "replay failed: {e}").unwrap();
            Ok(Rendered { text: out, failed: true })
        }
        Err(e) => Err(engine_error(e)),
    }
}

pub fn catalogue(format: Format) -> Rendered {
    let mut out = String::new();
    for e in list_examples() {
        let closure = e.expected_closure.map_or("none".to_string(), |c| c.to_string());
        match format {
            Format::Text => writeln!(out, "{:<30} {:<7} closure {:<5} {}", e.name, e.operator, closure, e.description),
            Format::Jsonl => writeln!(
                out,
                "{}",
                json!({"name": e.name, "operator": e.operator, "closure": closure, "description": e.description})
            ),
        }
        .unwrap();
    }
    Rendered::ok(out)
}

pub fn check(
    game: Arc<FiniteGame>,
    name: OperatorName,
    beliefs: Option<BeliefStructure>,
    cap: Ordinal,
    properties: &[Property],
    format: Format,
) -> Result<Rendered, CliError> {
    let op = operator(&game, name, beliefs)?;
    let trace = iterate(&op, cap).map_err(engine_error)?;
    let mut out = String::new();
    let mut failed = false;
    let mut emit = |property: Property, holds: bool, detail: String| {
        failed |= !holds;
        let word = if holds { "holds" } else { "fails" };
        match format {
            Format::Text => writeln!(out, "property {property:?} {word}{detail}"),
            Format::Jsonl => writeln!(out, "{}", json!({"property": format!("{property:?}"), "holds": holds, "detail": detail.trim()})),
        }
        .unwrap();
    };
    for &property in properties {
        if property == Property::B {
            let b = op.beliefs().unwrap_or(BeliefStructure::Point);
            emit(property, check_property_b(&game, b), format!(" for {b} beliefs"));
            continue;
        }
        let at = match property {
            Property::C => check_property_c_at,
            Property::D => check_property_d_at,
            _ => check_property_e_at,
        };
        let mut failure = None;
        for (alpha, r) in &trace.stages {
            let report = at(&game, r).map_err(engine_error)?;
            let first = report.failures().next().cloned();
            if let Some(w) = first {
                failure = Some(format!(
                    " at stage {alpha}: player {} strategy {} has no suitable dominator",
                    w.player + 1,
                    game.label(w.player, w.dominated)
                ));
                break;
            }
        }
        let holds = failure.is_none();
        emit(property, holds, failure.unwrap_or_else(|| format!(" along the {} trace", trace.operator)));
    }
    Ok(Rendered { text: out, failed })
}
