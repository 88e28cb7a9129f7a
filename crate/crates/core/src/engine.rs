//! Ordinal-indexed iteration of operators on complete lattices.
//!
//! `T^0 = ⊤`, `T^{α+1} = T(T^α)`, and at limits the meet of all earlier
//! stages. On a finite lattice a decreasing sequence stabilizes after
//! finitely many steps and a non-decreasing one revisits a point, so
//! finite-game iterations never reach `ω`; the symbolic module supplies
//! the stages of infinite games in closed form.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::game::Restriction;
use crate::operators::GameOperator;
use crate::ordinal::Ordinal;

/// An element of a complete lattice with decidable order and binary meet.
pub trait LatticePoint: Clone + Eq + Hash + fmt::Debug + Send + Sync {
    fn leq(&self, other: &Self) -> Result<bool>;
    fn meet(&self, other: &Self) -> Result<Self>;
    /// Length bound on strictly decreasing chains starting here, when the
    /// lattice below is finite.
    fn height(&self) -> Option<u64>;
}

impl LatticePoint for Restriction {
    fn leq(&self, other: &Self) -> Result<bool> {
        Restriction::leq(self, other)
    }

    fn meet(&self, other: &Self) -> Result<Self> {
        Restriction::meet(self, other)
    }

    fn height(&self) -> Option<u64> {
        Some(self.total_len() as u64)
    }
}

/// A step function on a lattice together with its top element.
pub trait Operator<L: LatticePoint> {
    fn label(&self) -> String;
    fn top(&self) -> L;
    fn apply(&self, point: &L) -> Result<L>;
    fn is_contracting(&self) -> bool;
}

impl Operator<Restriction> for GameOperator {
    fn label(&self) -> String {
        GameOperator::label(self)
    }

    fn top(&self) -> Restriction {
        self.game().full()
    }

    fn apply(&self, point: &Restriction) -> Result<Restriction> {
        self.step(point)
    }

    fn is_contracting(&self) -> bool {
        GameOperator::is_contracting(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `T^{α+1} = T^α` for the least such `α`.
    FixpointAt(Ordinal),
    /// `T^{first_stage + period} = T^{first_stage}` with no fixpoint.
    CycleDetected { period: Ordinal, first_stage: Ordinal },
    /// The next stage would exceed the cap; holds the last computed stage.
    CapReached(Ordinal),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::FixpointAt(a) => write!(f, "fixpoint at {a}"),
            Verdict::CycleDetected { period, first_stage } => {
                write!(f, "cycle of period {period} from stage {first_stage}")
            }
            Verdict::CapReached(a) => write!(f, "cap reached at {a}"),
        }
    }
}

/// Stages `0, 1, …` up to the verdict. With `FixpointAt(α)` the last
/// stored stage is `α`; with a cycle, the last stored stage is the one
/// whose successor revisits `first_stage`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationTrace<L> {
    pub operator: String,
    pub stages: Vec<(Ordinal, L)>,
    pub verdict: Verdict,
}

impl<L: LatticePoint> IterationTrace<L> {
    /// The stage at `alpha`, extending past the stored stages along the
    /// fixpoint or the cycle. `None` past a cap or when `alpha` falls on
    /// a limit the trace does not determine.
    pub fn stage(&self, alpha: Ordinal) -> Option<&L> {
        if let Ok(k) = self.stages.binary_search_by_key(&alpha, |(a, _)| *a) {
            return Some(&self.stages[k].1);
        }
        let (last, _) = self.stages.last()?;
        if alpha < *last {
            return None;
        }
        match self.verdict {
            Verdict::FixpointAt(a) => self.stage(a),
            Verdict::CycleDetected { period, first_stage } => {
                let (Some(first), Some(p), Some(target)) =
                    (first_stage.as_finite(), period.as_finite(), alpha.as_finite())
                else {
                    return None;
                };
                self.stage(Ordinal::finite(first + (target - first) % p))
            }
            Verdict::CapReached(_) => None,
        }
    }

    /// The outcome `T^{α_T}`, if the iteration reached a fixpoint.
    pub fn outcome(&self) -> Option<&L> {
        match self.verdict {
            Verdict::FixpointAt(a) => self.stage(a),
            _ => None,
        }
    }

    pub fn last(&self) -> &L {
        &self.stages.last().expect("traces start at stage 0").1
    }
}

/// `α_T` from a trace, when a fixpoint was reached.
pub fn closure_ordinal<L>(trace: &IterationTrace<L>) -> Option<Ordinal> {
    match trace.verdict {
        Verdict::FixpointAt(a) => Some(a),
        _ => None,
    }
}

/// Safety valve for lattices without a height bound.
pub const MAX_FINITE_STAGES: u64 = 100_000;

/// Iterates a stage-dependent step from `top`. Shared by operators and
/// relaxations, whose choice may depend on the stage.
pub(crate) fn iterate_with<L, F>(label: String, top: L, cap: Ordinal, contracting: bool, mut step: F) -> Result<IterationTrace<L>>
where
    L: LatticePoint,
    F: FnMut(Ordinal, &L) -> Result<L>,
{
    let bound = top.height();
    let mut seen: HashMap<L, Ordinal> = HashMap::new();
    let mut stages = vec![(Ordinal::ZERO, top.clone())];
    seen.insert(top, Ordinal::ZERO);
    let mut decreasing = true;
    let verdict = loop {
        let (alpha, current) = stages.last().expect("non-empty");
        let (alpha, current) = (*alpha, current.clone());
        let next_alpha = alpha.succ();
        let finite = next_alpha.as_finite().expect("finite iteration never reaches a limit");
        if next_alpha > cap || finite > MAX_FINITE_STAGES {
            break Verdict::CapReached(alpha);
        }
        let next = step(alpha, &current)?;
        if contracting && !next.leq(&current)? {
            return Err(Error::NotContracting(label));
        }
        if next == current {
            break Verdict::FixpointAt(alpha);
        }
        decreasing &= next.leq(&current)?;
        if let (true, Some(h)) = (decreasing, bound) {
            assert!(finite <= 1 + h, "decreasing sequence failed to stabilize within {} steps", 1 + h);
        }
        if let Some(&first) = seen.get(&next) {
            let period = first.distance_to(next_alpha).expect("earlier stage");
            break Verdict::CycleDetected { period, first_stage: first };
        }
        seen.insert(next.clone(), next_alpha);
        stages.push((next_alpha, next));
    };
    Ok(IterationTrace { operator: label, stages, verdict })
}

/// Iterates `op` from its top element until a fixpoint, a revisited
/// stage, or `cap`.
pub fn iterate<L: LatticePoint, O: Operator<L> + ?Sized>(op: &O, cap: Ordinal) -> Result<IterationTrace<L>> {
    iterate_with(op.label(), op.top(), cap, op.is_contracting(), |_, x| op.apply(x))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison<L> {
    /// All traces agree at every stage up to `through`, and share the
    /// verdict.
    Coincide { through: Ordinal, verdict: Verdict },
    /// Operators `first` and `second` (indices into the input) disagree at
    /// `stage`.
    Diverge { stage: Ordinal, first: usize, second: usize, values: (Option<L>, Option<L>) },
}

impl<L> Comparison<L> {
    pub fn coincide(&self) -> bool {
        matches!(self, Comparison::Coincide { .. })
    }
}

/// Iterates every operator and reports the first stage where two traces
/// differ.
pub fn compare_operators<L: LatticePoint>(ops: &[&dyn Operator<L>], cap: Ordinal) -> Result<Comparison<L>> {
    let traces = ops.iter().map(|op| iterate(*op, cap)).collect::<Result<Vec<_>>>()?;
    compare_traces(&traces)
}

/// Stage-by-stage comparison of finished traces over the same lattice.
pub fn compare_traces<L: LatticePoint>(traces: &[IterationTrace<L>]) -> Result<Comparison<L>> {
    let Some(reference) = traces.first() else {
        return Ok(Comparison::Coincide { through: Ordinal::ZERO, verdict: Verdict::FixpointAt(Ordinal::ZERO) });
    };
    let mut ordinals: Vec<Ordinal> = traces.iter().flat_map(|t| t.stages.iter().map(|(a, _)| *a)).collect();
    ordinals.sort();
    ordinals.dedup();
    for &alpha in &ordinals {
        let base = reference.stage(alpha);
        for (k, trace) in traces.iter().enumerate().skip(1) {
            let other = trace.stage(alpha);
            if base != other {
                return Ok(Comparison::Diverge {
                    stage: alpha,
                    first: 0,
                    second: k,
                    values: (base.cloned(), other.cloned()),
                });
            }
        }
    }
    let through = *ordinals.last().expect("traces start at stage 0");
    for (k, trace) in traces.iter().enumerate().skip(1) {
        if trace.verdict != reference.verdict {
            // equal stages with different verdicts: disagreement right after
            let stage = through.succ();
            return Ok(Comparison::Diverge {
                stage,
                first: 0,
                second: k,
                values: (reference.stage(stage).cloned(), trace.stage(stage).cloned()),
            });
        }
    }
    Ok(Comparison::Coincide { through, verdict: reference.verdict })
}

/// Which relaxation condition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelaxationCondition {
    /// `T(R^α) ⊆ R(R^α)`.
    NoExtraRemovals,
    /// `T(R^α) ⊆ R^α` implies `R(R^α) ⊆ R^α`.
    ShrinksWhenTShrinks,
    /// A fixpoint of `R` is a fixpoint of `T`.
    StallsOnlyWhereTStalls,
}

impl RelaxationCondition {
    pub fn number(self) -> u8 {
        match self {
            RelaxationCondition::NoExtraRemovals => 1,
            RelaxationCondition::ShrinksWhenTShrinks => 2,
            RelaxationCondition::StallsOnlyWhereTStalls => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelaxationReport {
    Valid { stages_checked: usize },
    Violation { stage: Ordinal, condition: RelaxationCondition },
}

impl RelaxationReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, RelaxationReport::Valid { .. })
    }
}

/// Checks the three relaxation conditions of `trace` against `base` at
/// every recorded stage. `R(R^α)` is read off the trace as `R^{α+1}`; the
/// last stage of a capped trace has no known successor and is skipped.
pub fn check_relaxation<L: LatticePoint, O: Operator<L> + ?Sized>(
    base: &O,
    trace: &IterationTrace<L>,
) -> Result<RelaxationReport> {
    let mut checked = 0;
    for (alpha, current) in &trace.stages {
        let Some(next) = trace.stage(alpha.succ()) else {
            continue;
        };
        let proposal = base.apply(current)?;
        if !proposal.leq(next)? {
            return Ok(RelaxationReport::Violation { stage: *alpha, condition: RelaxationCondition::NoExtraRemovals });
        }
        if proposal.leq(current)? && !next.leq(current)? {
            return Ok(RelaxationReport::Violation {
                stage: *alpha,
                condition: RelaxationCondition::ShrinksWhenTShrinks,
            });
        }
        if next == current && proposal != *current {
            return Ok(RelaxationReport::Violation {
                stage: *alpha,
                condition: RelaxationCondition::StallsOnlyWhereTStalls,
            });
        }
        checked += 1;
    }
    Ok(RelaxationReport::Valid { stages_checked: checked })
}

/// Largest-fixpoint check for monotonic operators: `point` is a fixpoint
/// and none of `candidates` strictly above it is one.
pub fn is_largest_fixpoint_among<L: LatticePoint, O: Operator<L> + ?Sized>(
    op: &O,
    point: &L,
    candidates: &[L],
) -> Result<bool> {
    if op.apply(point)? != *point {
        return Ok(false);
    }
    for c in candidates {
        if point.leq(c)? && c != point && op.apply(c)? == *c {
            return Ok(false);
        }
    }
    Ok(true)
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The splitmix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `k` under master seed `seed`: the `k`-th output of a
/// splitmix64 stream started at `seed`, so any trial can be rerun alone.
pub fn trial_seed(seed: u64, k: u64) -> u64 {
    splitmix64(seed.wrapping_add(k.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}
