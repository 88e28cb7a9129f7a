//! Relaxations of contracting operators and order-independence trials.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::engine::{closure_ordinal, iterate_with, trial_seed, IterationTrace, LatticePoint, Operator};
use crate::error::{Error, Result};
use crate::game::Restriction;
use crate::operators::GameOperator;
use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Sampled(u64),
    Scripted(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Sampled(seed) => write!(f, "sampled({seed})"),
            Provenance::Scripted(name) => write!(f, "scripted({name})"),
        }
    }
}

/// Chooses `R(G)` from the stage, `G`, and the base operator's proposal
/// `T(G)`.
pub type Chooser<L> = Box<dyn Fn(Ordinal, &L, &L) -> Result<L> + Send + Sync>;

/// A relaxation `R` of a base operator, defined along its own trace.
pub struct RelaxationScript<'a, L> {
    base: &'a (dyn Operator<L> + Sync),
    provenance: Provenance,
    chooser: Chooser<L>,
}

impl<'a, L: LatticePoint> RelaxationScript<'a, L> {
    pub fn scripted(base: &'a (dyn Operator<L> + Sync), name: impl Into<String>, chooser: Chooser<L>) -> Self {
        RelaxationScript { base, provenance: Provenance::Scripted(name.into()), chooser }
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn base(&self) -> &(dyn Operator<L> + Sync) {
        self.base
    }

    /// `R(G)` at stage `alpha`.
    pub fn apply_at(&self, alpha: Ordinal, point: &L) -> Result<L> {
        let proposal = self.base.apply(point)?;
        (self.chooser)(alpha, point, &proposal)
    }

    pub fn label(&self) -> String {
        format!("{} relaxation of {}", self.provenance, self.base.label())
    }
}

/// Iterates a relaxation from the base operator's top element.
pub fn run_relaxation<L: LatticePoint>(script: &RelaxationScript<'_, L>, cap: Ordinal) -> Result<IterationTrace<L>> {
    iterate_with(script.label(), script.base.top(), cap, false, |alpha, x| script.apply_at(alpha, x))
}

fn require_contracting<L: LatticePoint>(op: &dyn Operator<L>) -> Result<()> {
    if op.is_contracting() {
        Ok(())
    } else {
        Err(Error::NotContracting(op.label()))
    }
}

/// A relaxation of a contracting game operator that, wherever `T` would
/// remove strategies, removes a uniformly random non-empty subset of them.
///
/// The random stream for stage `α` is derived from `seed` and `α`, so
/// `R` is a deterministic function of the stage and its argument.
pub fn sample_relaxation(op: &GameOperator, seed: u64) -> Result<RelaxationScript<'_, Restriction>> {
    require_contracting(op)?;
    let chooser: Chooser<Restriction> = Box::new(move |alpha, current, proposal| {
        let removable = current.difference(proposal)?;
        if removable.is_empty() {
            return Ok(current.clone());
        }
        let stage_key = alpha.omega_coefficient().rotate_left(32) ^ alpha.finite_part();
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, stage_key));
        let chosen: Vec<&(usize, usize)> = loop {
            let pick: Vec<_> = removable.iter().filter(|_| rng.random_bool(0.5)).collect();
            if !pick.is_empty() {
                break pick;
            }
        };
        let mut next = current.clone();
        for &&(player, s) in &chosen {
            next.remove(player, s);
        }
        Ok(next)
    });
    Ok(RelaxationScript { base: op, provenance: Provenance::Sampled(seed), chooser })
}

/// The relaxation that always follows the base operator.
pub fn maximal_relaxation<L: LatticePoint>(op: &(dyn Operator<L> + Sync)) -> RelaxationScript<'_, L> {
    RelaxationScript::scripted(op, "maximal", Box::new(|_, _, proposal: &L| Ok(proposal.clone())))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeSummary {
    pub outcome: Restriction,
    pub count: usize,
    pub closure_ordinals: BTreeSet<Ordinal>,
    /// Reached with closure ordinal at most `ω`.
    pub omega_outcome: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialReport {
    pub operator: String,
    pub trials: usize,
    pub seed: u64,
    /// Distinct outcomes in order of first appearance.
    pub outcomes: Vec<OutcomeSummary>,
    /// Trials that hit the cap without an outcome.
    pub unfinished: usize,
}

impl TrialReport {
    pub fn is_order_independent(&self) -> bool {
        self.outcomes.len() <= 1
    }
}

/// Runs `trials` sampled relaxations of `op`; trial `k` uses
/// `trial_seed(seed, k)`. Trials run in parallel and are collected in
/// trial order.
pub fn order_independence_trial(op: &GameOperator, trials: usize, seed: u64, cap: Ordinal) -> Result<TrialReport> {
    require_contracting(op)?;
    let traces: Vec<IterationTrace<Restriction>> = (0..trials as u64)
        .into_par_iter()
        .map(|k| {
            let script = sample_relaxation(op, trial_seed(seed, k))?;
            run_relaxation(&script, cap)
        })
        .collect::<Result<_>>()?;
    let mut outcomes: Vec<OutcomeSummary> = Vec::new();
    let mut unfinished = 0;
    for trace in &traces {
        let (Some(alpha), Some(outcome)) = (closure_ordinal(trace), trace.outcome()) else {
            unfinished += 1;
            continue;
        };
        match outcomes.iter_mut().find(|o| &o.outcome == outcome) {
            Some(summary) => {
                summary.count += 1;
                summary.closure_ordinals.insert(alpha);
                summary.omega_outcome |= alpha <= Ordinal::OMEGA;
            }
            None => outcomes.push(OutcomeSummary {
                outcome: outcome.clone(),
                count: 1,
                closure_ordinals: BTreeSet::from([alpha]),
                omega_outcome: alpha <= Ordinal::OMEGA,
            }),
        }
    }
    Ok(TrialReport { operator: op.label(), trials, seed, outcomes, unfinished })
}
