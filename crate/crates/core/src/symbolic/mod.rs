//! Infinite example games replayed through closed-form stages.

mod examples;
mod replay;
mod set;

pub use examples::{symbolic_examples, ScriptedRelaxation, StepKind, SymbolicExample};
pub use replay::{
    find_example, finite_nonmonotone_witness, list_examples, replay, to_symbolic, CatalogueEntry, NonMonotoneWitness,
    RelaxationReplay, ReplayReport, DEFAULT_FINITE_UPTO, DEFAULT_PAST_LIMIT, FINITE_NONMONOTONE,
};
pub use set::{SymbolicRestriction, SymbolicSet};
