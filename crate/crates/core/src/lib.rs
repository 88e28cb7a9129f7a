//! Exact iterated elimination of strategies.
//!
//! Finite games with rational payoffs, the rationalizability and
//! strict-dominance operators on their restriction lattices, transfinite
//! iteration with ordinal-indexed traces, relaxations, and closed-form
//! replays of a few infinite games.

pub mod engine;
pub mod error;
pub mod format;
pub mod game;
pub mod lp;
pub mod operators;
pub mod ordinal;
pub mod properties;
pub mod random;
pub mod rational;
pub mod relaxation;
pub mod symbolic;

pub use engine::{
    check_relaxation, closure_ordinal, compare_operators, iterate, Comparison, IterationTrace, LatticePoint, Operator,
    RelaxationReport, Verdict,
};
pub use error::{Error, ParseError, Result};
pub use format::{parse_game, render_game};
pub use game::{restriction_leq, restriction_meet, FiniteGame, JointStrategy, Restriction};
pub use lp::{lp_feasible, lp_solve, Constraint, LinearProgram, LpResult, LpStatus, Sense};
pub use operators::{
    is_best_response, make_operator, strictly_dominates, Belief, BeliefStructure, Domain, GameOperator,
    OperatorName,
};
pub use ordinal::Ordinal;
pub use rational::Rational;
pub use relaxation::{order_independence_trial, run_relaxation, sample_relaxation, RelaxationScript, TrialReport};
pub use random::{random_corpus, random_game, GameShape};
pub use symbolic::{list_examples, replay, SymbolicExample, SymbolicRestriction, SymbolicSet};
