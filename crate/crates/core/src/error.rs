use thiserror::Error;

use crate::ordinal::Ordinal;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors produced while parsing game files.
///
/// Every variant carries the 1-based line number of the offending line
/// (or of the last line when the problem is something missing).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected `{expected}`")]
    Syntax { line: usize, expected: String },
    #[error("line {line}: duplicate strategy label `{label}` for player {player}")]
    DuplicateLabel { line: usize, player: usize, label: String },
    #[error("line {line}: unknown strategy label `{label}` for player {player}")]
    UnknownLabel { line: usize, player: usize, label: String },
    #[error("line {line}: payoff row for ({profile}) listed twice")]
    DuplicatePayoffRow { line: usize, profile: String },
    #[error("line {line}: missing payoff row for ({profile})")]
    MissingPayoffRow { line: usize, profile: String },
    #[error("line {line}: malformed rational `{text}`")]
    MalformedRational { line: usize, text: String },
    #[error("line {line}: expected {expected} entries, found {found}")]
    PlayerCountMismatch { line: usize, expected: usize, found: usize },
    #[error("line {line}: player {player} has {count} strategies, at most {max} supported")]
    TooManyStrategies { line: usize, player: usize, count: usize, max: usize },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::DuplicateLabel { line, .. }
            | ParseError::UnknownLabel { line, .. }
            | ParseError::DuplicatePayoffRow { line, .. }
            | ParseError::MissingPayoffRow { line, .. }
            | ParseError::MalformedRational { line, .. }
            | ParseError::PlayerCountMismatch { line, .. }
            | ParseError::TooManyStrategies { line, .. } => *line,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("restriction does not belong to this game")]
    GameMismatch,
    #[error("unknown strategy {strategy} for player {player}")]
    UnknownStrategy { player: usize, strategy: usize },
    #[error("belief support lies outside the narrowed opponent set")]
    SupportOutsideNarrowing,
    #[error("invalid belief: {0}")]
    InvalidBelief(String),
    #[error("unsupported beliefs: {0}")]
    UnsupportedBeliefs(String),
    #[error("operator {0} is not contracting")]
    NotContracting(String),
    #[error("linear program dimensions disagree: {0}")]
    DimensionMismatch(String),
    #[error("simplex witness failed exact verification")]
    LpVerificationFailed,
    #[error("unknown token `{token}` for {kind}")]
    UnknownToken { kind: &'static str, token: String },
    #[error("malformed ordinal `{0}`")]
    MalformedOrdinal(String),
    #[error("stage {ordinal}: closed form {expected} disagrees with one step, which gives {computed}")]
    StageMismatch { ordinal: Ordinal, expected: String, computed: String },
    #[error("replay check failed for {example}: {detail}")]
    ReplayCheckFailed { example: String, detail: String },
    #[error("symbolic step is not defined on {0}")]
    UnsupportedShape(String),
}
