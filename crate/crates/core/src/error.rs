use thiserror::Error;

/// Domain errors. The display strings are part of the CLI contract: they are
/// printed verbatim on stderr and map to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("K is a stored input, not derived")]
    CanonicalNotDerived,
    #[error("unsupported on abstract surface: {0}")]
    AbstractUnsupported(&'static str),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("invalid chern data: {0}")]
    InvalidChern(String),
    #[error("unrealizable gamma")]
    UnrealizableGamma,
    #[error("empty filtration")]
    EmptyFiltration,
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("wall/datum mismatch: {0} is not a wall of this datum")]
    WallMismatch(String),
    #[error("HN type needs at least two parts")]
    TooFewParts,
    #[error("positivity bounds not guaranteed: {0}")]
    PositivityHypothesis(String),
    #[error("missing base value ({gamma}, {chamber})")]
    MissingBaseValue { gamma: String, chamber: String },
    #[error("bad exponent {0}: expected a nonnegative integer")]
    BadExponent(String),
    #[error("variable mismatch: expected {expected}, got {got}")]
    VariableMismatch { expected: char, got: char },
    #[error("fiber-degree divisible case out of scope")]
    DivisibleFiberDegree,
    #[error("non-rational hypothesis violated: requires g >= 1 and e > 2g-2")]
    RationalSurface,
    #[error("x = {0} is not ample on the slice")]
    NotAmple(String),
    #[error("on-wall: theorem hypothesis violated (x = {0})")]
    OnWall(String),
    #[error("on threshold: x = {0} equals x0 or x1")]
    OnThreshold(String),
    #[error("moduli empty at x = {0}")]
    ModuliEmpty(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
