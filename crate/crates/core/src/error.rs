use thiserror::Error;

use crate::space::Violation;

/// Errors produced by the library.
///
/// Property failures (axiom violations, failed covers, unequal duality rows)
/// are data, not errors; this type covers malformed input and unmet
/// preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier of size {size} exceeds the capacity limit of {cap}")]
    Capacity { size: usize, cap: usize },
    #[error("carrier must have at least one point")]
    EmptyCarrier,
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid point label `{0}`")]
    InvalidLabel(String),
    #[error("unknown point label `{0}`")]
    UnknownLabel(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("convergence violates the axioms ({} violation(s))", .0.len())]
    Invalid(Vec<Violation>),
    #[error("set {0} is not closed")]
    NotClosed(String),
    #[error("operation requires a proper (non-degenerate) filter")]
    DegenerateFilter,
    #[error("family {0} is not a cover")]
    NotCover(String),
    #[error("filter with kernel {kernel} has adherence {adherence} outside the target {target}")]
    Adherence {
        kernel: String,
        adherence: String,
        target: String,
    },
    #[error("filter with kernel {kernel} does not converge to {point}")]
    NotConvergent { kernel: String, point: String },
    #[error("filter collection must be nonempty")]
    EmptyCollection,
    #[error("map is not onto")]
    NotOnto,
    #[error("map is not continuous")]
    NotContinuous,
    #[error("map is not total: no image for `{0}`")]
    NotTotal(String),
    #[error("convergence is not topological")]
    NotTopological,
    #[error("convergence is not *-regular")]
    NotStarRegular,
    #[error("spaces live on different carriers")]
    CarrierMismatch,
    #[error("search universe of {0} elements exceeds 64")]
    SearchTooLarge(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
