use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failure modes shared by every module.
///
/// The variants group into three kinds that the command line maps onto
/// distinct exit codes: validation failures ([`Error::kind`] returns
/// [`ErrorKind::Precondition`]), computations too large to run exactly
/// ([`ErrorKind::Infeasible`]) and rule misuse.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("element `{0}` is not in the ground set")]
    UnknownElement(String),
    #[error("element `{0}` appears more than once in the ground set")]
    DuplicateElement(String),
    #[error("subset over a universe of {found} elements used with a ground set of {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("exact computation infeasible: ground set has {size} elements, limit is {limit}; use the rule engine for an upper bound")]
    Infeasible { size: usize, limit: usize },
    #[error("expansion cap of {limit} sets exceeded: {accumulated} partial sets times {next} child sets")]
    ExpansionCap { limit: usize, accumulated: usize, next: usize },
    #[error("Intersection Rule inapplicable: no child has a cardinality bound and more than one child is random (intersections of unbounded random sets need not be d-bounded for any d)")]
    IntersectionRuleInapplicable,
    #[error("invalid expression: {0}")]
    InvalidExpression(String),
    #[error("member of size {size} in bounded child violates |h| < {k}")]
    CardinalityBoundViolated { size: usize, k: usize },
    #[error("family is not {d}-bounded: cardinality {j} has {count} members, more than {ceiling}")]
    NotBounded { d: u32, j: usize, count: usize, ceiling: u64 },
    #[error("no member of the family has at least {t_min} elements")]
    EmptySelection { t_min: usize },
    #[error("the family is empty")]
    EmptyFamily,
    #[error("parameter out of domain: {0}")]
    Domain(String),
}

/// Coarse classification of [`Error`] values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Precondition,
    Infeasible,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Infeasible { .. } | Error::ExpansionCap { .. } => ErrorKind::Infeasible,
            _ => ErrorKind::Precondition,
        }
    }
}
