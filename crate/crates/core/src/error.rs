use thiserror::Error;

use crate::ratio::{RegionTag, TwoPairCase};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("instance has no agents")]
    EmptyInstance,
    #[error("agent count must be odd, got {0}")]
    EvenAgentCount(usize),
    #[error("at least three agents are required, got {0}")]
    TooFewAgents(usize),
    #[error("position {0} is outside [0, 1)")]
    PositionOutOfRange(f64),
    #[error("invalid arc profile: {0}")]
    InvalidProfile(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("agent index {index} is out of range for {n} agents")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("(s, t) = ({s}, {t}) violates the ordering of case {case}")]
    CaseViolation { case: TwoPairCase, s: f64, t: f64 },
    #[error("profile is not a member of region {0}")]
    RegionViolation(RegionTag),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("{required} evaluations exceed the budget of {cap}")]
    BudgetExceeded { required: u64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
