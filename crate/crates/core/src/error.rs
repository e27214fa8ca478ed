use thiserror::Error;

use crate::circuit::VertexId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("the edge relation contains a cycle")]
    CycleDetected,
    #[error("vertex {vertex} has indegree {actual}, expected {expected}")]
    IndegreeViolation {
        vertex: VertexId,
        expected: u32,
        actual: u32,
    },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("noise budget must be at least {min}, got {got}")]
    InvalidBudget { min: usize, got: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("more than {cap} interesting paths")]
    CapExceeded { cap: usize },
    #[error("simplex pivot fell below tolerance: {0}")]
    NumericalFailure(String),
    #[error("row generation did not converge within {0} iterations")]
    IterationLimitExceeded(usize),
    #[error("time limit of {0:?} exceeded")]
    TimeLimitExceeded(std::time::Duration),
    #[error("no rounding threshold produced a feasible mark set")]
    NoFeasibleCandidate,
    #[error("search space exceeds the cap of {cap} subsets")]
    TooLarge { cap: u64 },
    #[error("input solution is infeasible: {0}")]
    InfeasibleInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
