use thiserror::Error;

use crate::geometry::Point;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("curves meet non-transversally near {0}")]
    NonTransverse(Point),
    #[error("point {0} lies on a curve")]
    OnCurve(Point),
    #[error("cannot establish a positive sampling radius at {0}")]
    Degenerate(Point),
    #[error("point {0} is not a transverse intersection of alpha and beta")]
    EndpointNotIntersection(Point),
    #[error("illegal boundary path: {0}")]
    IllegalLoopSpec(String),
    #[error("catenation endpoints do not match")]
    EndpointMismatch,
    #[error("operation not supported on surface {0}")]
    UnsupportedSurface(String),
    #[error("m_x + m_y = {0} is odd")]
    ParityViolation(i64),
    #[error("trace is not normalized: {0}")]
    NotNormalized(String),
    #[error("arc condition violated: {0}")]
    ArcConditionViolated(String),
    #[error("endpoint turn at {0} is degenerate")]
    EndpointNotTransverse(Point),
    #[error("accumulated turning does not close up to a multiple of pi")]
    NonIntegerDegree,
    #[error("recursion did not shrink the crossing word")]
    NonTermination,
    #[error("crossing word is not reduced")]
    NotReduced,
    #[error("inconsistent periodic data: {0}")]
    InconsistentPeriodicity(String),
    #[error("deck translate range too small: nonzero contribution on the shell")]
    TruncationTooSmall,
    #[error("no transverse path from {0} to {1}")]
    PathDegenerate(Point, Point),
    #[error("reconstruction of w at {0} depends on the path")]
    PathDependent(Point),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("generator gave up after {0} attempts")]
    GenerationExhausted(usize),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
