use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("matrix has rank {actual}, expected {expected}")]
    RankDeficient { expected: usize, actual: usize },
    #[error("not a G2 matrix: {0}")]
    NotInG2(String),
    #[error("invariant violated: {0}")]
    Internal(String),
    #[error("jet window is empty after narrowing")]
    EmptyWindow,
    #[error("order {order} is outside the jet window [{lo}, {hi}]")]
    OrderOutsideWindow { order: i32, lo: i32, hi: i32 },
    #[error("not admissible at {condition}: {detail}")]
    NotAdmissible { condition: String, detail: String },
    #[error("degenerate Tyurin datum: {0}")]
    DegenerateDatum(String),
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("element is not in the span of the degree window: {0}")]
    NotInWindow(String),
    #[error("no solution within degree budget {0}")]
    NoSolution(u32),
    #[error("holomorphy violated at {point}: order {order} coefficient {value}")]
    HolomorphyViolation {
        point: String,
        order: i32,
        value: String,
    },
}

impl Error {
    pub(crate) fn not_admissible(condition: &str, detail: impl Into<String>) -> Self {
        Error::NotAdmissible {
            condition: condition.to_string(),
            detail: detail.into(),
        }
    }
}
