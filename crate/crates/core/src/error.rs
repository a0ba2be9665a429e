use thiserror::Error;

use crate::exact::field::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("product degree {degree} exceeds the degree cap {cap}")]
    DegreeOverflow { degree: u32, cap: u32 },
    #[error("target is not simply connected (H^0 has dimension {h0}, H^1 has dimension {h1})")]
    NotSimplyConnected { h0: usize, h1: usize },
    #[error("stage {stage} needs degree {needed} but the cap is {cap}")]
    CapExceeded { stage: u32, needed: u32, cap: u32 },
    #[error("generator {0} has odd degree")]
    OddGenerator(String),
    #[error("Poincare duality fails: {0}")]
    DualityViolation(String),
    #[error("a square-zero degree-2 class exists")]
    NotInCaseB,
    #[error("malformed ring: {0}")]
    MalformedRing(String),
    #[error("verification failed: {0}")]
    ReductionMismatch(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type Result<T> = std::result::Result<T, Error>;
