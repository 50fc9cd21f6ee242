use std::fmt;

use thiserror::Error;

/// One violated invariant of a boundary measure, with the offending entry.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureViolation {
    NonPositiveJump { index: usize, jump: f64 },
    AtomOutOfRange { index: usize, t: f64 },
    AtomsNotIncreasing { index: usize },
    NegativeDensity { index: usize, value: f64 },
    KnotOutOfRange { index: usize, t: f64 },
    KnotsNotIncreasing { index: usize },
    NonFinite { what: &'static str, index: usize },
    MassMismatch { mass: f64 },
}

impl fmt::Display for MeasureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonPositiveJump { index, jump } => {
                write!(f, "atoms[{index}]: jump {jump} is not strictly positive")
            }
            Self::AtomOutOfRange { index, t } => {
                write!(f, "atoms[{index}]: position {t} is outside [0, 2π)")
            }
            Self::AtomsNotIncreasing { index } => {
                write!(f, "atoms[{index}]: positions must be strictly increasing")
            }
            Self::NegativeDensity { index, value } => {
                write!(f, "density_knots[{index}]: value {value} is negative")
            }
            Self::KnotOutOfRange { index, t } => {
                write!(f, "density_knots[{index}]: position {t} is outside [0, 2π)")
            }
            Self::KnotsNotIncreasing { index } => {
                write!(f, "density_knots[{index}]: positions must be strictly increasing")
            }
            Self::NonFinite { what, index } => write!(f, "{what}[{index}]: non-finite entry"),
            Self::MassMismatch { mass } => write!(f, "total mass {mass} ≠ 2π"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid boundary measure: {}", join_violations(.0))]
    InvalidMeasure(Vec<MeasureViolation>),

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("accuracy not met: estimated error {estimate:e} exceeds {tolerance:e}")]
    Accuracy { estimate: f64, tolerance: f64 },

    #[error("refinement required: {0}")]
    Refinement(String),

    #[error("inconsistent trace: {0}")]
    Inconsistent(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("malformed measure file: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join_violations(v: &[MeasureViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Self::Domain(msg.into())
    }

    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Self::Parameter(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::InvalidMeasure(_) | Self::Parameter(_) | Self::Json(_) | Self::Io(_) => 2,
            Self::Domain(_) | Self::Refinement(_) | Self::Inconsistent(_) | Self::Range(_) => 3,
            Self::Accuracy { .. } => 4,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
