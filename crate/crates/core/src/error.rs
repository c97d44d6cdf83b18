use thiserror::Error;

use crate::optimizer::{BsMinBranch, Violation};

/// Errors raised by the capacity model and the design optimizer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// An input is outside its domain (malformed input, not a math failure).
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// No subband bandwidth satisfies the constraint set.
    #[error(
        "infeasible design: bs_max = {bs_max} Hz is below bs_min = {bs_min} Hz ({branch} bound binding)"
    )]
    Infeasible {
        bs_min: f64,
        bs_max: f64,
        branch: BsMinBranch,
    },

    /// A design point breaks one or more of the constraints.
    #[error("design point violates {}", violation_labels(.0))]
    ConstraintViolation(Vec<Violation>),
}

fn violation_labels(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.constraint.label())
        .collect::<Vec<_>>()
        .join(", ")
}

impl ModelError {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        ModelError::InvalidParameter {
            name,
            value,
            reason,
        }
    }
}

pub type Result<T> = std::result::Result<T, ModelError>;

/// Errors raised while reading or validating a power delay profile.
#[derive(Debug, Error)]
pub enum PdpError {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
