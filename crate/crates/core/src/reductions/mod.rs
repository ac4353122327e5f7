//! Instance builders that map other problems to online bribery.

mod manipulation;
mod partition;
mod qbf;

use thiserror::Error;

use crate::election::Rule;
use crate::obs::{Obs, Variant};

pub use manipulation::{reduce_manipulation, ManipGoal, ManipInstance, WinnerModel};
pub use partition::reduce_partition;
pub use qbf::{reduce_qbf, QbfImage};

/// An online bribery instance together with the problem it belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub obs: Obs,
    pub variant: Variant,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("malformed QBF: {0}")]
    MalformedQbf(String),
    #[error("part {part} does not apply: {reason}")]
    IncompatiblePart { part: u8, reason: String },
    #[error("malformed manipulation instance: {0}")]
    MalformedManipulation(String),
}
