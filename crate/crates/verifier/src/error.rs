use pichar_core::{CharacterError, GroupError, PiError};
use thiserror::Error;

use crate::spec::SpecError;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Pi(#[from] PiError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("bad witness: {0}")]
    BadWitness(String),
}

impl VerifyError {
    /// Whether the error only reflects a resource tier.
    pub fn is_tier(&self) -> bool {
        matches!(
            self,
            VerifyError::Group(GroupError::TierExceeded { .. })
                | VerifyError::Character(CharacterError::Group(GroupError::TierExceeded { .. }))
                | VerifyError::Pi(PiError::Group(GroupError::TierExceeded { .. }))
                | VerifyError::Pi(PiError::Character(CharacterError::Group(GroupError::TierExceeded { .. })))
        )
    }
}
