use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure exceeded the element cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("composition rule is not associative on sampled triple ({0}, {1}, {2})")]
    NotAssociative(u32, u32, u32),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("action image is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("action does not respect the relations of the acting group")]
    RelationViolation,
    #[error("centers are not isomorphic under the given identification: {0}")]
    CenterMismatch(String),
    #[error("{what} requires |G| <= {limit}, got {order}")]
    TierExceeded { what: &'static str, limit: usize, order: usize },
    #[error("group is not solvable")]
    NotSolvable,
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("character table certification failed: {0}")]
    Certification(String),
    #[error("class function is not a character: {0}")]
    NotACharacter(String),
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PiError {
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("partial basis has {found} members but there are {expected} pi-classes")]
    BasisSize { found: usize, expected: usize },
    #[error("decomposition of a genuine partial character is not a nonnegative integer vector: {0}")]
    BadDecomposition(String),
    #[error("linear system has no solution over the partial basis")]
    NotInSpan,
    #[error("group is not pi-separable for the requested prime set")]
    NotSeparable,
    #[error("invalid prime set: {0}")]
    InvalidPrimeSet(String),
}
