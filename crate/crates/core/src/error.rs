use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix entries mix fields or do not fill {rows}x{cols}")]
    MalformedMatrix { rows: usize, cols: usize },
    #[error("no usable prime found after {0} attempts")]
    PrimesExhausted(usize),
    #[error(
        "invalid k-configuration type {0:?}: degrees must be positive and strictly increasing"
    )]
    InvalidType(Vec<u32>),
    #[error("the zero vector is not a point or line of the projective plane")]
    ZeroCoordinates,
    #[error("a line through a point and itself is not determined")]
    EqualPoints,
    #[error("scheme points must be pairwise distinct")]
    DuplicatePoint,
    #[error("scheme multiplicities must be at least 1")]
    ZeroMultiplicity,
    #[error("no valid configuration after {0} draws")]
    RetryBudget(usize),
    #[error("type {0:?} has no witness curve")]
    NoRecipe(Vec<u32>),
    #[error("type {0} matches no catalogue row")]
    Uncatalogued(String),
    #[error("expected a {expected}-dimensional kernel, found {found}")]
    KernelDimension { expected: usize, found: usize },
    #[error("the fixed-multiplicity formula needs at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("cannot remove a component of total degree {removed} in degree {degree}")]
    DegreeOverflow { removed: u32, degree: u32 },
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
