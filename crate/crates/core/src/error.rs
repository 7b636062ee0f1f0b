use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch in degree {degree}: {detail}")]
    Shape { degree: i32, detail: String },
    #[error("differential does not square to zero in degree {degree}")]
    NotSquareZero { degree: i32 },
    #[error("map is not a chain map (first failure in degree {degree})")]
    NotChainMap { degree: i32 },
    #[error("map is not injective in degree {degree}")]
    NotInjective { degree: i32 },
    #[error("bracket overflows the polynomial bound {bound} (needs {needed})")]
    TruncationExceeded { bound: usize, needed: usize },
    #[error("Laurent window [{pmin}, {pmax}] exceeded by the power t^{power}")]
    WindowExceeded { power: i32, pmin: i32, pmax: i32 },
    #[error("seed is not a cocycle: d(seed) has nonzero coefficient on basis {basis} of degree 2")]
    SeedNotCocycle { basis: usize },
    #[error("level {level} is not concentrated in degree 0")]
    LevelNotDegreeZero { level: usize },
    #[error("presheaf condition fails on chain {chain:?}")]
    PresheafViolation { chain: Vec<usize> },
    #[error("Lie derivative of basis element {basis} (degree {degree}) leaves the sub-DGLA")]
    LieDerivativeEscapesN { degree: i32, basis: usize },
    #[error("filtration not preserved: {detail}")]
    FiltrationNotPreserved { detail: String },
    #[error("instance is not bigraded: {detail}")]
    NotBigraded { detail: String },
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
