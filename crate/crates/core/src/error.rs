use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ambient (g={g}, d={d}): d must be at least 1")]
    InvalidAmbient { g: i64, d: i64 },
    #[error("ambient mismatch: (g={0}, d={1}) vs (g={2}, d={3})")]
    AmbientMismatch(u32, u32, u32, u32),
    #[error("monomial th^{theta} et^{eta} has degree {got}, top degree is {expected}")]
    DegreeMismatch {
        theta: u32,
        eta: u32,
        got: u32,
        expected: u32,
    },
    #[error("class is not homogeneous")]
    NotHomogeneous,
    #[error("degrees {0} and {1} are not complementary in dimension {2}")]
    NotComplementary(u32, u32, u32),
    #[error("degree {k} out of range 0..={d}")]
    DegreeOutOfRange { k: i64, d: u32 },
    #[error("root count mismatch: {0} vs {1}")]
    RootCountMismatch(usize, usize),
    #[error("outside the domain of {what}: {reason}")]
    Domain { what: &'static str, reason: String },
    #[error("regime mismatch for {what}: {reason}")]
    Regime { what: &'static str, reason: String },
    #[error("{0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
