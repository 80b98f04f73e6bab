use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("invalid matroid: {}", .0.join("; "))]
    InvalidMatroid(Vec<String>),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid monic representation: {}", .0.join("; "))]
    InvalidRep(Vec<String>),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("equality x{0} = x{1} violated at the chosen point")]
    EqualityViolated(usize, usize),
    #[error("inequality x{0} != x{1} violated at the chosen point")]
    InequalityViolated(usize, usize),
    #[error("degenerate evaluation: {0}")]
    Degenerate(String),
    #[error("the chosen point forces the extra collinearity {}", .0.join(" "))]
    ForcedCollinearity(Vec<String>),
    #[error("no generic parameters found after {0} attempts; try a larger field")]
    GenericityExhausted(usize),
    #[error("harmonic check failed at {vertex}: {reason}")]
    NotHarmonic { vertex: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
