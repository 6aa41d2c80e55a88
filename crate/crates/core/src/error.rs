use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("grading rank n={n} out of range [{min}, {max}]")]
    RankOutOfRange { n: usize, min: usize, max: usize },

    #[error("degree {0} has parity 0, expected parity 1")]
    EvenDegree(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("generator {name} is not {property}")]
    GeneratorProperty { name: String, property: &'static str },

    #[error("invalid model selector `{0}`")]
    InvalidSelector(String),

    #[error("family {family} does not support {what}")]
    Unsupported { family: String, what: String },

    #[error("invalid realization: {0}")]
    InvalidRealization(String),

    #[error("invalid superpotential `{expr}`: {reason}")]
    InvalidSuperpotential { expr: String, reason: String },

    #[error("dimension guard: {what} = {value} exceeds limit {limit}")]
    Guard {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
