//! Symbolic one-dimensional SQM blocks and their numeric realizations.

pub mod numeric;
pub mod superpotential;
pub mod word;

pub use numeric::{GridSpec, GroundStatePair, Level, NumericRealization, RealizationKind};
pub use superpotential::Superpotential;
pub use word::{canonical_blocks, Letter, SqmBlock, Word, WordSum};
