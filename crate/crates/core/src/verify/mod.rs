//! Exact verification of the algebra relations, rank and orbit analysis, and
//! numeric degeneracy counting.

pub mod exact;
pub mod orbits;
pub mod rank;
pub mod relations;
pub mod spectrum;
pub mod tensor;

pub use orbits::{count_generated_operators, orbit_decomposition, GeneratedCount, OrbitReport};
pub use rank::{central_rank, exact_rank, RankMethod, RankReport, SubspaceRank};
pub use relations::{
    bracket_vanishes, check_centrality, check_defining_relations, verify_model, CentralityResult, PairResult,
    RelationReport,
};
pub use spectrum::{spectrum, Cluster, SpectrumOptions, SpectrumReport};
pub use tensor::{Residual, TensorSum};
