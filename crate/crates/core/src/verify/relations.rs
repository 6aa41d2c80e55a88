//! Exact checks of the defining relations and of centrality.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{Gaussian, Phase};
use crate::grading::{bracket_kind, BracketKind, DegreeVector};
use crate::models::{GradedOperator, Model, ModelSpec};

use super::tensor::TensorSum;

#[derive(Clone, Debug, Serialize)]
pub struct PairResult {
    pub a: DegreeVector,
    pub b: DegreeVector,
    pub bracket: BracketKind,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralityResult {
    pub left: String,
    pub right: String,
    pub bracket: BracketKind,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub model: ModelSpec,
    pub pair_results: Vec<PairResult>,
    pub centrality_results: Vec<CentralityResult>,
    pub overall: bool,
}

impl RelationReport {
    fn new(model: ModelSpec, pair_results: Vec<PairResult>, centrality_results: Vec<CentralityResult>) -> Self {
        let overall = pair_results.iter().all(|p| p.pass) && centrality_results.iter().all(|c| c.pass);
        RelationReport {
            model,
            pair_results,
            centrality_results,
            overall,
        }
    }

    /// Concatenates two reports on the same model.
    pub fn merge(mut self, other: RelationReport) -> RelationReport {
        self.pair_results.extend(other.pair_results);
        self.centrality_results.extend(other.centrality_results);
        self.overall &= other.overall;
        self
    }

    pub fn failures(&self) -> usize {
        self.pair_results.iter().filter(|p| !p.pass).count()
            + self.centrality_results.iter().filter(|c| !c.pass).count()
    }
}

/// `[[x, y]] - expected`, with the bracket chosen by the degrees.
fn bracket_residual(
    x: &GradedOperator,
    y: &GradedOperator,
    kind: BracketKind,
    expected: &[(&GradedOperator, Gaussian)],
) -> Option<String> {
    let mut sum = TensorSum::new();
    sum.push_product(x, y, Gaussian::ONE);
    sum.push_product(y, x, Gaussian::from(kind.reverse_sign()));
    for (op, c) in expected {
        sum.push_operator(op, -*c);
    }
    sum.residual().map(|r| r.to_string())
}

fn kind_of(a: DegreeVector, b: DegreeVector) -> BracketKind {
    bracket_kind(a, b).expect("degrees of one model share a rank")
}

/// `[[Q_a, Q_b]] = 2 delta_ab H + 2 i^{1 - a.b} Z_ab` for every ordered pair,
/// with `Z_ba` taken from the antisymmetry relation and `Z_aa = 0`.
pub fn check_defining_relations(model: &Model) -> RelationReport {
    let m = model.supercharges().len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|k| (0..m).map(move |l| (k, l))).collect();
    let results = pairs
        .par_iter()
        .map(|&(k, l)| {
            let qa = &model.supercharges()[k];
            let qb = &model.supercharges()[l];
            let (a, b) = (qa.degree, qb.degree);
            let kind = kind_of(a, b);
            let residual = match model.central(k, l) {
                None => bracket_residual(qa, qb, kind, &[(model.hamiltonian(), Gaussian::from(2))]),
                Some(z) => {
                    let dot = a.dot(b).expect("same rank") as i64;
                    let c = Gaussian::from(2).times_phase(Phase::i_pow(1 - dot));
                    bracket_residual(qa, qb, kind, &[(z.as_ref(), c)])
                }
            };
            PairResult {
                a,
                b,
                bracket: kind,
                pass: residual.is_none(),
                residual,
            }
        })
        .collect();
    RelationReport::new(model.spec().clone(), results, Vec::new())
}

/// Graded brackets of every central element with every supercharge and every
/// other central element, and commutators with `H`, all exactly zero.
pub fn check_centrality(model: &Model) -> RelationReport {
    let qs = model.supercharges();
    let zs = model.central_elements();
    let h = model.hamiltonian();

    let mut jobs: Vec<(&GradedOperator, &GradedOperator)> = Vec::new();
    jobs.extend(qs.iter().map(|q| (h, q)));
    jobs.extend(zs.iter().map(|z| (h, z)));
    for z in zs {
        jobs.extend(qs.iter().map(|q| (z, q)));
    }
    for (i, z) in zs.iter().enumerate() {
        jobs.extend(zs[i + 1..].iter().map(|w| (z, w)));
    }

    let results = jobs
        .par_iter()
        .map(|&(x, y)| {
            let kind = kind_of(x.degree, y.degree);
            let residual = bracket_residual(x, y, kind, &[]);
            CentralityResult {
                left: x.label(),
                right: y.label(),
                bracket: kind,
                pass: residual.is_none(),
                residual,
            }
        })
        .collect();
    RelationReport::new(model.spec().clone(), Vec::new(), results)
}

/// Both checks in one report.
pub fn verify_model(model: &Model) -> RelationReport {
    check_defining_relations(model).merge(check_centrality(model))
}

/// Graded bracket of two arbitrary operators of the model, tested for zero.
pub fn bracket_vanishes(x: &GradedOperator, y: &GradedOperator) -> bool {
    bracket_residual(x, y, kind_of(x.degree, y.degree), &[]).is_none()
}
