//! Rank of the span of central elements in each even-degree subspace.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::Gaussian;
use crate::clifford::MonomialOperator;
use crate::grading::DegreeVector;
use crate::models::{GradedOperator, Model, ModelSpec};
use crate::sqm::Word;

use super::exact::{rank, GaussianRational, SparseVector};
use super::tensor::block_ratio;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    /// Shared SQM factor and pairwise orthogonal Clifford classes.
    Proportionality,
    /// Row reduction of the vectorized operators.
    Exact,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubspaceRank {
    pub degree: DegreeVector,
    pub elements: Vec<String>,
    pub rank: usize,
    /// Labels grouped by proportionality.
    pub classes: Vec<Vec<String>>,
    pub method: RankMethod,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub model: ModelSpec,
    /// `2^(n-2)`, the dimension of each even-degree subspace of the algebra.
    pub subspace_dim: usize,
    pub subspaces: Vec<SubspaceRank>,
    pub all_independent: bool,
}

impl RankReport {
    pub fn subspace(&self, degree: DegreeVector) -> Option<&SubspaceRank> {
        self.subspaces.iter().find(|s| s.degree == degree)
    }

    /// Every subspace satisfies `1 <= rank <= min(count, 2^(n-2))`.
    pub fn bounds_hold(&self) -> bool {
        self.subspaces
            .iter()
            .all(|s| s.rank >= 1 && s.rank <= s.elements.len().min(self.subspace_dim))
    }
}

/// Exact trace of `x^dagger y`.
pub(crate) fn hilbert_schmidt(x: &MonomialOperator, y: &MonomialOperator) -> Gaussian {
    let mut acc = Gaussian::ZERO;
    for r in 0..x.dim() {
        let (cx, px) = x.entry(r);
        let (cy, py) = y.entry(r);
        if cx == cy {
            acc += Gaussian::from(px.conj() * py);
        }
    }
    acc
}

/// The full operator `clifford (x) sqm` as a sparse vector indexed by
/// (row, column, word).
pub fn vectorize(op: &GradedOperator) -> SparseVector<(usize, usize, Word)> {
    let mut v = SparseVector::new();
    for r in 0..op.clifford.dim() {
        let (c, p) = op.clifford.entry(r);
        for i in 0..2 {
            for j in 0..2 {
                for (word, coeff) in op.sqm.entry(i, j).terms() {
                    let value = coeff.times_phase(p);
                    if !value.is_zero() {
                        v.insert((2 * r + i, 2 * c + j, word.clone()), GaussianRational::from(value));
                    }
                }
            }
        }
    }
    v
}

/// Rank of a list of operators by exact row reduction.
pub fn exact_rank(ops: &[&GradedOperator]) -> usize {
    let vectors: Vec<_> = ops.iter().map(|op| vectorize(op)).collect();
    rank(&vectors)
}

fn subspace_rank(degree: DegreeVector, ops: &[&GradedOperator]) -> SubspaceRank {
    let elements: Vec<String> = ops.iter().map(|z| z.label()).collect();

    // proportionality classes of the full operators
    let mut reps: Vec<&GradedOperator> = Vec::new();
    let mut classes: Vec<Vec<String>> = Vec::new();
    let shared_sqm = ops.iter().all(|z| block_ratio(&z.sqm, &ops[0].sqm).is_some());
    for z in ops {
        let hit = reps.iter().position(|rep| {
            block_ratio(&z.sqm, &rep.sqm).is_some() && z.clifford.proportional_unchecked(&rep.clifford).is_some()
        });
        match hit {
            Some(i) => classes[i].push(z.label()),
            None => {
                reps.push(z);
                classes.push(vec![z.label()]);
            }
        }
    }

    let orthogonal = reps.iter().enumerate().all(|(i, x)| {
        reps[i + 1..]
            .iter()
            .all(|y| hilbert_schmidt(&x.clifford, &y.clifford).is_zero())
    });
    let (rank, method) = if shared_sqm && orthogonal {
        (reps.len(), RankMethod::Proportionality)
    } else {
        (exact_rank(&reps), RankMethod::Exact)
    };
    SubspaceRank {
        degree,
        elements,
        rank,
        classes,
        method,
    }
}

pub fn central_rank(model: &Model) -> RankReport {
    let mut groups: BTreeMap<DegreeVector, Vec<&GradedOperator>> = BTreeMap::new();
    for z in model.central_elements() {
        groups.entry(z.degree).or_default().push(z);
    }
    let subspaces: Vec<SubspaceRank> = groups
        .into_iter()
        .map(|(degree, ops)| subspace_rank(degree, &ops))
        .collect();
    let all_independent = subspaces.iter().all(|s| s.rank == s.elements.len());
    RankReport {
        model: model.spec().clone(),
        subspace_dim: 1 << (model.spec().n - 2),
        subspaces,
        all_independent,
    }
}
