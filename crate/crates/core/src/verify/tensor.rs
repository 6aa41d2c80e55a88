//! Exact zero test for sums of `coeff * clifford (x) sqm` terms.
//!
//! The sum vanishes iff, for every Clifford row `r` and column `c`, the SQM
//! combination `sum_t coeff_t * phase_t[r] * B_t` over the terms with
//! `perm_t[r] = c` is the zero block. Blocks are deduplicated up to a phase
//! first, so the common case reduces to Gaussian-integer cancellation.

use std::collections::HashMap;

use crate::arith::{Gaussian, Phase};
use crate::clifford::MonomialOperator;
use crate::models::GradedOperator;
use crate::sqm::SqmBlock;

#[derive(Clone, Debug, Default)]
pub struct TensorSum {
    terms: Vec<(MonomialOperator, SqmBlock, Gaussian)>,
}

/// Location of the first nonzero entry of a [`TensorSum`].
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub row: usize,
    pub col: usize,
    pub block: SqmBlock,
}

impl std::fmt::Display for Residual {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "clifford entry ({}, {}): {}", self.row, self.col, self.block)
    }
}

/// `s` with `block == s * base`, if any.
pub(crate) fn block_ratio(block: &SqmBlock, base: &SqmBlock) -> Option<Phase> {
    (0..4)
        .map(Phase::new)
        .find(|&p| base.scale_phase(p) == *block)
}

impl TensorSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, clifford: MonomialOperator, sqm: SqmBlock, coeff: Gaussian) {
        if !coeff.is_zero() && !sqm.is_zero() {
            self.terms.push((clifford, sqm, coeff));
        }
    }

    /// Adds `coeff * x y`.
    pub fn push_product(&mut self, x: &GradedOperator, y: &GradedOperator, coeff: Gaussian) {
        self.push(x.clifford.mul_unchecked(&y.clifford), &x.sqm * &y.sqm, coeff);
    }

    pub fn push_operator(&mut self, x: &GradedOperator, coeff: Gaussian) {
        self.push(x.clifford.clone(), x.sqm.clone(), coeff);
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` if the sum is exactly zero, otherwise the first nonzero entry
    /// in row-major order.
    pub fn residual(&self) -> Option<Residual> {
        if self.terms.is_empty() {
            return None;
        }
        let dim = self.terms[0].0.dim();
        assert!(
            self.terms.iter().all(|t| t.0.dim() == dim),
            "tensor sum with mixed Clifford dimensions"
        );

        // distinct blocks up to phase; each term refers to one by id
        let mut blocks: Vec<SqmBlock> = Vec::new();
        let mut folded: Vec<(usize, Gaussian)> = Vec::with_capacity(self.terms.len());
        for (_, b, c) in &self.terms {
            let hit = blocks
                .iter()
                .enumerate()
                .find_map(|(id, base)| block_ratio(b, base).map(|p| (id, p)));
            match hit {
                Some((id, p)) => folded.push((id, c.times_phase(p))),
                None => {
                    blocks.push(b.clone());
                    folded.push((blocks.len() - 1, *c));
                }
            }
        }

        let perms: Vec<&[u32]> = self.terms.iter().map(|t| t.0.perm()).collect();
        let phases: Vec<&[Phase]> = self.terms.iter().map(|t| t.0.phases()).collect();
        let mut memo: HashMap<Vec<Gaussian>, bool> = HashMap::new();
        let mut acc: Vec<(u32, usize, Gaussian)> = Vec::with_capacity(self.terms.len());

        for r in 0..dim {
            acc.clear();
            for t in 0..self.terms.len() {
                let col = perms[t][r];
                let (id, c) = folded[t];
                let v = c.times_phase(phases[t][r]);
                match acc.iter_mut().find(|e| e.0 == col && e.1 == id) {
                    Some(e) => e.2 += v,
                    None => acc.push((col, id, v)),
                }
            }
            if acc.iter().all(|e| e.2.is_zero()) {
                continue;
            }
            // some column did not cancel term by term; test the block combination
            let mut cols: Vec<u32> = acc.iter().filter(|e| !e.2.is_zero()).map(|e| e.0).collect();
            cols.sort_unstable();
            cols.dedup();
            for col in cols {
                let mut coeffs = vec![Gaussian::ZERO; blocks.len()];
                for e in acc.iter().filter(|e| e.0 == col) {
                    coeffs[e.1] += e.2;
                }
                let zero = *memo
                    .entry(coeffs.clone())
                    .or_insert_with(|| combine(&blocks, &coeffs).is_zero());
                if !zero {
                    return Some(Residual {
                        row: r,
                        col: col as usize,
                        block: combine(&blocks, &coeffs),
                    });
                }
            }
        }
        None
    }

    pub fn is_zero(&self) -> bool {
        self.residual().is_none()
    }
}

fn combine(blocks: &[SqmBlock], coeffs: &[Gaussian]) -> SqmBlock {
    blocks
        .iter()
        .zip(coeffs)
        .fold(SqmBlock::zero(), |acc, (b, &c)| &acc + &b.scale(c))
}
