//! Phase-monomial operators and the hermitian `2^m`-dimensional
//! representation of `Cl(2m)` built from tensor products of Pauli matrices.
//!
//! Every tensor product of Pauli matrices has exactly one nonzero entry per
//! row, and that entry is a power of `i`. A [`MonomialOperator`] stores the
//! column of that entry and its phase for each row, so products, adjoints and
//! Kronecker products are exact `O(dim)` integer work.

use std::fmt;

use serde::Serialize;

use crate::arith::Phase;
use crate::error::{Error, Result};

/// Square matrix with exactly one nonzero entry, a power of `i`, in every row
/// and column. Row `r` holds `i^phase[r]` in column `perm[r]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialOperator {
    perm: Vec<u32>,
    phase: Vec<Phase>,
}

impl MonomialOperator {
    pub fn identity(dim: usize) -> Self {
        MonomialOperator {
            perm: (0..dim as u32).collect(),
            phase: vec![Phase::ONE; dim],
        }
    }

    pub fn from_parts(perm: Vec<u32>, phase: Vec<Phase>) -> Result<Self> {
        if perm.len() != phase.len() {
            return Err(Error::DimensionMismatch {
                left: perm.len(),
                right: phase.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &c in &perm {
            let c = c as usize;
            if c >= perm.len() || seen[c] {
                return Err(Error::NotAPermutation(format!("column {c} repeated or out of range")));
            }
            seen[c] = true;
        }
        Ok(MonomialOperator { perm, phase })
    }

    /// Pauli matrix `sigma_k`, `k` in 1..=3; `k = 0` gives the 2x2 identity.
    pub fn pauli(k: u8) -> Self {
        let (perm, phase) = match k {
            0 => (vec![0, 1], vec![Phase::ONE, Phase::ONE]),
            1 => (vec![1, 0], vec![Phase::ONE, Phase::ONE]),
            2 => (vec![1, 0], vec![Phase::MINUS_I, Phase::I]),
            3 => (vec![0, 1], vec![Phase::ONE, Phase::MINUS_ONE]),
            _ => panic!("no Pauli matrix sigma_{k}"),
        };
        MonomialOperator { perm, phase }
    }

    /// Tensor product of Pauli matrices, leftmost factor most significant.
    pub fn pauli_string(factors: &[u8]) -> Self {
        factors
            .iter()
            .fold(MonomialOperator::identity(1), |acc, &k| acc.kron(&MonomialOperator::pauli(k)))
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phase
    }

    /// Column and phase of the nonzero entry in `row`.
    pub fn entry(&self, row: usize) -> (usize, Phase) {
        (self.perm[row] as usize, self.phase[row])
    }

    /// `(row, col, phase exponent)` triples, row-major.
    pub fn triples(&self) -> Vec<(usize, usize, u8)> {
        (0..self.dim())
            .map(|r| (r, self.perm[r] as usize, self.phase[r].exponent()))
            .collect()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    /// Exact matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let (perm, phase) = self
            .perm
            .iter()
            .zip(&self.phase)
            .map(|(&k, &p)| (other.perm[k as usize], p * other.phase[k as usize]))
            .unzip();
        MonomialOperator { perm, phase }
    }

    pub fn adjoint(&self) -> Self {
        let mut perm = vec![0u32; self.dim()];
        let mut phase = vec![Phase::ONE; self.dim()];
        for (r, (&c, &p)) in self.perm.iter().zip(&self.phase).enumerate() {
            perm[c as usize] = r as u32;
            phase[c as usize] = p.conj();
        }
        MonomialOperator { perm, phase }
    }

    pub fn scale(&self, s: Phase) -> Self {
        MonomialOperator {
            perm: self.perm.clone(),
            phase: self.phase.iter().map(|&p| p * s).collect(),
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let d = other.dim();
        let mut perm = Vec::with_capacity(self.dim() * d);
        let mut phase = Vec::with_capacity(self.dim() * d);
        for (&c1, &p1) in self.perm.iter().zip(&self.phase) {
            for (&c2, &p2) in other.perm.iter().zip(&other.phase) {
                perm.push(c1 * d as u32 + c2);
                phase.push(p1 * p2);
            }
        }
        MonomialOperator { perm, phase }
    }

    /// Multiplies the single entry in `row` by `by`.
    pub fn with_row_phase_shifted(&self, row: usize, by: Phase) -> Self {
        let mut out = self.clone();
        out.phase[row] = out.phase[row] * by;
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(r, &c)| r == c as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.is_diagonal() && self.phase.iter().all(|&p| p == Phase::ONE)
    }

    /// `Some(s)` if `self == s * identity`.
    pub fn as_scalar(&self) -> Option<Phase> {
        let first = *self.phase.first()?;
        (self.is_diagonal() && self.phase.iter().all(|&p| p == first)).then_some(first)
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    /// Squares to the identity.
    pub fn is_involution(&self) -> bool {
        self.mul_unchecked(self).is_identity()
    }

    /// Returns `s` with `self == s * other`, if such a power of `i` exists.
    pub fn proportional(&self, other: &Self) -> Result<Option<Phase>> {
        self.check_dim(other)?;
        Ok(self.proportional_unchecked(other))
    }

    pub(crate) fn proportional_unchecked(&self, other: &Self) -> Option<Phase> {
        if self.perm != other.perm {
            return None;
        }
        let ratio = |r: usize| self.phase[r] * other.phase[r].conj();
        let s = ratio(0);
        (1..self.dim()).all(|r| ratio(r) == s).then_some(s)
    }

    /// Canonical representative of the ray `{ s * self }`: row 0 has phase 1.
    pub fn normalized(&self) -> (Self, Phase) {
        let s = self.phase[0];
        (self.scale(s.conj()), s)
    }

    /// `self * other == sign * other * self`, with `sign = +1` (commute) or `-1` (anticommute).
    pub fn commutes_with_sign(&self, other: &Self, anticommute: bool) -> Result<bool> {
        self.check_dim(other)?;
        let xy = self.mul_unchecked(other);
        let yx = other.mul_unchecked(self);
        let want = if anticommute { Phase::MINUS_ONE } else { Phase::ONE };
        Ok(xy.proportional_unchecked(&yx) == Some(want))
    }
}

impl fmt::Debug for MonomialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.triples())
            .finish()
    }
}

impl Serialize for MonomialOperator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.triples())
    }
}

fn check_index(j: usize, m: usize) -> Result<()> {
    if j == 0 || j > m {
        return Err(Error::IndexOutOfRange { index: j, max: m });
    }
    Ok(())
}

/// `gamma_j` of `Cl(2m)`: `sigma_1^{(x)m}` for `j = 1`, otherwise
/// `sigma_1^{(x)(m-j+1)} (x) sigma_3 (x) 1^{(x)(j-2)}`.
pub fn gamma(j: usize, m: usize) -> Result<MonomialOperator> {
    check_index(j, m)?;
    let mut factors = Vec::with_capacity(m);
    if j == 1 {
        factors.resize(m, 1);
    } else {
        factors.resize(m - j + 1, 1);
        factors.push(3);
        factors.resize(m, 0);
    }
    Ok(MonomialOperator::pauli_string(&factors))
}

/// `gamma~_j = gamma_{j+m}`: `sigma_1^{(x)(m-j)} (x) sigma_2 (x) 1^{(x)(j-1)}`.
pub fn gamma_tilde(j: usize, m: usize) -> Result<MonomialOperator> {
    check_index(j, m)?;
    let mut factors = vec![1u8; m - j];
    factors.push(2);
    factors.resize(m, 0);
    Ok(MonomialOperator::pauli_string(&factors))
}

/// Generator `j` of `Cl(2m)` in the combined numbering `1..=2m`.
pub fn generator(j: usize, m: usize) -> Result<MonomialOperator> {
    check_index(j, 2 * m)?;
    if j <= m {
        gamma(j, m)
    } else {
        gamma_tilde(j - m, m)
    }
}

/// `Gamma_j = i gamma_j gamma~_j`: diagonal, hermitian, squares to one.
pub fn big_gamma(j: usize, m: usize) -> Result<MonomialOperator> {
    let g = gamma(j, m)?;
    let gt = gamma_tilde(j, m)?;
    Ok(g.mul_unchecked(&gt).scale(Phase::I))
}

/// Symbolic factor of a Clifford word, used to write generator tables.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CliffordFactor {
    Gamma(usize),
    GammaTilde(usize),
    BigGamma(usize),
}

impl CliffordFactor {
    pub fn realize(self, m: usize) -> Result<MonomialOperator> {
        match self {
            CliffordFactor::Gamma(j) => gamma(j, m),
            CliffordFactor::GammaTilde(j) => gamma_tilde(j, m),
            CliffordFactor::BigGamma(j) => big_gamma(j, m),
        }
    }
}

impl fmt::Display for CliffordFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliffordFactor::Gamma(j) => write!(f, "g{j}"),
            CliffordFactor::GammaTilde(j) => write!(f, "g~{j}"),
            CliffordFactor::BigGamma(j) => write!(f, "G{j}"),
        }
    }
}

/// `scalar * f_1 * f_2 * ...` evaluated in `Cl(2m)`.
pub fn clifford_word(scalar: Phase, factors: &[CliffordFactor], m: usize) -> Result<MonomialOperator> {
    let mut acc = MonomialOperator::identity(1 << m).scale(scalar);
    for f in factors {
        acc = acc.mul_unchecked(&f.realize(m)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn anticommutator_is(x: &MonomialOperator, y: &MonomialOperator, twice_identity: bool) -> bool {
        // {x, y} == 2 delta * 1 for monomials: either x = y^{-1} with xy = 1, or xy = -yx.
        let xy = x.mul(y).unwrap();
        let yx = y.mul(x).unwrap();
        if twice_identity {
            xy.is_identity() && yx.is_identity()
        } else {
            xy.proportional(&yx).unwrap() == Some(Phase::MINUS_ONE)
        }
    }

    #[test]
    fn low_rank_gammas() {
        assert_eq!(gamma(1, 2).unwrap(), MonomialOperator::pauli_string(&[1, 1]));
        assert_eq!(gamma(1, 2).unwrap().perm(), &[3, 2, 1, 0]);
        assert_eq!(gamma(2, 2).unwrap(), MonomialOperator::pauli_string(&[1, 3]));
        assert_eq!(gamma_tilde(1, 1).unwrap(), MonomialOperator::pauli(2));
        assert!(gamma(0, 2).is_err());
        assert!(gamma(3, 2).is_err());
        assert!(gamma_tilde(4, 3).is_err());
    }

    #[test]
    fn gamma_and_tilde_share_positions() {
        for m in 1..=6 {
            for j in 1..=m {
                assert_eq!(gamma(j, m).unwrap().perm(), gamma_tilde(j, m).unwrap().perm());
            }
        }
    }

    #[test]
    fn clifford_relations_exact() {
        for m in 1..=6 {
            let gens: Vec<_> = (1..=2 * m).map(|j| generator(j, m).unwrap()).collect();
            for (j, x) in gens.iter().enumerate() {
                assert!(x.is_hermitian(), "generator {j} of Cl({}) not hermitian", 2 * m);
                for (k, y) in gens.iter().enumerate() {
                    assert!(anticommutator_is(x, y, j == k), "m={m} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn distinct_generators_anticommute() {
        let x = gamma(1, 2).unwrap();
        let y = gamma_tilde(2, 2).unwrap();
        assert!(x.commutes_with_sign(&y, true).unwrap());
    }

    #[test]
    fn big_gamma_properties() {
        let minus_sigma3 = MonomialOperator::pauli(3).scale(Phase::MINUS_ONE);
        assert_eq!(big_gamma(1, 1).unwrap(), minus_sigma3);
        for m in 1..=6 {
            for j in 1..=m {
                let b = big_gamma(j, m).unwrap();
                assert!(b.is_diagonal());
                assert!(b.is_hermitian());
                assert!(b.is_involution());
                let g = gamma(j, m).unwrap();
                assert!(g.commutes_with_sign(&b, true).unwrap());
                for k in 1..=m {
                    if k == j {
                        continue;
                    }
                    assert!(gamma(k, m).unwrap().commutes_with_sign(&b, false).unwrap());
                    assert!(big_gamma(k, m).unwrap().commutes_with_sign(&b, false).unwrap());
                }
            }
        }
        let b1 = big_gamma(1, 3).unwrap();
        let b2 = big_gamma(2, 3).unwrap();
        assert!(b1.commutes_with_sign(&b2, false).unwrap());
    }

    #[test]
    fn big_gamma_tensor_form() {
        // i g_1 g~_1 = -1^{(x)(m-1)} (x) s3 ; i g_j g~_j = -1^{(x)(m-j)} (x) s3 (x) s3 (x) 1^{(x)(j-2)}
        for m in 1..=5 {
            let mut f = vec![0u8; m - 1];
            f.push(3);
            let want = MonomialOperator::pauli_string(&f).scale(Phase::MINUS_ONE);
            assert_eq!(big_gamma(1, m).unwrap(), want);
            for j in 2..=m {
                let mut f = vec![0u8; m - j];
                f.extend([3, 3]);
                f.resize(m, 0);
                let want = MonomialOperator::pauli_string(&f).scale(Phase::MINUS_ONE);
                assert_eq!(big_gamma(j, m).unwrap(), want, "m={m} j={j}");
            }
        }
    }

    #[test]
    fn mul_examples() {
        let g1 = gamma(1, 3).unwrap();
        assert!(g1.mul(&g1).unwrap().is_identity());
        let id = MonomialOperator::identity(8);
        assert_eq!(id.mul(&g1).unwrap(), g1);
        // sigma1 sigma2 = i sigma3
        let p = gamma(1, 1).unwrap().mul(&gamma_tilde(1, 1).unwrap()).unwrap();
        assert_eq!(p, MonomialOperator::pauli(3).scale(Phase::I));
        assert!(g1.mul(&MonomialOperator::identity(4)).is_err());
    }

    #[test]
    fn proportional_examples() {
        let x = gamma(2, 3).unwrap();
        assert_eq!(x.proportional(&x).unwrap(), Some(Phase::ONE));
        let g34 = gamma(3, 4).unwrap().mul(&gamma(4, 4).unwrap()).unwrap();
        assert_eq!(g34.scale(Phase::I).proportional(&g34).unwrap(), Some(Phase::I));
        assert_eq!(gamma(1, 3).unwrap().proportional(&gamma(2, 3).unwrap()).unwrap(), None);
        assert!(x.proportional(&MonomialOperator::identity(2)).is_err());
    }

    #[test]
    fn scalar_detection() {
        assert_eq!(MonomialOperator::identity(4).scale(Phase::I).as_scalar(), Some(Phase::I));
        assert_eq!(big_gamma(1, 2).unwrap().as_scalar(), None);
        assert_eq!(gamma(1, 2).unwrap().as_scalar(), None);
    }

    #[test]
    fn from_parts_validates() {
        assert!(MonomialOperator::from_parts(vec![0, 0], vec![Phase::ONE; 2]).is_err());
        assert!(MonomialOperator::from_parts(vec![1, 0], vec![Phase::ONE]).is_err());
        let ok = MonomialOperator::from_parts(vec![1, 0], vec![Phase::ONE; 2]).unwrap();
        assert_eq!(ok, MonomialOperator::pauli(1));
        assert_eq!(ok.triples(), vec![(0, 1, 0), (1, 0, 0)]);
    }
}
