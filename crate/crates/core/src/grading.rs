//! Z2^n bookkeeping: degree vectors, parity, the mod-2 inner product, graded
//! bracket kinds, the ordering of parity-1 degrees and the counting formulas
//! of the graded Poincaré algebra.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest grading rank a [`DegreeVector`] can hold.
pub const MAX_DEGREE_BITS: usize = 63;

/// An element `(a_1, ..., a_n)` of Z2^n.
///
/// Component `a_k` is stored at bit `n - k`, so the integer value reads like
/// the rendered bit string `a_1 a_2 ... a_n`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeVector {
    bits: u64,
    n: u8,
}

impl DegreeVector {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DEGREE_BITS);
        DegreeVector { bits: 0, n: n as u8 }
    }

    /// The all-ones vector **1**.
    pub fn ones(n: usize) -> Self {
        assert!(n <= MAX_DEGREE_BITS);
        DegreeVector {
            bits: (1u64 << n) - 1,
            n: n as u8,
        }
    }

    /// Builds a degree from the packed integer whose binary form is `a_1 ... a_n`.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE_BITS {
            return Err(Error::RankOutOfRange {
                n,
                min: 1,
                max: MAX_DEGREE_BITS,
            });
        }
        if bits >> n != 0 {
            return Err(Error::DimensionMismatch {
                left: n,
                right: 64 - bits.leading_zeros() as usize,
            });
        }
        Ok(DegreeVector { bits, n: n as u8 })
    }

    pub fn from_components(components: &[u8]) -> Result<Self> {
        let n = components.len();
        let mut bits = 0u64;
        for &c in components {
            if c > 1 {
                return Err(Error::Config(format!("degree component {c} is not a bit")));
            }
            bits = (bits << 1) | c as u64;
        }
        Self::from_bits(n, bits)
    }

    pub fn rank(self) -> usize {
        self.n as usize
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    /// Component `a_k`, 1-based.
    pub fn component(self, k: usize) -> u8 {
        assert!((1..=self.rank()).contains(&k), "component index {k} out of range");
        ((self.bits >> (self.rank() - k)) & 1) as u8
    }

    pub fn components(self) -> Vec<u8> {
        (1..=self.rank()).map(|k| self.component(k)).collect()
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// p(a) = sum of components mod 2.
    pub fn parity(self) -> u8 {
        (self.weight() & 1) as u8
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    fn check_rank(self, other: DegreeVector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(())
    }

    /// Mod-2 inner product.
    pub fn dot(self, other: DegreeVector) -> Result<u8> {
        self.check_rank(other)?;
        Ok(((self.bits & other.bits).count_ones() & 1) as u8)
    }

    /// Componentwise sum mod 2.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: DegreeVector) -> Result<DegreeVector> {
        self.check_rank(other)?;
        Ok(DegreeVector {
            bits: self.bits ^ other.bits,
            n: self.n,
        })
    }

    /// Value with `a_1` as the least significant bit.
    fn reversed_value(self) -> u64 {
        let mut r = 0u64;
        for k in 1..=self.rank() {
            r |= (self.component(k) as u64) << (k - 1);
        }
        r
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.rank())
    }
}

impl fmt::Debug for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Degree({self})")
    }
}

impl FromStr for DegreeVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let comps = s
            .chars()
            .filter(|c| !matches!(c, ',' | ' ' | '(' | ')'))
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Config(format!("invalid degree string `{s}`"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_components(&comps)
    }
}

impl Serialize for DegreeVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Which bracket realizes the graded bracket of two homogeneous elements.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

impl BracketKind {
    /// `[[X, Y]] = XY + sign * YX`; returns the sign as a multiplier (+1 or -1).
    pub fn reverse_sign(self) -> i64 {
        match self {
            BracketKind::Commutator => -1,
            BracketKind::Anticommutator => 1,
        }
    }

    pub fn symbol(self) -> (&'static str, &'static str) {
        match self {
            BracketKind::Commutator => ("[", "]"),
            BracketKind::Anticommutator => ("{", "}"),
        }
    }
}

/// Anticommutator iff `a . b = 1`.
pub fn bracket_kind(a: DegreeVector, b: DegreeVector) -> Result<BracketKind> {
    Ok(if a.dot(b)? == 1 {
        BracketKind::Anticommutator
    } else {
        BracketKind::Commutator
    })
}

/// Ordering of the parity-1 degrees, which fixes the labels `a_1, ..., a_M`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum DegreeOrdering {
    /// Weight ascending; within a weight, the vector read from `a_n` down to
    /// `a_1` descending. Matches the reference n=4 and n=5 lists.
    #[default]
    Standard,
    /// Standard order reversed.
    Reversed,
    /// Plain lexicographic order on the bit string `a_1 ... a_n`.
    Lexicographic,
    Custom(Vec<DegreeVector>),
}

impl DegreeOrdering {
    pub fn odd_degrees(&self, n: usize) -> Result<Vec<DegreeVector>> {
        let mut degrees = all_odd_degrees(n)?;
        match self {
            DegreeOrdering::Standard => sort_standard(&mut degrees),
            DegreeOrdering::Reversed => {
                sort_standard(&mut degrees);
                degrees.reverse();
            }
            DegreeOrdering::Lexicographic => degrees.sort_by_key(|d| d.bits()),
            DegreeOrdering::Custom(custom) => {
                let mut sorted = custom.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != custom.len() || sorted != degrees {
                    return Err(Error::Config(format!(
                        "custom ordering must list each of the {} parity-1 degrees of Z2^{n} once",
                        degrees.len()
                    )));
                }
                return Ok(custom.clone());
            }
        }
        Ok(degrees)
    }
}

fn all_odd_degrees(n: usize) -> Result<Vec<DegreeVector>> {
    if !(2..=20).contains(&n) {
        return Err(Error::RankOutOfRange { n, min: 2, max: 20 });
    }
    let mut degrees: Vec<_> = (0..1u64 << n)
        .map(|bits| DegreeVector { bits, n: n as u8 })
        .filter(|d| d.parity() == 1)
        .collect();
    degrees.sort();
    Ok(degrees)
}

fn sort_standard(degrees: &mut [DegreeVector]) {
    degrees.sort_by_key(|d| (d.weight(), Reverse(d.reversed_value())));
}

/// All `2^(n-1)` parity-1 degrees in the default order.
pub fn enumerate_odd_degrees(n: usize) -> Result<Vec<DegreeVector>> {
    DegreeOrdering::Standard.odd_degrees(n)
}

/// Counts of the graded Poincaré algebra `g(n)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraCensus {
    pub n: usize,
    pub num_supercharges: u64,
    pub num_central: u64,
    pub dim_central_subspace: u64,
}

pub fn census(n: usize) -> Result<AlgebraCensus> {
    if !(2..=32).contains(&n) {
        return Err(Error::RankOutOfRange { n, min: 2, max: 32 });
    }
    let q = 1u64 << (n - 1);
    Ok(AlgebraCensus {
        n,
        num_supercharges: q,
        num_central: (1u64 << (n - 2)) * (q - 1),
        dim_central_subspace: 1u64 << (n - 2),
    })
}
