//! Exact linear algebra over the Gaussian rationals `Q(i)`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;

use crate::arith::Gaussian;

type Q = Ratio<i128>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: Q,
    pub im: Q,
}

impl GaussianRational {
    pub fn zero() -> Self {
        GaussianRational {
            re: Q::from_integer(0),
            im: Q::from_integer(0),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re == Q::from_integer(0) && self.im == Q::from_integer(0)
    }

    pub fn inverse(&self) -> Option<Self> {
        let norm = self.re * self.re + self.im * self.im;
        if norm == Q::from_integer(0) {
            return None;
        }
        Some(GaussianRational {
            re: self.re / norm,
            im: -self.im / norm,
        })
    }
}

impl From<Gaussian> for GaussianRational {
    fn from(g: Gaussian) -> Self {
        GaussianRational {
            re: Q::from_integer(g.re as i128),
            im: Q::from_integer(g.im as i128),
        }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// Sparse vector with ordered coordinates; zero entries are never stored.
pub type SparseVector<K> = BTreeMap<K, GaussianRational>;

/// Rank of a set of sparse vectors, by incremental row reduction.
pub fn rank<K: Ord + Clone>(vectors: &[SparseVector<K>]) -> usize {
    // basis keyed by leading coordinate; each basis vector has leading entry 1
    let mut basis: BTreeMap<K, SparseVector<K>> = BTreeMap::new();
    for v in vectors {
        let mut v = v.clone();
        while let Some((lead, coeff)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            match basis.get(&lead) {
                Some(b) => {
                    for (k, bc) in b {
                        let entry = v.entry(k.clone()).or_insert_with(GaussianRational::zero);
                        *entry = &*entry - &(&coeff * bc);
                        if entry.is_zero() {
                            v.remove(k);
                        }
                    }
                }
                None => {
                    let inv = coeff.inverse().expect("stored entries are nonzero");
                    let normalized = v.iter().map(|(k, c)| (k.clone(), c * &inv)).collect();
                    basis.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    basis.len()
}
