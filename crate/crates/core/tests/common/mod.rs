//! Test-side oracles: dense matrices over the Gaussian integers, rank over a
//! prime field containing `i`, and the commutation lemmas of each family.
#![allow(dead_code)]

use std::collections::HashMap;
use std::ops::RangeInclusive;

use z2n_sqm::clifford::MonomialOperator;
use z2n_sqm::grading::DegreeVector;
use z2n_sqm::models::{GradedOperator, Model, ModelFamily, ModelSpec};
use z2n_sqm::sqm::Word;

/// Gaussian integer `(re, im)`.
pub type C = (i64, i64);

pub fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

pub fn cadd(a: C, b: C) -> C {
    (a.0 + b.0, a.1 + b.1)
}

/// `i^k` as a Gaussian integer.
pub fn ipow(k: u8) -> C {
    [(1, 0), (0, 1), (-1, 0), (0, -1)][(k % 4) as usize]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub dim: usize,
    pub data: Vec<C>,
}

impl Dense {
    pub fn zeros(dim: usize) -> Self {
        Dense { dim, data: vec![(0, 0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            m.set(r, r, (1, 0));
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> C {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C) {
        self.data[r * self.dim + c] = v;
    }

    /// Written out entry by entry.
    pub fn pauli(k: u8) -> Self {
        let rows: [[C; 2]; 2] = match k {
            0 => [[(1, 0), (0, 0)], [(0, 0), (1, 0)]],
            1 => [[(0, 0), (1, 0)], [(1, 0), (0, 0)]],
            2 => [[(0, 0), (0, -1)], [(0, 1), (0, 0)]],
            3 => [[(1, 0), (0, 0)], [(0, 0), (-1, 0)]],
            _ => panic!("bad Pauli index"),
        };
        let mut m = Self::zeros(2);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn kron(&self, other: &Dense) -> Dense {
        let dim = self.dim * other.dim;
        let mut m = Self::zeros(dim);
        for r1 in 0..self.dim {
            for c1 in 0..self.dim {
                let a = self.get(r1, c1);
                for r2 in 0..other.dim {
                    for c2 in 0..other.dim {
                        m.set(r1 * other.dim + r2, c1 * other.dim + c2, cmul(a, other.get(r2, c2)));
                    }
                }
            }
        }
        m
    }

    pub fn mul(&self, other: &Dense) -> Dense {
        assert_eq!(self.dim, other.dim);
        let mut m = Self::zeros(self.dim);
        for r in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(r, k);
                if a == (0, 0) {
                    continue;
                }
                for c in 0..self.dim {
                    let v = cadd(m.get(r, c), cmul(a, other.get(k, c)));
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    pub fn scale(&self, s: C) -> Dense {
        Dense {
            dim: self.dim,
            data: self.data.iter().map(|&v| cmul(v, s)).collect(),
        }
    }

    pub fn from_monomial(m: &MonomialOperator) -> Dense {
        let mut d = Self::zeros(m.dim());
        for r in 0..m.dim() {
            let (c, p) = m.entry(r);
            d.set(r, c, ipow(p.exponent()));
        }
        d
    }

    pub fn max_abs_diff(&self, other: &Dense) -> i64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.0 - b.0).abs().max((a.1 - b.1).abs()))
            .max()
            .unwrap_or(0)
    }
}

pub fn pauli_string(factors: &[u8]) -> Dense {
    factors.iter().fold(Dense::identity(1), |acc, &k| acc.kron(&Dense::pauli(k)))
}

/// `gamma_j` (`1 <= j <= m`) and `gamma~_{j-m}` (`m < j <= 2m`) of `Cl(2m)`,
/// built densely from their Pauli strings.
pub fn dense_generator(j: usize, m: usize) -> Dense {
    let mut f = Vec::with_capacity(m);
    if j == 1 {
        f.resize(m, 1u8);
    } else if j <= m {
        f.resize(m - j + 1, 1);
        f.push(3);
        f.resize(m, 0);
    } else {
        let t = j - m;
        f.resize(m - t, 1);
        f.push(2);
        f.resize(m, 0);
    }
    pauli_string(&f)
}

/// `i gamma_j gamma~_j`.
pub fn dense_big_gamma(j: usize, m: usize) -> Dense {
    dense_generator(j, m).mul(&dense_generator(j + m, m)).scale((0, 1))
}

/// Rank over `Z/p` with `i` mapped to a square root of `-1`. Never exceeds
/// the rank over `Q(i)`; the maximum over a few primes equals it unless every
/// prime divides the same minors.
pub fn modular_rank(rows: &[Vec<C>]) -> usize {
    [998_244_353u64, 1_000_000_009, 469_762_049]
        .iter()
        .map(|&p| rank_mod(rows, p))
        .max()
        .unwrap_or(0)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn sqrt_minus_one(p: u64) -> u64 {
    assert_eq!(p % 4, 1);
    (2..p)
        .map(|g| pow_mod(g, (p - 1) / 4, p))
        .find(|&x| x * x % p == p - 1)
        .expect("p = 1 mod 4")
}

fn rank_mod(rows: &[Vec<C>], p: u64) -> usize {
    let i = sqrt_minus_one(p);
    let reduce = |v: i64| v.rem_euclid(p as i64) as u64;
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| row.iter().map(|&(re, im)| (reduce(re) + reduce(im) * i) % p).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][c], p - 2, p);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % p;
                for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dense rows of `clifford (x) sqm`, with columns indexed by
/// (row, column, word) over the whole set.
pub fn vectorize_all(ops: &[&GradedOperator]) -> Vec<Vec<C>> {
    let mut index: HashMap<(usize, usize, Word), usize> = HashMap::new();
    let mut sparse: Vec<Vec<(usize, C)>> = Vec::new();
    for op in ops {
        let mut row = Vec::new();
        let dim = op.clifford.dim();
        let dense = Dense::from_monomial(&op.clifford);
        for r in 0..dim {
            for c in 0..dim {
                let x = dense.get(r, c);
                if x == (0, 0) {
                    continue;
                }
                for i in 0..2 {
                    for j in 0..2 {
                        for (word, coeff) in op.sqm.entry(i, j).terms() {
                            let key = (2 * r + i, 2 * c + j, word.clone());
                            let next = index.len();
                            let col = *index.entry(key).or_insert(next);
                            row.push((col, cmul(x, (coeff.re, coeff.im))));
                        }
                    }
                }
            }
        }
        sparse.push(row);
    }
    let width = index.len();
    sparse
        .into_iter()
        .map(|entries| {
            let mut row = vec![(0, 0); width];
            for (c, v) in entries {
                row[c] = cadd(row[c], v);
            }
            row
        })
        .collect()
}

/// Whether `x` and `y` satisfy `xy = yx` (`anticommute = false`) or `xy = -yx`.
pub fn relation_holds(x: &MonomialOperator, y: &MonomialOperator, anticommute: bool) -> bool {
    x.commutes_with_sign(y, anticommute).expect("same dimension")
}

/// Commutation lemma of the generators of `model`, checked on every pair.
/// Returns the failing pairs.
pub fn lemma_failures(model: &Model) -> Vec<(DegreeVector, DegreeVector)> {
    let degrees = model.degrees();
    let gens = model.generators();
    let n = model.spec().n;
    let mut bad = Vec::new();
    for k in 0..degrees.len() {
        for l in k + 1..degrees.len() {
            let (a, b) = (degrees[k], degrees[l]);
            let dot = a.dot(b).unwrap() == 1;
            let commute = match model.spec().family {
                // cases (i), (ii) commute; (iii), (iv) anticommute
                ModelFamily::Minimal => dot == (a.component(n) == b.component(n)),
                _ => dot,
            };
            if !relation_holds(&gens[k], &gens[l], !commute) {
                bad.push((a, b));
            }
        }
    }
    bad
}

/// The listed ranks of each linear family, then the four table families.
pub fn all_specs(minimal: RangeInclusive<usize>, next: RangeInclusive<usize>, maximal: RangeInclusive<usize>) -> Vec<ModelSpec> {
    let mut specs: Vec<ModelSpec> = Vec::new();
    specs.extend(minimal.map(|n| ModelSpec::minimal(n).unwrap()));
    specs.extend(next.map(|n| ModelSpec::next(n).unwrap()));
    specs.extend(maximal.map(|n| ModelSpec::maximal(n).unwrap()));
    specs.extend(custom_families().into_iter().map(ModelSpec::custom));
    specs
}

pub fn custom_families() -> [ModelFamily; 4] {
    [ModelFamily::N4Cl12, ModelFamily::N4Cl10, ModelFamily::N5Cl28, ModelFamily::N5Cl26]
}

pub fn degree(components: &[u8]) -> DegreeVector {
    DegreeVector::from_components(components).unwrap()
}
