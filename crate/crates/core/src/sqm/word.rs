//! Free noncommutative words over `{A, A†}` and 2x2 matrices of word sums.
//!
//! No rewriting rule is applied: `A A†` and `A† A` are different words. The
//! supersymmetry relations hold here as identities of matrix structure alone,
//! independent of any choice of superpotential.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{Gaussian, Phase};
use crate::clifford::MonomialOperator;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    Adag,
}

impl Letter {
    pub fn dagger(self) -> Letter {
        match self {
            Letter::A => Letter::Adag,
            Letter::Adag => Letter::A,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Reversed with each letter daggered.
    pub fn dagger(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.dagger()).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::A => "A",
                Letter::Adag => "A†",
            })?;
        }
        Ok(())
    }
}

/// Finite formal sum of words with Gaussian-integer coefficients; zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WordSum(BTreeMap<Word, Gaussian>);

impl WordSum {
    pub fn zero() -> Self {
        WordSum(BTreeMap::new())
    }

    pub fn term(word: Word, coeff: Gaussian) -> Self {
        let mut s = WordSum::zero();
        s.add_term(word, coeff);
        s
    }

    pub fn letter(l: Letter) -> Self {
        WordSum::term(Word(vec![l]), Gaussian::ONE)
    }

    pub fn scalar(c: Gaussian) -> Self {
        WordSum::term(Word::empty(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Gaussian)> {
        self.0.iter()
    }

    fn add_term(&mut self, word: Word, coeff: Gaussian) {
        if coeff.is_zero() {
            return;
        }
        match self.0.entry(word) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn scale(&self, c: Gaussian) -> WordSum {
        let mut out = WordSum::zero();
        for (w, &k) in &self.0 {
            out.add_term(w.clone(), k * c);
        }
        out
    }

    pub fn dagger(&self) -> WordSum {
        let mut out = WordSum::zero();
        for (w, &k) in &self.0 {
            out.add_term(w.dagger(), k.conj());
        }
        out
    }

    /// Evaluates the sum under a substitution of scalar values for the letters.
    pub fn evaluate(&self, a: Gaussian, adag: Gaussian) -> Gaussian {
        self.0.iter().fold(Gaussian::ZERO, |acc, (w, &k)| {
            let v = w.0.iter().fold(k, |v, l| {
                v * match l {
                    Letter::A => a,
                    Letter::Adag => adag,
                }
            });
            acc + v
        })
    }
}

impl Add for &WordSum {
    type Output = WordSum;
    fn add(self, rhs: &WordSum) -> WordSum {
        let mut out = self.clone();
        for (w, &k) in &rhs.0 {
            out.add_term(w.clone(), k);
        }
        out
    }
}

impl Neg for &WordSum {
    type Output = WordSum;
    fn neg(self) -> WordSum {
        self.scale(-Gaussian::ONE)
    }
}

impl Mul for &WordSum {
    type Output = WordSum;
    fn mul(self, rhs: &WordSum) -> WordSum {
        let mut out = WordSum::zero();
        for (w1, &k1) in &self.0 {
            for (w2, &k2) in &rhs.0 {
                out.add_term(w1.concat(w2), k1 * k2);
            }
        }
        out
    }
}

impl fmt::Display for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, k)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *k == Gaussian::ONE {
                write!(f, "{w}")?;
            } else {
                write!(f, "{k}·{w}")?;
            }
        }
        Ok(())
    }
}

/// 2x2 matrix of word sums: the symbolic N=1 SQM factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SqmBlock {
    entries: [[WordSum; 2]; 2],
}

impl SqmBlock {
    pub fn new(entries: [[WordSum; 2]; 2]) -> Self {
        SqmBlock { entries }
    }

    pub fn zero() -> Self {
        SqmBlock::default()
    }

    pub fn identity() -> Self {
        Self::diag(WordSum::scalar(Gaussian::ONE), WordSum::scalar(Gaussian::ONE))
    }

    fn diag(a: WordSum, b: WordSum) -> Self {
        SqmBlock {
            entries: [[a, WordSum::zero()], [WordSum::zero(), b]],
        }
    }

    /// The supercharge `[[0, A†], [A, 0]]`.
    pub fn supercharge() -> Self {
        SqmBlock {
            entries: [
                [WordSum::zero(), WordSum::letter(Letter::Adag)],
                [WordSum::letter(Letter::A), WordSum::zero()],
            ],
        }
    }

    /// The Hamiltonian `diag(A†A, AA†)`.
    pub fn hamiltonian() -> Self {
        let ada = WordSum::term(Word(vec![Letter::Adag, Letter::A]), Gaussian::ONE);
        let aad = WordSum::term(Word(vec![Letter::A, Letter::Adag]), Gaussian::ONE);
        Self::diag(ada, aad)
    }

    /// The grading involution `diag(1, -1)`.
    pub fn grading() -> Self {
        Self::diag(WordSum::scalar(Gaussian::ONE), WordSum::scalar(-Gaussian::ONE))
    }

    pub fn entry(&self, i: usize, j: usize) -> &WordSum {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(WordSum::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries[0][1].is_zero() && self.entries[1][0].is_zero()
    }

    pub fn scale(&self, c: Gaussian) -> SqmBlock {
        self.map(|e| e.scale(c))
    }

    pub fn scale_phase(&self, p: Phase) -> SqmBlock {
        self.scale(p.to_gaussian())
    }

    fn map(&self, f: impl Fn(&WordSum) -> WordSum) -> SqmBlock {
        SqmBlock {
            entries: [
                [f(&self.entries[0][0]), f(&self.entries[0][1])],
                [f(&self.entries[1][0]), f(&self.entries[1][1])],
            ],
        }
    }

    /// Transpose with every entry daggered.
    pub fn adjoint(&self) -> SqmBlock {
        let e = &self.entries;
        SqmBlock {
            entries: [
                [e[0][0].dagger(), e[1][0].dagger()],
                [e[0][1].dagger(), e[1][1].dagger()],
            ],
        }
    }

    /// Image under the substitution `A = A† = 1`, which sends the supercharge
    /// to `sigma_1`, the Hamiltonian to the identity and the grading involution
    /// to `sigma_3`. Returns `None` when the image is not a phase-monomial matrix.
    pub fn unit_pattern(&self) -> Option<MonomialOperator> {
        let v: Vec<Vec<Gaussian>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.evaluate(Gaussian::ONE, Gaussian::ONE)).collect())
            .collect();
        let mut perm = Vec::with_capacity(2);
        let mut phase = Vec::with_capacity(2);
        for row in &v {
            let nz: Vec<usize> = (0..2).filter(|&c| !row[c].is_zero()).collect();
            if nz.len() != 1 {
                return None;
            }
            perm.push(nz[0] as u32);
            phase.push(row[nz[0]].as_phase()?);
        }
        MonomialOperator::from_parts(perm, phase).ok()
    }
}

impl Add for &SqmBlock {
    type Output = SqmBlock;
    fn add(self, rhs: &SqmBlock) -> SqmBlock {
        let (a, b) = (&self.entries, &rhs.entries);
        SqmBlock {
            entries: [
                [&a[0][0] + &b[0][0], &a[0][1] + &b[0][1]],
                [&a[1][0] + &b[1][0], &a[1][1] + &b[1][1]],
            ],
        }
    }
}

impl Sub for &SqmBlock {
    type Output = SqmBlock;
    fn sub(self, rhs: &SqmBlock) -> SqmBlock {
        self + &rhs.scale(-Gaussian::ONE)
    }
}

impl Mul for &SqmBlock {
    type Output = SqmBlock;
    fn mul(self, rhs: &SqmBlock) -> SqmBlock {
        let (a, b) = (&self.entries, &rhs.entries);
        let cell = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        SqmBlock {
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        }
    }
}

impl fmt::Display for SqmBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(f, "[[{}, {}], [{}, {}]]", e[0][0], e[0][1], e[1][0], e[1][1])
    }
}

/// The canonical triple `(Q, H, S)`.
pub fn canonical_blocks() -> (SqmBlock, SqmBlock, SqmBlock) {
    (SqmBlock::supercharge(), SqmBlock::hamiltonian(), SqmBlock::grading())
}
