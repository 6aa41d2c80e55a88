//! The model families: supercharges `Q_a = G_a (x) B_a`, central elements
//! `Z_ab` and the Hamiltonian, each a Clifford monomial tensored with a 2x2
//! SQM block.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::arith::{Gaussian, Phase};
use crate::clifford::{clifford_word, gamma, CliffordFactor, MonomialOperator};
use crate::error::{Error, Result};
use crate::grading::{DegreeOrdering, DegreeVector};
use crate::sqm::SqmBlock;

/// Largest `n` accepted by the minimal and next families.
pub const MAX_RANK_LINEAR: usize = 8;
/// Largest `n` accepted by the maximal family (`2^(2^(n-1))`-dimensional).
pub const MAX_RANK_MAXIMAL: usize = 5;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    Hamiltonian,
    Supercharge(DegreeVector),
    Central(DegreeVector, DegreeVector),
}

/// `clifford (x) sqm`, carrying its degree.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedOperator {
    pub clifford: MonomialOperator,
    pub sqm: SqmBlock,
    pub degree: DegreeVector,
    pub role: Role,
}

impl GradedOperator {
    /// Total matrix dimension over the SQM realization (`clifford dim x 2` blocks).
    pub fn dim(&self) -> usize {
        self.clifford.dim() * 2
    }

    pub fn label(&self) -> String {
        match self.role {
            Role::Hamiltonian => "H".to_string(),
            Role::Supercharge(a) => format!("Q[{a}]"),
            Role::Central(a, b) => format!("Z[{a},{b}]"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelFamily {
    Minimal,
    Next,
    Maximal,
    N4Cl12,
    N4Cl10,
    N5Cl28,
    N5Cl26,
}

impl ModelFamily {
    pub fn name(self) -> &'static str {
        match self {
            ModelFamily::Minimal => "minimal",
            ModelFamily::Next => "next",
            ModelFamily::Maximal => "maximal",
            ModelFamily::N4Cl12 => "n4cl12",
            ModelFamily::N4Cl10 => "n4cl10",
            ModelFamily::N5Cl28 => "n5cl28",
            ModelFamily::N5Cl26 => "n5cl26",
        }
    }

    /// The fixed rank of the hard-coded families.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            ModelFamily::N4Cl12 | ModelFamily::N4Cl10 => Some(4),
            ModelFamily::N5Cl28 | ModelFamily::N5Cl26 => Some(5),
            _ => None,
        }
    }

    fn rank_range(self) -> (usize, usize) {
        match self {
            ModelFamily::Minimal | ModelFamily::Next => (2, MAX_RANK_LINEAR),
            ModelFamily::Maximal => (2, MAX_RANK_MAXIMAL),
            f => {
                let n = f.fixed_rank().unwrap();
                (n, n)
            }
        }
    }
}

impl fmt::Display for ModelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub n: usize,
    pub family: ModelFamily,
    pub ordering: DegreeOrdering,
}

impl ModelSpec {
    pub fn new(family: ModelFamily, n: usize) -> Result<Self> {
        Self::with_ordering(family, n, DegreeOrdering::Standard)
    }

    pub fn with_ordering(family: ModelFamily, n: usize, ordering: DegreeOrdering) -> Result<Self> {
        let (min, max) = family.rank_range();
        if !(min..=max).contains(&n) {
            return Err(Error::RankOutOfRange { n, min, max });
        }
        if family.fixed_rank().is_some() && ordering != DegreeOrdering::Standard {
            return Err(Error::Unsupported {
                family: family.name().into(),
                what: "degree orderings other than the standard one".into(),
            });
        }
        Ok(ModelSpec { n, family, ordering })
    }

    pub fn minimal(n: usize) -> Result<Self> {
        Self::new(ModelFamily::Minimal, n)
    }

    pub fn next(n: usize) -> Result<Self> {
        Self::new(ModelFamily::Next, n)
    }

    pub fn maximal(n: usize) -> Result<Self> {
        Self::new(ModelFamily::Maximal, n)
    }

    pub fn custom(family: ModelFamily) -> Self {
        let n = family.fixed_rank().expect("custom family");
        ModelSpec {
            n,
            family,
            ordering: DegreeOrdering::Standard,
        }
    }

    /// Number of gamma pairs `m` of the Clifford algebra `Cl(2m)`.
    pub fn clifford_rank(&self) -> usize {
        match self.family {
            ModelFamily::Minimal => self.n - 1,
            ModelFamily::Next => self.n,
            ModelFamily::Maximal => (1 << (self.n - 1)) - 1,
            ModelFamily::N4Cl12 => 6,
            ModelFamily::N4Cl10 => 5,
            ModelFamily::N5Cl28 => 14,
            ModelFamily::N5Cl26 => 13,
        }
    }

    /// Dimension of the full matrix operators (Clifford dim x 2).
    pub fn total_dim(&self) -> usize {
        1 << (self.clifford_rank() + 1)
    }

    pub fn selector(&self) -> String {
        match self.family {
            ModelFamily::Minimal | ModelFamily::Next | ModelFamily::Maximal => {
                format!("{}:n={}", self.family, self.n)
            }
            f => f.name().to_string(),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.selector())
    }
}

impl FromStr for ModelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSelector(s.to_string());
        let s = s.trim();
        let (name, rest) = match s.split_once(':') {
            Some((name, rest)) => (name.trim(), Some(rest.trim())),
            None => (s, None),
        };
        let family = match name.to_ascii_lowercase().as_str() {
            "minimal" => ModelFamily::Minimal,
            "next" => ModelFamily::Next,
            "maximal" => ModelFamily::Maximal,
            "n4cl12" => ModelFamily::N4Cl12,
            "n4cl10" => ModelFamily::N4Cl10,
            "n5cl28" => ModelFamily::N5Cl28,
            "n5cl26" => ModelFamily::N5Cl26,
            _ => return Err(bad()),
        };
        match (family.fixed_rank(), rest) {
            (Some(_), None) => Ok(ModelSpec::custom(family)),
            (Some(_), Some(_)) | (None, None) => Err(bad()),
            (None, Some(rest)) => {
                let value = rest.strip_prefix("n=").unwrap_or(rest);
                let n = value.trim().parse::<usize>().map_err(|_| bad())?;
                ModelSpec::new(family, n)
            }
        }
    }
}

impl Serialize for ModelSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let ordering = match &self.ordering {
            DegreeOrdering::Standard => "standard".to_string(),
            DegreeOrdering::Reversed => "reversed".to_string(),
            DegreeOrdering::Lexicographic => "lexicographic".to_string(),
            DegreeOrdering::Custom(list) => {
                let names: Vec<String> = list.iter().map(|d| d.to_string()).collect();
                format!("custom({})", names.join(","))
            }
        };
        let mut st = serializer.serialize_struct("ModelSpec", 5)?;
        st.serialize_field("selector", &self.selector())?;
        st.serialize_field("family", &self.family)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("ordering", &ordering)?;
        st.serialize_field("dimension", &self.total_dim())?;
        st.end()
    }
}

/// `sum_{j<k} a_j a_k` over the first `n-1` components, mod 4.
pub fn phase_h_minimal(a: DegreeVector) -> Result<Phase> {
    if a.parity() != 1 {
        return Err(Error::EvenDegree(a.to_string()));
    }
    let n = a.rank();
    let w = (a.weight() - a.component(n) as u32) as i64;
    Ok(Phase::new(w * (w - 1) / 2))
}

/// `sum_{j<k} a_j a_k` over all components, mod 4.
pub fn phase_h_all(a: DegreeVector) -> Phase {
    let w = a.weight() as i64;
    Phase::new(w * (w - 1) / 2)
}

/// `i^h * gamma_1^{a_1} ... gamma_len^{a_len}` in `Cl(2m)`.
fn gamma_monomial(scalar: Phase, a: DegreeVector, len: usize, m: usize) -> Result<MonomialOperator> {
    let mut acc = MonomialOperator::identity(1 << m).scale(scalar);
    for j in 1..=len {
        if a.component(j) == 1 {
            acc = acc.mul(&gamma(j, m)?)?;
        }
    }
    Ok(acc)
}

/// `X_a` of the minimal model in `Cl(2(n-1))`.
pub fn minimal_generator(a: DegreeVector) -> Result<MonomialOperator> {
    let n = a.rank();
    gamma_monomial(phase_h_minimal(a)?, a, n - 1, n - 1)
}

/// `Y_a` of the next model in `Cl(2n)`; the all-ones degree maps to the identity.
pub fn next_generator(a: DegreeVector) -> Result<MonomialOperator> {
    if a.parity() != 1 {
        return Err(Error::EvenDegree(a.to_string()));
    }
    let n = a.rank();
    if a == DegreeVector::ones(n) {
        return Ok(MonomialOperator::identity(1 << n));
    }
    gamma_monomial(phase_h_all(a), a, n, n)
}

/// `G_1 .. G_M` of the maximal model for the given ordered degrees.
pub fn maximal_generators(degrees: &[DegreeVector]) -> Result<Vec<MonomialOperator>> {
    let big_m = degrees.len();
    let m = big_m - 1;
    let big_gammas: Vec<MonomialOperator> = (1..=m)
        .map(|j| CliffordFactor::BigGamma(j).realize(m))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(big_m);
    for (k, &ak) in degrees.iter().enumerate() {
        let mut g = MonomialOperator::identity(1 << m);
        let last = k + 1 == big_m;
        for (j, &aj) in degrees[..k].iter().enumerate() {
            let dot = aj.dot(ak)?;
            let use_j = if last { dot == 0 } else { dot == 1 };
            if use_j {
                g = g.mul(&big_gammas[j])?;
            }
        }
        if !last {
            g = g.mul(&gamma(k + 1, m)?)?;
        }
        out.push(g);
    }
    Ok(out)
}

/// One generator of a hard-coded table: a phase and a word in the Clifford factors.
type TableEntry = (Phase, Vec<CliffordFactor>);

fn custom_table(family: ModelFamily) -> Vec<TableEntry> {
    use CliffordFactor::{BigGamma as B, Gamma as G, GammaTilde as T};
    let one = Phase::ONE;
    let plain = |f: Vec<CliffordFactor>| (one, f);
    let bigs = |js: &[usize]| js.iter().map(|&j| B(j)).collect::<Vec<_>>();
    let with = |mut v: Vec<CliffordFactor>, f: CliffordFactor| {
        v.push(f);
        v
    };
    match family {
        ModelFamily::N4Cl12 | ModelFamily::N4Cl10 => {
            let mut t: Vec<TableEntry> = (1..=4).map(|j| plain(vec![G(j)])).collect();
            t.push(plain(with(bigs(&[1, 2, 3]), G(5))));
            if family == ModelFamily::N4Cl12 {
                t.push(plain(with(bigs(&[1, 2, 4]), G(6))));
                t.push(plain(bigs(&[2, 5, 6])));
                t.push(plain(vec![G(1), T(2), T(3), T(4)]));
            } else {
                t.push(plain(bigs(&[3, 5])));
                t.push(plain(vec![T(1), G(2), T(3), T(4)]));
                t.push((Phase::I, vec![G(2), G(3), G(4)]));
            }
            t
        }
        ModelFamily::N5Cl28 | ModelFamily::N5Cl26 => {
            let mut t: Vec<TableEntry> = (1..=5).map(|j| plain(vec![G(j)])).collect();
            t.push(plain(with(bigs(&[1, 2, 3]), G(6))));
            t.push(plain(with(bigs(&[1, 2, 4]), G(7))));
            t.push(plain(with(bigs(&[1, 2, 5]), G(8))));
            t.push(plain(with(bigs(&[1, 3, 4, 8]), G(9))));
            t.push(plain(with(bigs(&[1, 3, 5, 7]), G(10))));
            t.push(plain(with(bigs(&[1, 4, 5, 6]), G(11))));
            t.push(plain(with(bigs(&[2, 3, 4, 8, 10, 11]), G(12))));
            t.push(plain(with(bigs(&[2, 3, 5, 7, 9, 11]), G(13))));
            if family == ModelFamily::N5Cl28 {
                t.push(plain(with(bigs(&[2, 4, 5, 6, 9, 10]), G(14))));
                t.push(plain(bigs(&[1, 2, 9, 10, 11, 12, 13, 14])));
            } else {
                t.push(plain(bigs(&[1, 3, 7, 8, 11, 12, 13])));
                t.push(plain(vec![G(3), G(4), G(5), T(12), T(13)]));
            }
            let mut last: Vec<CliffordFactor> = (1..=5).map(T).collect();
            last.extend((6..=8).map(G));
            t.push(plain(last));
            t
        }
        _ => unreachable!("not a table family"),
    }
}

/// Symbolic form of the hard-coded generator table, for reports.
pub fn custom_table_display(family: ModelFamily) -> Option<Vec<String>> {
    family.fixed_rank()?;
    Some(
        custom_table(family)
            .into_iter()
            .map(|(p, word)| {
                let w: Vec<String> = word.iter().map(|f| f.to_string()).collect();
                if p == Phase::ONE {
                    w.join(" ")
                } else {
                    format!("{p} {}", w.join(" "))
                }
            })
            .collect(),
    )
}

/// A built model. Central elements are stored for index pairs `k < l` in the
/// supercharge order; the other orientation is derived.
#[derive(Clone, Debug)]
pub struct Model {
    spec: ModelSpec,
    degrees: Vec<DegreeVector>,
    generators: Vec<MonomialOperator>,
    hamiltonian: GradedOperator,
    supercharges: Vec<GradedOperator>,
    central: Vec<GradedOperator>,
}

impl Model {
    /// Builds the model and checks that every generator is hermitian and
    /// squares to the identity.
    pub fn build(spec: &ModelSpec) -> Result<Self> {
        let degrees = spec.ordering.odd_degrees(spec.n)?;
        let generators = Self::generators_for(spec, &degrees)?;
        for (g, a) in generators.iter().zip(&degrees) {
            let name = format!("generator for degree {a}");
            if !g.is_hermitian() {
                return Err(Error::GeneratorProperty { name, property: "hermitian" });
            }
            if !g.is_involution() {
                return Err(Error::GeneratorProperty { name, property: "an involution" });
            }
        }
        Self::assemble(spec.clone(), degrees, generators)
    }

    /// Assembles a model from explicit Clifford generators without checking
    /// them. Used to build deliberately broken models.
    pub fn from_generators(spec: &ModelSpec, generators: Vec<MonomialOperator>) -> Result<Self> {
        let degrees = spec.ordering.odd_degrees(spec.n)?;
        if generators.len() != degrees.len() {
            return Err(Error::DimensionMismatch {
                left: generators.len(),
                right: degrees.len(),
            });
        }
        let dim = 1usize << spec.clifford_rank();
        if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch { left: g.dim(), right: dim });
        }
        Self::assemble(spec.clone(), degrees, generators)
    }

    /// The unchecked Clifford generators (`X_a`, `Y_a` or `G_k`) of a spec.
    pub fn generators_for(spec: &ModelSpec, degrees: &[DegreeVector]) -> Result<Vec<MonomialOperator>> {
        match spec.family {
            ModelFamily::Minimal => degrees.iter().map(|&a| minimal_generator(a)).collect(),
            ModelFamily::Next => degrees.iter().map(|&a| next_generator(a)).collect(),
            ModelFamily::Maximal => maximal_generators(degrees),
            f => {
                let m = spec.clifford_rank();
                custom_table(f)
                    .into_iter()
                    .map(|(p, word)| clifford_word(p, &word, m))
                    .collect()
            }
        }
    }

    fn assemble(spec: ModelSpec, degrees: Vec<DegreeVector>, generators: Vec<MonomialOperator>) -> Result<Self> {
        let n = spec.n;
        let dim = 1usize << spec.clifford_rank();
        let q = SqmBlock::supercharge();
        let h = SqmBlock::hamiltonian();
        let s = SqmBlock::grading();
        let iqs = (&q * &s).scale(Gaussian::I);
        let hs = &h * &s;
        let minimal = spec.family == ModelFamily::Minimal;

        let supercharges = degrees
            .iter()
            .zip(&generators)
            .map(|(&a, g)| GradedOperator {
                clifford: g.clone(),
                sqm: if minimal && a.component(n) == 0 { iqs.clone() } else { q.clone() },
                degree: a,
                role: Role::Supercharge(a),
            })
            .collect();

        let mut central = Vec::with_capacity(degrees.len() * (degrees.len() - 1) / 2);
        for k in 0..degrees.len() {
            for l in k + 1..degrees.len() {
                let (a, b) = (degrees[k], degrees[l]);
                let dot = a.dot(b)? as i64;
                let product = generators[k].mul(&generators[l])?;
                let (phase, sqm) = if minimal && a.component(n) != b.component(n) {
                    // taken literally for the stored orientation (k, l)
                    (Phase::sign(b.component(n) as i64) * Phase::i_pow(dot), hs.clone())
                } else {
                    (Phase::minus_i_pow(1 - dot), h.clone())
                };
                central.push(GradedOperator {
                    clifford: product.scale(phase),
                    sqm,
                    degree: a.add(b)?,
                    role: Role::Central(a, b),
                });
            }
        }

        let hamiltonian = GradedOperator {
            clifford: MonomialOperator::identity(dim),
            sqm: h,
            degree: DegreeVector::zero(n),
            role: Role::Hamiltonian,
        };
        Ok(Model {
            spec,
            degrees,
            generators,
            hamiltonian,
            supercharges,
            central,
        })
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn degrees(&self) -> &[DegreeVector] {
        &self.degrees
    }

    pub fn generators(&self) -> &[MonomialOperator] {
        &self.generators
    }

    pub fn hamiltonian(&self) -> &GradedOperator {
        &self.hamiltonian
    }

    pub fn supercharges(&self) -> &[GradedOperator] {
        &self.supercharges
    }

    /// Stored central elements, `Z_{a_k a_l}` for `k < l` in row-major order.
    pub fn central_elements(&self) -> &[GradedOperator] {
        &self.central
    }

    pub fn clifford_dim(&self) -> usize {
        1 << self.spec.clifford_rank()
    }

    pub fn total_dim(&self) -> usize {
        self.spec.total_dim()
    }

    fn pair_index(&self, k: usize, l: usize) -> usize {
        let m = self.degrees.len();
        k * m - k * (k + 1) / 2 + (l - k - 1)
    }

    /// `Z_{a_k a_l}` for any `k != l`; `Z_ba = -(-1)^{a.b} Z_ab`. `None` for `k == l`.
    pub fn central(&self, k: usize, l: usize) -> Option<Cow<'_, GradedOperator>> {
        use std::cmp::Ordering;
        match k.cmp(&l) {
            Ordering::Equal => None,
            Ordering::Less => Some(Cow::Borrowed(&self.central[self.pair_index(k, l)])),
            Ordering::Greater => {
                let stored = &self.central[self.pair_index(l, k)];
                let dot = self.degrees[k].dot(self.degrees[l]).ok()? as i64;
                let sign = Phase::MINUS_ONE * Phase::sign(dot);
                Some(Cow::Owned(GradedOperator {
                    clifford: stored.clifford.scale(sign),
                    sqm: stored.sqm.clone(),
                    degree: stored.degree,
                    role: Role::Central(self.degrees[k], self.degrees[l]),
                }))
            }
        }
    }
}
