//! Numeric realizations of the ladder operators.
//!
//! * Truncated Fock space with `W(x) = x`: `A` is the annihilation operator
//!   on levels `0..=N`, so `A†A = diag(0..N)` exactly.
//! * Finite grid with a user superpotential: `A ≈ (d/dx + W)/√2` on an
//!   equispaced grid with Dirichlet boundaries and `A† = Aᵀ`. The derivative
//!   is an exponentially fitted forward difference,
//!   `(Aψ)_i = (ψ_{i+1} - r_i ψ_i) / (h√2)` with `r_i = exp(-∫_{x_i}^{x_{i+1}} W)`,
//!   whose discrete kernel is exactly `exp(-∫W)` sampled on the grid.

use nalgebra::{Complex, DMatrix, DVector};

use super::superpotential::Superpotential;
use super::word::{Letter, SqmBlock, WordSum};
use crate::error::{Error, Result};

/// Singular values below this fraction of the largest count as zero.
pub const KERNEL_RELATIVE_TOL: f64 = 1e-8;

/// A kernel vector is normalizable when its boundary amplitude is below this
/// fraction of its largest amplitude.
pub const BOUNDARY_DECAY_TOL: f64 = 1e-6;

/// Width of the boundary layer, as a fraction of the grid points on each side.
pub const BOUNDARY_LAYER_FRACTION: f64 = 0.05;

/// Eigenvectors with more than this squared weight inside one boundary layer
/// are treated as boundary artifacts.
pub const BOUNDARY_LOCALIZED_WEIGHT: f64 = 0.5;

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub points: usize,
    pub spacing: f64,
    /// Left end of the grid; `None` centres the grid on the origin.
    pub start: Option<f64>,
    pub superpotential: Superpotential,
}

impl GridSpec {
    pub fn new(points: usize, spacing: f64, superpotential: Superpotential) -> Self {
        GridSpec {
            points,
            spacing,
            start: None,
            superpotential,
        }
    }

    pub fn x(&self, i: usize) -> f64 {
        let start = self
            .start
            .unwrap_or(-(self.points as f64 - 1.0) * self.spacing / 2.0);
        start + i as f64 * self.spacing
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RealizationKind {
    TruncatedFock { cutoff: usize },
    Grid(GridSpec),
}

#[derive(Clone, Debug)]
pub struct NumericRealization {
    kind: RealizationKind,
    a: DMatrix<f64>,
    adag: DMatrix<f64>,
}

/// One eigenvalue of a realized diagonal block, with its quality flag.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Level {
    pub energy: f64,
    /// Truncation edge (Fock top level) or boundary-localized (grid).
    pub edge: bool,
}

/// Numeric kernels of `A` and `A†`, restricted to normalizable vectors.
#[derive(Clone, Debug)]
pub struct GroundStatePair {
    pub kernel_a: Vec<DVector<f64>>,
    pub kernel_adag: Vec<DVector<f64>>,
}

impl GroundStatePair {
    pub fn dims(&self) -> (usize, usize) {
        (self.kernel_a.len(), self.kernel_adag.len())
    }
}

impl NumericRealization {
    pub fn fock(cutoff: usize) -> Result<Self> {
        if cutoff < 1 {
            return Err(Error::InvalidRealization("Fock cutoff must be at least 1".into()));
        }
        let d = cutoff + 1;
        let a = DMatrix::from_fn(d, d, |r, c| if c == r + 1 { (c as f64).sqrt() } else { 0.0 });
        let adag = a.transpose();
        Ok(NumericRealization {
            kind: RealizationKind::TruncatedFock { cutoff },
            a,
            adag,
        })
    }

    pub fn grid(spec: GridSpec) -> Result<Self> {
        if spec.points < 3 {
            return Err(Error::InvalidRealization("grid needs at least 3 points".into()));
        }
        if !(spec.spacing.is_finite() && spec.spacing > 0.0) {
            return Err(Error::InvalidRealization(format!(
                "grid spacing {} must be positive",
                spec.spacing
            )));
        }
        let p = spec.points;
        let h = spec.spacing;
        // W sampled on the grid plus the ghost point beyond the right boundary
        let w: Vec<f64> = (0..=p).map(|i| spec.superpotential.value(spec.x(i))).collect();
        if let Some(i) = w.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidRealization(format!(
                "W({}) is not finite",
                spec.x(i)
            )));
        }
        let norm = 1.0 / (h * std::f64::consts::SQRT_2);
        let mut a = DMatrix::zeros(p, p);
        for i in 0..p {
            let r = (-h * (w[i] + w[i + 1]) / 2.0).exp();
            if !r.is_finite() {
                return Err(Error::InvalidRealization(format!(
                    "grid too coarse for W near x = {}",
                    spec.x(i)
                )));
            }
            a[(i, i)] = -r * norm;
            if i + 1 < p {
                a[(i, i + 1)] = norm;
            }
        }
        let adag = a.transpose();
        Ok(NumericRealization {
            kind: RealizationKind::Grid(spec),
            a,
            adag,
        })
    }

    pub fn kind(&self) -> &RealizationKind {
        &self.kind
    }

    /// Dimension of the space `A` acts on.
    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn adag(&self) -> &DMatrix<f64> {
        &self.adag
    }

    /// Eigenvalues at or above this bound are affected by truncation.
    pub fn trusted_below(&self) -> Option<f64> {
        match self.kind {
            RealizationKind::TruncatedFock { cutoff } => Some(cutoff as f64),
            RealizationKind::Grid(_) => None,
        }
    }

    fn letter(&self, l: Letter) -> &DMatrix<f64> {
        match l {
            Letter::A => &self.a,
            Letter::Adag => &self.adag,
        }
    }

    /// Substitutes the numeric ladder matrices into a word sum.
    pub fn realize_entry(&self, sum: &WordSum) -> DMatrix<Complex<f64>> {
        let d = self.dim();
        let mut out = DMatrix::<Complex<f64>>::zeros(d, d);
        for (word, coeff) in sum.terms() {
            let mut m = DMatrix::<f64>::identity(d, d);
            for &l in word.letters() {
                m = &m * self.letter(l);
            }
            let c = Complex::new(coeff.re as f64, coeff.im as f64);
            out += m.map(|v| c * v);
        }
        out
    }

    /// Dense `2d x 2d` matrix of a symbolic block.
    pub fn realize(&self, block: &SqmBlock) -> DMatrix<Complex<f64>> {
        let d = self.dim();
        let mut out = DMatrix::<Complex<f64>>::zeros(2 * d, 2 * d);
        for i in 0..2 {
            for j in 0..2 {
                let e = block.entry(i, j);
                if !e.is_zero() {
                    out.view_mut((i * d, j * d), (d, d))
                        .copy_from(&self.realize_entry(e));
                }
            }
        }
        out
    }

    /// Eigenvalues of a diagonal block (such as the Hamiltonian), one list per
    /// diagonal entry, each flagged for truncation or boundary artifacts.
    pub fn diagonal_levels(&self, block: &SqmBlock) -> Result<[Vec<Level>; 2]> {
        if !block.is_diagonal() {
            return Err(Error::InvalidRealization(
                "spectrum requires a block-diagonal SQM factor".into(),
            ));
        }
        let mut out: [Vec<Level>; 2] = [Vec::new(), Vec::new()];
        for (s, slot) in out.iter_mut().enumerate() {
            let m = self.realize_entry(block.entry(s, s));
            if m.iter().any(|z| z.im != 0.0) {
                return Err(Error::InvalidRealization("complex Hamiltonian block".into()));
            }
            let real = m.map(|z| z.re);
            let eig = real.symmetric_eigen();
            for (k, &e) in eig.eigenvalues.iter().enumerate() {
                let v = eig.eigenvectors.column(k);
                let edge = match self.kind {
                    RealizationKind::TruncatedFock { cutoff } => v[cutoff].powi(2) > 0.5,
                    RealizationKind::Grid(_) => boundary_layer_weight(v.as_slice()) > BOUNDARY_LOCALIZED_WEIGHT,
                };
                slot.push(Level { energy: e, edge });
            }
            slot.sort_by(|x, y| x.energy.total_cmp(&y.energy));
        }
        Ok(out)
    }

    /// Normalizable kernels of `A` and `A†`.
    ///
    /// For the Fock realization the top level is removed from the domain, so
    /// `A†|N> = 0` from truncation does not count. On the grid, near-null
    /// singular vectors that do not decay towards both boundaries are
    /// discarded.
    pub fn ground_state_pair(&self) -> GroundStatePair {
        match self.kind {
            RealizationKind::TruncatedFock { cutoff } => GroundStatePair {
                kernel_a: null_space(&self.a.columns(0, cutoff).into_owned()),
                kernel_adag: null_space(&self.adag.columns(0, cutoff).into_owned()),
            },
            RealizationKind::Grid(_) => {
                let keep = |m: &DMatrix<f64>| -> Vec<DVector<f64>> {
                    let candidates = Bidiagonal::of(m).map_or_else(|| null_space(m), |b| b.kernel());
                    candidates.into_iter().filter(decays_at_boundary).collect()
                };
                GroundStatePair {
                    kernel_a: keep(&self.a),
                    kernel_adag: keep(&self.adag),
                }
            }
        }
    }
}

/// Square bidiagonal matrix with nonzero off-diagonal entries, as produced by
/// the grid stencil. Every row but one pins a null vector down to scale
/// through a two-term recurrence, so the kernel needs no SVD.
struct Bidiagonal {
    diag: Vec<f64>,
    /// `off[i]` couples entries `i` and `i + 1`.
    off: Vec<f64>,
    upper: bool,
}

impl Bidiagonal {
    fn of(m: &DMatrix<f64>) -> Option<Self> {
        let p = m.nrows();
        if p < 2 || m.ncols() != p {
            return None;
        }
        let upper = m[(0, 1)] != 0.0;
        let off: Vec<f64> = (0..p - 1)
            .map(|i| if upper { m[(i, i + 1)] } else { m[(i + 1, i)] })
            .collect();
        let band = |r: usize, c: usize| r == c || (upper && c == r + 1) || (!upper && r == c + 1);
        let outside_zero = (0..p).all(|r| (0..p).all(|c| band(r, c) || m[(r, c)] == 0.0));
        if !outside_zero || off.contains(&0.0) {
            return None;
        }
        Some(Bidiagonal {
            diag: (0..p).map(|i| m[(i, i)]).collect(),
            off,
            upper,
        })
    }

    fn mul(&self, v: &[f64], transpose: bool) -> Vec<f64> {
        let p = v.len();
        let mut out: Vec<f64> = self.diag.iter().zip(v).map(|(d, x)| d * x).collect();
        // the off-diagonal sits above the diagonal in exactly one of M, M^T
        let above = self.upper != transpose;
        for i in 0..p - 1 {
            if above {
                out[i] += self.off[i] * v[i + 1];
            } else {
                out[i + 1] += self.off[i] * v[i];
            }
        }
        out
    }

    fn sigma_max(&self) -> f64 {
        let p = self.diag.len();
        let mut v = vec![1.0 / (p as f64).sqrt(); p];
        let mut sigma = 0.0;
        for _ in 0..500 {
            let w = self.mul(&self.mul(&v, false), true);
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                return 0.0;
            }
            let next = norm.sqrt();
            v = w.into_iter().map(|x| x / norm).collect();
            if (next - sigma).abs() <= 1e-12 * next {
                return next;
            }
            sigma = next;
        }
        sigma
    }

    /// The unique candidate null vector, kept if its residual is below the
    /// relative singular-value tolerance. Computed in log space: the
    /// recurrence can overflow for strongly confining superpotentials.
    fn kernel(&self) -> Vec<DVector<f64>> {
        let p = self.diag.len();
        let mut log = vec![0.0f64; p];
        let mut sign = vec![1.0f64; p];
        if self.upper {
            // rows 0..p-1: d_i x_i + e_i x_{i+1} = 0, from the top
            for i in 0..p - 1 {
                let ratio = -self.diag[i] / self.off[i];
                if ratio == 0.0 {
                    return Vec::new();
                }
                log[i + 1] = log[i] + ratio.abs().ln();
                sign[i + 1] = sign[i] * ratio.signum();
            }
        } else {
            // rows 1..p: e_{i-1} x_{i-1} + d_i x_i = 0
            for i in 1..p {
                if self.diag[i] == 0.0 {
                    return Vec::new();
                }
                let ratio = -self.off[i - 1] / self.diag[i];
                log[i] = log[i - 1] + ratio.abs().ln();
                sign[i] = sign[i - 1] * ratio.signum();
            }
        }
        let top = log.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let v = DVector::from_fn(p, |i, _| sign[i] * (log[i] - top).exp());
        let v = &v / v.norm();
        let residual = self.mul(v.as_slice(), false).iter().map(|x| x * x).sum::<f64>().sqrt();
        if residual < KERNEL_RELATIVE_TOL * self.sigma_max() {
            vec![v]
        } else {
            Vec::new()
        }
    }
}

/// Largest squared weight of a unit vector inside either boundary layer.
pub fn boundary_layer_weight(v: &[f64]) -> f64 {
    let k = ((v.len() as f64 * BOUNDARY_LAYER_FRACTION) as usize).max(1);
    let norm: f64 = v.iter().map(|x| x * x).sum();
    let left: f64 = v[..k].iter().map(|x| x * x).sum();
    let right: f64 = v[v.len() - k..].iter().map(|x| x * x).sum();
    left.max(right) / norm
}

fn decays_at_boundary(v: &DVector<f64>) -> bool {
    let max = v.amax();
    let edge = v[0].abs().max(v[v.len() - 1].abs());
    max > 0.0 && edge < BOUNDARY_DECAY_TOL * max
}

/// Right singular vectors with singular value below the relative tolerance.
fn null_space(m: &DMatrix<f64>) -> Vec<DVector<f64>> {
    let cols = m.ncols();
    // pad to square so the SVD returns a full set of right singular vectors
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.max();
    if smax == 0.0 {
        return (0..cols).map(|i| DVector::from_fn(cols, |r, _| (r == i) as u8 as f64)).collect();
    }
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s < KERNEL_RELATIVE_TOL * smax)
        .map(|(k, _)| v_t.row(k).transpose())
        .collect()
}
