//! Degeneracy counting for `H = 1 (x) realize(SQM Hamiltonian)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{Model, ModelSpec};
use crate::sqm::{NumericRealization, RealizationKind};

/// Largest total matrix dimension accepted by [`spectrum`].
pub const MAX_SPECTRUM_DIM: usize = 1 << 20;

pub const FOCK_CLUSTER_TOL: f64 = 1e-9;
pub const GRID_CLUSTER_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct SpectrumOptions {
    /// Number of lowest clusters kept for grid realizations.
    pub grid_clusters: usize,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions { grid_clusters: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cluster {
    pub energy: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub model: ModelSpec,
    pub realization: String,
    pub total_dim: usize,
    pub clusters: Vec<Cluster>,
    /// Zero modes predicted by the kernels of `A` and `A†`, times the Clifford dimension.
    pub zero_modes: usize,
    /// Truncation-edge or boundary-localized levels left out.
    pub excluded_levels: usize,
    /// Trusted levels above the reported window (grid only).
    pub levels_above_window: usize,
    pub expected_zero_multiplicity: usize,
    pub expected_excited_multiplicity: usize,
    pub degeneracy_pass: bool,
}

impl SpectrumReport {
    pub fn zero_cluster(&self) -> Option<&Cluster> {
        self.clusters.first().filter(|c| c.energy.abs() < self.zero_tol())
    }

    fn zero_tol(&self) -> f64 {
        if self.realization.starts_with("fock") {
            FOCK_CLUSTER_TOL
        } else {
            GRID_CLUSTER_TOL
        }
    }
}

fn describe(r: &NumericRealization) -> String {
    match r.kind() {
        RealizationKind::TruncatedFock { cutoff } => format!("fock(N={cutoff})"),
        RealizationKind::Grid(g) => format!(
            "grid(points={}, spacing={}, x0={:.6}, W={})",
            g.points,
            g.spacing,
            g.x(0),
            g.superpotential
        ),
    }
}

pub fn spectrum(model: &Model, realization: &NumericRealization, options: &SpectrumOptions) -> Result<SpectrumReport> {
    let cliff = model.clifford_dim();
    let total_dim = cliff
        .checked_mul(2 * realization.dim())
        .filter(|&d| d <= MAX_SPECTRUM_DIM)
        .ok_or(Error::Guard {
            what: "spectrum matrix dimension",
            value: cliff.saturating_mul(2 * realization.dim()),
            limit: MAX_SPECTRUM_DIM,
        })?;
    let [upper, lower] = realization.diagonal_levels(&model.hamiltonian().sqm)?;
    let trusted_below = realization.trusted_below();
    let is_fock = trusted_below.is_some();
    let tol = if is_fock { FOCK_CLUSTER_TOL } else { GRID_CLUSTER_TOL };

    let mut kept: Vec<f64> = Vec::new();
    let mut excluded = 0usize;
    for level in upper.iter().chain(&lower) {
        let truncated = trusted_below.is_some_and(|n| level.energy >= n - 0.5);
        if level.edge || truncated {
            excluded += cliff;
        } else {
            kept.push(level.energy);
        }
    }
    kept.sort_by(f64::total_cmp);

    let mut clusters: Vec<Cluster> = Vec::new();
    for e in kept {
        match clusters.last_mut() {
            Some(c) if (e - c.energy).abs() <= tol * c.energy.abs().max(1.0) => c.multiplicity += cliff,
            _ => clusters.push(Cluster {
                energy: e,
                multiplicity: cliff,
            }),
        }
    }
    let mut above = 0;
    if !is_fock && clusters.len() > options.grid_clusters {
        above = clusters[options.grid_clusters..].iter().map(|c| c.multiplicity).sum();
        clusters.truncate(options.grid_clusters);
    }
    let zero_modes = {
        let (ka, kadag) = realization.ground_state_pair().dims();
        (ka + kadag) * cliff
    };

    let model_dim = model.total_dim();
    let expected_zero = model_dim / 2;
    let zero_found = clusters
        .first()
        .filter(|c| c.energy.abs() < tol)
        .map_or(0, |c| c.multiplicity);
    let zero_ok = zero_found == zero_modes && (zero_found == 0 || zero_found == expected_zero);
    let excited_ok = clusters
        .iter()
        .filter(|c| c.energy.abs() >= tol)
        .all(|c| c.multiplicity == model_dim);

    Ok(SpectrumReport {
        model: model.spec().clone(),
        realization: describe(realization),
        total_dim,
        clusters,
        zero_modes,
        excluded_levels: excluded,
        levels_above_window: above,
        expected_zero_multiplicity: expected_zero,
        expected_excited_multiplicity: model_dim,
        degeneracy_pass: zero_ok && excited_ok,
    })
}
