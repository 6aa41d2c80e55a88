//! Orbits of the tensor-basis lines under the supercharges, and the number of
//! independent operators the supercharges generate.

use std::collections::{HashSet, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::arith::{Gaussian, Phase};
use crate::clifford::MonomialOperator;
use crate::error::{Error, Result};
use crate::models::{Model, ModelSpec};

use super::exact::{rank, GaussianRational, SparseVector};
use super::rank::hilbert_schmidt;

/// Closure sizes above this abort the count.
pub const MAX_GENERATED: usize = 1 << 18;
/// Bound on stored entries (elements x dimension) during the closure.
pub const MAX_GENERATED_ENTRIES: usize = 1 << 27;

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub model: ModelSpec,
    /// Size of the index set `{0..clifford_dim} x {0, 1}`.
    pub index_count: usize,
    /// Component sizes, largest first.
    pub sizes: Vec<usize>,
    /// Members of each component as flat indices `2 * clifford_row + sqm_row`,
    /// in the order of `sizes`.
    #[serde(skip)]
    pub components: Vec<Vec<usize>>,
}

impl OrbitReport {
    pub fn component_count(&self) -> usize {
        self.sizes.len()
    }
}

/// Full matrix pattern of each supercharge: Clifford factor times the unit
/// pattern of its SQM block (`A = A† = 1`).
fn supercharge_patterns(model: &Model) -> Vec<MonomialOperator> {
    model
        .supercharges()
        .iter()
        .map(|q| {
            let unit = q
                .sqm
                .unit_pattern()
                .expect("supercharge SQM blocks are monomial");
            q.clifford.kron(&unit)
        })
        .collect()
}

pub fn orbit_decomposition(model: &Model) -> OrbitReport {
    let patterns = supercharge_patterns(model);
    let n = model.clifford_dim() * 2;
    let mut uf = UnionFind::<usize>::new(n);
    for p in &patterns {
        for (r, &c) in p.perm().iter().enumerate() {
            uf.union(r, c as usize);
        }
    }
    let labels = uf.into_labeling();
    let mut roots: Vec<usize> = Vec::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    for (i, &root) in labels.iter().enumerate() {
        match roots.iter().position(|&r| r == root) {
            Some(k) => components[k].push(i),
            None => {
                roots.push(root);
                components.push(vec![i]);
            }
        }
    }
    components.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    OrbitReport {
        model: model.spec().clone(),
        index_count: n,
        sizes: components.iter().map(|c| c.len()).collect(),
        components,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratedCount {
    /// Independent products of supercharges on the full space.
    pub total: usize,
    /// The same count after restricting to each orbit component.
    pub per_sector: Vec<usize>,
}

fn canonical(m: &MonomialOperator) -> MonomialOperator {
    m.normalized().0
}

/// Restriction of `m` to an invariant index set.
fn restrict(m: &MonomialOperator, members: &[usize], local: &[usize]) -> MonomialOperator {
    let (perm, phase): (Vec<u32>, Vec<Phase>) = members
        .iter()
        .map(|&i| {
            let (c, p) = m.entry(i);
            (local[c] as u32, p)
        })
        .unzip();
    MonomialOperator::from_parts(perm, phase).expect("component is invariant")
}

/// Number of linearly independent operators among distinct monomial rays.
fn independent_count(rays: &[MonomialOperator]) -> usize {
    let orthogonal = rays.iter().enumerate().all(|(i, x)| {
        rays[i + 1..]
            .iter()
            .all(|y| hilbert_schmidt(x, y).is_zero())
    });
    if orthogonal {
        return rays.len();
    }
    let dim = rays[0].dim();
    let vectors: Vec<SparseVector<usize>> = rays
        .iter()
        .map(|m| {
            (0..dim)
                .map(|r| {
                    let (c, p) = m.entry(r);
                    (r * dim + c, GaussianRational::from(Gaussian::from(p)))
                })
                .collect()
        })
        .collect();
    rank(&vectors)
}

/// Closure of the supercharges under multiplication, counted up to linear
/// dependence.
pub fn count_generated_operators(model: &Model) -> Result<GeneratedCount> {
    let patterns = supercharge_patterns(model);
    let dim = model.clifford_dim() * 2;
    let mut seen: HashSet<MonomialOperator> = HashSet::new();
    let mut queue: VecDeque<MonomialOperator> = VecDeque::new();
    for p in &patterns {
        let c = canonical(p);
        if seen.insert(c.clone()) {
            queue.push_back(c);
        }
    }
    while let Some(x) = queue.pop_front() {
        for g in &patterns {
            let y = canonical(&x.mul_unchecked(g));
            if !seen.contains(&y) {
                if seen.len() >= MAX_GENERATED || (seen.len() + 1) * dim > MAX_GENERATED_ENTRIES {
                    return Err(Error::Guard {
                        what: "generated operator count",
                        value: seen.len() + 1,
                        limit: MAX_GENERATED.min(MAX_GENERATED_ENTRIES / dim),
                    });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }

    let orbits = orbit_decomposition(model);
    let mut local = vec![0usize; dim];
    let per_sector = orbits
        .components
        .iter()
        .map(|members| {
            for (k, &i) in members.iter().enumerate() {
                local[i] = k;
            }
            let restricted: HashSet<MonomialOperator> = seen
                .iter()
                .map(|m| canonical(&restrict(m, members, &local)))
                .collect();
            independent_count(&restricted.into_iter().collect::<Vec<_>>())
        })
        .collect();
    let all: Vec<MonomialOperator> = seen.into_iter().collect();
    Ok(GeneratedCount {
        total: independent_count(&all),
        per_sector,
    })
}
