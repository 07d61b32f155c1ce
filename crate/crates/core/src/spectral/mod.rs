//! Finite-difference spectra of `-∂² + V` with node constraints, point
//! interactions and the coupled endpoint conditions of the circle model.
//!
//! Discretization is the lumped-mass linear finite-element form, which on a
//! uniform grid is the familiar `(-u_{i-1} + 2u_i - u_{i+1})/h²` stencil.
//! Nodes and delta positions are grid breakpoints, so each one sits exactly
//! on a grid point and the `O(h²)` error expansion survives; that is what
//! makes two-grid Richardson extrapolation valid.

mod circle;
mod discretize;
mod sturm;

use serde::Serialize;

pub use circle::{
    circle_coupling, circle_factorized_levels, circle_factorized_spectrum, circle_levels,
    circle_spectrum, CircleBranch, CircleLevel,
};
pub use discretize::{
    discretize, discretize_circle, discretize_potential, CornerCoupling, EndCondition, Grid,
    Potential, TridiagonalOperator,
};
pub use sturm::{
    count_below, eigenvector, lowest_eigenvalues, matrix_eigenvalues, matrix_eigenvector,
};

use crate::error::Result;

/// One distinct eigenvalue with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralEntry {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub error_estimate: f64,
}

/// Sorted eigenvalues with clustered values merged.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub entries: Vec<SpectralEntry>,
    pub method: String,
}

/// Minimum gap below which two eigenvalues count as one degenerate level.
pub const DEGENERACY_FLOOR: f64 = 1e-6;

impl SpectralResult {
    /// Merge raw `(eigenvalue, error)` pairs; neighbours closer than
    /// `max(1e-6, 10 × error)` collapse into one entry.
    pub fn from_raw(mut raw: Vec<(f64, f64)>, method: impl Into<String>) -> Self {
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut entries: Vec<SpectralEntry> = Vec::new();
        let mut cluster: Vec<(f64, f64)> = Vec::new();
        let flush = |cluster: &mut Vec<(f64, f64)>, entries: &mut Vec<SpectralEntry>| {
            if cluster.is_empty() {
                return;
            }
            let n = cluster.len();
            let mean = cluster.iter().map(|c| c.0).sum::<f64>() / n as f64;
            let spread = cluster.last().unwrap().0 - cluster[0].0;
            let err = cluster.iter().map(|c| c.1).fold(0.0, f64::max);
            entries.push(SpectralEntry {
                eigenvalue: mean,
                multiplicity: n,
                error_estimate: err.max(0.5 * spread),
            });
            cluster.clear();
        };
        for (value, err) in raw {
            if let Some(&(last, last_err)) = cluster.last() {
                let tol = DEGENERACY_FLOOR.max(10.0 * err.max(last_err));
                if value - last > tol {
                    flush(&mut cluster, &mut entries);
                }
            }
            cluster.push((value, err));
        }
        flush(&mut cluster, &mut entries);
        SpectralResult {
            entries,
            method: method.into(),
        }
    }

    /// Eigenvalues repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.eigenvalue, e.multiplicity))
            .collect()
    }

    pub fn lowest(&self) -> Option<&SpectralEntry> {
        self.entries.first()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }
}

/// The `k` lowest eigenvalues of `op`, without an error estimate.
pub fn eigenvalues(op: &TridiagonalOperator, k: usize) -> Result<SpectralResult> {
    let raw = lowest_eigenvalues(op, k)?;
    Ok(SpectralResult::from_raw(
        raw.into_iter().map(|v| (v, 0.0)).collect(),
        "sturm-bisection",
    ))
}

/// Richardson-extrapolated `k` lowest eigenvalues from a coarse operator and its
/// refinement (every segment's spacing halved). The error estimate is the
/// distance between the extrapolated and the fine-grid value.
pub fn eigenvalues_refined(
    coarse: &TridiagonalOperator,
    fine: &TridiagonalOperator,
    k: usize,
) -> Result<SpectralResult> {
    let ec = lowest_eigenvalues(coarse, k)?;
    let ef = lowest_eigenvalues(fine, k)?;
    let raw = ec
        .iter()
        .zip(&ef)
        .map(|(&c, &f)| {
            let r = (4.0 * f - c) / 3.0;
            (r, (r - f).abs())
        })
        .collect();
    Ok(SpectralResult::from_raw(raw, "sturm-bisection+richardson"))
}
