//! The operators `H_n = Q_n^* Q_n + E_n` obtained by factorizing through the
//! excited state `ψ_n`. Their domain forces `u = 0` at the nodes of `ψ_n`, so
//! numerically they are the node-constrained discretizations, approached from
//! below by delta couplings `g δ(x - x_j)` and by the smooth regularization
//! `H^(ε)` of `H_1` for the harmonic oscillator.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::models::{ModelKind, OneBodyModel};
use crate::spectral::{
    discretize, discretize_potential, eigenvalues_refined, EndCondition, SpectralResult,
};

/// Default nominal grid size on the model's default box.
pub const DEFAULT_GRID: usize = 4000;
/// Grid used for `H^(ε)`, fine enough to resolve `ε ≥ 0.02`.
pub const REGULARIZED_GRID: usize = 16000;
/// The regularized peak must span at least this many grid spacings.
pub const PEAK_POINTS: f64 = 8.0;

pub const DEFAULT_G_LIST: [f64; 5] = [1.0, 10.0, 100.0, 1000.0, 10000.0];
pub const DEFAULT_EPS_LIST: [f64; 4] = [0.4, 0.2, 0.1, 0.05];

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::ParameterDomain("k must be at least 1".into()));
    }
    Ok(())
}

/// Lowest `k` eigenvalues of `H_n`: Dirichlet conditions at the nodes of `ψ_n`,
/// Richardson-extrapolated from grids `m` and `2m + 1`.
pub fn spectrum_hn_with(model: &OneBodyModel, n: usize, k: usize, m: usize) -> Result<SpectralResult> {
    check_k(k)?;
    let nodes = model.nodal_points(n)?;
    let coarse = discretize(model, model.default_box(), m, &nodes, &[])?;
    let fine = coarse.refined()?;
    eigenvalues_refined(&coarse, &fine, k)
}

pub fn spectrum_hn(model: &OneBodyModel, n: usize, k: usize) -> Result<SpectralResult> {
    spectrum_hn_with(model, n, k, DEFAULT_GRID)
}

fn require_harmonic(model: &OneBodyModel, operation: &str) -> Result<()> {
    if !matches!(model.kind(), ModelKind::Harmonic) {
        return Err(Error::Unsupported {
            model: model.name().to_string(),
            operation: operation.to_string(),
        });
    }
    Ok(())
}

/// Closed-form spectrum of harmonic `H_1`: `4j + 3`, twice, for `j < k`.
pub fn h1_exact_spectrum(model: &OneBodyModel, k: usize) -> Result<SpectralResult> {
    require_harmonic(model, "exact H_1 spectrum")?;
    check_k(k)?;
    let raw = (0..k)
        .flat_map(|j| {
            let e = 4.0 * j as f64 + 3.0;
            [(e, 0.0), (e, 0.0)]
        })
        .collect();
    Ok(SpectralResult::from_raw(raw, "exact"))
}

/// Eigenfunction `u_i` of harmonic `H_1`: `ψ_{2j+1}(x) sign(x)` for `i = 2j`
/// and `ψ_{2j+1}(x)` for `i = 2j + 1`, both with eigenvalue `4j + 3`.
pub fn h1_eigenfunction(model: &OneBodyModel, index: usize, x: f64) -> Result<f64> {
    require_harmonic(model, "exact H_1 eigenfunctions")?;
    let level = 2 * (index / 2) + 1;
    let psi = model.eigenfunction(level, x)?;
    Ok(if index.is_multiple_of(2) { psi * x.signum() } else { psi })
}

/// `x² + ε²(1 + 2ε² + 2x²)/(x² + ε²)²`, equal to `q² + q' + 3` with `q = -x + x/(x² + ε²)`.
pub fn regularized_potential(eps: f64) -> impl Fn(f64) -> f64 + Send + Sync + Clone {
    move |x: f64| {
        let e2 = eps * eps;
        let d = x * x + e2;
        x * x + e2 * (1.0 + 2.0 * e2 + 2.0 * x * x) / (d * d)
    }
}

pub fn regularized_spectrum_with(eps: f64, k: usize, m: usize) -> Result<SpectralResult> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::ParameterDomain(format!("epsilon must be positive (got {eps})")));
    }
    check_k(k)?;
    let bx = OneBodyModel::harmonic().default_box();
    let h = (bx.1 - bx.0) / (m as f64 + 1.0);
    if eps < PEAK_POINTS * h {
        return Err(Error::Resolution(format!(
            "epsilon {eps} spans fewer than {PEAK_POINTS} grid spacings of {h:.3e}; use a finer grid"
        )));
    }
    let ends = (EndCondition::Dirichlet, EndCondition::Dirichlet);
    let coarse = discretize_potential(Arc::new(regularized_potential(eps)), bx, m, &[], &[], ends)?;
    let fine = coarse.refined()?;
    eigenvalues_refined(&coarse, &fine, k)
}

/// Lowest `k` eigenvalues of `H^(ε)` on the default harmonic box.
pub fn regularized_spectrum(eps: f64, k: usize) -> Result<SpectralResult> {
    regularized_spectrum_with(eps, k, REGULARIZED_GRID)
}

pub fn delta_spectrum_with(
    model: &OneBodyModel,
    n: usize,
    g: f64,
    k: usize,
    m: usize,
) -> Result<SpectralResult> {
    check_k(k)?;
    if !(g >= 0.0 && g.is_finite()) {
        return Err(Error::ParameterDomain(format!("coupling must be finite and >= 0 (got {g})")));
    }
    let deltas: Vec<(f64, f64)> = model.nodal_points(n)?.into_iter().map(|z| (z, g)).collect();
    let coarse = discretize(model, model.default_box(), m, &[], &deltas)?;
    let fine = coarse.refined()?;
    eigenvalues_refined(&coarse, &fine, k)
}

/// Lowest `k` eigenvalues of `H^(g)_n`: strength-`g` deltas at the nodes of `ψ_n`.
pub fn delta_spectrum(model: &OneBodyModel, n: usize, g: f64, k: usize) -> Result<SpectralResult> {
    delta_spectrum_with(model, n, g, k, DEFAULT_GRID)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regularized_potential_matches_superpotential() {
        for &eps in &[0.1, 0.5, 1.0] {
            let v = regularized_potential(eps);
            for &x in &[-2.0, -0.3, 0.0, 0.05, 1.7] {
                let d = x * x + eps * eps;
                let q = -x + x / d;
                let dq = -1.0 + (eps * eps - x * x) / (d * d);
                assert!((v(x) - (q * q + dq + 3.0)).abs() < 1e-12 * v(x).abs().max(1.0));
            }
        }
    }

    #[test]
    fn h1_closed_form() {
        let h = OneBodyModel::harmonic();
        let r = h1_exact_spectrum(&h, 2).unwrap();
        assert_eq!(r.entries.len(), 2);
        assert_eq!((r.entries[0].eigenvalue, r.entries[0].multiplicity), (3.0, 2));
        assert_eq!((r.entries[1].eigenvalue, r.entries[1].multiplicity), (7.0, 2));
        let u0 = h1_eigenfunction(&h, 0, -1.0).unwrap();
        assert_eq!(u0, -h.eigenfunction(1, -1.0).unwrap());
        assert_eq!(u0, h.eigenfunction(1, 1.0).unwrap());
        assert!(h1_exact_spectrum(&OneBodyModel::chebyshev(), 1).is_err());
    }

    #[test]
    fn unresolved_epsilon() {
        assert!(matches!(
            regularized_spectrum_with(0.01, 1, 4000),
            Err(Error::Resolution(_))
        ));
    }
}
