//! WebAssembly bindings for the demo page in `www/`.
//!
//! Each exported function returns a flat `Float64Array`; the page reshapes it.
//! The computations live in plain functions so they can be tested natively.

use wasm_bindgen::prelude::*;

use specfact::calogero::{ground_state_log, residual_report, ManyBodySystem};
use specfact::factorization::{delta_spectrum_with, regularized_spectrum_with};
use specfact::spectral::{circle_factorized_levels, circle_levels, CircleBranch};
use specfact::OneBodyModel;

/// Numeric code of a circle branch in sweep output.
pub fn branch_code(branch: CircleBranch) -> f64 {
    match branch {
        CircleBranch::Even => 0.0,
        CircleBranch::Odd => 1.0,
        CircleBranch::Interior => 2.0,
        CircleBranch::EdgeCos => 3.0,
        CircleBranch::EdgeCoupled => 4.0,
    }
}

/// `(alpha, eigenvalue, branch)` triples for `steps + 1` values of `α` in `[from, to]`.
pub fn sweep(from: f64, to: f64, steps: usize, kmax: f64, factorized: bool) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for i in 0..=steps {
        let alpha = if steps == 0 { from } else { from + (to - from) * i as f64 / steps as f64 };
        let levels = if factorized {
            circle_factorized_levels(alpha, kmax)
        } else {
            circle_levels(alpha, kmax)
        }
        .map_err(|e| e.to_string())?;
        for l in levels {
            for _ in 0..l.multiplicity {
                out.extend([alpha, l.eigenvalue, branch_code(l.branch)]);
            }
        }
    }
    Ok(out)
}

/// Lowest `levels` eigenvalues for each parameter value, row by row.
/// `kind` is `"delta"` (harmonic, deltas at the node of `ψ_1`) or `"eps"`.
pub fn limit(kind: &str, params: &[f64], levels: usize, grid: usize) -> Result<Vec<f64>, String> {
    let h = OneBodyModel::harmonic();
    let mut out = Vec::with_capacity(params.len() * levels);
    for &p in params {
        let r = match kind {
            "delta" => delta_spectrum_with(&h, 1, p, levels, grid),
            "eps" => regularized_spectrum_with(p, levels, grid),
            other => return Err(format!("unknown limit '{other}'")),
        }
        .map_err(|e| e.to_string())?;
        let mut v = r.expanded();
        v.resize(levels, f64::NAN);
        out.extend(v);
    }
    Ok(out)
}

fn system(model: &str, param: f64, lambda: f64) -> Result<ManyBodySystem, String> {
    let m = match model {
        "harmonic" => OneBodyModel::harmonic(),
        "poschl_teller" => OneBodyModel::poschl_teller(param).map_err(|e| e.to_string())?,
        "chebyshev" => OneBodyModel::chebyshev(),
        "gegenbauer" => OneBodyModel::gegenbauer(param).map_err(|e| e.to_string())?,
        "laguerre" => OneBodyModel::laguerre(param).map_err(|e| e.to_string())?,
        other => return Err(format!("model '{other}' is not available in the demo")),
    };
    ManyBodySystem::new(m, 2, lambda).map_err(|e| e.to_string())
}

/// `Ψ0(x, y) / max Ψ0` on a `res × res` grid over the model's sample box, rows in `y`.
/// Coincident points (where `Ψ0 = 0`) are reported as 0. The last two entries are the box ends.
pub fn heatmap(model: &str, param: f64, lambda: f64, res: usize) -> Result<Vec<f64>, String> {
    if res < 2 {
        return Err("resolution must be at least 2".into());
    }
    let sys = system(model, param, lambda)?;
    let (a, b) = sys.model().sample_box();
    let at = |i: usize| a + (b - a) * (i as f64 + 0.5) / res as f64;
    let mut logs = Vec::with_capacity(res * res);
    for j in 0..res {
        for i in 0..res {
            let (x, y) = (at(i), at(j));
            logs.push(if i == j { f64::NEG_INFINITY } else { ground_state_log(&sys, &[x, y]).map_err(|e| e.to_string())? });
        }
    }
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut out: Vec<f64> = logs.into_iter().map(|l| (l - top).exp()).collect();
    out.extend([a, b]);
    Ok(out)
}

/// `[max |H Ψ0/Ψ0 - E0|, E0]` over seeded two-particle configurations.
pub fn residual(model: &str, param: f64, lambda: f64, samples: usize, seed: u64) -> Result<Vec<f64>, String> {
    let sys = system(model, param, lambda)?;
    let r = residual_report(&sys, samples, seed).map_err(|e| e.to_string())?;
    let e0 = specfact::calogero::ground_energy(&sys).map_err(|e| e.to_string())?;
    Ok(vec![r.max_dev, e0])
}

#[wasm_bindgen]
pub fn alpha_sweep(from: f64, to: f64, steps: usize, kmax: f64, factorized: bool) -> Result<Vec<f64>, JsError> {
    sweep(from, to, steps, kmax, factorized).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn limit_curve(kind: &str, params: Vec<f64>, levels: usize, grid: usize) -> Result<Vec<f64>, JsError> {
    limit(kind, &params, levels, grid).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn ground_state_heatmap(model: &str, param: f64, lambda: f64, res: usize) -> Result<Vec<f64>, JsError> {
    heatmap(model, param, lambda, res).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn ground_state_residual(model: &str, param: f64, lambda: f64, samples: usize, seed: u64) -> Result<Vec<f64>, JsError> {
    residual(model, param, lambda, samples, seed).map_err(|e| JsError::new(&e))
}
