//! Analytic spectra of `-∂²` on `(-π, π)` under the endpoint conditions
//! `u'(-π) = u'(π)`, `u(π) - u(-π) = c u'(π)` with `c = (2/α) tan(απ)`,
//! chosen so that `sin(αx)` satisfies them.

use std::f64::consts::PI;

use serde::Serialize;

use super::SpectralResult;
use crate::error::{Error, Result};
use crate::orthopoly::bisect;

/// Endpoint coupling constant `c = (2/α) tan(απ)`; infinite at half-integer `α`.
pub fn circle_coupling(alpha: f64) -> f64 {
    match half_multiple(alpha) {
        Some(m) if m % 2 == 0 => 0.0,
        Some(_) => f64::INFINITY,
        None => 2.0 / alpha * (alpha * PI).tan(),
    }
}

/// `Some(2α)` when `α` is a multiple of 1/2.
fn half_multiple(alpha: f64) -> Option<i64> {
    let m = (2.0 * alpha).round();
    ((2.0 * alpha - m).abs() < 1e-12).then_some(m as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CircleBranch {
    /// `cos(kx)`, integer `k`.
    Even,
    /// `sin(kx)` (or `sinh`) solving `tan(kπ)/k = tan(απ)/α`.
    Odd,
    /// Dirichlet piece of length `π/α` between two zeros of `sin(αx)`.
    Interior,
    /// Edge pair with `cos(kℓ) = 0`, antisymmetric across the ends.
    EdgeCos,
    /// Edge pair solving `tan(kℓ)/k = tan(απ)/α`.
    EdgeCoupled,
}

impl CircleBranch {
    pub fn as_str(self) -> &'static str {
        match self {
            CircleBranch::Even => "even",
            CircleBranch::Odd => "odd",
            CircleBranch::Interior => "interior",
            CircleBranch::EdgeCos => "edge-cos",
            CircleBranch::EdgeCoupled => "edge-coupled",
        }
    }
}

/// One eigenfunction. For a hyperbolic level `k` is the decay rate and the eigenvalue is `-k²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleLevel {
    pub k: f64,
    pub eigenvalue: f64,
    pub branch: CircleBranch,
    pub hyperbolic: bool,
    pub multiplicity: usize,
    /// `|α cos(απ) sin(kL) - sin(απ) k cos(kL)|` for coupled roots, zero for closed forms.
    pub residual: f64,
}

impl CircleLevel {
    fn exact(k: f64, branch: CircleBranch, multiplicity: usize) -> Self {
        CircleLevel {
            k,
            eigenvalue: k * k,
            branch,
            hyperbolic: false,
            multiplicity,
            residual: 0.0,
        }
    }
}

fn check(alpha: f64, k_max: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::ParameterDomain(format!("alpha must be positive (got {alpha})")));
    }
    if !(k_max >= 0.0 && k_max.is_finite()) {
        return Err(Error::ParameterDomain(format!("k_max must be finite and >= 0 (got {k_max})")));
    }
    Ok(())
}

/// Scaled transcendental relation on a piece of length `len`:
/// `α cos(απ) sin(k len) - sin(απ) k cos(k len)`.
fn coupled(alpha: f64, len: f64, k: f64) -> f64 {
    alpha * (alpha * PI).cos() * (k * len).sin() - (alpha * PI).sin() * k * (k * len).cos()
}

/// Roots of `tan(k len)/k = t`, `t = tan(απ)/α` finite, with `k ≤ k_max`,
/// plus the hyperbolic root of `tanh(κ len)/κ = t` when `0 < t < len`.
fn coupled_roots(alpha: f64, len: f64, k_max: f64, branch: CircleBranch) -> Result<Vec<CircleLevel>> {
    let t = (alpha * PI).tan() / alpha;
    let mut out = Vec::new();
    let f = |k: f64| Ok(coupled(alpha, len, k));
    let push = |out: &mut Vec<CircleLevel>, k: f64, hyperbolic: bool| {
        let residual = if hyperbolic {
            (alpha * (alpha * PI).cos() * (k * len).sinh() - (alpha * PI).sin() * k * (k * len).cosh())
                .abs()
        } else {
            coupled(alpha, len, k).abs()
        };
        out.push(CircleLevel {
            k,
            eigenvalue: if hyperbolic { -k * k } else { k * k },
            branch,
            hyperbolic,
            multiplicity: 1,
            residual,
        });
    };
    let tol = 1e-12 * len.max(1.0);
    if (t - len).abs() < tol {
        // linear zero mode
        push(&mut out, 0.0, false);
    } else if t > 0.0 && t < len {
        let g = |kappa: f64| {
            Ok(alpha * (alpha * PI).cos() * (kappa * len).sinh()
                - (alpha * PI).sin() * kappa * (kappa * len).cosh())
        };
        // tanh(κL)/κ falls from L to 0; bracket the crossing with t
        let mut hi = 1.0 / len;
        while (hi * len).tanh() / hi > t {
            hi *= 2.0;
        }
        let kappa = bisect(&g, 1e-9 * hi, hi)?;
        push(&mut out, kappa, true);
    } else if t > len {
        let hi = 0.5 * PI / len;
        let k = bisect(&f, 1e-9 * hi, hi)?;
        if k <= k_max {
            push(&mut out, k, false);
        }
    }
    let mut j = 1usize;
    loop {
        let lo = (j as f64 - 0.5) * PI / len;
        if lo > k_max {
            break;
        }
        let hi = (j as f64 + 0.5) * PI / len;
        let k = bisect(&f, lo, hi)?;
        if k <= k_max {
            push(&mut out, k, false);
        }
        j += 1;
    }
    for lvl in &out {
        if lvl.residual > 1e-10 * (1.0 + lvl.k) {
            return Err(Error::NumericalFailure {
                message: format!("transcendental root at k = {} not converged", lvl.k),
                worst_residual: lvl.residual,
            });
        }
    }
    Ok(out)
}

/// Every eigenfunction of the unconstrained circle operator with eigenvalue `≤ k_max²`.
pub fn circle_levels(alpha: f64, k_max: f64) -> Result<Vec<CircleLevel>> {
    check(alpha, k_max)?;
    let mut out = Vec::new();
    let kmax_int = k_max.floor() as usize;
    for k in 0..=kmax_int {
        out.push(CircleLevel::exact(k as f64, CircleBranch::Even, 1));
    }
    match half_multiple(alpha) {
        Some(m) if m % 2 == 0 => {
            for k in 1..=kmax_int {
                out.push(CircleLevel::exact(k as f64, CircleBranch::Odd, 1));
            }
        }
        Some(_) => {
            let mut j = 0usize;
            while j as f64 + 0.5 <= k_max {
                out.push(CircleLevel::exact(j as f64 + 0.5, CircleBranch::Odd, 1));
                j += 1;
            }
        }
        None => out.extend(coupled_roots(alpha, PI, k_max, CircleBranch::Odd)?),
    }
    sort_levels(&mut out);
    Ok(out)
}

/// Spectrum of the unconstrained circle operator with merged multiplicities.
pub fn circle_spectrum(alpha: f64, k_max: f64) -> Result<SpectralResult> {
    Ok(to_result(&circle_levels(alpha, k_max)?, "circle-analytic"))
}

/// Eigenfunctions of the factorized operator: Dirichlet conditions at every zero of
/// `sin(αx)` in `[-π, π]` on top of the coupled endpoint conditions.
pub fn circle_factorized_levels(alpha: f64, k_max: f64) -> Result<Vec<CircleLevel>> {
    check(alpha, k_max)?;
    let mut out = Vec::new();
    let interior_levels = |count: usize, out: &mut Vec<CircleLevel>| {
        if count == 0 {
            return;
        }
        let mut m = 1usize;
        while m as f64 * alpha <= k_max {
            out.push(CircleLevel::exact(m as f64 * alpha, CircleBranch::Interior, count));
            m += 1;
        }
    };
    let half = half_multiple(alpha);
    if let Some(m2) = half.filter(|m| m % 2 == 0) {
        // zeros at ±π as well: 2α equal Dirichlet pieces
        interior_levels(m2 as usize, &mut out);
        sort_levels(&mut out);
        return Ok(out);
    }
    let j_count = alpha.floor() as usize;
    interior_levels(2 * j_count, &mut out);
    let len = PI - j_count as f64 * PI / alpha;
    if half.is_some() {
        // c = ∞: u'(±π) = 0, each cos(kℓ) = 0 root twice
        let mut j = 0usize;
        while (j as f64 + 0.5) * PI / len <= k_max {
            out.push(CircleLevel::exact((j as f64 + 0.5) * PI / len, CircleBranch::EdgeCos, 2));
            j += 1;
        }
    } else {
        let mut j = 0usize;
        while (j as f64 + 0.5) * PI / len <= k_max {
            out.push(CircleLevel::exact((j as f64 + 0.5) * PI / len, CircleBranch::EdgeCos, 1));
            j += 1;
        }
        out.extend(coupled_roots(alpha, len, k_max, CircleBranch::EdgeCoupled)?);
    }
    sort_levels(&mut out);
    Ok(out)
}

/// Spectrum of the factorized circle operator with merged multiplicities.
pub fn circle_factorized_spectrum(alpha: f64, k_max: f64) -> Result<SpectralResult> {
    Ok(to_result(
        &circle_factorized_levels(alpha, k_max)?,
        "circle-factorized-analytic",
    ))
}

fn sort_levels(levels: &mut [CircleLevel]) {
    levels.sort_by(|a, b| a.eigenvalue.total_cmp(&b.eigenvalue).then(a.branch.as_str().cmp(b.branch.as_str())));
}

fn to_result(levels: &[CircleLevel], method: &str) -> SpectralResult {
    let raw = levels
        .iter()
        .flat_map(|l| std::iter::repeat_n((l.eigenvalue, 0.0), l.multiplicity))
        .collect();
    SpectralResult::from_raw(raw, method)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expanded(r: &SpectralResult) -> Vec<f64> {
        r.expanded()
    }

    #[test]
    fn integer_alpha_is_periodic() {
        let r = circle_spectrum(1.0, 3.0).unwrap();
        assert_eq!(expanded(&r), vec![0.0, 1.0, 1.0, 4.0, 4.0, 9.0, 9.0]);
    }

    #[test]
    fn half_integer_odd_branch() {
        let lv = circle_levels(0.5, 3.0).unwrap();
        let odd: Vec<f64> = lv
            .iter()
            .filter(|l| l.branch == CircleBranch::Odd)
            .map(|l| l.eigenvalue)
            .collect();
        assert_eq!(odd, vec![0.25, 2.25, 6.25]);
    }

    #[test]
    fn generic_alpha_contains_alpha() {
        let alpha = 0.75;
        let lv = circle_levels(alpha, 6.0).unwrap();
        let odd: Vec<&CircleLevel> = lv.iter().filter(|l| l.branch == CircleBranch::Odd).collect();
        assert!(odd.iter().any(|l| (l.k - alpha).abs() < 1e-12));
        let t = (alpha * PI).tan() / alpha;
        for l in odd {
            assert!(l.residual < 1e-10);
            assert!(((l.k * PI).tan() / l.k - t).abs() < 1e-8);
        }
    }

    #[test]
    fn sinh_level_below_threshold() {
        // t = tan(απ)/α lies in (0, π) for α slightly above 1
        let alpha = 1.1;
        let t = (alpha * PI).tan() / alpha;
        assert!(t > 0.0 && t < PI);
        let lv = circle_levels(alpha, 2.0).unwrap();
        let neg: Vec<_> = lv.iter().filter(|l| l.hyperbolic).collect();
        assert_eq!(neg.len(), 1);
        assert!(neg[0].eigenvalue < 0.0);
        let kappa = neg[0].k;
        assert!(((kappa * PI).tanh() / kappa - t).abs() < 1e-10);
    }

    #[test]
    fn factorized_exact_cases() {
        let r = circle_factorized_spectrum(1.0, 3.0).unwrap();
        assert_eq!(expanded(&r), vec![1.0, 1.0, 4.0, 4.0, 9.0, 9.0]);
        let r = circle_factorized_spectrum(0.5, 2.6).unwrap();
        assert_eq!(expanded(&r), vec![0.25, 0.25, 2.25, 2.25, 6.25, 6.25]);
        let r = circle_factorized_spectrum(2.0, 4.0).unwrap();
        assert_eq!(expanded(&r), vec![4.0; 4].into_iter().chain(vec![16.0; 4]).collect::<Vec<_>>());
    }

    #[test]
    fn factorized_generic_contains_alpha() {
        let r = circle_factorized_levels(1.3, 5.0).unwrap();
        assert!(r.iter().any(|l| (l.k - 1.3).abs() < 1e-12 && l.branch == CircleBranch::Interior));
        // sin(1.3 x) restricted to the edge pieces solves the coupled relation with k = α
        assert!(r
            .iter()
            .any(|l| l.branch == CircleBranch::EdgeCoupled && (l.k - 1.3).abs() < 1e-10));
    }

    #[test]
    fn coupling_constant() {
        assert_eq!(circle_coupling(1.0), 0.0);
        assert!(circle_coupling(0.5).is_infinite());
        let a = 0.75;
        let c = circle_coupling(a);
        // sin(αx): u(π) - u(-π) = 2 sin(απ), u'(π) = α cos(απ)
        assert!((2.0 * (a * PI).sin() - c * a * (a * PI).cos()).abs() < 1e-14);
    }
}
