use crate::error::{Error, Result};

use super::TridiagonalOperator;

/// Number of eigenvalues of the symmetric tridiagonal matrix `(d, e)` strictly below `tau`,
/// from the signs of the LDLᵀ pivots of `T - τI`.
pub fn count_below(d: &[f64], e: &[f64], tau: f64) -> usize {
    let pivmin = pivot_floor(e);
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let coupling = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] / q };
        q = d[i] - tau - coupling;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn pivot_floor(e: &[f64]) -> f64 {
    let emax = e.iter().fold(1.0f64, |m, &v| m.max(v * v));
    f64::MIN_POSITIVE * emax
}

fn gershgorin(d: &[f64], e: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..d.len() {
        let r = if i > 0 { e[i - 1].abs() } else { 0.0 }
            + if i + 1 < d.len() { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    let pad = 1e-12 * lo.abs().max(hi.abs()).max(1.0);
    (lo - pad, hi + pad)
}

/// The `k` lowest eigenvalues of `(d, e)` in ascending order, by bisection on the Sturm count.
pub fn matrix_eigenvalues(d: &[f64], e: &[f64], k: usize) -> Result<Vec<f64>> {
    let n = d.len();
    if e.len() + 1 != n.max(1) {
        return Err(Error::Consistency(format!(
            "off-diagonal length {} does not match dimension {n}",
            e.len()
        )));
    }
    if k == 0 {
        return Err(Error::ParameterDomain("k must be at least 1".into()));
    }
    if k > n {
        return Err(Error::OutOfRange {
            index: k,
            max: n,
        });
    }
    if d.iter().chain(e).any(|v| !v.is_finite()) {
        return Err(Error::NumericalFailure {
            message: "matrix has non-finite entries".into(),
            worst_residual: f64::INFINITY,
        });
    }
    let (glo, ghi) = gershgorin(d, e);
    if count_below(d, e, glo) != 0 || count_below(d, e, ghi) != n {
        return Err(Error::NumericalFailure {
            message: "Gershgorin bracket does not enclose the spectrum".into(),
            worst_residual: 0.0,
        });
    }
    let mut out = Vec::with_capacity(k);
    let mut lo_floor = glo;
    for j in 0..k {
        // λ_j is the smallest τ with count_below(τ) > j
        let mut lo = lo_floor;
        let mut hi = ghi;
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 1e-13 * mid.abs().max(1.0) {
                break;
            }
            if count_below(d, e, mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let value = 0.5 * (lo + hi);
        out.push(value);
        lo_floor = lo;
    }
    Ok(out)
}

/// The `k` lowest eigenvalues of the operator matrix.
pub fn lowest_eigenvalues(op: &TridiagonalOperator, k: usize) -> Result<Vec<f64>> {
    matrix_eigenvalues(&op.diagonal, &op.offdiagonal, k)
}

/// Eigenvector of `(d, e)` near `lambda` by inverse iteration, normalized to unit length.
pub fn matrix_eigenvector(d: &[f64], e: &[f64], lambda: f64) -> Result<Vec<f64>> {
    let n = d.len();
    if n == 0 {
        return Err(Error::ParameterDomain("empty matrix".into()));
    }
    let scale = d.iter().chain(e).fold(1.0f64, |m, &v| m.max(v.abs()));
    let shift = lambda + 1e-10 * scale.max(lambda.abs());
    let lu = TridiagonalLu::factor(d, e, shift);
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.37 * ((i as f64) * 0.618).sin()).collect();
    normalize(&mut v);
    for _ in 0..6 {
        lu.solve(&mut v);
        normalize(&mut v);
    }
    let resid = residual_norm(d, e, &v, lambda);
    if !resid.is_finite() {
        return Err(Error::NumericalFailure {
            message: "inverse iteration diverged".into(),
            worst_residual: resid,
        });
    }
    Ok(v)
}

/// Eigenfunction values `u(x_i)` on the operator grid for an eigenvalue `lambda`,
/// normalized so that `Σ M_i u_i² = 1` (the discrete `L²` norm).
pub fn eigenvector(op: &TridiagonalOperator, lambda: f64) -> Result<Vec<f64>> {
    let y = matrix_eigenvector(&op.diagonal, &op.offdiagonal, lambda)?;
    Ok(y
        .iter()
        .zip(&op.grid.masses)
        .map(|(v, m)| v / m.sqrt())
        .collect())
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

fn residual_norm(d: &[f64], e: &[f64], v: &[f64], lambda: f64) -> f64 {
    let n = d.len();
    let mut s = 0.0;
    for i in 0..n {
        let mut r = (d[i] - lambda) * v[i];
        if i > 0 {
            r += e[i - 1] * v[i - 1];
        }
        if i + 1 < n {
            r += e[i] * v[i + 1];
        }
        s += r * r;
    }
    s.sqrt()
}

/// LU factorization of `T - σI` with partial pivoting.
struct TridiagonalLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    fn factor(d: &[f64], e: &[f64], sigma: f64) -> Self {
        let n = d.len();
        let mut dl = e.to_vec();
        let mut dd: Vec<f64> = d.iter().map(|v| v - sigma).collect();
        let mut du = e.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if dd[i].abs() >= dl[i].abs() {
                if dd[i] != 0.0 {
                    let fact = dl[i] / dd[i];
                    dl[i] = fact;
                    dd[i + 1] -= fact * du[i];
                }
            } else {
                let fact = dd[i] / dl[i];
                dd[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = dd[i + 1];
                dd[i + 1] = temp - fact * dd[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        let tiny = f64::EPSILON * d.iter().fold(1.0f64, |m, &v| m.max(v.abs()));
        for v in dd.iter_mut() {
            if v.abs() < tiny {
                *v = if *v < 0.0 { -tiny } else { tiny };
            }
        }
        TridiagonalLu {
            dl,
            d: dd,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}
