//! Classical orthogonal polynomials and the Pöschl–Teller bound-state polynomials.
//!
//! Every family is evaluated through its three-term recurrence
//! `p_{m} = (a_m x + b_m) p_{m-1} - c_m p_{m-2}`, differentiated term by term
//! so that value, first and second derivative come out of one pass.
//!
//! Hermite polynomials are carried in orthonormalized form,
//! `(2^n n!)^{-1/2} π^{-1/4} H_n(x)`, which keeps the recurrence finite far
//! beyond the degree where the physicists' `H_n` overflows.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A classical polynomial family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolyFamily {
    Hermite,
    Jacobi { alpha: f64, beta: f64 },
    Gegenbauer { alpha: f64 },
    Chebyshev,
    Laguerre { alpha: f64 },
}

/// Value and first two derivatives of a polynomial at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyValue {
    pub value: f64,
    pub derivative: f64,
    pub second: f64,
}

impl PolyFamily {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::ParameterDomain(msg));
        match *self {
            PolyFamily::Jacobi { alpha, beta } => {
                if !(alpha > -1.0 && beta > -1.0) {
                    return bad(format!("jacobi requires alpha, beta > -1 (got {alpha}, {beta})"));
                }
            }
            PolyFamily::Gegenbauer { alpha } => {
                if !(alpha > -0.5) || alpha == 0.0 {
                    return bad(format!("gegenbauer requires alpha > -1/2, alpha != 0 (got {alpha})"));
                }
            }
            PolyFamily::Laguerre { alpha } => {
                if !(alpha > -1.0) {
                    return bad(format!("laguerre requires alpha > -1 (got {alpha})"));
                }
            }
            PolyFamily::Hermite | PolyFamily::Chebyshev => {}
        }
        Ok(())
    }

    pub fn name(&self) -> &'static str {
        match self {
            PolyFamily::Hermite => "hermite",
            PolyFamily::Jacobi { .. } => "jacobi",
            PolyFamily::Gegenbauer { .. } => "gegenbauer",
            PolyFamily::Chebyshev => "chebyshev",
            PolyFamily::Laguerre { .. } => "laguerre",
        }
    }

    /// Interval carrying the orthogonality weight (and therefore all zeros).
    pub fn support(&self) -> (f64, f64) {
        match self {
            PolyFamily::Hermite => (f64::NEG_INFINITY, f64::INFINITY),
            PolyFamily::Laguerre { .. } => (0.0, f64::INFINITY),
            _ => (-1.0, 1.0),
        }
    }

    fn p0(&self) -> f64 {
        match self {
            PolyFamily::Hermite => PI.powf(-0.25),
            _ => 1.0,
        }
    }

    /// Coefficients `(a, b, c)` producing degree `m >= 1` from degrees `m-1`, `m-2`.
    /// For `m = 1` the `c` coefficient multiplies a zero polynomial.
    fn step(&self, m: usize) -> (f64, f64, f64) {
        let mf = m as f64;
        match *self {
            PolyFamily::Hermite => ((2.0 / mf).sqrt(), 0.0, ((mf - 1.0) / mf).sqrt()),
            PolyFamily::Chebyshev => {
                if m == 1 {
                    (1.0, 0.0, 0.0)
                } else {
                    (2.0, 0.0, 1.0)
                }
            }
            PolyFamily::Gegenbauer { alpha } => (
                2.0 * (mf + alpha - 1.0) / mf,
                0.0,
                (mf + 2.0 * alpha - 2.0) / mf,
            ),
            PolyFamily::Laguerre { alpha } => (
                -1.0 / mf,
                (2.0 * mf - 1.0 + alpha) / mf,
                (mf - 1.0 + alpha) / mf,
            ),
            PolyFamily::Jacobi { alpha, beta } => {
                if m == 1 {
                    return (0.5 * (alpha + beta + 2.0), 0.5 * (alpha - beta), 0.0);
                }
                let s = 2.0 * mf + alpha + beta;
                let d = 2.0 * mf * (mf + alpha + beta) * (s - 2.0);
                (
                    (s - 1.0) * s * (s - 2.0) / d,
                    (s - 1.0) * (alpha * alpha - beta * beta) / d,
                    2.0 * (mf + alpha - 1.0) * (mf + beta - 1.0) * s / d,
                )
            }
        }
    }

    /// Coefficient of `x^n` in the degree-`n` member.
    pub fn leading_coefficient(&self, n: usize) -> f64 {
        (1..=n).fold(self.p0(), |acc, m| acc * self.step(m).0)
    }

    /// `P_n(x)`, `P_n'(x)` and `P_n''(x)` from the recurrence.
    pub fn evaluate(&self, n: usize, x: f64) -> Result<PolyValue> {
        self.validate()?;
        if !x.is_finite() {
            return Err(Error::ParameterDomain(format!("non-finite argument {x}")));
        }
        let mut prev = (0.0, 0.0, 0.0);
        let mut cur = (self.p0(), 0.0, 0.0);
        for m in 1..=n {
            let (a, b, c) = self.step(m);
            let lin = a * x + b;
            let next = (
                lin * cur.0 - c * prev.0,
                a * cur.0 + lin * cur.1 - c * prev.1,
                2.0 * a * cur.1 + lin * cur.2 - c * prev.2,
            );
            if !(next.0.is_finite() && next.1.is_finite() && next.2.is_finite()) {
                return Err(Error::Overflow {
                    degree: n,
                    largest_safe: m - 1,
                });
            }
            prev = cur;
            cur = next;
        }
        Ok(PolyValue {
            value: cur.0,
            derivative: cur.1,
            second: cur.2,
        })
    }

    /// Values `P_0(x), ..., P_n(x)` in one sweep.
    pub fn evaluate_all(&self, n: usize, x: f64) -> Result<Vec<f64>> {
        self.validate()?;
        let mut out = Vec::with_capacity(n + 1);
        let mut prev = 0.0;
        let mut cur = self.p0();
        out.push(cur);
        for m in 1..=n {
            let (a, b, c) = self.step(m);
            let next = (a * x + b) * cur - c * prev;
            if !next.is_finite() {
                return Err(Error::Overflow {
                    degree: n,
                    largest_safe: m - 1,
                });
            }
            prev = cur;
            cur = next;
            out.push(cur);
        }
        Ok(out)
    }

    /// Finite bracket enclosing every zero of the degree-`n` member.
    fn zero_bracket(&self, n: usize) -> (f64, f64) {
        let nf = n as f64;
        match *self {
            PolyFamily::Hermite => {
                let r = (2.0 * nf + 1.0).sqrt() + 1.0;
                (-r, r)
            }
            PolyFamily::Laguerre { alpha } => (0.0, 4.0 * nf + 2.0 * alpha.abs() + 10.0),
            _ => (-1.0, 1.0),
        }
    }
}

/// `(P_n(x), P_n'(x))` for the given family.
pub fn poly_eval(family: PolyFamily, n: usize, x: f64) -> Result<(f64, f64)> {
    let v = family.evaluate(n, x)?;
    Ok((v.value, v.derivative))
}

const ZERO_TOLERANCE: f64 = 1e-12;

/// The `n` simple real zeros of `P_n`, increasing.
pub fn poly_zeros(family: PolyFamily, n: usize) -> Result<Vec<f64>> {
    family.validate()?;
    if n == 0 {
        return Err(Error::ParameterDomain("poly_zeros needs n >= 1".into()));
    }
    let (lo, hi) = family.zero_bracket(n);
    let eval = |degree: usize, x: f64| family.evaluate(degree, x);
    interlaced_zeros(&eval, n, lo, hi).map_err(|e| match e {
        Error::NumericalFailure { worst_residual, .. } => Error::NumericalFailure {
            message: format!("{} zeros of degree {n} did not converge", family.name()),
            worst_residual,
        },
        other => other,
    })
}

/// Zeros of the degree-`n` member of any orthogonal sequence on `(lo, hi)`.
///
/// Zeros of consecutive degrees interlace, so the zeros of degree `d-1`
/// (plus the bracket ends) enclose exactly one zero of degree `d` each;
/// every bracket is refined by bisection down to adjacent floats.
pub(crate) fn interlaced_zeros<F>(eval: &F, n: usize, lo: f64, hi: f64) -> Result<Vec<f64>>
where
    F: Fn(usize, f64) -> Result<PolyValue>,
{
    let mut zeros: Vec<f64> = Vec::new();
    for degree in 1..=n {
        let f = |x: f64| eval(degree, x).map(|v| v.value);
        let mut edges = Vec::with_capacity(degree + 1);
        edges.push(lo);
        edges.extend_from_slice(&zeros);
        edges.push(hi);
        let mut next = Vec::with_capacity(degree);
        for w in edges.windows(2) {
            next.push(bisect(&f, w[0], w[1])?);
        }
        zeros = next;
    }

    let mut worst = 0.0_f64;
    for &z in &zeros {
        let v = eval(n, z)?;
        let rel = v.value.abs() / (v.derivative.abs() * z.abs().max(1.0));
        worst = worst.max(rel);
    }
    if !(worst < ZERO_TOLERANCE) {
        return Err(Error::NumericalFailure {
            message: format!("zeros of degree {n} did not converge"),
            worst_residual: worst,
        });
    }
    Ok(zeros)
}

/// Bisection on a sign change, run until the bracket collapses to adjacent floats.
pub(crate) fn bisect<F>(f: &F, mut lo: f64, mut hi: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NumericalFailure {
            message: format!("no sign change on [{lo}, {hi}]"),
            worst_residual: flo.abs().min(fhi.abs()),
        });
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Polynomial part of the Pöschl–Teller eigenfunction as a function of `s = sinh x`:
/// `Σ_j (-1)^j n! (γ-n)! / (4^j (n-2j)! (γ+j-n)! j!) s^{n-2j}`.
///
/// The factorial ratio `(γ-n)!/(γ-n+j)!` is the reciprocal rising product
/// `(γ-n+1)(γ-n+2)…(γ-n+j)`, so no Γ evaluation is needed.
pub fn pt_polynomial(gamma: f64, n: usize, s: f64) -> Result<PolyValue> {
    check_pt(gamma, n)?;
    let mut value = 0.0;
    let mut derivative = 0.0;
    let mut second = 0.0;
    let mut coeff = 1.0; // j = 0 term: n!/n! = 1
    for j in 0..=n / 2 {
        if j > 0 {
            let jf = j as f64;
            let top = (n - 2 * j + 2) as f64 * (n - 2 * j + 1) as f64;
            coeff *= -top / (4.0 * jf * (gamma - n as f64 + jf));
        }
        let p = n - 2 * j;
        let pf = p as f64;
        value += coeff * s.powi(p as i32);
        if p >= 1 {
            derivative += coeff * pf * s.powi(p as i32 - 1);
        }
        if p >= 2 {
            second += coeff * pf * (pf - 1.0) * s.powi(p as i32 - 2);
        }
    }
    Ok(PolyValue {
        value,
        derivative,
        second,
    })
}

/// Zeros of the Pöschl–Teller polynomial in the variable `s = sinh x`.
pub fn pt_polynomial_zeros(gamma: f64, n: usize) -> Result<Vec<f64>> {
    check_pt(gamma, n)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    // Cauchy bound for the monic-leading polynomial: 1 + max |c_j|.
    let mut bound = 0.0_f64;
    let mut coeff = 1.0;
    for j in 1..=n / 2 {
        let jf = j as f64;
        let top = (n - 2 * j + 2) as f64 * (n - 2 * j + 1) as f64;
        coeff *= -top / (4.0 * jf * (gamma - n as f64 + jf));
        bound = bound.max(coeff.abs());
    }
    let r = 1.0 + bound + 1.0;
    let eval = |degree: usize, s: f64| pt_polynomial(gamma, degree, s);
    interlaced_zeros(&eval, n, -r, r)
}

/// Number of square-integrable levels `n < ⌊γ⌋` used by the Pöschl–Teller data.
pub fn pt_level_count(gamma: f64) -> usize {
    gamma.floor().max(0.0) as usize
}

fn check_pt(gamma: f64, n: usize) -> Result<()> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::ParameterDomain(format!(
            "poschl_teller requires gamma > 0 (got {gamma})"
        )));
    }
    let count = pt_level_count(gamma);
    if n >= count {
        return Err(Error::OutOfRange {
            index: n,
            max: count.saturating_sub(1),
        });
    }
    Ok(())
}

/// Pöschl–Teller eigenfunction value and logarithmic derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtValue {
    pub value: f64,
    /// `ψ'/ψ`; a signed infinity at a zero of `ψ`.
    pub log_derivative: f64,
}

/// `ψ_n(x) = cosh^{-γ}(x) P_n(sinh x)` for the `−∂² − γ(γ+1)/cosh² x` well.
pub fn pt_eigenfunction(gamma: f64, n: usize, x: f64) -> Result<PtValue> {
    let p = pt_polynomial(gamma, n, x.sinh())?;
    let c = x.cosh();
    let value = c.powf(-gamma) * p.value;
    let log_derivative = if p.value == 0.0 {
        f64::INFINITY.copysign(c * p.derivative)
    } else {
        c * p.derivative / p.value - gamma * x.tanh()
    };
    Ok(PtValue {
        value,
        log_derivative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn chebyshev_t2() {
        let (v, d) = poly_eval(PolyFamily::Chebyshev, 2, 0.5).unwrap();
        assert_abs_diff_eq!(v, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn hermite_ground_normalization() {
        let (v, _) = poly_eval(PolyFamily::Hermite, 0, 0.0).unwrap();
        assert_abs_diff_eq!(v, 0.751_125_544_464_942_5, epsilon = 1e-15);
    }

    #[test]
    fn laguerre_l1() {
        let (v, d) = poly_eval(PolyFamily::Laguerre { alpha: 0.0 }, 1, 1.0).unwrap();
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn hermite_normalized_matches_physicists_form() {
        // H_3 = 8x^3 - 12x, norm (2^3 3!)^{-1/2} π^{-1/4}
        let x = 0.37_f64;
        let expected = (8.0 * x.powi(3) - 12.0 * x) / (48.0_f64).sqrt() * PI.powf(-0.25);
        let v = PolyFamily::Hermite.evaluate(3, x).unwrap();
        assert_abs_diff_eq!(v.value, expected, epsilon = 1e-14);
        let d_expected = (24.0 * x * x - 12.0) / (48.0_f64).sqrt() * PI.powf(-0.25);
        assert_abs_diff_eq!(v.derivative, d_expected, epsilon = 1e-14);
        assert_abs_diff_eq!(v.second, 48.0 * x / (48.0_f64).sqrt() * PI.powf(-0.25), epsilon = 1e-14);
    }

    #[test]
    fn hermite_high_degree_stays_finite() {
        let v = PolyFamily::Hermite.evaluate(300, 3.0).unwrap();
        assert!(v.value.is_finite() && v.derivative.is_finite());
    }

    #[test]
    fn overflow_reports_largest_safe_degree() {
        let err = PolyFamily::Laguerre { alpha: 0.0 }
            .evaluate(2000, 1e200)
            .unwrap_err();
        match err {
            Error::Overflow { degree, largest_safe } => {
                assert_eq!(degree, 2000);
                assert!(largest_safe < 2000);
                assert!(PolyFamily::Laguerre { alpha: 0.0 }
                    .evaluate(largest_safe, 1e200)
                    .is_ok());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        for f in [
            PolyFamily::Jacobi { alpha: -1.0, beta: 0.0 },
            PolyFamily::Jacobi { alpha: 0.0, beta: -1.5 },
            PolyFamily::Gegenbauer { alpha: 0.0 },
            PolyFamily::Gegenbauer { alpha: -0.5 },
            PolyFamily::Laguerre { alpha: -1.0 },
        ] {
            assert!(matches!(f.evaluate(2, 0.1), Err(Error::ParameterDomain(_))));
        }
    }

    #[test]
    fn zero_examples() {
        let z = poly_zeros(PolyFamily::Chebyshev, 2).unwrap();
        assert_abs_diff_eq!(z[0], -std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(z[1], std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);

        let z = poly_zeros(PolyFamily::Hermite, 1).unwrap();
        assert_eq!(z.len(), 1);
        assert_abs_diff_eq!(z[0], 0.0, epsilon = 1e-300);

        let z = poly_zeros(PolyFamily::Hermite, 3).unwrap();
        let r = 1.5_f64.sqrt();
        assert_abs_diff_eq!(z[0], -r, epsilon = 1e-14);
        assert_abs_diff_eq!(z[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(z[2], r, epsilon = 1e-14);
    }

    #[test]
    fn zeros_need_positive_degree() {
        assert!(poly_zeros(PolyFamily::Hermite, 0).is_err());
    }

    #[test]
    fn leading_coefficients() {
        assert_abs_diff_eq!(PolyFamily::Chebyshev.leading_coefficient(4), 8.0);
        assert_abs_diff_eq!(
            PolyFamily::Laguerre { alpha: 0.3 }.leading_coefficient(3),
            -1.0 / 6.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            PolyFamily::Gegenbauer { alpha: 1.0 }.leading_coefficient(3),
            8.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn pt_examples() {
        let v = pt_eigenfunction(2.0, 0, 0.0).unwrap();
        assert_abs_diff_eq!(v.value, 1.0);
        assert_abs_diff_eq!(v.log_derivative, 0.0);

        for &x in &[-1.3, 0.4, 2.2] {
            let v = pt_eigenfunction(2.0, 1, x).unwrap();
            assert_abs_diff_eq!(v.value, x.cosh().powi(-2) * x.sinh(), epsilon = 1e-15);
            assert_abs_diff_eq!(
                v.log_derivative,
                1.0 / x.tanh() - 2.0 * x.tanh(),
                epsilon = 1e-13
            );
        }

        let v = pt_eigenfunction(2.5, 1, 1.0).unwrap();
        assert_abs_diff_eq!(v.value, 1.0_f64.cosh().powf(-2.5) * 1.0_f64.sinh(), epsilon = 1e-15);
        assert_abs_diff_eq!(v.value, 0.397320, epsilon = 1e-6);
    }

    #[test]
    fn pt_ground_log_derivative_is_tanh() {
        for &x in &[-3.0, -0.2, 0.9, 4.0] {
            let v = pt_eigenfunction(3.7, 0, x).unwrap();
            assert_eq!(v.log_derivative, -3.7 * x.tanh());
        }
    }

    #[test]
    fn pt_pole_at_node() {
        let v = pt_eigenfunction(3.0, 1, 0.0).unwrap();
        assert_eq!(v.value, 0.0);
        assert!(v.log_derivative.is_infinite());
    }

    #[test]
    fn pt_out_of_range() {
        assert!(matches!(
            pt_eigenfunction(2.5, 2, 0.3),
            Err(Error::OutOfRange { index: 2, max: 1 })
        ));
        assert!(matches!(
            pt_eigenfunction(-1.0, 0, 0.3),
            Err(Error::ParameterDomain(_))
        ));
    }
}
