//! Recurrence values against explicit series, derivatives, zeros, and the
//! Pöschl–Teller eigenfunctions against the Schrödinger equation.

use rand::Rng;
use specfact::calogero::config_rng;
use specfact::orthopoly::{poly_eval, poly_zeros, pt_eigenfunction};
use specfact::PolyFamily;
use statrs::function::gamma::{gamma, ln_gamma};

fn binom(a: f64, k: usize) -> f64 {
    // generalized binomial (a choose k), a > k - 1
    (ln_gamma(a + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma(a - k as f64 + 1.0)).exp()
}

fn fact(n: usize) -> f64 {
    gamma(n as f64 + 1.0)
}

/// Series value and the sum of absolute terms (the scale against which rounding is measured).
fn series(family: PolyFamily, n: usize, x: f64) -> (f64, f64) {
    let mut terms = Vec::new();
    match family {
        PolyFamily::Hermite => {
            let norm = (2f64.powi(n as i32) * fact(n) * std::f64::consts::PI.sqrt()).sqrt();
            for m in 0..=n / 2 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                terms.push(sign * fact(n) / (fact(m) * fact(n - 2 * m)) * (2.0 * x).powi((n - 2 * m) as i32) / norm);
            }
        }
        PolyFamily::Jacobi { alpha, beta } => {
            for s in 0..=n {
                terms.push(
                    binom(n as f64 + alpha, n - s)
                        * binom(n as f64 + beta, s)
                        * ((x - 1.0) / 2.0).powi(s as i32)
                        * ((x + 1.0) / 2.0).powi((n - s) as i32),
                );
            }
        }
        PolyFamily::Gegenbauer { alpha } => {
            for k in 0..=n / 2 {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let mag = (ln_gamma(n as f64 - k as f64 + alpha) - ln_gamma(alpha)).exp()
                    / (fact(k) * fact(n - 2 * k));
                terms.push(sign * mag * (2.0 * x).powi((n - 2 * k) as i32));
            }
        }
        PolyFamily::Chebyshev => {
            let v = (n as f64 * x.acos()).cos();
            return (v, 1.0);
        }
        PolyFamily::Laguerre { alpha } => {
            for k in 0..=n {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                terms.push(sign * binom(n as f64 + alpha, n - k) * x.powi(k as i32) / fact(k));
            }
        }
    }
    (terms.iter().sum(), terms.iter().map(|t| t.abs()).sum())
}

fn families() -> Vec<(PolyFamily, (f64, f64))> {
    vec![
        (PolyFamily::Hermite, (-4.0, 4.0)),
        (PolyFamily::Jacobi { alpha: 1.0, beta: 2.0 }, (-1.0, 1.0)),
        (PolyFamily::Jacobi { alpha: -0.5, beta: 0.7 }, (-1.0, 1.0)),
        (PolyFamily::Gegenbauer { alpha: 1.5 }, (-1.0, 1.0)),
        (PolyFamily::Gegenbauer { alpha: 0.25 }, (-1.0, 1.0)),
        (PolyFamily::Chebyshev, (-1.0, 1.0)),
        (PolyFamily::Laguerre { alpha: 0.5 }, (0.0, 12.0)),
    ]
}

#[test]
fn recurrence_matches_series() {
    let mut rng = config_rng(1, 0);
    for (family, (a, b)) in families() {
        for n in 0..=30 {
            for _ in 0..50 {
                let x = rng.random_range(a..b);
                let (p, _) = poly_eval(family, n, x).unwrap();
                let (s, scale) = series(family, n, x);
                let err = (p - s).abs() / s.abs().max(1e-300);
                // relative to the value, or to the series' own rounding scale when it cancels
                assert!(
                    err < 1e-10 || (p - s).abs() < 1e-13 * scale,
                    "{family:?} n={n} x={x}: recurrence {p}, series {s}"
                );
            }
        }
    }
}

#[test]
fn derivative_is_second_order_consistent() {
    for (family, (a, b)) in families() {
        let x = a + 0.37 * (b - a);
        for n in [3, 7, 12] {
            let (_, d) = poly_eval(family, n, x).unwrap();
            let fd = |h: f64| {
                let (p1, _) = poly_eval(family, n, x + h).unwrap();
                let (p0, _) = poly_eval(family, n, x - h).unwrap();
                (p1 - p0) / (2.0 * h)
            };
            let h = 1e-3 * (b - a) / 2.0;
            let e1 = (fd(h) - d).abs();
            let e2 = (fd(h / 2.0) - d).abs();
            let order = (e1 / e2).log2();
            assert!(order >= 1.9, "{family:?} n={n}: observed order {order}");
        }
    }
}

#[test]
fn zeros_are_interior_and_increasing() {
    for (family, _) in families() {
        let (lo, hi) = family.support();
        for n in 1..=25 {
            let z = poly_zeros(family, n).unwrap();
            assert_eq!(z.len(), n);
            assert!(z.windows(2).all(|w| w[1] > w[0]), "{family:?} n={n}");
            assert!(z.iter().all(|&t| t > lo && t < hi), "{family:?} n={n}: {z:?}");
            for &t in &z {
                let (p, dp) = poly_eval(family, n, t).unwrap();
                assert!(p.abs() < 1e-9 * dp.abs().max(1.0), "{family:?} n={n} zero {t}: {p}");
            }
        }
    }
}

#[test]
fn poschl_teller_solves_schrodinger() {
    let mut rng = config_rng(1, 1);
    for gamma_ in [2.5, 4.0, 6.3] {
        let v = |x: f64| -gamma_ * (gamma_ + 1.0) / x.cosh().powi(2);
        for n in 0..(gamma_.floor() as usize) {
            let e = -(gamma_ - n as f64).powi(2);
            for _ in 0..20 {
                let x: f64 = rng.random_range(-3.0..3.0);
                let psi = |t: f64| pt_eigenfunction(gamma_, n, t).unwrap().value;
                let p0 = psi(x);
                if p0.abs() < 1e-3 * psi(0.0).abs().max(psi(0.5).abs()) {
                    continue;
                }
                // sixth-order central second difference
                let h = 3e-3;
                let d2 = (2.0 * psi(x + 3.0 * h) - 27.0 * psi(x + 2.0 * h) + 270.0 * psi(x + h)
                    - 490.0 * p0
                    + 270.0 * psi(x - h)
                    - 27.0 * psi(x - 2.0 * h)
                    + 2.0 * psi(x - 3.0 * h))
                    / (180.0 * h * h);
                let r = (-d2 + v(x) * p0 - e * p0) / p0;
                assert!(r.abs() < 1e-8, "gamma={gamma_} n={n} x={x}: residual {r}");
            }
        }
    }
}
