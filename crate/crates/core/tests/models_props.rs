//! One-body catalogue: factorization identity, nodes, parity, user specs.

use rand::Rng;
use specfact::calogero::config_rng;
use specfact::models::load_model_specs;
use specfact::{Error, OneBodyModel};

fn real_eta_models() -> Vec<OneBodyModel> {
    vec![
        OneBodyModel::harmonic(),
        OneBodyModel::poschl_teller(5.0).unwrap(),
        OneBodyModel::poschl_teller(6.5).unwrap(),
        OneBodyModel::jacobi(1.0, 2.0).unwrap(),
        OneBodyModel::gegenbauer(1.5).unwrap(),
        OneBodyModel::chebyshev(),
        OneBodyModel::laguerre(0.5).unwrap(),
    ]
}

#[test]
fn factorization_identity_pointwise() {
    let mut rng = config_rng(2, 0);
    for model in real_eta_models() {
        let top = model.n_max().unwrap_or(5).min(5);
        let (a, b) = model.sample_box();
        for n in 0..=top {
            let nodes = model.nodal_points(n).unwrap();
            let mut tested = 0;
            while tested < 100 {
                let x = rng.random_range(a..b);
                if nodes.iter().any(|z| (z - x).abs() < 1e-3) {
                    continue;
                }
                let (q, dq) = model.log_derivative_pair(n, x).unwrap();
                let lhs = model.potential(x) - model.energy(n);
                let rhs = q * q + dq;
                assert!(
                    (lhs - rhs).abs() < 1e-8 * lhs.abs().max(1.0),
                    "{} n={n} x={x}: {lhs} vs {rhs}",
                    model.label()
                );
                tested += 1;
            }
        }
    }
}

#[test]
fn nodes_count_and_interlace() {
    for model in real_eta_models() {
        let top = model.n_max().unwrap_or(8).min(8);
        for n in 1..top {
            let z = model.nodal_points(n).unwrap();
            let z1 = model.nodal_points(n + 1).unwrap();
            assert_eq!(z.len(), n);
            assert_eq!(z1.len(), n + 1);
            for j in 0..n {
                assert!(z1[j] < z[j] && z[j] < z1[j + 1], "{} n={n}", model.label());
            }
            for &x in &z {
                let psi = model.eigenfunction(n, x).unwrap();
                let scale = model.eigenfunction(n, x + 0.05).unwrap().abs();
                assert!(psi.abs() < 1e-9 * scale.max(1e-3), "{} n={n}", model.label());
            }
        }
    }
}

#[test]
fn harmonic_parity() {
    let h = OneBodyModel::harmonic();
    let mut rng = config_rng(2, 1);
    for n in 0..20 {
        for _ in 0..20 {
            let x: f64 = rng.random_range(-5.0..5.0);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let d = h.eigenfunction(n, -x).unwrap() - sign * h.eigenfunction(n, x).unwrap();
            assert!(d.abs() < 1e-12, "n={n} x={x}: {d}");
        }
    }
}

#[test]
fn custom_model_reproduces_harmonic() {
    let json = r#"[{"name": "osc", "family": "hermite", "params": {},
        "domain": ["-inf", "inf"], "w": "x^2/2", "eta": "x", "E": "2*n + 1"}]"#;
    let models = load_model_specs(json).unwrap();
    let m = &models[0];
    let h = OneBodyModel::harmonic();
    for &x in &[-2.2, -0.4, 0.9, 3.1] {
        assert!((m.potential(x) - x * x).abs() < 1e-12);
        for n in 0..6 {
            let a = m.eigenfunction(n, x).unwrap();
            let b = h.eigenfunction(n, x).unwrap();
            assert!((a - b).abs() < 1e-12, "n={n} x={x}: {a} vs {b}");
            assert!(m.one_body_residual(n, x).unwrap().abs() < 1e-9);
        }
    }
}

#[test]
fn custom_model_parse_error_has_position() {
    let json = r#"{"name": "bad", "family": "hermite", "domain": ["-inf", "inf"],
        "w": "x^2 / (", "eta": "x", "E": "2*n+1"}"#;
    match load_model_specs(json) {
        Err(Error::Parse { position, .. }) => assert_eq!(position, 7),
        other => panic!("expected a parse error, got {other:?}"),
    }
}
