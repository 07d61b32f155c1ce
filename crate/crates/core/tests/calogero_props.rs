//! The many-body construction: residual flatness, `W_0` bookkeeping,
//! functional identities and the fermion point `λ = 1`.

use specfact::calogero::{
    canonical_w0, config_rng, ground_energy, local_energy, pair_potential, random_configuration,
    random_points_with_gap, residual, triple_identity, ManyBodySystem, TripleKind,
};
use specfact::manybody::fermion_ground_energy;
use specfact::OneBodyModel;

fn models() -> Vec<OneBodyModel> {
    vec![
        OneBodyModel::harmonic(),
        OneBodyModel::poschl_teller(5.0).unwrap(),
        OneBodyModel::jacobi(1.0, 2.0).unwrap(),
        OneBodyModel::gegenbauer(1.5).unwrap(),
        OneBodyModel::chebyshev(),
        OneBodyModel::laguerre(0.5).unwrap(),
    ]
}

#[test]
fn residual_is_flat() {
    for model in models() {
        for n in 2..=4 {
            for lam in [0.5, 1.0, 1.5, 2.0] {
                let sys = ManyBodySystem::new(model.clone(), n, lam).unwrap();
                let e = ground_energy(&sys).unwrap();
                let tol = 1e-8 * e.abs().max(1.0);
                let mut rng = config_rng(4, n as u64);
                let vals: Vec<f64> = (0..100)
                    .map(|_| local_energy(&sys, &random_configuration(&model, n, &mut rng)).unwrap())
                    .collect();
                let mean = vals.iter().sum::<f64>() / vals.len() as f64;
                let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / vals.len() as f64).sqrt();
                assert!(sd < tol, "{} N={n} lambda={lam}: sd {sd:.2e}", model.label());
                assert!((mean - e).abs() < tol, "{} N={n} lambda={lam}: mean {mean} vs {e}", model.label());
            }
        }
    }
}

#[test]
fn residual_is_invariant_under_w0_shift() {
    let mut rng = config_rng(4, 100);
    for model in models() {
        let base = ManyBodySystem::new(model.clone(), 3, 1.5).unwrap();
        for delta in [-2.0, 0.5, 3.0] {
            let shifted = ManyBodySystem::with_w0(model.clone(), 3, 1.5, base.w0() + delta).unwrap();
            assert_ne!(ground_energy(&base).unwrap(), ground_energy(&shifted).unwrap());
            for _ in 0..20 {
                let x = random_configuration(&model, 3, &mut rng);
                let a = residual(&base, &x).unwrap();
                let b = residual(&shifted, &x).unwrap();
                let scale = ground_energy(&base).unwrap().abs().max(1.0);
                assert!((a - b).abs() < 1e-12 * scale, "{} delta={delta}: {a} vs {b}", model.label());
            }
        }
    }
}

#[test]
fn generic_triple_sums_are_constant() {
    let cases = [
        (OneBodyModel::harmonic(), 0.0, (-3.0, 3.0)),
        (OneBodyModel::poschl_teller(3.0).unwrap(), 1.0, (-3.0, 3.0)),
        (OneBodyModel::chebyshev(), -1.0, (0.1, 3.0)),
    ];
    for (i, (model, constant, bx)) in cases.into_iter().enumerate() {
        let kind = TripleKind::Generic(model.clone());
        let mut rng = config_rng(4, 200 + i as u64);
        for _ in 0..1000 {
            let x = random_points_with_gap(&mut rng, bx, 3, 0.1);
            let r = triple_identity(&kind, x[0], x[1], x[2]).unwrap();
            assert!((r.expected - constant).abs() < 1e-12, "{}: {}", model.label(), r.expected);
            assert!((r.value - constant).abs() < 1e-11, "{} at {x:?}: {}", model.label(), r.value);
        }
    }
}

#[test]
fn fermion_point_matches_free_fermions() {
    let mut all = models();
    all.push(OneBodyModel::poschl_teller(6.5).unwrap());
    for model in all {
        let top = model.n_max().map_or(5, |m| (m + 1).min(5));
        for n in 1..=top {
            let sys = ManyBodySystem::new(model.clone(), n, 1.0).unwrap();
            let a = ground_energy(&sys).unwrap();
            let b = fermion_ground_energy(&model, n).unwrap();
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{} N={n}: {a} vs {b}", model.label());
        }
    }
}

#[test]
fn chebyshev_pair_potential_trig_form() {
    let model = OneBodyModel::chebyshev();
    let w0 = canonical_w0(&model).unwrap();
    assert!((w0 - 1.0).abs() < 1e-12);
    let sys = ManyBodySystem::new(model.clone(), 2, 2.0).unwrap();
    let mut rng = config_rng(4, 300);
    for _ in 0..500 {
        let p = random_configuration(&model, 2, &mut rng);
        let (x, y) = (p[0], p[1]);
        let w = pair_potential(&sys, x, y).unwrap();
        let s1 = ((x - y) / 2.0).sin().powi(2);
        let s2 = ((x + y) / 2.0).sin().powi(2);
        let trig = 1.0 / (2.0 * s1) + 1.0 / (2.0 * s2) - 1.0;
        assert!((w - trig).abs() < 1e-12 * trig.abs().max(1.0), "({x}, {y}): {w} vs {trig}");
    }
}
