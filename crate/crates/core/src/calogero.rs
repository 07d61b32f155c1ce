//! Many-body systems `H_N = Σ(-∂_j² + V(x_j)) + λ(λ-1) Σ_{j<k} W(x_j, x_k)` whose
//! ground state is the Jastrow product `Ψ0 = e^{-Σ w(x_j)} Π_{j<k} (η(x_j) - η(x_k))^λ`.
//!
//! Every check works with `L = log Ψ0` and its analytic derivatives, since `Ψ0`
//! itself spans far more than the floating-point range.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::models::{Derivs, OneBodyModel};
use crate::report::VerificationReport;

/// Configurations with a pair closer than this are rejected when sampling.
pub const MIN_SAMPLE_GAP: f64 = 1e-2;
const CANONICAL_PAIRS: usize = 200;
const CANONICAL_SPREAD: f64 = 1e-10;

/// Deterministic stream `stream` of the generator seeded with `seed`.
pub fn config_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `n` points drawn uniformly from `bx` with every pairwise gap above [`MIN_SAMPLE_GAP`], sorted.
pub fn random_points<R: Rng>(rng: &mut R, bx: (f64, f64), n: usize) -> Vec<f64> {
    random_points_with_gap(rng, bx, n, MIN_SAMPLE_GAP)
}

/// `n` sorted uniform points from `bx` with pairwise gaps above `gap` (rejection sampling).
pub fn random_points_with_gap<R: Rng>(rng: &mut R, bx: (f64, f64), n: usize, gap: f64) -> Vec<f64> {
    loop {
        let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(bx.0..bx.1)).collect();
        x.sort_by(f64::total_cmp);
        if x.windows(2).all(|w| w[1] - w[0] > gap) {
            return x;
        }
    }
}

/// Random admissible configuration inside the model's sampling box.
pub fn random_configuration<R: Rng>(model: &OneBodyModel, n: usize, rng: &mut R) -> Vec<f64> {
    random_points(rng, model.sample_box(), n)
}

/// `(2η'(x)w'(x) - η''(x) - 2η'(y)w'(y) + η''(y)) / (η(x) - η(y))`.
fn linear_term(ex: &Derivs, wx: &Derivs, ey: &Derivs, wy: &Derivs) -> f64 {
    (2.0 * ex.d1 * wx.d1 - ex.d2 - 2.0 * ey.d1 * wy.d1 + ey.d2) / (ex.value - ey.value)
}

/// `(η'(x)² + η'(y)²) / (η(x) - η(y))²`.
fn quadratic_term(ex: &Derivs, ey: &Derivs) -> f64 {
    let d = ex.value - ey.value;
    (ex.d1 * ex.d1 + ey.d1 * ey.d1) / (d * d)
}

/// The constant value of the linear-fraction part of `W`, when it is constant.
pub fn canonical_w0(model: &OneBodyModel) -> Result<f64> {
    let mut rng = config_rng(0, 0);
    let mut values = Vec::with_capacity(CANONICAL_PAIRS);
    for _ in 0..CANONICAL_PAIRS {
        let p = random_configuration(model, 2, &mut rng);
        let (ex, ey) = (model.eta(p[0])?, model.eta(p[1])?);
        let (wx, wy) = (model.weight(p[0])?, model.weight(p[1])?);
        values.push(linear_term(&ex, &wx, &ey, &wy));
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let spread = hi - lo;
    if !(spread < CANONICAL_SPREAD * mean.abs().max(1.0)) {
        return Err(Error::NotCanonicalizable { spread });
    }
    Ok(mean)
}

/// A model, particle number, coupling `λ` and pair-potential offset `W_0`.
#[derive(Debug, Clone)]
pub struct ManyBodySystem {
    model: OneBodyModel,
    n: usize,
    lambda: f64,
    w0: f64,
    square_integrable: Option<bool>,
}

impl ManyBodySystem {
    /// System with the canonical `W_0`, or `W_0 = 0` when the linear part of `W` is not constant.
    pub fn new(model: OneBodyModel, n: usize, lambda: f64) -> Result<Self> {
        let w0 = match canonical_w0(&model) {
            Ok(v) => v,
            Err(Error::NotCanonicalizable { .. }) => 0.0,
            Err(e) => return Err(e),
        };
        Self::with_w0(model, n, lambda, w0)
    }

    pub fn with_w0(model: OneBodyModel, n: usize, lambda: f64, w0: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ParameterDomain("N must be at least 1".into()));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::ParameterDomain(format!("lambda must be positive (got {lambda})")));
        }
        if !w0.is_finite() {
            return Err(Error::ParameterDomain(format!("W0 must be finite (got {w0})")));
        }
        let (a, b) = model.sample_box();
        let mid = 0.5 * (a + b);
        model.eta(mid)?;
        model.weight(mid)?;
        Ok(ManyBodySystem {
            model,
            n,
            lambda,
            w0,
            square_integrable: None,
        })
    }

    pub fn model(&self) -> &OneBodyModel {
        &self.model
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn w0(&self) -> f64 {
        self.w0
    }

    /// Result of the last [`ManyBodySystem::check_norm`], if any.
    pub fn square_integrable(&self) -> Option<bool> {
        self.square_integrable
    }

    /// Run [`norm_check`] and remember the verdict.
    pub fn check_norm(&mut self) -> Result<VerificationReport> {
        let report = norm_check(self)?;
        self.square_integrable = Some(report.pass);
        Ok(report)
    }

    fn check_config(&self, x: &[f64]) -> Result<(Vec<Derivs>, Vec<Derivs>)> {
        if x.len() != self.n {
            return Err(Error::ParameterDomain(format!(
                "expected {} coordinates, got {}",
                self.n,
                x.len()
            )));
        }
        let mut etas = Vec::with_capacity(x.len());
        let mut ws = Vec::with_capacity(x.len());
        for &xj in x {
            if !self.model.is_interior(xj) {
                return Err(Error::OutsideDomain(xj));
            }
            etas.push(self.model.eta(xj)?);
            ws.push(self.model.weight(xj)?);
        }
        for j in 0..x.len() {
            for k in 0..j {
                if etas[j].value == etas[k].value {
                    return Err(Error::DegenerateConfiguration(format!(
                        "eta coincides at x = {} and x = {}",
                        x[k], x[j]
                    )));
                }
            }
        }
        Ok((etas, ws))
    }
}

/// `W(x, y)` including the offset `-W_0`.
pub fn pair_potential(sys: &ManyBodySystem, x: f64, y: f64) -> Result<f64> {
    let m = &sys.model;
    for v in [x, y] {
        if !m.is_interior(v) {
            return Err(Error::OutsideDomain(v));
        }
    }
    let (ex, ey) = (m.eta(x)?, m.eta(y)?);
    if x == y || ex.value == ey.value {
        return Err(Error::DegenerateConfiguration(format!("pair potential is singular at x = y = {x}")));
    }
    let (wx, wy) = (m.weight(x)?, m.weight(y)?);
    Ok(quadratic_term(&ex, &ey) + linear_term(&ex, &wx, &ey, &wy) - sys.w0)
}

/// `log Ψ0` with its gradient and the diagonal second derivatives `∂_j² log Ψ0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogDerivatives {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub second: Vec<f64>,
}

pub fn ground_state_log_derivatives(sys: &ManyBodySystem, x: &[f64]) -> Result<LogDerivatives> {
    let (etas, ws) = sys.check_config(x)?;
    let n = x.len();
    let lam = sys.lambda;
    let mut value = -ws.iter().map(|w| w.value).sum::<f64>();
    let mut gradient: Vec<f64> = ws.iter().map(|w| -w.d1).collect();
    let mut second: Vec<f64> = ws.iter().map(|w| -w.d2).collect();
    for j in 0..n {
        for k in 0..n {
            if k == j {
                continue;
            }
            let d = etas[j].value - etas[k].value;
            if k > j {
                value += lam * d.abs().ln();
            }
            gradient[j] += lam * etas[j].d1 / d;
            second[j] += lam * (etas[j].d2 / d - etas[j].d1 * etas[j].d1 / (d * d));
        }
    }
    Ok(LogDerivatives {
        value,
        gradient,
        second,
    })
}

/// `log Ψ0 = -Σ w(x_j) + λ Σ_{j<k} log|η(x_j) - η(x_k)|`.
pub fn ground_state_log(sys: &ManyBodySystem, x: &[f64]) -> Result<f64> {
    let (etas, ws) = sys.check_config(x)?;
    let mut value = -ws.iter().map(|w| w.value).sum::<f64>();
    for j in 0..etas.len() {
        for k in j + 1..etas.len() {
            value += sys.lambda * (etas[j].value - etas[k].value).abs().ln();
        }
    }
    Ok(value)
}

/// `λ² Σ_{n<N}(E_n - E_0) + N E_0 - ½λ(λ-1)N(N-1) W_0`.
pub fn ground_energy(sys: &ManyBodySystem) -> Result<f64> {
    let n = sys.n;
    if let Some(max) = sys.model.n_max() {
        if n > max + 1 {
            return Err(Error::InsufficientBoundStates {
                requested: n,
                available: max + 1,
            });
        }
    }
    let lam = sys.lambda;
    let e0 = sys.model.energy(0);
    let excit: f64 = (0..n).map(|l| sys.model.energy(l) - e0).sum();
    let nf = n as f64;
    Ok(lam * lam * excit + nf * e0 - 0.5 * lam * (lam - 1.0) * nf * (nf - 1.0) * sys.w0)
}

/// `(H_N Ψ0)/Ψ0` from the analytic derivatives of `log Ψ0`.
pub fn local_energy(sys: &ManyBodySystem, x: &[f64]) -> Result<f64> {
    let ld = ground_state_log_derivatives(sys, x)?;
    let mut total = 0.0;
    for (j, &xj) in x.iter().enumerate() {
        total += -(ld.second[j] + ld.gradient[j] * ld.gradient[j]) + sys.model.potential(xj);
    }
    let coupling = sys.lambda * (sys.lambda - 1.0);
    if coupling != 0.0 {
        for j in 0..x.len() {
            for k in j + 1..x.len() {
                total += coupling * pair_potential(sys, x[j], x[k])?;
            }
        }
    }
    Ok(total)
}

/// `(H_N Ψ0)/Ψ0 - cE0`; zero up to rounding when `Ψ0` is an eigenfunction.
pub fn residual(sys: &ManyBodySystem, x: &[f64]) -> Result<f64> {
    let e = ground_energy(sys)?;
    Ok(local_energy(sys, x)? - e)
}

/// Residual check over `samples` seeded configurations, tolerance `1e-8 · max(1, |cE0|)`.
pub fn residual_report(sys: &ManyBodySystem, samples: usize, seed: u64) -> Result<VerificationReport> {
    let e = ground_energy(sys)?;
    let mut rng = config_rng(seed, sys.n as u64);
    let mut devs = Vec::with_capacity(samples);
    for _ in 0..samples {
        let x = random_configuration(&sys.model, sys.n, &mut rng);
        devs.push(local_energy(sys, &x)? - e);
    }
    Ok(
        VerificationReport::from_deviations(sys.model.label(), &devs, 1e-8 * e.abs().max(1.0))
            .with_system(sys.n, sys.lambda, sys.w0),
    )
}

/// Which cyclic three-point identity to evaluate.
#[derive(Debug, Clone)]
pub enum TripleKind {
    /// `Σ_cyc 1/((x1 - x2)(x1 - x3)) = 0`.
    Rational,
    /// `Σ_cyc cot(½(x1 - x2)) cot(½(x1 - x3)) = -1`.
    Cotangent,
    /// `Σ_cyc cosh²x1/((sinh x1 - sinh x2)(sinh x1 - sinh x3)) = 1`.
    Hyperbolic,
    /// `Σ_cyc η'(x1)²/((η1 - η2)(η1 - η3)) = a` where `η'² = aη² + bη + c`.
    Generic(OneBodyModel),
}

impl TripleKind {
    pub fn name(&self) -> &str {
        match self {
            TripleKind::Rational => "rational",
            TripleKind::Cotangent => "cotangent",
            TripleKind::Hyperbolic => "hyperbolic",
            TripleKind::Generic(m) => m.name(),
        }
    }
}

/// Gaps below this trigger a conditioning warning instead of a clean result.
pub const TRIPLE_WARN_GAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleValue {
    pub value: f64,
    pub expected: f64,
    /// Estimated rounding error when some pair is closer than [`TRIPLE_WARN_GAP`].
    pub conditioning_warning: Option<f64>,
}

/// Coefficients `(a, b, c)` with `η'² = aη² + bη + c` on the model's sampling box.
pub fn eta_quadratic(model: &OneBodyModel) -> Result<(f64, f64, f64)> {
    let (lo, hi) = model.sample_box();
    let at = |f: f64| -> Result<Derivs> { model.eta(lo + f * (hi - lo)) };
    let pts = [at(0.15)?, at(0.5)?, at(0.85)?];
    let rows: Vec<[f64; 4]> = pts
        .iter()
        .map(|e| [e.value * e.value, e.value, 1.0, e.d1 * e.d1])
        .collect();
    let solved = solve3(&rows).ok_or_else(|| Error::Unsupported {
        model: model.name().to_string(),
        operation: "generic triple identity (eta takes repeated values)".into(),
    })?;
    let (a, b, c) = (solved[0], solved[1], solved[2]);
    for i in 0..=20 {
        let e = at(0.05 + 0.045 * i as f64)?;
        let lhs = e.d1 * e.d1;
        let rhs = a * e.value * e.value + b * e.value + c;
        if (lhs - rhs).abs() > 1e-8 * lhs.abs().max(1.0) {
            return Err(Error::Unsupported {
                model: model.name().to_string(),
                operation: "generic triple identity (eta'^2 is not quadratic in eta)".into(),
            });
        }
    }
    Ok((a, b, c))
}

fn solve3(rows: &[[f64; 4]]) -> Option<[f64; 3]> {
    let mut m: Vec<[f64; 4]> = rows.to_vec();
    for c in 0..3 {
        let p = (c..3).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[p][c].abs() < 1e-14 {
            return None;
        }
        m.swap(p, c);
        for r in 0..3 {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in c..4 {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

/// Cyclic sum for three points and the constant it should equal.
pub fn triple_identity(kind: &TripleKind, x1: f64, x2: f64, x3: f64) -> Result<TripleValue> {
    let xs = [x1, x2, x3];
    let gap = |a: f64, b: f64| -> f64 {
        match kind {
            TripleKind::Cotangent => {
                let d = (a - b).rem_euclid(std::f64::consts::TAU);
                d.min(std::f64::consts::TAU - d)
            }
            _ => (a - b).abs(),
        }
    };
    let min_gap = gap(x1, x2).min(gap(x1, x3)).min(gap(x2, x3));
    if min_gap == 0.0 {
        return Err(Error::DegenerateConfiguration(format!(
            "points ({x1}, {x2}, {x3}) are not pairwise distinct"
        )));
    }
    let mut terms = [0.0; 3];
    let expected;
    match kind {
        TripleKind::Rational => {
            for i in 0..3 {
                let (a, b, c) = (xs[i], xs[(i + 1) % 3], xs[(i + 2) % 3]);
                terms[i] = 1.0 / ((a - b) * (a - c));
            }
            expected = 0.0;
        }
        TripleKind::Cotangent => {
            let cot = |v: f64| v.cos() / v.sin();
            for i in 0..3 {
                let (a, b, c) = (xs[i], xs[(i + 1) % 3], xs[(i + 2) % 3]);
                terms[i] = cot(0.5 * (a - b)) * cot(0.5 * (a - c));
            }
            expected = -1.0;
        }
        TripleKind::Hyperbolic => {
            for i in 0..3 {
                let (a, b, c) = (xs[i], xs[(i + 1) % 3], xs[(i + 2) % 3]);
                terms[i] = a.cosh().powi(2) / ((a.sinh() - b.sinh()) * (a.sinh() - c.sinh()));
            }
            expected = 1.0;
        }
        TripleKind::Generic(model) => {
            let e = [model.eta(x1)?, model.eta(x2)?, model.eta(x3)?];
            for i in 0..3 {
                let (a, b, c) = (e[i], e[(i + 1) % 3], e[(i + 2) % 3]);
                if a.value == b.value || a.value == c.value {
                    return Err(Error::DegenerateConfiguration("eta values coincide".into()));
                }
                terms[i] = a.d1 * a.d1 / ((a.value - b.value) * (a.value - c.value));
            }
            expected = eta_quadratic(model)?.0;
        }
    }
    let value = terms.iter().sum();
    let conditioning_warning = (min_gap < TRIPLE_WARN_GAP)
        .then(|| 4.0 * f64::EPSILON * terms.iter().map(|t: &f64| t.abs()).sum::<f64>());
    Ok(TripleValue {
        value,
        expected,
        conditioning_warning,
    })
}

/// Evaluation budget for the tensor-product quadrature.
const NORM_BUDGET: f64 = 2.0e6;
const NORM_BOXES: usize = 4;
const NORM_TOLERANCE: f64 = 1e-3;

/// Square-integrability of `Ψ0`.
///
/// Infinite domains: midpoint rule on a fixed grid over boxes doubling in size
/// (`N ≤ 3`); `max_dev` is the relative change over the last doubling, tolerance `1e-3`.
/// Compact domains: `|Ψ0|² ~ dist^p` near each end from `w`; `max_dev` is `-p` at the
/// worse end and the tolerance is 1, so the check passes iff `p > -1`.
pub fn norm_check(sys: &ManyBodySystem) -> Result<VerificationReport> {
    let m = &sys.model;
    let (a, b) = m.domain();
    let label = m.label();
    if a.is_finite() && b.is_finite() {
        let d = 1e-9 * (b - a);
        let pa = -2.0 * m.weight(a + d)?.d1 * d;
        let pb = 2.0 * m.weight(b - d)?.d1 * d;
        let worst = (-pa).max(-pb);
        let mut r = VerificationReport::from_deviations(label, &[worst], 1.0);
        // negative exponents pass; keep the signed value for the record
        r.max_dev = worst;
        r.mean_dev = 0.5 * (-pa - pb);
        r.pass = worst < 1.0;
        return Ok(r.with_system(sys.n, sys.lambda, sys.w0));
    }
    if sys.n > 3 {
        return Err(Error::Unsupported {
            model: label,
            operation: format!("quadrature norm check for N = {} > 3", sys.n),
        });
    }
    let n = sys.n;
    let half_line = a.is_finite();
    let l_max = 2.5 * 2f64.powi(NORM_BOXES as i32 - 1);
    let (lo, hi) = if half_line { (a, a + l_max) } else { (-l_max, l_max) };
    let per_dim = (NORM_BUDGET.powf(1.0 / n as f64).floor() as usize).min(4000);
    let h = (hi - lo) / per_dim as f64;
    let mids: Vec<f64> = (0..per_dim).map(|i| lo + (i as f64 + 0.5) * h).collect();
    // smallest box index containing each midpoint
    let box_of = |x: f64| -> usize {
        let r = if half_line { x - a } else { x.abs() };
        (0..NORM_BOXES)
            .find(|&k| r <= 2.5 * 2f64.powi(k as i32))
            .unwrap_or(NORM_BOXES - 1)
    };
    let boxes: Vec<usize> = mids.iter().map(|&x| box_of(x)).collect();
    let w: Vec<f64> = mids
        .iter()
        .map(|&x| m.weight(x).map(|d| d.value))
        .collect::<Result<_>>()?;
    let eta: Vec<f64> = mids
        .iter()
        .map(|&x| m.eta(x).map(|d| d.value))
        .collect::<Result<_>>()?;

    let total = per_dim.pow(n as u32);
    let mut logs = Vec::with_capacity(total);
    let mut levels = Vec::with_capacity(total);
    let mut idx = vec![0usize; n];
    for _ in 0..total {
        let mut lg = 0.0;
        let mut level = 0;
        for j in 0..n {
            lg -= 2.0 * w[idx[j]];
            level = level.max(boxes[idx[j]]);
            for k in j + 1..n {
                lg += 2.0 * sys.lambda * (eta[idx[j]] - eta[idx[k]]).abs().ln();
            }
        }
        logs.push(lg);
        levels.push(level);
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < per_dim {
                break;
            }
            *slot = 0;
        }
    }
    let peak = logs.iter().copied().filter(|v| v.is_finite()).fold(f64::NEG_INFINITY, f64::max);
    let mut sums = [0.0; NORM_BOXES];
    if peak.is_finite() {
        for (lg, lv) in logs.iter().zip(&levels) {
            sums[*lv] += (lg - peak).exp();
        }
    }
    let cumulative: Vec<f64> = sums
        .iter()
        .scan(0.0, |acc, s| {
            *acc += s;
            Some(*acc)
        })
        .collect();
    let last = cumulative[NORM_BOXES - 1];
    let prev = cumulative[NORM_BOXES - 2];
    let change = if last > 0.0 && last.is_finite() {
        (last - prev) / last
    } else {
        f64::INFINITY
    };
    let mut devs = Vec::with_capacity(NORM_BOXES - 1);
    for k in 1..NORM_BOXES {
        devs.push(if cumulative[k] > 0.0 {
            (cumulative[k] - cumulative[k - 1]) / cumulative[k]
        } else {
            f64::INFINITY
        });
    }
    let mut r = VerificationReport::from_deviations(label, &devs, NORM_TOLERANCE);
    r.max_dev = change;
    r.pass = change < NORM_TOLERANCE;
    Ok(r.with_system(sys.n, sys.lambda, sys.w0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn canonical_constants() {
        assert!((canonical_w0(&OneBodyModel::harmonic()).unwrap() - 2.0).abs() < 1e-12);
        let pt = OneBodyModel::poschl_teller(3.0).unwrap();
        assert!((canonical_w0(&pt).unwrap() - 5.0).abs() < 1e-10);
        assert!((canonical_w0(&OneBodyModel::chebyshev()).unwrap() - 1.0).abs() < 1e-10);
        let g = OneBodyModel::gegenbauer(1.5).unwrap();
        assert!((canonical_w0(&g).unwrap() - 4.0).abs() < 1e-10);
        let j = OneBodyModel::jacobi(1.0, 2.0).unwrap();
        assert!((canonical_w0(&j).unwrap() - 5.0).abs() < 1e-10);
        let l = OneBodyModel::laguerre(0.5).unwrap();
        assert!((canonical_w0(&l).unwrap() - 4.0).abs() < 1e-10);
    }

    #[test]
    fn harmonic_pair_and_log() {
        let sys = ManyBodySystem::new(OneBodyModel::harmonic(), 2, 1.0).unwrap();
        assert!((pair_potential(&sys, 0.3, -1.1).unwrap() - 2.0 / 1.4f64.powi(2)).abs() < 1e-12);
        assert_eq!(ground_state_log(&sys, &[0.0, 1.0]).unwrap(), -0.5);
        assert!(matches!(
            pair_potential(&sys, 0.4, 0.4),
            Err(Error::DegenerateConfiguration(_))
        ));
    }

    #[test]
    fn poschl_teller_log_example() {
        let sys = ManyBodySystem::new(OneBodyModel::poschl_teller(3.0).unwrap(), 2, 2.0).unwrap();
        let expect = -3.0 * 1f64.cosh().ln() + 2.0 * 1f64.sinh().ln();
        assert!((ground_state_log(&sys, &[0.0, 1.0]).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn energy_examples() {
        let cheb = OneBodyModel::chebyshev();
        let sys = ManyBodySystem::with_w0(cheb, 3, 2.0, -1.0).unwrap();
        assert_eq!(ground_energy(&sys).unwrap(), 26.0);
        for n in 1..5 {
            for &lam in &[0.5, 1.5, 2.0] {
                let sys = ManyBodySystem::new(OneBodyModel::harmonic(), n, lam).unwrap();
                let nf = n as f64;
                let e = ground_energy(&sys).unwrap();
                assert!((e - (nf + lam * nf * (nf - 1.0))).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn harmonic_residual_small() {
        let sys = ManyBodySystem::new(OneBodyModel::harmonic(), 3, 1.5).unwrap();
        let r = residual_report(&sys, 100, 7).unwrap();
        assert!(r.max_dev < 1e-9, "{r:?}");
    }

    #[test]
    fn identity_examples() {
        let r = triple_identity(&TripleKind::Rational, 0.0, 1.0, 2.0).unwrap();
        assert_eq!((r.value, r.expected), (0.0, 0.0));
        let r = triple_identity(&TripleKind::Cotangent, 0.0, PI / 2.0, PI).unwrap();
        assert!((r.value + 1.0).abs() < 1e-12);
        let s = 1f64.asinh();
        let r = triple_identity(&TripleKind::Hyperbolic, 0.0, s, -s).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = triple_identity(&TripleKind::Rational, 0.0, 1e-8, 1.0).unwrap();
        assert!(r.conditioning_warning.is_some());
        assert!(triple_identity(&TripleKind::Rational, 1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn generic_constants() {
        let cases = [
            (OneBodyModel::harmonic(), 0.0),
            (OneBodyModel::poschl_teller(2.0).unwrap(), 1.0),
            (OneBodyModel::chebyshev(), -1.0),
        ];
        for (m, a) in cases {
            let r = triple_identity(&TripleKind::Generic(m), 0.4, 1.1, 2.3).unwrap();
            assert!((r.expected - a).abs() < 1e-10);
            assert!((r.value - a).abs() < 1e-11);
        }
    }

    #[test]
    fn norm_examples() {
        let sys = ManyBodySystem::new(OneBodyModel::harmonic(), 2, 1.0).unwrap();
        assert!(norm_check(&sys).unwrap().pass);
        let pt = OneBodyModel::poschl_teller(1.2).unwrap();
        let sys = ManyBodySystem::new(pt, 2, 3.0).unwrap();
        assert!(!norm_check(&sys).unwrap().pass);
        let sys = ManyBodySystem::new(OneBodyModel::chebyshev(), 3, 0.5).unwrap();
        assert!(norm_check(&sys).unwrap().pass);
    }
}
