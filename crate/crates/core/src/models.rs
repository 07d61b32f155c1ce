//! Catalogue of one-body models whose eigenfunctions have the form
//! `ψ_n(x) = P_n(η(x)) e^{-w(x)}`.
//!
//! Each model carries exact `w, w', w''` and `η, η', η''`, the eigenvalue law
//! and the polynomial family, so that log-derivatives and Schrödinger residuals
//! are evaluated in closed form rather than by differencing.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::orthopoly::{self, PolyFamily, PolyValue};

pub type ParamMap = BTreeMap<String, f64>;

/// A function value with its first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivs {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Derivs {
    fn new(value: f64, d1: f64, d2: f64) -> Self {
        Derivs { value, d1, d2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryCondition {
    DecayAtInfinity,
    Dirichlet,
    /// Vanishing derivative at finite ends (`T_n(cos x) = cos nx` on `(0, π)`).
    Neumann,
    /// `u'(-π) = u'(π)` and `u(π) - u(-π) = c u'(π)` with `c = (2/α) tan(απ)`.
    CircleCoupled { alpha: f64 },
}

/// Which polynomial generates the eigenfunctions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolySource {
    Classical(PolyFamily),
    PoschlTeller { gamma: f64 },
}

impl PolySource {
    pub fn evaluate(&self, n: usize, t: f64) -> Result<PolyValue> {
        match *self {
            PolySource::Classical(f) => f.evaluate(n, t),
            PolySource::PoschlTeller { gamma } => orthopoly::pt_polynomial(gamma, n, t),
        }
    }

    pub fn zeros(&self, n: usize) -> Result<Vec<f64>> {
        match *self {
            PolySource::Classical(f) => orthopoly::poly_zeros(f, n),
            PolySource::PoschlTeller { gamma } => orthopoly::pt_polynomial_zeros(gamma, n),
        }
    }

    pub fn leading_coefficient(&self, n: usize) -> f64 {
        match *self {
            PolySource::Classical(f) => f.leading_coefficient(n),
            PolySource::PoschlTeller { .. } => 1.0,
        }
    }
}

/// User-supplied model: expressions for `w`, `η`, `E(n)` plus a polynomial family.
/// The potential is derived from the ground state, `V = w'^2 - w'' + E(0)`.
#[derive(Debug, Clone)]
pub struct CustomModel {
    w: [Expr; 3],
    eta: [Expr; 3],
    energy: Expr,
    family: PolyFamily,
}

#[derive(Debug, Clone)]
pub enum ModelKind {
    Harmonic,
    PoschlTeller { gamma: f64 },
    CircleFree { alpha: f64 },
    Jacobi { alpha: f64, beta: f64 },
    Gegenbauer { alpha: f64 },
    Chebyshev,
    Laguerre { alpha: f64 },
    Custom(Arc<CustomModel>),
}

/// A solvable one-body problem `-∂² + V` on `(a, b)`.
#[derive(Debug, Clone)]
pub struct OneBodyModel {
    name: String,
    kind: ModelKind,
    domain: (f64, f64),
    boundary: BoundaryCondition,
    /// Largest `n` with a normalizable `ψ_n`; `None` when unbounded.
    n_max: Option<usize>,
}

/// `ψ_n(x)` and `ψ_n'(x)/ψ_n(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenData {
    pub value: f64,
    /// Signed infinity at a zero of `ψ_n`.
    pub log_derivative: f64,
}

/// One exact eigenpair of a catalogue model.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub index: usize,
    pub eigenvalue: f64,
    model: OneBodyModel,
}

impl EigenPair {
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.model.eigenfunction(self.index, x)
    }
}

pub const CATALOGUE_NAMES: [&str; 7] = [
    "harmonic",
    "poschl_teller",
    "circle_free",
    "jacobi",
    "gegenbauer",
    "chebyshev",
    "laguerre",
];

fn param(params: &ParamMap, key: &str, model: &str) -> Result<f64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::ParameterDomain(format!("{model} requires parameter '{key}'")))
}

impl OneBodyModel {
    /// Look up a model by name; parameters are `gamma`, `alpha`, `beta` as appropriate.
    pub fn catalogue(name: &str, params: &ParamMap) -> Result<Self> {
        match name {
            "harmonic" => Ok(Self::harmonic()),
            "poschl_teller" => Self::poschl_teller(param(params, "gamma", name)?),
            "circle_free" => Self::circle_free(param(params, "alpha", name)?),
            "jacobi" => Self::jacobi(param(params, "alpha", name)?, param(params, "beta", name)?),
            "gegenbauer" => Self::gegenbauer(param(params, "alpha", name)?),
            "chebyshev" => Ok(Self::chebyshev()),
            "laguerre" => Self::laguerre(param(params, "alpha", name)?),
            _ => Err(Error::UnknownModel(name.to_string())),
        }
    }

    pub fn harmonic() -> Self {
        OneBodyModel {
            name: "harmonic".into(),
            kind: ModelKind::Harmonic,
            domain: (f64::NEG_INFINITY, f64::INFINITY),
            boundary: BoundaryCondition::DecayAtInfinity,
            n_max: None,
        }
    }

    pub fn poschl_teller(gamma: f64) -> Result<Self> {
        if !(gamma >= 1.0) || !gamma.is_finite() {
            return Err(Error::ParameterDomain(format!(
                "poschl_teller needs gamma >= 1 for at least one bound state (got {gamma})"
            )));
        }
        Ok(OneBodyModel {
            name: "poschl_teller".into(),
            kind: ModelKind::PoschlTeller { gamma },
            domain: (f64::NEG_INFINITY, f64::INFINITY),
            boundary: BoundaryCondition::DecayAtInfinity,
            n_max: Some(orthopoly::pt_level_count(gamma) - 1),
        })
    }

    pub fn circle_free(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::ParameterDomain(format!(
                "circle_free requires alpha > 0 (got {alpha})"
            )));
        }
        Ok(OneBodyModel {
            name: "circle_free".into(),
            kind: ModelKind::CircleFree { alpha },
            domain: (-PI, PI),
            boundary: BoundaryCondition::CircleCoupled { alpha },
            n_max: None,
        })
    }

    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        PolyFamily::Jacobi { alpha, beta }.validate()?;
        Ok(OneBodyModel {
            name: "jacobi".into(),
            kind: ModelKind::Jacobi { alpha, beta },
            domain: (0.0, PI),
            boundary: BoundaryCondition::Dirichlet,
            n_max: None,
        })
    }

    pub fn gegenbauer(alpha: f64) -> Result<Self> {
        PolyFamily::Gegenbauer { alpha }.validate()?;
        Ok(OneBodyModel {
            name: "gegenbauer".into(),
            kind: ModelKind::Gegenbauer { alpha },
            domain: (0.0, PI),
            boundary: BoundaryCondition::Dirichlet,
            n_max: None,
        })
    }

    pub fn chebyshev() -> Self {
        OneBodyModel {
            name: "chebyshev".into(),
            kind: ModelKind::Chebyshev,
            domain: (0.0, PI),
            boundary: BoundaryCondition::Neumann,
            n_max: None,
        }
    }

    pub fn laguerre(alpha: f64) -> Result<Self> {
        PolyFamily::Laguerre { alpha }.validate()?;
        Ok(OneBodyModel {
            name: "laguerre".into(),
            kind: ModelKind::Laguerre { alpha },
            domain: (0.0, f64::INFINITY),
            boundary: BoundaryCondition::Dirichlet,
            n_max: None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn boundary(&self) -> BoundaryCondition {
        self.boundary
    }

    pub fn n_max(&self) -> Option<usize> {
        self.n_max
    }

    /// Short label including parameters, e.g. `poschl_teller(gamma=2.5)`.
    pub fn label(&self) -> String {
        match &self.kind {
            ModelKind::PoschlTeller { gamma } => format!("poschl_teller(gamma={gamma})"),
            ModelKind::CircleFree { alpha } => format!("circle_free(alpha={alpha})"),
            ModelKind::Jacobi { alpha, beta } => format!("jacobi(alpha={alpha},beta={beta})"),
            ModelKind::Gegenbauer { alpha } => format!("gegenbauer(alpha={alpha})"),
            ModelKind::Laguerre { alpha } => format!("laguerre(alpha={alpha})"),
            _ => self.name.clone(),
        }
    }

    pub fn has_polynomial_form(&self) -> bool {
        !matches!(self.kind, ModelKind::CircleFree { .. })
    }

    fn unsupported(&self, operation: &str) -> Error {
        Error::Unsupported {
            model: self.name.clone(),
            operation: operation.to_string(),
        }
    }

    pub fn poly_source(&self) -> Result<PolySource> {
        Ok(match &self.kind {
            ModelKind::Harmonic => PolySource::Classical(PolyFamily::Hermite),
            ModelKind::PoschlTeller { gamma } => PolySource::PoschlTeller { gamma: *gamma },
            ModelKind::Jacobi { alpha, beta } => PolySource::Classical(PolyFamily::Jacobi {
                alpha: *alpha,
                beta: *beta,
            }),
            ModelKind::Gegenbauer { alpha } => {
                PolySource::Classical(PolyFamily::Gegenbauer { alpha: *alpha })
            }
            ModelKind::Chebyshev => PolySource::Classical(PolyFamily::Chebyshev),
            ModelKind::Laguerre { alpha } => {
                PolySource::Classical(PolyFamily::Laguerre { alpha: *alpha })
            }
            ModelKind::Custom(c) => PolySource::Classical(c.family),
            ModelKind::CircleFree { .. } => return Err(self.unsupported("polynomial eigenfunctions")),
        })
    }

    /// `E_n`.
    pub fn energy(&self, n: usize) -> f64 {
        let nf = n as f64;
        match &self.kind {
            ModelKind::Harmonic => 2.0 * nf + 1.0,
            ModelKind::PoschlTeller { gamma } => -(gamma - nf).powi(2),
            ModelKind::CircleFree { .. } | ModelKind::Chebyshev => nf * nf,
            ModelKind::Jacobi { alpha, beta } => (nf + 0.5 * (alpha + beta + 1.0)).powi(2),
            ModelKind::Gegenbauer { alpha } => (nf + alpha).powi(2),
            ModelKind::Laguerre { alpha } => 4.0 * nf + 2.0 * alpha + 2.0,
            ModelKind::Custom(c) => c.energy.eval(nf),
        }
    }

    /// `V(x)`.
    pub fn potential(&self, x: f64) -> f64 {
        match &self.kind {
            ModelKind::Harmonic => x * x,
            ModelKind::PoschlTeller { gamma } => -gamma * (gamma + 1.0) / x.cosh().powi(2),
            ModelKind::CircleFree { .. } | ModelKind::Chebyshev => 0.0,
            ModelKind::Jacobi { alpha, beta } => {
                (4.0 * alpha * alpha - 1.0) / (16.0 * (0.5 * x).sin().powi(2))
                    + (4.0 * beta * beta - 1.0) / (16.0 * (0.5 * x).cos().powi(2))
            }
            ModelKind::Gegenbauer { alpha } => alpha * (alpha - 1.0) / x.sin().powi(2),
            ModelKind::Laguerre { alpha } => x * x + (4.0 * alpha * alpha - 1.0) / (4.0 * x * x),
            ModelKind::Custom(c) => {
                let d1 = c.w[1].eval(x);
                d1 * d1 - c.w[2].eval(x) + c.energy.eval(0.0)
            }
        }
    }

    /// `w, w', w''` at `x`.
    pub fn weight(&self, x: f64) -> Result<Derivs> {
        Ok(match &self.kind {
            ModelKind::Harmonic => Derivs::new(0.5 * x * x, x, 1.0),
            ModelKind::PoschlTeller { gamma } => {
                let c = x.cosh();
                Derivs::new(gamma * c.ln(), gamma * x.tanh(), gamma / (c * c))
            }
            ModelKind::Jacobi { alpha, beta } => {
                // exponents α+1/2, β+1/2 on sin(x/2), cos(x/2)
                let a = alpha + 0.5;
                let b = beta + 0.5;
                let (s, c) = (0.5 * x).sin_cos();
                Derivs::new(
                    -a * s.ln() - b * c.ln(),
                    -0.5 * a * c / s + 0.5 * b * s / c,
                    0.25 * a / (s * s) + 0.25 * b / (c * c),
                )
            }
            ModelKind::Gegenbauer { alpha } => {
                let (s, c) = x.sin_cos();
                Derivs::new(-alpha * s.ln(), -alpha * c / s, alpha / (s * s))
            }
            ModelKind::Chebyshev => Derivs::new(0.0, 0.0, 0.0),
            ModelKind::Laguerre { alpha } => {
                let p = alpha + 0.5;
                Derivs::new(0.5 * x * x - p * x.ln(), x - p / x, 1.0 + p / (x * x))
            }
            ModelKind::Custom(c) => Derivs::new(c.w[0].eval(x), c.w[1].eval(x), c.w[2].eval(x)),
            ModelKind::CircleFree { .. } => return Err(self.unsupported("weight function w")),
        })
    }

    /// `η, η', η''` at `x`.
    pub fn eta(&self, x: f64) -> Result<Derivs> {
        Ok(match &self.kind {
            ModelKind::Harmonic => Derivs::new(x, 1.0, 0.0),
            ModelKind::PoschlTeller { .. } => {
                let s = x.sinh();
                Derivs::new(s, x.cosh(), s)
            }
            ModelKind::Jacobi { .. } | ModelKind::Gegenbauer { .. } | ModelKind::Chebyshev => {
                let (s, c) = x.sin_cos();
                Derivs::new(c, -s, -c)
            }
            ModelKind::Laguerre { .. } => Derivs::new(x * x, 2.0 * x, 2.0),
            ModelKind::Custom(c) => {
                Derivs::new(c.eta[0].eval(x), c.eta[1].eval(x), c.eta[2].eval(x))
            }
            ModelKind::CircleFree { .. } => return Err(self.unsupported("change of variable eta")),
        })
    }

    /// Inverse of the (monotone) change of variable.
    pub fn eta_inverse(&self, t: f64) -> Result<f64> {
        let x = match &self.kind {
            ModelKind::Harmonic => t,
            ModelKind::PoschlTeller { .. } => t.asinh(),
            ModelKind::Jacobi { .. } | ModelKind::Gegenbauer { .. } | ModelKind::Chebyshev => {
                if t.abs() >= 1.0 {
                    f64::NAN
                } else {
                    t.acos()
                }
            }
            ModelKind::Laguerre { .. } => {
                if t <= 0.0 {
                    f64::NAN
                } else {
                    t.sqrt()
                }
            }
            ModelKind::Custom(_) => self.eta_inverse_numeric(t)?,
            ModelKind::CircleFree { .. } => return Err(self.unsupported("change of variable eta")),
        };
        if !x.is_finite() || !self.is_interior(x) {
            return Err(Error::Consistency(format!(
                "polynomial zero {t} lies outside the range of eta on {:?}",
                self.domain
            )));
        }
        Ok(x)
    }

    fn eta_inverse_numeric(&self, t: f64) -> Result<f64> {
        let (a, b) = self.domain;
        let inset = |v: f64| 1e-12 * v.abs().max(1.0);
        let mut lo = if a.is_finite() { a + inset(a) } else { b.min(0.0) - 1.0 };
        let mut hi = if b.is_finite() { b - inset(b) } else { a.max(0.0) + 1.0 };
        let g = |x: f64| -> Result<f64> { Ok(self.eta(x)?.value - t) };
        for _ in 0..64 {
            let (glo, ghi) = (g(lo)?, g(hi)?);
            if glo.is_finite() && ghi.is_finite() && glo.signum() != ghi.signum() {
                return orthopoly::bisect(&g, lo, hi);
            }
            if a.is_finite() && b.is_finite() {
                break;
            }
            if !a.is_finite() {
                lo = 2.0 * lo - 1.0;
            }
            if !b.is_finite() {
                hi = 2.0 * hi + 1.0;
            }
        }
        Err(Error::Consistency(format!(
            "no preimage of eta = {t} inside {:?}",
            self.domain
        )))
    }

    pub fn is_interior(&self, x: f64) -> bool {
        x > self.domain.0 && x < self.domain.1
    }

    fn check_level(&self, n: usize) -> Result<()> {
        if let Some(max) = self.n_max {
            if n > max {
                return Err(Error::OutOfRange { index: n, max });
            }
        }
        Ok(())
    }

    fn check_interior(&self, x: f64) -> Result<()> {
        if !self.is_interior(x) {
            return Err(Error::OutsideDomain(x));
        }
        Ok(())
    }

    /// `ψ_n(x) = P_n(η(x)) e^{-w(x)}`.
    pub fn eigenfunction(&self, n: usize, x: f64) -> Result<f64> {
        Ok(self.eigenfunction_data(n, x)?.value)
    }

    /// `ψ_n(x)` together with `ψ_n'/ψ_n = η' P_n'(η)/P_n(η) - w'`.
    pub fn eigenfunction_data(&self, n: usize, x: f64) -> Result<EigenData> {
        self.check_level(n)?;
        self.check_interior(x)?;
        let src = self.poly_source()?;
        let eta = self.eta(x)?;
        let w = self.weight(x)?;
        let p = src.evaluate(n, eta.value)?;
        let value = p.value * (-w.value).exp();
        let log_derivative = if p.value == 0.0 {
            f64::INFINITY.copysign(eta.d1 * p.derivative)
        } else {
            eta.d1 * p.derivative / p.value - w.d1
        };
        Ok(EigenData {
            value,
            log_derivative,
        })
    }

    pub fn eigen_pair(&self, n: usize) -> Result<EigenPair> {
        self.check_level(n)?;
        self.poly_source()?;
        Ok(EigenPair {
            index: n,
            eigenvalue: self.energy(n),
            model: self.clone(),
        })
    }

    /// The `n` interior zeros of `ψ_n`, increasing.
    pub fn nodal_points(&self, n: usize) -> Result<Vec<f64>> {
        self.check_level(n)?;
        if n == 0 {
            return Ok(Vec::new());
        }
        let zeros = self.poly_source()?.zeros(n)?;
        let mut pts = zeros
            .into_iter()
            .map(|t| self.eta_inverse(t))
            .collect::<Result<Vec<_>>>()?;
        pts.sort_by(f64::total_cmp);
        if pts.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Consistency(format!(
                "nodal points of level {n} are not distinct"
            )));
        }
        Ok(pts)
    }

    /// `q = ψ_n'/ψ_n` and `q'`, from the analytic derivative bundle.
    pub fn log_derivative_pair(&self, n: usize, x: f64) -> Result<(f64, f64)> {
        self.check_level(n)?;
        self.check_interior(x)?;
        let eta = self.eta(x)?;
        let w = self.weight(x)?;
        let p = self.poly_source()?.evaluate(n, eta.value)?;
        if p.value == 0.0 {
            return Err(Error::SingularPoint(x));
        }
        let r1 = p.derivative / p.value;
        let r2 = p.second / p.value;
        let q = eta.d1 * r1 - w.d1;
        let dq = eta.d2 * r1 + eta.d1 * eta.d1 * (r2 - r1 * r1) - w.d2;
        Ok((q, dq))
    }

    /// `(-ψ_n'' + V ψ_n - E_n ψ_n)/ψ_n = -(q' + q²) + V - E_n`.
    pub fn one_body_residual(&self, n: usize, x: f64) -> Result<f64> {
        let (q, dq) = self.log_derivative_pair(n, x)?;
        Ok(-(dq + q * q) + self.potential(x) - self.energy(n))
    }

    /// Finite box used for discretizing the model.
    pub fn default_box(&self) -> (f64, f64) {
        match &self.kind {
            ModelKind::Harmonic => (-10.0, 10.0),
            ModelKind::PoschlTeller { .. } => (-15.0, 15.0),
            ModelKind::Laguerre { .. } => (0.0, 10.0),
            _ => {
                let (a, b) = self.domain;
                (if a.is_finite() { a } else { -10.0 }, if b.is_finite() { b } else { 10.0 })
            }
        }
    }

    /// Box for random configurations, kept away from singular endpoints.
    pub fn sample_box(&self) -> (f64, f64) {
        match &self.kind {
            ModelKind::Harmonic | ModelKind::PoschlTeller { .. } => (-3.0, 3.0),
            ModelKind::Laguerre { .. } => (0.1, 3.0),
            _ => {
                let (a, b) = self.domain;
                let lo = if a.is_finite() { a } else { -3.0 };
                let hi = if b.is_finite() { b } else { lo.max(-3.0) + 6.0 };
                let pad = 0.03 * (hi - lo);
                (lo + pad, hi - pad)
            }
        }
    }
}

/// Domain bound in a model specification: a number or `"inf"` / `"-inf"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecBound {
    Number(f64),
    Text(String),
}

impl SpecBound {
    fn value(&self) -> Result<f64> {
        match self {
            SpecBound::Number(v) => Ok(*v),
            SpecBound::Text(s) => match s.trim() {
                "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
                "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
                other => other
                    .parse()
                    .map_err(|_| Error::ModelSpec(format!("bad domain bound '{other}'"))),
            },
        }
    }
}

/// JSON description of a user-defined model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelSpec {
    pub name: String,
    pub family: String,
    #[serde(default)]
    pub params: ParamMap,
    pub domain: [SpecBound; 2],
    pub w: String,
    pub eta: String,
    #[serde(rename = "E")]
    pub energy: String,
    #[serde(default)]
    pub n_max: Option<usize>,
}

impl ModelSpec {
    fn family(&self) -> Result<PolyFamily> {
        let p = |k: &str| param(&self.params, k, &self.family);
        let f = match self.family.as_str() {
            "hermite" => PolyFamily::Hermite,
            "jacobi" => PolyFamily::Jacobi {
                alpha: p("alpha")?,
                beta: p("beta")?,
            },
            "gegenbauer" => PolyFamily::Gegenbauer { alpha: p("alpha")? },
            "chebyshev" => PolyFamily::Chebyshev,
            "laguerre" => PolyFamily::Laguerre { alpha: p("alpha")? },
            other => return Err(Error::ModelSpec(format!("unknown polynomial family '{other}'"))),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn build(&self) -> Result<OneBodyModel> {
        let a = self.domain[0].value()?;
        let b = self.domain[1].value()?;
        if !(a < b) {
            return Err(Error::ModelSpec(format!("empty domain ({a}, {b})")));
        }
        let family = self.family()?;
        let w = Expr::parse(&self.w, "x")?;
        let eta = Expr::parse(&self.eta, "x")?;
        let energy = Expr::parse(&self.energy, "n")?;
        let w1 = w.derivative();
        let w2 = w1.derivative();
        let e1 = eta.derivative();
        let e2 = e1.derivative();
        let boundary = if a.is_finite() || b.is_finite() {
            BoundaryCondition::Dirichlet
        } else {
            BoundaryCondition::DecayAtInfinity
        };
        Ok(OneBodyModel {
            name: self.name.clone(),
            kind: ModelKind::Custom(Arc::new(CustomModel {
                w: [w, w1, w2],
                eta: [eta, e1, e2],
                energy,
                family,
            })),
            domain: (a, b),
            boundary,
            n_max: self.n_max,
        })
    }
}

/// Parse one spec object or an array of them.
pub fn load_model_specs(json: &str) -> Result<Vec<OneBodyModel>> {
    let value: serde_json::Value =
        serde_json::from_str(json).map_err(|e| Error::ModelSpec(e.to_string()))?;
    let specs: Vec<ModelSpec> = match value {
        serde_json::Value::Array(_) => {
            serde_json::from_value(value).map_err(|e| Error::ModelSpec(e.to_string()))?
        }
        other => vec![serde_json::from_value(other).map_err(|e| Error::ModelSpec(e.to_string()))?],
    };
    specs.iter().map(ModelSpec::build).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(pairs: &[(&str, f64)]) -> ParamMap {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn catalogue_examples() {
        let h = OneBodyModel::catalogue("harmonic", &ParamMap::new()).unwrap();
        assert_eq!(h.energy(3), 7.0);
        assert_eq!(h.n_max(), None);
        for &x in &[-1.2, 0.3, 2.0] {
            let ratio = h.eigenfunction(1, x).unwrap() / (x * (-0.5 * x * x).exp());
            let ratio0 = h.eigenfunction(1, 0.7).unwrap() / (0.7 * (-0.245_f64).exp());
            assert_abs_diff_eq!(ratio, ratio0, epsilon = 1e-14);
        }

        let pt = OneBodyModel::catalogue("poschl_teller", &params(&[("gamma", 2.5)])).unwrap();
        assert_eq!(pt.n_max(), Some(1));
        assert_eq!(pt.energy(0), -6.25);
        assert_eq!(pt.energy(1), -2.25);

        let ch = OneBodyModel::catalogue("chebyshev", &ParamMap::new()).unwrap();
        assert_eq!(ch.energy(4), 16.0);
        assert_eq!(ch.potential(0.4), 0.0);
    }

    #[test]
    fn catalogue_errors() {
        assert!(matches!(
            OneBodyModel::catalogue("morse", &ParamMap::new()),
            Err(Error::UnknownModel(_))
        ));
        assert!(matches!(
            OneBodyModel::catalogue("poschl_teller", &params(&[("gamma", 0.0)])),
            Err(Error::ParameterDomain(_))
        ));
        assert!(matches!(
            OneBodyModel::catalogue("poschl_teller", &ParamMap::new()),
            Err(Error::ParameterDomain(_))
        ));
        assert!(OneBodyModel::catalogue("jacobi", &params(&[("alpha", -2.0), ("beta", 0.0)])).is_err());
    }

    #[test]
    fn log_derivative_examples() {
        let h = OneBodyModel::harmonic();
        let pt = OneBodyModel::poschl_teller(3.0).unwrap();
        for &x in &[-2.1, -0.4, 0.8, 1.9] {
            assert_abs_diff_eq!(
                h.eigenfunction_data(0, x).unwrap().log_derivative,
                -x,
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(
                h.eigenfunction_data(1, x).unwrap().log_derivative,
                -x + 1.0 / x,
                epsilon = 1e-13
            );
            assert_abs_diff_eq!(
                pt.eigenfunction_data(1, x).unwrap().log_derivative,
                1.0 / x.tanh() - 3.0 * x.tanh(),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn log_derivative_pole_is_signed_infinity() {
        let d = OneBodyModel::harmonic().eigenfunction_data(1, 0.0).unwrap();
        assert_eq!(d.value, 0.0);
        assert!(d.log_derivative.is_infinite());
    }

    #[test]
    fn eigenfunction_errors() {
        let pt = OneBodyModel::poschl_teller(2.5).unwrap();
        assert!(matches!(pt.eigenfunction_data(2, 0.1), Err(Error::OutOfRange { .. })));
        let ch = OneBodyModel::chebyshev();
        assert!(matches!(ch.eigenfunction_data(1, 0.0), Err(Error::OutsideDomain(_))));
        assert!(matches!(ch.eigenfunction_data(1, PI), Err(Error::OutsideDomain(_))));
        let c = OneBodyModel::circle_free(0.5).unwrap();
        assert!(matches!(c.eigenfunction_data(0, 0.1), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn nodal_point_examples() {
        let h = OneBodyModel::harmonic();
        assert_eq!(h.nodal_points(1).unwrap(), vec![0.0]);
        let z = h.nodal_points(2).unwrap();
        assert_abs_diff_eq!(z[0], -std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(z[1], std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        let z = OneBodyModel::chebyshev().nodal_points(2).unwrap();
        assert_abs_diff_eq!(z[0], PI / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(z[1], 3.0 * PI / 4.0, epsilon = 1e-15);
    }

    #[test]
    fn residual_examples() {
        let h = OneBodyModel::harmonic();
        assert!(h.one_body_residual(0, 1.3).unwrap().abs() < 1e-10);
        let pt = OneBodyModel::poschl_teller(3.0).unwrap();
        assert!(pt.one_body_residual(2, 0.7).unwrap().abs() < 1e-8);
        let j = OneBodyModel::jacobi(1.0, 2.0).unwrap();
        assert!(j.one_body_residual(3, 1.1).unwrap().abs() < 1e-8);
        assert!(matches!(h.one_body_residual(1, 0.0), Err(Error::SingularPoint(_))));
    }

    #[test]
    fn custom_model_from_json() {
        let json = r#"{"name": "my_oscillator", "family": "hermite", "params": {},
            "domain": ["-inf", "inf"], "w": "x^2/2", "eta": "x", "E": "2*n + 1"}"#;
        let models = load_model_specs(json).unwrap();
        let m = &models[0];
        let h = OneBodyModel::harmonic();
        for &x in &[-1.5, 0.2, 2.4] {
            assert_abs_diff_eq!(m.potential(x), x * x, epsilon = 1e-13);
            for n in 0..5 {
                assert_abs_diff_eq!(
                    m.eigenfunction(n, x).unwrap(),
                    h.eigenfunction(n, x).unwrap(),
                    epsilon = 1e-14
                );
                if n > 0 {
                    assert!(m.one_body_residual(n, x).unwrap().abs() < 1e-9);
                }
            }
        }
        let z = m.nodal_points(3).unwrap();
        assert_abs_diff_eq!(z[2], 1.5_f64.sqrt(), epsilon = 1e-13);
    }

    #[test]
    fn custom_model_array_and_errors() {
        let json = r#"[{"name": "pt3", "family": "gegenbauer", "params": {"alpha": 1.0},
            "domain": [0, 3.141592653589793], "w": "-log(sin(x))", "eta": "cos(x)", "E": "(n+1)^2"}]"#;
        let m = &load_model_specs(json).unwrap()[0];
        assert_abs_diff_eq!(m.potential(0.7), 0.0, epsilon = 1e-12);
        assert!(m.one_body_residual(2, 0.7).unwrap().abs() < 1e-9);

        let bad = r#"{"name": "x", "family": "hermite", "domain": ["-inf", "inf"],
            "w": "x^2/", "eta": "x", "E": "n"}"#;
        assert!(matches!(load_model_specs(bad), Err(Error::Parse { position: 4, .. })));
        let bad_family = r#"{"name": "x", "family": "legendre", "domain": [0, 1],
            "w": "x", "eta": "x", "E": "n"}"#;
        assert!(matches!(load_model_specs(bad_family), Err(Error::ModelSpec(_))));
    }
}
