//! The `specfact` command line: spectra, sweeps and verification suites as CSV or JSON.
//!
//! [`run`] parses an argument vector and writes to the given streams, so the
//! binary is a thin shim and tests can drive every subcommand in process.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use specfact::calogero::{
    config_rng, random_configuration, random_points, random_points_with_gap, residual_report, triple_identity,
    ManyBodySystem, TripleKind,
};
use specfact::factorization::{
    delta_spectrum_with, regularized_spectrum_with, spectrum_hn_with, DEFAULT_EPS_LIST,
    DEFAULT_GRID, DEFAULT_G_LIST, REGULARIZED_GRID,
};
use specfact::manybody::{enumerate_spectrum, slater_and_product};
use specfact::models::{load_model_specs, ModelKind};
use specfact::spectral::{
    circle_factorized_levels, circle_factorized_spectrum, circle_levels, circle_spectrum,
    discretize, eigenvalues_refined, CircleLevel,
};
use specfact::{OneBodyModel, SpectralResult, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker threads used for sweeps.
pub const THREADS_ENV: &str = "SPECFACT_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] specfact::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "specfact", version, about = "Node-constrained spectra and Calogero-Sutherland ground states")]
struct Cli {
    /// JSON file with user-defined model specifications.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Catalogue name or a model defined in --config.
    #[arg(long)]
    model: String,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// One-body spectrum: exact levels against finite differences.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Spectrum of the operator factorized through level n (Dirichlet at its nodes).
    Factorized {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        node_level: usize,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Circle spectra as a function of alpha.
    SweepAlpha {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        kmax: f64,
        /// Sweep the factorized operator instead of the free one.
        #[arg(long)]
        factorized: bool,
    },
    /// Delta couplings at the nodes of level n for a list of strengths.
    DeltaLimit {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        node_level: usize,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        g_list: Option<Vec<f64>>,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Smooth regularization of the harmonic node operator for a list of widths.
    EpsLimit {
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        eps_list: Option<Vec<f64>>,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = REGULARIZED_GRID)]
        grid: usize,
    },
    /// Free-fermion many-body levels up to an energy cutoff.
    Manybody {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        ecut: f64,
    },
    /// Seeded numerical verification suites; prints JSON reports.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Identities,
    Residuals,
    Vandermonde,
    Onebody,
}

/// Parse `argv` (including the program name) and execute. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                let grammar = Cli::command().render_long_help();
                let _ = write!(err, "{text}\n{grammar}");
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a positive integer (got '{v}')")))?;
        builder = builder.num_threads(n.max(1));
    }
    builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

fn resolve_model(args: &ModelArgs, custom: &[OneBodyModel]) -> CliResult<OneBodyModel> {
    if let Some(m) = custom.iter().find(|m| m.name() == args.model) {
        return Ok(m.clone());
    }
    let mut params = BTreeMap::new();
    for (key, v) in [("gamma", args.gamma), ("alpha", args.alpha), ("beta", args.beta)] {
        if let Some(v) = v {
            params.insert(key.to_string(), v);
        }
    }
    Ok(OneBodyModel::catalogue(&args.model, &params)?)
}

fn circle_alpha(model: &OneBodyModel) -> Option<f64> {
    match model.kind() {
        ModelKind::CircleFree { alpha } => Some(*alpha),
        _ => None,
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> CliResult<i32> {
    let custom = match &cli.config {
        Some(path) => load_model_specs(&std::fs::read_to_string(path)?)?,
        None => Vec::new(),
    };
    match cli.command {
        Command::Spectrum { model, k, grid } => {
            let model = resolve_model(&model, &custom)?;
            spectrum(&model, k, grid, out)?;
        }
        Command::Factorized { model, node_level, k, grid } => {
            let model = resolve_model(&model, &custom)?;
            let r = match circle_alpha(&model) {
                Some(alpha) => first_levels(|kmax| circle_factorized_spectrum(alpha, kmax), k)?,
                None => spectrum_hn_with(&model, node_level, k, grid)?,
            };
            write_spectrum(out, &r, k)?;
        }
        Command::SweepAlpha { from, to, steps, kmax, factorized } => {
            sweep_alpha(from, to, steps, kmax, factorized, out)?;
        }
        Command::DeltaLimit { model, node_level, g_list, k, grid } => {
            let model = resolve_model(&model, &custom)?;
            let gs = g_list.unwrap_or_else(|| DEFAULT_G_LIST.to_vec());
            let pool = thread_pool()?;
            let runs: Vec<_> = pool.install(|| {
                gs.par_iter()
                    .map(|&g| delta_spectrum_with(&model, node_level, g, k, grid))
                    .collect()
            });
            write_parameter_sweep(out, "g", &gs, runs, k)?;
        }
        Command::EpsLimit { eps_list, k, grid } => {
            let eps = eps_list.unwrap_or_else(|| DEFAULT_EPS_LIST.to_vec());
            let pool = thread_pool()?;
            let runs: Vec<_> =
                pool.install(|| eps.par_iter().map(|&e| regularized_spectrum_with(e, k, grid)).collect());
            write_parameter_sweep(out, "eps", &eps, runs, k)?;
        }
        Command::Manybody { model, n, ecut } => {
            let model = resolve_model(&model, &custom)?;
            let levels = enumerate_spectrum(&model, n, ecut)?;
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["energy", "degeneracy", "multi_indices"])?;
            for l in levels {
                let idx: Vec<String> = l.multi_indices.iter().map(|m| m.to_string()).collect();
                w.write_record([fmt(l.energy), l.degeneracy.to_string(), idx.join(";")])?;
            }
            w.flush()?;
        }
        Command::Verify { suite, seed } => {
            let reports = match suite {
                Suite::Identities => verify_identities(seed)?,
                Suite::Residuals => verify_residuals(seed)?,
                Suite::Vandermonde => verify_vandermonde(seed)?,
                Suite::Onebody => verify_onebody(seed, &custom)?,
            };
            serde_json::to_writer_pretty(&mut *out, &reports)?;
            writeln!(out)?;
            if reports.iter().any(|r| !r.pass) {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Shortest round-trip decimal form, so output is byte-stable.
fn fmt(v: f64) -> String {
    format!("{v}")
}

/// Grow `kmax` until the analytic spectrum holds at least `k` eigenvalues.
fn first_levels(
    f: impl Fn(f64) -> specfact::Result<SpectralResult>,
    k: usize,
) -> CliResult<SpectralResult> {
    let mut kmax = 2.0;
    loop {
        let r = f(kmax)?;
        if r.total_multiplicity() > k || kmax > 1e6 {
            return Ok(r);
        }
        kmax *= 2.0;
    }
}

/// Rows `index,eigenvalue,multiplicity,error_estimate`, one per eigenvalue counted
/// with multiplicity, at most `k` of them. Degenerate eigenvalues repeat the merged value.
fn spectrum_rows(r: &SpectralResult, k: usize) -> Vec<[String; 4]> {
    r.entries
        .iter()
        .flat_map(|e| std::iter::repeat_n(e, e.multiplicity))
        .take(k)
        .enumerate()
        .map(|(i, e)| [i.to_string(), fmt(e.eigenvalue), e.multiplicity.to_string(), fmt(e.error_estimate)])
        .collect()
}

fn write_spectrum(out: &mut dyn Write, r: &SpectralResult, k: usize) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "eigenvalue", "multiplicity", "error_estimate"])?;
    for row in spectrum_rows(r, k) {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_parameter_sweep(
    out: &mut dyn Write,
    name: &str,
    values: &[f64],
    runs: Vec<specfact::Result<SpectralResult>>,
    k: usize,
) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([name, "index", "eigenvalue", "multiplicity", "error_estimate"])?;
    for (v, run) in values.iter().zip(runs) {
        for row in spectrum_rows(&run?, k) {
            let mut rec = vec![fmt(*v)];
            rec.extend(row);
            w.write_record(&rec)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn spectrum(model: &OneBodyModel, k: usize, grid: usize, out: &mut dyn Write) -> CliResult<()> {
    let (numeric, exact): (SpectralResult, Vec<f64>) = match circle_alpha(model) {
        Some(alpha) => {
            // no interior constraint: only the analytic solver applies
            let r = first_levels(|kmax| circle_spectrum(alpha, kmax), k)?;
            let e = r.expanded();
            (r, e)
        }
        None => {
            let available = model.n_max().map_or(k, |m| k.min(m + 1));
            let coarse = discretize(model, model.default_box(), grid, &[], &[])?;
            let fine = coarse.refined()?;
            let r = eigenvalues_refined(&coarse, &fine, available.max(1))?;
            let e = (0..available).map(|n| model.energy(n)).collect();
            (r, e)
        }
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "eigenvalue", "multiplicity", "error_estimate", "exact", "deviation"])?;
    for row in spectrum_rows(&numeric, k) {
        let index: usize = row[0].parse().expect("index column is an integer");
        let (ex, dev) = match exact.get(index) {
            Some(&x) => (fmt(x), fmt(row[1].parse::<f64>().expect("eigenvalue column") - x)),
            None => (String::new(), String::new()),
        };
        let mut rec = row.to_vec();
        rec.push(ex);
        rec.push(dev);
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn sweep_alpha(from: f64, to: f64, steps: usize, kmax: f64, factorized: bool, out: &mut dyn Write) -> CliResult<()> {
    if !(from.is_finite() && to.is_finite()) {
        return Err(CliError::Usage("--from and --to must be finite".into()));
    }
    let alphas: Vec<f64> = if steps == 0 {
        vec![from]
    } else {
        (0..=steps).map(|i| from + (to - from) * i as f64 / steps as f64).collect()
    };
    let pool = thread_pool()?;
    let runs: Vec<specfact::Result<Vec<CircleLevel>>> = pool.install(|| {
        alphas
            .par_iter()
            .map(|&a| if factorized { circle_factorized_levels(a, kmax) } else { circle_levels(a, kmax) })
            .collect()
    });
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["alpha", "k", "eigenvalue", "branch"])?;
    for (a, run) in alphas.iter().zip(runs) {
        for level in run? {
            for _ in 0..level.multiplicity {
                let branch = if level.hyperbolic {
                    format!("{}-hyperbolic", level.branch.as_str())
                } else {
                    level.branch.as_str().to_string()
                };
                w.write_record([fmt(*a), fmt(level.k), fmt(level.eigenvalue), branch])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

const IDENTITY_SAMPLES: usize = 1000;
const IDENTITY_GAP: f64 = 0.1;

fn verify_identities(seed: u64) -> CliResult<Vec<VerificationReport>> {
    let kinds = [
        (TripleKind::Rational, (-3.0, 3.0)),
        (TripleKind::Cotangent, (-PI, PI)),
        (TripleKind::Hyperbolic, (-3.0, 3.0)),
    ];
    let mut reports = Vec::new();
    for (i, (kind, bx)) in kinds.iter().enumerate() {
        let mut rng = config_rng(seed, i as u64);
        let mut devs = Vec::with_capacity(IDENTITY_SAMPLES);
        for _ in 0..IDENTITY_SAMPLES {
            let x = random_points_with_gap(&mut rng, *bx, 3, IDENTITY_GAP);
            let r = triple_identity(kind, x[0], x[1], x[2])?;
            devs.push(r.value - r.expected);
        }
        reports.push(VerificationReport::from_deviations(kind.name(), &devs, 1e-12));
    }
    Ok(reports)
}

fn proposition_models() -> specfact::Result<Vec<OneBodyModel>> {
    Ok(vec![
        OneBodyModel::harmonic(),
        OneBodyModel::poschl_teller(5.0)?,
        OneBodyModel::jacobi(1.0, 2.0)?,
        OneBodyModel::gegenbauer(1.5)?,
        OneBodyModel::chebyshev(),
        OneBodyModel::laguerre(0.5)?,
    ])
}

fn verify_residuals(seed: u64) -> CliResult<Vec<VerificationReport>> {
    let mut reports = Vec::new();
    for model in proposition_models()? {
        for n in [2, 3] {
            for lambda in [0.5, 1.5, 2.0] {
                let sys = ManyBodySystem::new(model.clone(), n, lambda)?;
                reports.push(residual_report(&sys, 100, seed)?);
            }
        }
    }
    Ok(reports)
}

fn verify_vandermonde(seed: u64) -> CliResult<Vec<VerificationReport>> {
    let mut reports = Vec::new();
    for (mi, model) in [OneBodyModel::harmonic(), OneBodyModel::poschl_teller(5.0)?].iter().enumerate() {
        for n in 2..=4 {
            let mut rng = config_rng(seed, (10 * mi + n) as u64);
            let mut ratios = Vec::with_capacity(50);
            for _ in 0..50 {
                let x = random_configuration(model, n, &mut rng);
                let (det, prod) = slater_and_product(model, n, &x)?;
                ratios.push(det / prod);
            }
            let r0 = ratios[0];
            let devs: Vec<f64> = ratios.iter().map(|r| (r - r0) / r0).collect();
            let mut report = VerificationReport::from_deviations(model.label(), &devs, 1e-10);
            report.n = Some(n);
            reports.push(report);
        }
    }
    Ok(reports)
}

/// Factorization residual of the catalogue models and of any `--config` models.
fn verify_onebody(seed: u64, custom: &[OneBodyModel]) -> CliResult<Vec<VerificationReport>> {
    let mut reports = Vec::new();
    let mut models = proposition_models()?;
    models.extend(custom.iter().cloned());
    for (mi, model) in models.iter().enumerate() {
        let top = model.n_max().unwrap_or(5).min(5);
        let (a, b) = model.sample_box();
        let mut rng = config_rng(seed, 100 + mi as u64);
        let mut devs = Vec::new();
        for n in 0..=top {
            let nodes = model.nodal_points(n)?;
            while devs.len() < 100 * (n + 1) {
                let x = random_points(&mut rng, (a, b), 1)[0];
                if nodes.iter().any(|z| (z - x).abs() < 1e-3) {
                    continue;
                }
                let scale = model.potential(x).abs().max(1.0);
                devs.push(model.one_body_residual(n, x)? / scale);
            }
        }
        reports.push(VerificationReport::from_deviations(model.label(), &devs, 1e-8));
    }
    Ok(reports)
}
