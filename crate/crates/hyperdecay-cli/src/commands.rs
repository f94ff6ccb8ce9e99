//! Argument surface and one handler per subcommand.

use std::fmt;
use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hyperdecay::acvf::{acvf_model, aggregate_acvf, fit_decay};
use hyperdecay::duality;
use hyperdecay::prediction::{
    a_k_diagnostic, durbin_levinson, exact_loglik, gvar_fracnoise, gvar_general,
    predict_one_step,
};
use hyperdecay::simulation::{simulate, SimConfig, SimMethod};
use hyperdecay::spectrum::{innovation_variance, sdf};
use hyperdecay::weights::{check_rate, pi_weights, psi_weights};
use hyperdecay::{Error as LibError, Exactness, ModelSpec};

use crate::output::{csv_table, Format, Report};

#[derive(Parser)]
#[command(
    name = "hyperdecay",
    version,
    about = "Exact computations for hyperbolic-decay time series",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

/// Model argument: inline JSON (first non-space byte `{`) or a file path.
#[derive(Args)]
pub struct ModelArg {
    /// Model JSON, inline or as a path to a .json file.
    #[arg(long)]
    pub model: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Psi,
    Pi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridArg {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// One-step innovations from the Durbin-Levinson recursion.
    Dl,
    /// Dense covariance factorization (n capped at 5000).
    Dense,
}

impl From<MethodArg> for SimMethod {
    fn from(m: MethodArg) -> SimMethod {
        match m {
            MethodArg::Dl => SimMethod::DlInnovations,
            MethodArg::Dense => SimMethod::DenseFactorization,
        }
    }
}

fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected LO,HI".into());
    }
    let lo = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let hi = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok((lo, hi))
}

#[derive(Subcommand)]
pub enum Command {
    /// Validate a model and echo it with defaults made explicit.
    Validate {
        #[command(flatten)]
        model: ModelArg,
    },
    /// Autocovariances gamma(0..max-lag).
    Acvf {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        max_lag: usize,
        /// Truncation tolerance for models without a closed form.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Partial autocorrelations and standardized prediction-error variances.
    Pacf {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        k_max: usize,
        /// Innovation variance override for the standardization.
        #[arg(long)]
        sigma2_a: Option<f64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Shock-expansion (psi) or inverted-form (pi) weights.
    Weights {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Highest weight order to compute.
        #[arg(long)]
        count: usize,
        /// Emit only orders LO..=HI (defaults to the full range).
        #[arg(long, value_parser = parse_window)]
        window: Option<(usize, usize)>,
    },
    /// Spectral density on a frequency grid inside (0, pi].
    Spectrum {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, value_enum, default_value_t = GridArg::Linear)]
        grid: GridArg,
        #[arg(long, default_value_t = 1e-4)]
        min: f64,
        #[arg(long, default_value_t = std::f64::consts::PI)]
        max: f64,
    },
    /// Dual model: persistence reversed, spectrum reciprocated.
    Dual {
        #[command(flatten)]
        model: ModelArg,
    },
    /// Autocovariances of the block-averaged (aggregated) series.
    Aggregate {
        #[command(flatten)]
        model: ModelArg,
        /// Block length.
        #[arg(long)]
        m: usize,
        #[arg(long)]
        max_lag: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Standardized generalized variance g(n).
    Gvar {
        /// Fractional-noise memory parameter (closed-form O(n) route).
        #[arg(long, conflicts_with = "model")]
        d: Option<f64>,
        /// Model JSON for the generic recursion route.
        #[arg(long)]
        model: Option<String>,
        /// Comma-separated strictly increasing path lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        /// Innovation variance override (generic route only).
        #[arg(long)]
        sigma2_a: Option<f64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// The 4x8 reference grid of g(n) at four decimals.
    Table1,
    /// Log prediction-variance decrements a(k) and the products k*a(k).
    Ak {
        #[arg(long)]
        d: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        k_list: Vec<usize>,
    },
    /// One-step prediction from a finite history (oldest value first).
    Predict {
        #[command(flatten)]
        model: ModelArg,
        /// Comma-separated values, or a path to a single-column CSV.
        #[arg(long)]
        history: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Exact Gaussian log-likelihood and AIC of a zero-mean series.
    Loglik {
        #[command(flatten)]
        model: ModelArg,
        /// Single-column CSV path, or - for stdin.
        #[arg(long)]
        data: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Exact Gaussian sample path (single column, no header).
    Simulate {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Dl)]
        method: MethodArg,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Fitted vs theoretical decay exponents (autocovariances and weights).
    Rates {
        #[command(flatten)]
        model: ModelArg,
        /// Weight-order window for the psi/pi fits.
        #[arg(long, value_parser = parse_window, default_value = "1000,100000")]
        weight_window: (usize, usize),
        /// Lag window for the autocovariance fit.
        #[arg(long, value_parser = parse_window, default_value = "1000,10000")]
        acvf_window: (usize, usize),
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

pub enum CliError {
    Lib(LibError),
    ModelJson(String),
    Data(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::ModelJson(_) => 65,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "hyperdecay: error[{}] {e}", e.code()),
            CliError::ModelJson(m) => write!(f, "hyperdecay: error[MalformedModelJson] {m}"),
            CliError::Data(m) => write!(f, "hyperdecay: error[DataParse] {m}"),
            CliError::Io(m) => write!(f, "hyperdecay: error[Io] {m}"),
        }
    }
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn parse_model(arg: &str) -> CliResult<ModelSpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))?
    };
    let spec: ModelSpec =
        serde_json::from_str(&text).map_err(|e| CliError::ModelJson(e.to_string()))?;
    spec.validate()?;
    Ok(spec)
}

fn read_column(path: &str) -> CliResult<Vec<f64>> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin())
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?
    };
    parse_column(&text)
}

fn parse_column(text: &str) -> CliResult<Vec<f64>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.parse()
                .map_err(|_| CliError::Data(format!("not a number: {l:?}")))
        })
        .collect()
}

/// Inline comma-separated floats, falling back to a single-column file.
fn parse_history(arg: &str) -> CliResult<Vec<f64>> {
    let inline: Result<Vec<f64>, _> = arg.split(',').map(|t| t.trim().parse()).collect();
    match inline {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => read_column(arg),
    }
}

fn require(cond: bool, msg: &str) -> CliResult<()> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Lib(LibError::ParameterOutOfRange(msg.into())))
    }
}

pub fn run(cli: Cli) -> CliResult<()> {
    let report = match cli.command {
        Command::Validate { model } => cmd_validate(&model)?,
        Command::Acvf {
            model,
            max_lag,
            tol,
        } => cmd_acvf(&model, max_lag, tol)?,
        Command::Pacf {
            model,
            k_max,
            sigma2_a,
            tol,
        } => cmd_pacf(&model, k_max, sigma2_a, tol)?,
        Command::Weights {
            model,
            kind,
            count,
            window,
        } => cmd_weights(&model, kind, count, window)?,
        Command::Spectrum {
            model,
            points,
            grid,
            min,
            max,
        } => cmd_spectrum(&model, points, grid, min, max)?,
        Command::Dual { model } => cmd_dual(&model)?,
        Command::Aggregate {
            model,
            m,
            max_lag,
            tol,
        } => cmd_aggregate(&model, m, max_lag, tol)?,
        Command::Gvar {
            d,
            model,
            n_list,
            sigma2_a,
            tol,
        } => cmd_gvar(d, model.as_deref(), &n_list, sigma2_a, tol)?,
        Command::Table1 => cmd_table1()?,
        Command::Ak { d, k_list } => cmd_ak(d, &k_list)?,
        Command::Predict {
            model,
            history,
            tol,
        } => cmd_predict(&model, &history, tol)?,
        Command::Loglik { model, data, tol } => cmd_loglik(&model, &data, tol)?,
        Command::Simulate {
            model,
            n,
            seed,
            method,
            tol,
        } => cmd_simulate(&model, n, seed, method, tol)?,
        Command::Rates {
            model,
            weight_window,
            acvf_window,
            tol,
        } => cmd_rates(&model, weight_window, acvf_window, tol)?,
    };
    report.emit(cli.format);
    Ok(())
}

fn cmd_validate(model: &ModelArg) -> CliResult<Report> {
    let spec = parse_model(&model.model)?;
    let mut report = Report::new("validate");
    report.csv = format!("{:#}\n", serde_json::to_value(&spec).unwrap());
    report.data = serde_json::to_value(&spec).unwrap();
    report.model = Some(spec);
    Ok(report)
}

fn cmd_acvf(model: &ModelArg, max_lag: usize, tol: f64) -> CliResult<Report> {
    let spec = parse_model(&model.model)?;
    let acvf = acvf_model(&spec, max_lag, tol)?;
    let mut report = Report::new("acvf");
    report.param("max_lag", json!(max_lag));
    report.tolerance("truncation", tol);
    if let Exactness::Truncated { tail_bound } = acvf.exactness {
        report.tolerance("tail_bound", tail_bound);
    }
    report.csv = csv_table(
        "lag,gamma",
        acvf.values
            .iter()
            .enumerate()
            .map(|(k, g)| format!("{k},{g}")),
    );
    report.data = json!({
        "lag": (0..=max_lag).collect::<Vec<_>>(),
        "gamma": acvf.values,
    });
    report.model = Some(spec);
    Ok(report)
}

fn cmd_pacf(
    model: &ModelArg,
    k_max: usize,
    sigma2_a: Option<f64>,
    tol: f64,
) -> CliResult<Report> {
    let spec = parse_model(&model.model)?;
    let resolved_sigma2 = match sigma2_a {
        Some(v) => v,
        None => innovation_variance(&spec)?,
    };
    let acvf = acvf_model(&spec, k_max, tol)?;
    let dl = durbin_levinson(&acvf, k_max + 1, Some(resolved_sigma2))?;
    let mut report = Report::new("pacf");
    report
        .param("k_max", json!(k_max))
        .param("sigma2_a", json!(resolved_sigma2))
        .tolerance("truncation", tol);
    report.csv = csv_table(
        "k,pacf,sigma2",
        (1..=k_max).map(|k| format!("{k},{},{}", dl.pacf[k - 1], dl.sigma2[k])),
    );
    report.data = json!({
        "k": (1..=k_max).collect::<Vec<_>>(),
        "pacf": dl.pacf,
        "sigma2": dl.sigma2[1..].to_vec(),
    });
    report.model = Some(spec);
    Ok(report)
}

fn cmd_weights(
    model: &ModelArg,
    kind: KindArg,
    count: usize,
    window: Option<(usize, usize)>,
) -> CliResult<Report> {
    let spec = parse_model(&model.model)?;
    let w = match kind {
        KindArg::Psi => psi_weights(&spec, count)?,
        KindArg::Pi => pi_weights(&spec, count)?,
    };
    let (lo, hi) = window.unwrap_or((1, count));
    require(
        lo >= 1 && lo <= hi && hi <= count,
        "weight window must satisfy 1 <= LO <= HI <= count",
    )?;
    let mut report = Report::new("weights");
    report
        .param("kind", json!(format!("{kind:?}").to_lowercase()))
        .param("count", json!(count))
        .param("window", json!([lo, hi]));
    report.csv = csv_table(
        "ell,weight",
        (lo..=hi).map(|l| format!("{l},{}", w.values[l - 1])),
    );
    report.data = json!({
        "ell": (lo..=hi).collect::<Vec<_>>(),
        "weight": w.values[lo - 1..hi].to_vec(),
    });
    report.model = Some(spec);
    Ok(report)
}

fn cmd_spectrum(
    model: &ModelArg,
    points: usize,
    grid: GridArg,
    min: f64,
    max: f64,
) -> CliResult<Report> {
    let spec = parse_model(&model.model)?;
    require(points >= 1, "spectrum grid needs at least one point")?;
    require(
        min > 0.0 && min <= max,
        "frequency window must satisfy 0 < MIN <= MAX",
    )?;
    let lambda: Vec<f64> = if points == 1 {
        vec![min]
    } else {
        match grid {
            GridArg::Linear => (0..points)
                .map(|i| min + (max - min) * i as f64 / (points - 1) as f64)
                .collect(),
            GridArg::Log => (0..points)
                .map(|i| min * (max / min).powf(i as f64 / (points - 1) as f64))
                .collect(),
        }
    };
    let f: Vec<f64> = lambda
        .iter()
        .map(|&l| sdf(&spec, l))
        .collect::<Result<_, _>>()?;
    let mut report = Report::new("spectrum");
    report
        .param("points", json!(points))
        .param("grid", json!(format!("{grid:?}").to_lowercase()))
        .param("min", json!(min))
        .param("max", json!(max));
    report.csv = csv_table(
        "lambda,f",
        lambda
            .iter()
            .zip(&f)
            .map(|(l, v)| format!("{l},{v}")),
    );
    report.data = json!({ "lambda": lambda, "f": f });
    report.model = Some(spec);
    Ok(report)
}

fn cmd_dual(model: &ModelArg) -> CliResult<Report> {
    let spec = parse_model(&model.model)?;
    let dual_spec = duality::dual(&spec)?;
    let mut report = Report::new("dual");
    report.csv = format!("{:#}\n", serde_json::to_value(&dual_spec).unwrap());
    report.data = serde_json::to_value(&dual_spec).unwrap();
    report.model = Some(spec);
    Ok(report)
}

fn cmd_aggregate(model: &ModelArg, m: usize, max_lag: usize, tol: f64) -> CliResult<Report> {
    let spec = parse_model(&model.model)?;
    require(m >= 1, "block length m must be at least 1")?;
    let base = acvf_model(&spec, m * max_lag + m - 1, tol)?;
    let agg = aggregate_acvf(&base, m, max_lag)?;
    let mut report = Report::new("aggregate");
    report
        .param("m", json!(m))
        .param("max_lag", json!(max_lag))
        .tolerance("truncation", tol);
    report.csv = csv_table(
        "lag,gamma",
        agg.values
            .iter()
            .enumerate()
            .map(|(k, g)| format!("{k},{g}")),
    );
    report.data = json!({
        "lag": (0..=max_lag).collect::<Vec<_>>(),
        "gamma": agg.values,
    });
    report.model = Some(spec);
    Ok(report)
}

fn cmd_gvar(
    d: Option<f64>,
    model: Option<&str>,
    n_list: &[usize],
    sigma2_a: Option<f64>,
    tol: f64,
) -> CliResult<Report> {
    let mut report = Report::new("gvar");
    report.param("n_list", json!(n_list));
    let curve = match (d, model) {
        (Some(d), None) => {
            let spec = ModelSpec::FractionalNoise { d, sigma2: 1.0 };
            spec.validate()?;
            report.param("route", json!("closed-form"));
            report.model = Some(spec);
            gvar_fracnoise(d, n_list)?
        }
        (None, Some(text)) => {
            let spec = parse_model(text)?;
            let max_n = *n_list.last().ok_or_else(|| {
                CliError::Lib(LibError::ParameterOutOfRange("empty n list".into()))
            })?;
            let acvf = acvf_model(&spec, max_n.saturating_sub(1), tol)?;
            let resolved = match sigma2_a {
                Some(v) => v,
                None => innovation_variance(&spec)?,
            };
            report
                .param("route", json!("recursion"))
                .param("sigma2_a", json!(resolved))
                .tolerance("truncation", tol);
            report.model = Some(spec);
            gvar_general(&acvf, n_list, Some(resolved))?
        }
        _ => {
            return Err(CliError::Lib(LibError::ParameterOutOfRange(
                "exactly one of --d and --model is required".into(),
            )))
        }
    };
    report.csv = csv_table(
        "n,g",
        curve
            .n_values
            .iter()
            .zip(&curve.g_values)
            .map(|(n, g)| format!("{n},{g}")),
    );
    report.data = json!({ "n": curve.n_values, "g": curve.g_values });
    Ok(report)
}

fn cmd_table1() -> CliResult<Report> {
    let d_values = [-0.4, -0.1, 0.1, 0.4];
    let n_values: Vec<usize> = (0..8u32).map(|k| 10usize.pow(k)).collect();
    let mut rows = Vec::new();
    let mut full = Vec::new();
    for &d in &d_values {
        let curve = gvar_fracnoise(d, &n_values)?;
        let cells: Vec<String> = curve.g_values.iter().map(|g| format!("{g:.4}")).collect();
        rows.push(format!("{d},{}", cells.join(",")));
        full.push(curve.g_values);
    }
    let header = format!(
        "d,{}",
        n_values
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let mut report = Report::new("table1");
    report.csv = csv_table(&header, rows);
    report.data = json!({ "d": d_values, "n": n_values, "g": full });
    Ok(report)
}

fn cmd_ak(d: f64, k_list: &[usize]) -> CliResult<Report> {
    let spec = ModelSpec::FractionalNoise { d, sigma2: 1.0 };
    spec.validate()?;
    let mut a_values = Vec::with_capacity(k_list.len());
    let mut ka_values = Vec::with_capacity(k_list.len());
    for &k in k_list {
        let (a, ka) = a_k_diagnostic(d, k)?;
        a_values.push(a);
        ka_values.push(ka);
    }
    let mut report = Report::new("ak");
    report.param("k_list", json!(k_list));
    report.csv = csv_table(
        "k,a_k,k_a_k",
        k_list
            .iter()
            .zip(a_values.iter().zip(&ka_values))
            .map(|(k, (a, ka))| format!("{k},{a},{ka}")),
    );
    report.data = json!({ "k": k_list, "a_k": a_values, "k_a_k": ka_values });
    report.model = Some(spec);
    Ok(report)
}

fn cmd_predict(model: &ModelArg, history: &str, tol: f64) -> CliResult<Report> {
    let spec = parse_model(&model.model)?;
    let history = parse_history(history)?;
    let acvf = acvf_model(&spec, history.len(), tol)?;
    let (prediction, error_variance) = predict_one_step(&acvf, &history)?;
    let mut report = Report::new("predict");
    report
        .param("history_length", json!(history.len()))
        .tolerance("truncation", tol);
    report.csv = csv_table(
        "prediction,error_variance",
        std::iter::once(format!("{prediction},{error_variance}")),
    );
    report.data = json!({
        "prediction": prediction,
        "error_variance": error_variance,
    });
    report.model = Some(spec);
    Ok(report)
}

fn cmd_loglik(model: &ModelArg, data: &str, tol: f64) -> CliResult<Report> {
    let spec = parse_model(&model.model)?;
    let series = read_column(data)?;
    let acvf = acvf_model(&spec, series.len().saturating_sub(1), tol)?;
    let fit = exact_loglik(&acvf, &series)?;
    let aic = fit.aic.expect("model route always counts parameters");
    let mut report = Report::new("loglik");
    report
        .param("n", json!(series.len()))
        .tolerance("truncation", tol);
    report.csv = csv_table(
        "loglik,aic",
        std::iter::once(format!("{},{}", fit.loglik, aic)),
    );
    report.data = json!({ "loglik": fit.loglik, "aic": aic });
    report.model = Some(spec);
    Ok(report)
}

fn cmd_simulate(
    model: &ModelArg,
    n: usize,
    seed: u64,
    method: MethodArg,
    tol: f64,
) -> CliResult<Report> {
    let spec = parse_model(&model.model)?;
    let acvf = acvf_model(&spec, n.saturating_sub(1), tol)?;
    let config = SimConfig {
        n,
        seed,
        method: method.into(),
    };
    let path = simulate(&acvf, &config)?;
    let mut report = Report::new("simulate");
    report
        .param("n", json!(n))
        .param("seed", json!(seed))
        .param(
            "method",
            json!(format!("{method:?}").to_lowercase()),
        )
        .tolerance("truncation", tol);
    let mut csv = String::new();
    for z in &path {
        csv.push_str(&format!("{z}\n"));
    }
    report.csv = csv;
    report.data = json!({ "path": path });
    report.model = Some(spec);
    Ok(report)
}

fn cmd_rates(
    model: &ModelArg,
    weight_window: (usize, usize),
    acvf_window: (usize, usize),
    tol: f64,
) -> CliResult<Report> {
    let spec = parse_model(&model.model)?;
    let alpha = spec.decay_class()?.alpha;
    let mut rows: Vec<(String, f64, f64)> = Vec::new();

    let acvf = acvf_model(&spec, acvf_window.1, tol)?;
    let fit = fit_decay(&acvf, acvf_window)?;
    rows.push(("acvf".into(), fit.alpha_hat, alpha));

    // Transfer-form weights exist for the fractional families only.
    if !matches!(spec, ModelSpec::Fgn { .. }) {
        let psi = psi_weights(&spec, weight_window.1)?;
        let fit = check_rate(&psi, weight_window)?;
        rows.push(("psi".into(), fit.alpha_hat, (1.0 + alpha) / 2.0));
        let pi = pi_weights(&spec, weight_window.1)?;
        let fit = check_rate(&pi, weight_window)?;
        rows.push(("pi".into(), fit.alpha_hat, (3.0 - alpha) / 2.0));
    }

    let mut report = Report::new("rates");
    report
        .param("weight_window", json!([weight_window.0, weight_window.1]))
        .param("acvf_window", json!([acvf_window.0, acvf_window.1]))
        .tolerance("truncation", tol);
    report.csv = csv_table(
        "quantity,estimated,theoretical",
        rows.iter()
            .map(|(q, est, th)| format!("{q},{est},{th}")),
    );
    report.data = json!({
        "quantity": rows.iter().map(|(q, _, _)| q.clone()).collect::<Vec<_>>(),
        "estimated": rows.iter().map(|(_, e, _)| *e).collect::<Vec<_>>(),
        "theoretical": rows.iter().map(|(_, _, t)| *t).collect::<Vec<_>>(),
    });
    report.model = Some(spec);
    Ok(report)
}
