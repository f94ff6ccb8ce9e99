//! Durbin-Levinson engine: partial autocorrelations, one-step
//! prediction-error variances, finite-past predictor coefficients, the
//! standardized generalized variance g(n), the a(k) slow-decay diagnostic,
//! and the exact Gaussian log-likelihood in innovations form.
//!
//! g(n) is det of the order-n covariance matrix divided by sigma_A^{2n},
//! equal to the product of sigma_k^2 / sigma_A^2 over k < n. It is always
//! accumulated in log domain; products over 1e7 terms each 1 + O(1/k)
//! lose precision multiplicatively.

use crate::acvf::AcvfSeq;
use crate::error::{Error, Result};
use crate::models::ModelSpec;
use crate::special::{ln_fracnoise_gamma0, ln_gamma_symmetric_diff};
use crate::spectrum::innovation_variance;

/// Full O(n^2) Durbin-Levinson runs are capped at this order unless the
/// `HYPERDECAY_MAX_DL` environment variable overrides it; beyond the cap
/// the closed forms or the O(n) generalized-variance path must be used.
pub const DEFAULT_MAX_DL: usize = 100_000;

/// Reflection coefficients at or beyond this magnitude signal a
/// non-positive-definite input rather than a borderline model.
const PACF_LIMIT: f64 = 1.0 - 1e-12;

/// Closed-form evaluation switches to the cancellation-free Stirling route
/// at this lag.
const STIRLING_MIN_LAG: usize = 16;

/// Current full-recursion order cap (`HYPERDECAY_MAX_DL` override or the
/// default).
pub fn max_dl_cap() -> usize {
    std::env::var("HYPERDECAY_MAX_DL")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_DL)
}

fn check_cap(n: usize) -> Result<()> {
    let cap = max_dl_cap();
    if n > cap {
        return Err(Error::MethodCapExceeded { n, cap });
    }
    Ok(())
}

/// Durbin-Levinson outputs at order n.
#[derive(Debug, Clone, PartialEq)]
pub struct DlResult {
    /// Partial autocorrelations phi_{k,k}, k = 1..n-1.
    pub pacf: Vec<f64>,
    /// Prediction-error variances sigma_k^2, k = 0..n-1 (sigma_0^2 = gamma(0)).
    pub sigma2: Vec<f64>,
    /// Final predictor row phi_{n-1,j}, j = 1..n-1.
    pub last_coeffs: Vec<f64>,
    /// Sum over k < n of ln(sigma_k^2 / sigma_A^2).
    pub log_gvar: f64,
}

/// A generalized-variance curve g(n) over requested orders.
#[derive(Debug, Clone, PartialEq)]
pub struct GvarCurve {
    pub n_values: Vec<usize>,
    pub g_values: Vec<f64>,
}

/// Core recursion. Calls `on_step(k, pacf_k, sigma_k^2, coeffs)` for
/// k = 1..n-1 where `coeffs` is the updated predictor row phi_{k,1..k}.
pub(crate) fn dl_core(
    gamma: &[f64],
    n: usize,
    mut on_step: impl FnMut(usize, f64, f64, &[f64]),
) -> Result<()> {
    let g0 = gamma[0];
    if !(g0 > 0.0) {
        return Err(Error::NotPositiveDefinite { lag: 0 });
    }
    let mut sigma2 = g0;
    let mut coeffs: Vec<f64> = Vec::with_capacity(n.saturating_sub(1));
    let mut prev: Vec<f64> = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let mut num = gamma[k];
        for j in 1..k {
            num -= coeffs[j - 1] * gamma[k - j];
        }
        let pacf = num / sigma2;
        if !(pacf.abs() < PACF_LIMIT) {
            return Err(Error::NotPositiveDefinite { lag: k });
        }
        prev.clear();
        prev.extend_from_slice(&coeffs);
        for j in 1..k {
            coeffs[j - 1] = prev[j - 1] - pacf * prev[k - 1 - j];
        }
        coeffs.push(pacf);
        sigma2 *= 1.0 - pacf * pacf;
        on_step(k, pacf, sigma2, &coeffs);
    }
    Ok(())
}

/// Innovation variance used to standardize g(n): an explicit override, or
/// the source model's value (Kolmogoroff's formula for FGN). Raw input
/// without an override resolves to None.
fn resolve_sigma2_a(acvf: &AcvfSeq, sigma2_a: Option<f64>) -> Result<Option<f64>> {
    match sigma2_a {
        Some(v) if v > 0.0 => Ok(Some(v)),
        Some(v) => Err(Error::ParameterOutOfRange(format!(
            "innovation variance {v} must be positive"
        ))),
        None => match acvf.model() {
            Some(spec) => Ok(Some(innovation_variance(spec)?)),
            None => Ok(None),
        },
    }
}

/// Full Durbin-Levinson recursion of order n over `acvf` lags 0..n-1.
/// O(n^2) time, O(n) memory, capped at [`max_dl_cap`].
///
/// `sigma2_a` overrides the innovation variance used for `log_gvar`; when
/// absent it is taken from the source model, and raw input falls back to
/// standardization by 1.
pub fn durbin_levinson(acvf: &AcvfSeq, n: usize, sigma2_a: Option<f64>) -> Result<DlResult> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("order n = 0".into()));
    }
    if acvf.max_lag() + 1 < n {
        return Err(Error::InsufficientLags {
            needed: n - 1,
            available: acvf.max_lag(),
        });
    }
    check_cap(n)?;
    let s2a = resolve_sigma2_a(acvf, sigma2_a)?.unwrap_or(1.0);

    let mut pacf = Vec::with_capacity(n - 1);
    let mut sigma2 = Vec::with_capacity(n);
    sigma2.push(acvf.gamma(0));
    let mut last_coeffs = Vec::new();
    dl_core(&acvf.values, n, |_, p, s2, coeffs| {
        pacf.push(p);
        sigma2.push(s2);
        if coeffs.len() == n - 1 {
            last_coeffs = coeffs.to_vec();
        }
    })?;
    if !(sigma2[0] > 0.0) {
        return Err(Error::NotPositiveDefinite { lag: 0 });
    }
    let ln_a = s2a.ln();
    let log_gvar = sigma2.iter().map(|s| s.ln() - ln_a).sum();
    Ok(DlResult {
        pacf,
        sigma2,
        last_coeffs,
        log_gvar,
    })
}

/// Exact partial autocorrelation d / (k - d) of fractionally differenced
/// white noise.
pub fn pacf_fracnoise(d: f64, k: usize) -> Result<f64> {
    check_d(d)?;
    if k == 0 {
        return Err(Error::ParameterOutOfRange("pacf lag k = 0".into()));
    }
    Ok(d / (k as f64 - d))
}

/// Closed-form prediction-error variance
/// `sigma_k^2 = Gamma(k+1) Gamma(k-2d+1) / Gamma(k-d+1)^2`.
///
/// Small lags run the reflection-ratio product
/// `gamma(0) prod_{j<=k} (1 - (d/(j-d))^2)` in the linear domain; from
/// lag 16 the symmetric log-gamma combination is evaluated by the
/// Stirling second-difference route. Both keep full relative precision
/// where the naive three-term log-gamma difference has already lost
/// three digits.
pub fn sigma2_fracnoise(d: f64, k: usize) -> Result<f64> {
    check_d(d)?;
    if k < STIRLING_MIN_LAG {
        let mut s2 = ln_fracnoise_gamma0(d).exp();
        for j in 1..=k {
            let x = d / (j as f64 - d);
            s2 *= 1.0 - x * x;
        }
        Ok(s2)
    } else {
        Ok(ln_gamma_symmetric_diff(k as f64 + 1.0 - d, d).exp())
    }
}

/// Largest order accepted by the O(n) generalized-variance scan.
pub const MAX_GVAR_N: usize = 100_000_000;

/// Standardized generalized variance of fractionally differenced white
/// noise at each requested order, by the O(1)-per-step reflection-ratio
/// recursion `ln sigma_k^2 = ln sigma_{k-1}^2 + ln(1 - (d/(k-d))^2)`.
/// O(max n) total.
pub fn gvar_fracnoise(d: f64, n_values: &[usize]) -> Result<GvarCurve> {
    check_d(d)?;
    check_n_values(n_values, MAX_GVAR_N)?;
    let max_n = *n_values.last().unwrap();
    let mut g_values = Vec::with_capacity(n_values.len());
    let mut next = 0;
    // Seed accuracy matters: its absolute error reaches the result
    // multiplied by n.
    let mut log_sigma2 = ln_fracnoise_gamma0(d);
    let mut log_g = 0.0;
    for k in 0..max_n {
        if k > 0 {
            let x = d / (k as f64 - d);
            log_sigma2 += (-x * x).ln_1p();
        }
        log_g += log_sigma2;
        if n_values[next] == k + 1 {
            g_values.push(log_g.exp());
            next += 1;
            if next == n_values.len() {
                break;
            }
        }
    }
    Ok(GvarCurve {
        n_values: n_values.to_vec(),
        g_values,
    })
}

/// Generalized variance of an arbitrary autocovariance sequence through
/// the full recursion, standardized by the resolved innovation variance.
/// Raw input must supply `sigma2_a` explicitly.
pub fn gvar_general(
    acvf: &AcvfSeq,
    n_values: &[usize],
    sigma2_a: Option<f64>,
) -> Result<GvarCurve> {
    check_n_values(n_values, usize::MAX)?;
    let max_n = *n_values.last().unwrap();
    if acvf.max_lag() + 1 < max_n {
        return Err(Error::InsufficientLags {
            needed: max_n - 1,
            available: acvf.max_lag(),
        });
    }
    check_cap(max_n)?;
    let s2a = resolve_sigma2_a(acvf, sigma2_a)?.ok_or(Error::MissingInnovationVariance)?;
    let ln_a = s2a.ln();

    let g0 = acvf.gamma(0);
    if !(g0 > 0.0) {
        return Err(Error::NotPositiveDefinite { lag: 0 });
    }
    let mut g_values = Vec::with_capacity(n_values.len());
    let mut next = 0;
    let mut log_g = g0.ln() - ln_a;
    if n_values[0] == 1 {
        g_values.push(log_g.exp());
        next = 1;
    }
    if next < n_values.len() {
        dl_core(&acvf.values, max_n, |k, _, s2, _| {
            log_g += s2.ln() - ln_a;
            if next < n_values.len() && n_values[next] == k + 1 {
                g_values.push(log_g.exp());
                next += 1;
            }
        })?;
    }
    Ok(GvarCurve {
        n_values: n_values.to_vec(),
        g_values,
    })
}

fn check_n_values(n_values: &[usize], max: usize) -> Result<()> {
    if n_values.is_empty() {
        return Err(Error::ParameterOutOfRange("empty list of orders".into()));
    }
    if n_values[0] == 0 {
        return Err(Error::ParameterOutOfRange("order n = 0".into()));
    }
    if n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::ParameterOutOfRange(
            "orders must be strictly increasing".into(),
        ));
    }
    let last = *n_values.last().unwrap();
    if last > max {
        return Err(Error::ParameterOutOfRange(format!(
            "order {last} exceeds the scan limit {max}"
        )));
    }
    Ok(())
}

/// The slow-decay diagnostic
/// `a(k) = (k + 1/2) ln(k(k-2d)/(k-d)^2) + 2d ln((k-d)/(k-2d))`,
/// returned together with k a(k), which tends to d^2. Both logarithms are
/// taken through ln_1p of x = d/(k-d) so the k = 1e6 regime keeps its
/// digits.
pub fn a_k_diagnostic(d: f64, k: usize) -> Result<(f64, f64)> {
    check_d(d)?;
    if d == 0.0 {
        return Err(Error::ParameterOutOfRange(
            "a(k) diagnostic undefined at d = 0".into(),
        ));
    }
    if k == 0 {
        return Err(Error::ParameterOutOfRange("lag k = 0".into()));
    }
    let kf = k as f64;
    let x = d / (kf - d);
    let a = (kf + 0.5) * (-x * x).ln_1p() - 2.0 * d * (-x).ln_1p();
    Ok((a, kf * a))
}

/// One-step forecast from a chronological history (oldest first): the
/// order-k predictor row applied to the observations, with its error
/// variance sigma_k^2.
pub fn predict_one_step(acvf: &AcvfSeq, history: &[f64]) -> Result<(f64, f64)> {
    let k = history.len();
    if k == 0 {
        return Err(Error::EmptyData);
    }
    if acvf.max_lag() < k {
        return Err(Error::InsufficientLags {
            needed: k,
            available: acvf.max_lag(),
        });
    }
    check_cap(k + 1)?;
    let mut prediction = 0.0;
    let mut error_variance = acvf.gamma(0);
    dl_core(&acvf.values, k + 1, |step, _, s2, coeffs| {
        if step == k {
            prediction = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * history[k - 1 - i])
                .sum();
            error_variance = s2;
        }
    })?;
    Ok((prediction, error_variance))
}

/// Exact Gaussian log-likelihood of zero-mean data under the covariance
/// described by `acvf`, plus AIC.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoglikFit {
    pub loglik: f64,
    /// None when the source is raw input with no parameter count.
    pub aic: Option<f64>,
}

/// Innovations-form evaluation: one pass of the recursion supplies each
/// one-step predictor, so
/// `loglik = -(n/2) ln 2pi - (1/2) sum ln v_k - (1/2) sum e_k^2 / v_k`.
/// The AIC parameter count is d (or H), any AR and MA coefficients, and
/// the innovation variance; the mean is fixed at zero and not counted.
pub fn exact_loglik(acvf: &AcvfSeq, data: &[f64]) -> Result<LoglikFit> {
    let n = data.len();
    if n == 0 {
        return Err(Error::EmptyData);
    }
    if acvf.max_lag() + 1 < n {
        return Err(Error::InsufficientLags {
            needed: n - 1,
            available: acvf.max_lag(),
        });
    }
    check_cap(n)?;
    let g0 = acvf.gamma(0);
    if !(g0 > 0.0) {
        return Err(Error::NotPositiveDefinite { lag: 0 });
    }
    let mut ln_det = g0.ln();
    let mut quad = data[0] * data[0] / g0;
    dl_core(&acvf.values, n, |k, _, v, coeffs| {
        let pred: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * data[k - 1 - i])
            .sum();
        let e = data[k] - pred;
        ln_det += v.ln();
        quad += e * e / v;
    })?;
    let loglik = -0.5 * (n as f64 * (2.0 * std::f64::consts::PI).ln() + ln_det + quad);
    let n_params = match acvf.model() {
        Some(ModelSpec::FractionalNoise { .. }) | Some(ModelSpec::Fgn { .. }) => Some(2),
        Some(ModelSpec::Farma { ar, ma, .. }) => Some(2 + ar.len() + ma.len()),
        None => None,
    };
    Ok(LoglikFit {
        loglik,
        aic: n_params.map(|p| -2.0 * loglik + 2.0 * p as f64),
    })
}

fn check_d(d: f64) -> Result<()> {
    if !(d.abs() < 0.5) {
        return Err(Error::ParameterOutOfRange(format!(
            "memory parameter d = {d} outside (-1/2, 1/2)"
        )));
    }
    Ok(())
}
