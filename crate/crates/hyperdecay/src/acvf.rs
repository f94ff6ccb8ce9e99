//! Autocovariance sequences: exact closed forms for the fractional
//! families and fractional Gaussian noise, certified-truncation FARMA
//! convolution, temporal aggregation, and asymptotic-decay diagnostics.

use crate::error::{Error, Result};
use crate::models::ModelSpec;
use crate::series::arma_transfer;
use crate::special::{gamma_signed, ln_fracnoise_gamma0, ln_gamma};

/// Whether a sequence is exact or carries a certified truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exactness {
    Exact,
    Truncated { tail_bound: f64 },
}

/// Where an autocovariance sequence came from.
#[derive(Debug, Clone, PartialEq)]
pub enum AcvfSource {
    Model(ModelSpec),
    RawInput,
}

/// Finite prefix gamma(0..=K) of an autocovariance function.
#[derive(Debug, Clone, PartialEq)]
pub struct AcvfSeq {
    pub values: Vec<f64>,
    pub exactness: Exactness,
    pub source: AcvfSource,
}

impl AcvfSeq {
    /// Wraps caller-supplied values, checking gamma(0) > 0 and the
    /// Cauchy-Schwarz bound |gamma(k)| <= gamma(0).
    pub fn from_raw(values: Vec<f64>) -> Result<AcvfSeq> {
        let g0 = *values.first().ok_or(Error::EmptyData)?;
        if !(g0 > 0.0) {
            return Err(Error::ParameterOutOfRange(format!(
                "gamma(0) = {g0} must be positive"
            )));
        }
        if let Some((k, g)) = values
            .iter()
            .enumerate()
            .find(|(_, g)| g.abs() > g0 * (1.0 + 1e-12))
        {
            return Err(Error::ParameterOutOfRange(format!(
                "|gamma({k})| = {} exceeds gamma(0) = {g0}",
                g.abs()
            )));
        }
        Ok(AcvfSeq {
            values,
            exactness: Exactness::Exact,
            source: AcvfSource::RawInput,
        })
    }

    pub fn gamma(&self, k: usize) -> f64 {
        self.values[k]
    }

    /// Largest available lag.
    pub fn max_lag(&self) -> usize {
        self.values.len() - 1
    }

    pub fn model(&self) -> Option<&ModelSpec> {
        match &self.source {
            AcvfSource::Model(spec) => Some(spec),
            AcvfSource::RawInput => None,
        }
    }
}

/// Power-law fit of a decaying sequence over a lag window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticFit {
    /// Fitted decay exponent (the x of `c k^{-x}`).
    pub alpha_hat: f64,
    /// Fitted constant, carrying the common sign of the window.
    pub c_gamma_hat: f64,
    pub lag_window: (usize, usize),
}

/// Exact autocovariances of fractionally differenced white noise.
///
/// gamma(0) = sigma2 Gamma(1-2d) / Gamma(1-d)^2, then the ratio recursion
/// gamma(k) = gamma(k-1) (k-1+d) / (k-d).
pub fn acvf_fracnoise(d: f64, sigma2: f64, max_lag: usize) -> Result<AcvfSeq> {
    let spec = ModelSpec::FractionalNoise { d, sigma2 };
    spec.validate()?;
    let values = fracnoise_values(d, sigma2, max_lag);
    Ok(AcvfSeq {
        values,
        exactness: Exactness::Exact,
        source: AcvfSource::Model(spec),
    })
}

pub(crate) fn fracnoise_values(d: f64, sigma2: f64, max_lag: usize) -> Vec<f64> {
    let mut values = Vec::with_capacity(max_lag + 1);
    // The series evaluation is exactly 0 at d = 0, so white noise gets
    // gamma(0) = sigma2 with no log-gamma residue.
    let g0 = sigma2 * ln_fracnoise_gamma0(d).exp();
    values.push(g0);
    for k in 1..=max_lag {
        let kf = k as f64;
        let prev = values[k - 1];
        values.push(prev * (kf - 1.0 + d) / (kf - d));
    }
    values
}

/// Exact autocovariances of fractional Gaussian noise,
/// gamma(k) = (sigma2/2)(|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}).
///
/// The second difference cancels catastrophically at large k when
/// evaluated literally; it is computed as
/// (sigma2/2) k^{2H} (expm1(2H ln(1+1/k)) + expm1(2H ln(1-1/k))).
pub fn acvf_fgn(hurst: f64, sigma2: f64, max_lag: usize) -> Result<AcvfSeq> {
    let spec = ModelSpec::Fgn { hurst, sigma2 };
    spec.validate()?;
    let mut values = Vec::with_capacity(max_lag + 1);
    values.push(sigma2);
    for k in 1..=max_lag {
        values.push(fgn_gamma(hurst, sigma2, k));
    }
    Ok(AcvfSeq {
        values,
        exactness: Exactness::Exact,
        source: AcvfSource::Model(spec),
    })
}

fn fgn_gamma(hurst: f64, sigma2: f64, k: usize) -> f64 {
    let two_h = 2.0 * hurst;
    if k == 0 {
        return sigma2;
    }
    // H = 1/2 is exactly white noise; the general route leaves ~1e-16
    // residue from the ln/exp round trip.
    if two_h == 1.0 {
        return 0.0;
    }
    if k == 1 {
        // 2^{2H} - 2 = 2 (2^{2H-1} - 1)
        return sigma2 * ((two_h - 1.0) * std::f64::consts::LN_2).exp_m1();
    }
    let kf = k as f64;
    let up = (two_h * (1.0 / kf).ln_1p()).exp_m1();
    let down = (two_h * (-1.0 / kf).ln_1p()).exp_m1();
    0.5 * sigma2 * kf.powf(two_h) * (up + down)
}

/// Largest ARMA transfer-series length tried before giving up on the
/// requested truncation tolerance.
const FARMA_MAX_TERMS: usize = 1 << 18;

/// FARMA autocovariances by convolving the fractional-noise sequence with
/// the ARMA transfer cross-products, truncated where the geometric decay
/// of the transfer coefficients certifies an absolute tail below `tol`.
pub fn acvf_farma(spec: &ModelSpec, max_lag: usize, tol: f64) -> Result<AcvfSeq> {
    let (d, ar, ma, sigma2) = match spec {
        ModelSpec::Farma { d, ar, ma, sigma2 } => (*d, ar.as_slice(), ma.as_slice(), *sigma2),
        _ => {
            return Err(Error::Unsupported(format!(
                "acvf_farma needs a farma spec, got {}",
                spec.kind_name()
            )))
        }
    };
    spec.validate()?;
    if !(tol > 0.0) {
        return Err(Error::ParameterOutOfRange(format!(
            "tolerance {tol} must be positive"
        )));
    }
    if ar.is_empty() && ma.is_empty() {
        return Ok(AcvfSeq {
            values: fracnoise_values(d, sigma2, max_lag),
            exactness: Exactness::Exact,
            source: AcvfSource::Model(spec.clone()),
        });
    }

    let g0 = ln_fracnoise_gamma0(d).exp();
    let (coeffs, tail_bound) = transfer_with_tail(ar, ma, g0, tol)?;
    let j = coeffs.len() - 1;

    // Cross-correlation r(h) = sum_l c_l c_{l+h} of the transfer series.
    let mut cross = vec![0.0; j + 1];
    for (h, slot) in cross.iter_mut().enumerate() {
        let mut acc = 0.0;
        for l in 0..=j - h {
            acc += coeffs[l] * coeffs[l + h];
        }
        *slot = acc;
    }

    let frac = fracnoise_values(d, sigma2, max_lag + j);
    let mut values = Vec::with_capacity(max_lag + 1);
    for m in 0..=max_lag {
        let mut acc = cross[0] * frac[m];
        for h in 1..=j {
            acc += cross[h] * (frac[m + h] + frac[m.abs_diff(h)]);
        }
        values.push(acc);
    }

    Ok(AcvfSeq {
        values,
        exactness: Exactness::Truncated {
            tail_bound: sigma2 * tail_bound,
        },
        source: AcvfSource::Model(spec.clone()),
    })
}

/// Transfer coefficients of theta/phi long enough that the discarded tail
/// contributes at most `tol` (absolute, per lag, unit innovation variance)
/// to the convolved autocovariance. Returns the coefficients and the
/// certified bound.
fn transfer_with_tail(ar: &[f64], ma: &[f64], g0: f64, tol: f64) -> Result<(Vec<f64>, f64)> {
    if ar.is_empty() {
        // Finite series, no tail.
        return Ok((arma_transfer(ar, ma, ma.len()), 0.0));
    }
    // Decay envelope rho slightly above the slowest geometric rate.
    let rho = crate::models::root_moduli(ar)
        .into_iter()
        .map(|m| 1.0 / m)
        .fold(0.0_f64, f64::max)
        + 1e-6;
    let mut len = (ma.len() + 32).next_power_of_two();
    loop {
        let coeffs = arma_transfer(ar, ma, len);
        let partial: f64 = coeffs.iter().map(|c| c.abs()).sum();
        // Envelope amplitude from the last few computed terms.
        let amp = coeffs[len.saturating_sub(8)..]
            .iter()
            .enumerate()
            .map(|(i, c)| c.abs() / rho.powi((len.saturating_sub(8) + i) as i32))
            .fold(0.0_f64, f64::max);
        let tail = amp * rho.powi(len as i32 + 1) / (1.0 - rho);
        let bound = g0 * (2.0 * partial * tail + tail * tail);
        if bound <= tol {
            return Ok((coeffs, bound));
        }
        if len >= FARMA_MAX_TERMS {
            return Err(Error::ToleranceUnachievable(format!(
                "farma acvf tail bound {bound:e} > tol {tol:e} at {len} transfer terms"
            )));
        }
        len *= 2;
    }
}

/// Autocovariances of any model: dispatch to the exact closed forms, with
/// `tol` only consulted for FARMA truncation.
pub fn acvf_model(spec: &ModelSpec, max_lag: usize, tol: f64) -> Result<AcvfSeq> {
    match spec {
        ModelSpec::FractionalNoise { d, sigma2 } => acvf_fracnoise(*d, *sigma2, max_lag),
        ModelSpec::Farma { .. } => acvf_farma(spec, max_lag, tol),
        ModelSpec::Fgn { hurst, sigma2 } => acvf_fgn(*hurst, *sigma2, max_lag),
    }
}

/// Autocovariances of the block mean Y_t of m consecutive Z values,
/// gamma_Y(l) = m^{-2} sum_{|j|<m} (m-|j|) gamma_Z(ml+j).
///
/// Needs input lags up to `m * max_lag + m - 1`. Truncation bounds carry
/// over unchanged (the weights sum to 1).
pub fn aggregate_acvf(acvf: &AcvfSeq, m: usize, max_lag: usize) -> Result<AcvfSeq> {
    if m == 0 {
        return Err(Error::ParameterOutOfRange("aggregation block m = 0".into()));
    }
    let needed = m * max_lag + m - 1;
    if needed > acvf.max_lag() {
        return Err(Error::InsufficientLags {
            needed,
            available: acvf.max_lag(),
        });
    }
    let m_f = m as f64;
    let mut values = Vec::with_capacity(max_lag + 1);
    for l in 0..=max_lag {
        let base = (m * l) as i64;
        let mut acc = 0.0;
        for j in -(m as i64 - 1)..=(m as i64 - 1) {
            let w = m_f - (j.unsigned_abs() as f64);
            acc += w * acvf.values[(base + j).unsigned_abs() as usize];
        }
        values.push(acc / (m_f * m_f));
    }
    Ok(AcvfSeq {
        values,
        exactness: acvf.exactness,
        source: AcvfSource::RawInput,
    })
}

/// Closed-form asymptotic constant c_gamma of gamma(k) ~ c_gamma k^{-alpha}.
///
/// Fractional noise: sigma2 Gamma(1-2d) / (Gamma(d) Gamma(1-d)); FARMA
/// multiplies by (theta(1)/phi(1))^2; FGN: sigma2 H (2H-1).
pub fn asymptotic_constant(spec: &ModelSpec) -> Result<f64> {
    spec.validate()?;
    match spec {
        ModelSpec::FractionalNoise { d, sigma2 } => {
            degenerate_if(*d == 0.0)?;
            Ok(sigma2 * frac_c_gamma(*d))
        }
        ModelSpec::Farma { d, ar, ma, sigma2 } => {
            degenerate_if(*d == 0.0)?;
            let theta1 = 1.0 - ma.iter().sum::<f64>();
            let phi1 = 1.0 - ar.iter().sum::<f64>();
            Ok(sigma2 * frac_c_gamma(*d) * (theta1 / phi1).powi(2))
        }
        ModelSpec::Fgn { hurst, sigma2 } => {
            degenerate_if(*hurst == 0.5)?;
            Ok(sigma2 * hurst * (2.0 * hurst - 1.0))
        }
    }
}

fn degenerate_if(cond: bool) -> Result<()> {
    if cond {
        Err(Error::DegenerateMemory(
            "no asymptotic power law at alpha = 1".into(),
        ))
    } else {
        Ok(())
    }
}

fn frac_c_gamma(d: f64) -> f64 {
    // Gamma(d) < 0 for d < 0, carrying the antipersistent sign.
    (ln_gamma(1.0 - 2.0 * d) - ln_gamma(1.0 - d)).exp() / gamma_signed(d)
}

/// Least-squares power-law fit of |gamma(k)| against k in log-log space
/// over the inclusive lag window.
pub fn fit_decay(acvf: &AcvfSeq, lag_window: (usize, usize)) -> Result<AsymptoticFit> {
    fit_power_law(&acvf.values, 0, lag_window)
}

/// Shared log-log fit. `offset` maps slice index i to abscissa i + offset.
pub(crate) fn fit_power_law(
    values: &[f64],
    offset: usize,
    window: (usize, usize),
) -> Result<AsymptoticFit> {
    let (lo, hi) = window;
    if hi < lo || hi - lo + 1 < 2 {
        return Err(Error::WindowTooShort {
            len: if hi < lo { 0 } else { hi - lo + 1 },
        });
    }
    if lo < offset || hi - offset >= values.len() {
        return Err(Error::InsufficientLags {
            needed: hi.saturating_sub(offset),
            available: values.len() - 1,
        });
    }
    let slice = &values[lo - offset..=hi - offset];
    let sign = slice[0].signum();
    if slice.iter().any(|v| *v == 0.0 || v.signum() != sign) {
        return Err(Error::MixedSigns { lo, hi });
    }

    let n = slice.len() as f64;
    let mut sx = 0.0;
    let mut sy = 0.0;
    for (i, v) in slice.iter().enumerate() {
        sx += ((lo + i) as f64).ln();
        sy += v.abs().ln();
    }
    let (mx, my) = (sx / n, sy / n);
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (i, v) in slice.iter().enumerate() {
        let dx = ((lo + i) as f64).ln() - mx;
        sxx += dx * dx;
        sxy += dx * (v.abs().ln() - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    Ok(AsymptoticFit {
        alpha_hat: -slope,
        c_gamma_hat: sign * intercept.exp(),
        lag_window: window,
    })
}
