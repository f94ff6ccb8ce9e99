//! Model specifications and the decay-parameter algebra connecting the
//! memory parameter `d`, the Hurst parameter `H`, and the decay exponent
//! `alpha`.
//!
//! Polynomial sign convention throughout:
//! `phi(B) = 1 - phi_1 B - ... - phi_p B^p` and
//! `theta(B) = 1 - theta_1 B - ... - theta_q B^q`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Roots are rejected when their modulus is at most `1 + ROOT_TOL`;
/// root finders jitter near the unit circle.
pub const ROOT_TOL: f64 = 1e-8;

fn default_sigma2() -> f64 {
    1.0
}

/// A stochastic model with hyperbolic autocovariance decay.
///
/// `sigma2` is the innovation variance for the fractional families and the
/// process variance for fractional Gaussian noise. JSON interchange form:
/// `{"kind":"fracnoise"|"farma"|"fgn", "d":…, "ar":[…], "ma":[…], "H":…, "sigma2":…}`
/// with `sigma2` defaulting to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum ModelSpec {
    /// Fractionally differenced white noise, |d| < 1/2.
    #[serde(rename = "fracnoise")]
    FractionalNoise {
        d: f64,
        #[serde(default = "default_sigma2")]
        sigma2: f64,
    },
    /// FARMA(p, q) with memory parameter d:
    /// `phi(B) (1-B)^d Z_t = theta(B) A_t`.
    #[serde(rename = "farma")]
    Farma {
        d: f64,
        #[serde(default)]
        ar: Vec<f64>,
        #[serde(default)]
        ma: Vec<f64>,
        #[serde(default = "default_sigma2")]
        sigma2: f64,
    },
    /// Fractional Gaussian noise with Hurst parameter 0 < H < 1.
    #[serde(rename = "fgn")]
    Fgn {
        #[serde(rename = "H")]
        hurst: f64,
        #[serde(default = "default_sigma2")]
        sigma2: f64,
    },
}

/// Persistence regime, determined by the decay exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Persistence {
    /// alpha in (0, 1): non-summable positive autocovariances.
    StronglyPersistent,
    /// alpha in (1, 2): summable, eventually negative autocovariances.
    Antipersistent,
}

/// Decay classification of a model with alpha != 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayClass {
    pub alpha: f64,
    pub persistence: Persistence,
    /// Sign of the asymptotic autocovariance constant, +1 or -1.
    pub c_gamma_sign: f64,
}

impl ModelSpec {
    /// Innovation-variance (fractional families) or process-variance (FGN)
    /// scale of the model.
    pub fn sigma2(&self) -> f64 {
        match self {
            ModelSpec::FractionalNoise { sigma2, .. }
            | ModelSpec::Farma { sigma2, .. }
            | ModelSpec::Fgn { sigma2, .. } => *sigma2,
        }
    }

    /// Memory parameter d for the fractional families, None for FGN.
    pub fn memory_d(&self) -> Option<f64> {
        match self {
            ModelSpec::FractionalNoise { d, .. } | ModelSpec::Farma { d, .. } => Some(*d),
            ModelSpec::Fgn { .. } => None,
        }
    }

    /// AR coefficients (empty unless FARMA).
    pub fn ar_coeffs(&self) -> &[f64] {
        match self {
            ModelSpec::Farma { ar, .. } => ar,
            _ => &[],
        }
    }

    /// MA coefficients (empty unless FARMA).
    pub fn ma_coeffs(&self) -> &[f64] {
        match self {
            ModelSpec::Farma { ma, .. } => ma,
            _ => &[],
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ModelSpec::FractionalNoise { .. } => "fracnoise",
            ModelSpec::Farma { .. } => "farma",
            ModelSpec::Fgn { .. } => "fgn",
        }
    }

    /// Checks every invariant and returns the model unchanged.
    ///
    /// `d = 0` and `H = 1/2` (white noise) are accepted here; operations
    /// whose meaning requires `alpha != 1` reject them separately.
    pub fn validate(&self) -> Result<&Self> {
        match self {
            ModelSpec::FractionalNoise { d, sigma2 } => {
                check_d(*d)?;
                check_sigma2(*sigma2)?;
            }
            ModelSpec::Farma { d, ar, ma, sigma2 } => {
                check_d(*d)?;
                check_sigma2(*sigma2)?;
                if let Some(modulus) = offending_root(ar) {
                    return Err(Error::NonStationary { modulus });
                }
                if let Some(modulus) = offending_root(ma) {
                    return Err(Error::NonInvertible { modulus });
                }
            }
            ModelSpec::Fgn { hurst, sigma2 } => {
                if !(*hurst > 0.0 && *hurst < 1.0) {
                    return Err(Error::ParameterOutOfRange(format!(
                        "Hurst parameter H = {hurst} outside (0, 1)"
                    )));
                }
                check_sigma2(*sigma2)?;
            }
        }
        Ok(self)
    }

    /// Decay classification. Errors with `DegenerateMemory` when d = 0 or
    /// H = 1/2, since alpha = 1 is excluded.
    pub fn decay_class(&self) -> Result<DecayClass> {
        self.validate()?;
        let alpha = match self {
            ModelSpec::FractionalNoise { d, .. } | ModelSpec::Farma { d, .. } => {
                if *d == 0.0 {
                    return Err(Error::DegenerateMemory("d = 0 gives alpha = 1".into()));
                }
                1.0 - 2.0 * d
            }
            ModelSpec::Fgn { hurst, .. } => {
                if *hurst == 0.5 {
                    return Err(Error::DegenerateMemory("H = 1/2 gives alpha = 1".into()));
                }
                2.0 - 2.0 * hurst
            }
        };
        let persistence = if alpha < 1.0 {
            Persistence::StronglyPersistent
        } else {
            Persistence::Antipersistent
        };
        let c_gamma_sign = if alpha < 1.0 { 1.0 } else { -1.0 };
        Ok(DecayClass {
            alpha,
            persistence,
            c_gamma_sign,
        })
    }
}

fn check_d(d: f64) -> Result<()> {
    if !(d.abs() < 0.5) {
        return Err(Error::ParameterOutOfRange(format!(
            "memory parameter d = {d} outside (-1/2, 1/2)"
        )));
    }
    Ok(())
}

fn check_sigma2(sigma2: f64) -> Result<()> {
    if !(sigma2 > 0.0) {
        return Err(Error::ParameterOutOfRange(format!(
            "variance sigma2 = {sigma2} must be positive"
        )));
    }
    Ok(())
}

/// Smallest root modulus of `1 - c_1 z - ... - c_p z^p` if it violates the
/// exteriority requirement, None when all roots are safely outside the
/// unit circle.
fn offending_root(coeffs: &[f64]) -> Option<f64> {
    let moduli = root_moduli(coeffs);
    moduli
        .into_iter()
        .filter(|m| *m <= 1.0 + ROOT_TOL)
        .fold(None, |acc, m| match acc {
            Some(prev) if prev <= m => Some(prev),
            _ => Some(m),
        })
}

/// Moduli of the roots of `1 - c_1 z - ... - c_p z^p`, via the companion
/// matrix of the monic normalization. Trailing zero coefficients are
/// dropped (they only push roots to infinity).
pub(crate) fn root_moduli(coeffs: &[f64]) -> Vec<f64> {
    let mut poly: Vec<f64> = Vec::with_capacity(coeffs.len() + 1);
    poly.push(1.0);
    poly.extend(coeffs.iter().map(|c| -c));
    while poly.len() > 1 && *poly.last().unwrap() == 0.0 {
        poly.pop();
    }
    let deg = poly.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = poly[deg];
    let companion = DMatrix::from_fn(deg, deg, |i, j| {
        if j == deg - 1 {
            -poly[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    companion
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_roots_of_quadratic() {
        // 1 - 0.75 z + 0.125 z^2 = (1 - 0.25 z)(1 - 0.5 z), roots 4 and 2
        let mut m = root_moduli(&[0.75, -0.125]);
        m.sort_by(f64::total_cmp);
        assert!((m[0] - 2.0).abs() < 1e-10 && (m[1] - 4.0).abs() < 1e-10, "{m:?}");
    }

    #[test]
    fn trailing_zero_coefficients_are_ignored() {
        let m = root_moduli(&[0.5, 0.0, 0.0]);
        assert_eq!(m.len(), 1);
        assert!((m[0] - 2.0).abs() < 1e-10);
    }
}
