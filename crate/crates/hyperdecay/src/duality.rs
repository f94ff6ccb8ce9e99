//! The dual transform: swap the AR and MA polynomials and negate the
//! memory parameter. The dual's spectral density is proportional to the
//! reciprocal of the primal's, and the decay exponent maps alpha -> 2 - alpha,
//! exchanging persistence and antipersistence.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::models::ModelSpec;
use crate::spectrum::transfer_power;

/// Dual model: FARMA(p, q, d) -> FARMA(q, p, -d), same innovation
/// variance. Requires invertibility; FGN has no constructive dual and is
/// rejected.
pub fn dual(spec: &ModelSpec) -> Result<ModelSpec> {
    spec.validate()?;
    match spec {
        ModelSpec::FractionalNoise { d, sigma2 } => Ok(ModelSpec::FractionalNoise {
            d: -d,
            sigma2: *sigma2,
        }),
        ModelSpec::Farma { d, ar, ma, sigma2 } => Ok(ModelSpec::Farma {
            d: -d,
            ar: ma.clone(),
            ma: ar.clone(),
            sigma2: *sigma2,
        }),
        ModelSpec::Fgn { .. } => Err(Error::Unsupported(
            "fgn duality is defined only through the decay parameter".into(),
        )),
    }
}

/// Decay parameter of the dual process.
pub fn dual_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) || alpha == 1.0 {
        return Err(Error::DomainError(format!(
            "alpha = {alpha} outside (0, 2) \\ {{1}}"
        )));
    }
    Ok(2.0 - alpha)
}

/// Max over an evenly spaced frequency grid of
/// `|f(lambda) f_dual(lambda) (2 pi / sigma2)^2 - 1|`.
///
/// Evaluated on the normalized transfer powers so the algebraic
/// cancellation is exact in the white-noise case.
pub fn spectral_reciprocity_check(spec: &ModelSpec, grid_size: usize) -> Result<f64> {
    if grid_size < 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "grid size {grid_size} must be at least 2"
        )));
    }
    let dual_spec = dual(spec)?;
    let mut max_err = 0.0_f64;
    for i in 1..=grid_size {
        let lambda = PI * i as f64 / grid_size as f64;
        let product = transfer_power(spec, lambda) * transfer_power(&dual_spec, lambda);
        max_err = max_err.max((product - 1.0).abs());
    }
    Ok(max_err)
}
