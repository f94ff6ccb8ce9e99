//! Random-shock (psi) and inverted-form (pi) coefficient sequences.
//!
//! For a stationary invertible model, `Z_t = A_t + sum psi_l A_{t-l}` and
//! `Z_t = A_t + sum pi_l Z_{t-l}`. Both expansions come from one series
//! engine: binomial coefficients of `(1-B)^{±d}` by ratio recursion,
//! polynomial multiplication, and power-series division as a linear
//! recurrence. FGN has no finite-parameter transfer function and is
//! rejected.

use crate::acvf::{fit_power_law, AsymptoticFit};
use crate::duality::dual;
use crate::error::{Error, Result};
use crate::models::ModelSpec;
use crate::series::SeriesStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Psi,
    Pi,
}

/// Weight prefix w_1..w_L (the order-0 coefficient is always 1 and is not
/// stored).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSeq {
    pub kind: WeightKind,
    pub values: Vec<f64>,
    pub model: ModelSpec,
}

/// Shock-expansion coefficients psi_1..psi_L of theta(B)(1-B)^{-d}/phi(B).
pub fn psi_weights(spec: &ModelSpec, count: usize) -> Result<WeightSeq> {
    let mut values = Vec::with_capacity(count);
    for_each_weight(spec, WeightKind::Psi, count, |_, w| values.push(w))?;
    Ok(WeightSeq {
        kind: WeightKind::Psi,
        values,
        model: spec.clone(),
    })
}

/// Inverted-form coefficients pi_1..pi_L, where
/// `pi(B) = 1 - phi(B)(1-B)^{d}/theta(B)`.
pub fn pi_weights(spec: &ModelSpec, count: usize) -> Result<WeightSeq> {
    let mut values = Vec::with_capacity(count);
    for_each_weight(spec, WeightKind::Pi, count, |_, w| values.push(w))?;
    Ok(WeightSeq {
        kind: WeightKind::Pi,
        values,
        model: spec.clone(),
    })
}

/// Streaming evaluator: calls `visit(l, w_l)` for l = 1..=count without
/// materializing the sequence. State stays O(p + q) however large `count`
/// is.
pub fn for_each_weight(
    spec: &ModelSpec,
    kind: WeightKind,
    count: usize,
    mut visit: impl FnMut(usize, f64),
) -> Result<()> {
    spec.validate()?;
    let (d, ar, ma) = match spec {
        ModelSpec::FractionalNoise { d, .. } => (*d, &[][..], &[][..]),
        ModelSpec::Farma { d, ar, ma, .. } => (*d, ar.as_slice(), ma.as_slice()),
        ModelSpec::Fgn { .. } => {
            return Err(Error::Unsupported(
                "fgn has no finite-parameter transfer function".into(),
            ))
        }
    };
    let mut stream = match kind {
        // theta(B) (1-B)^{-d} / phi(B)
        WeightKind::Psi => SeriesStream::new(d, ma, ar),
        // phi(B) (1-B)^{d} / theta(B), then negated
        WeightKind::Pi => SeriesStream::new(-d, ar, ma),
    };
    let sign = match kind {
        WeightKind::Psi => 1.0,
        WeightKind::Pi => -1.0,
    };
    for l in 1..=count {
        visit(l, sign * stream.next_coeff());
    }
    Ok(())
}

/// Log-log power-law fit of a weight sequence over the inclusive window.
/// The fitted exponent should approach (1+alpha)/2 for psi weights and
/// (3-alpha)/2 for pi weights.
pub fn check_rate(w: &WeightSeq, window: (usize, usize)) -> Result<AsymptoticFit> {
    fit_power_law(&w.values, 1, window)
}

/// Max over l <= count of |psi_l(spec) + pi_l(dual(spec))|. The dual's
/// inverted form is the primal's shock form negated, so this is a series
/// reciprocal identity and should sit at rounding level.
pub fn duality_weight_identity(spec: &ModelSpec, count: usize) -> Result<f64> {
    let psi = psi_weights(spec, count)?;
    let pi_dual = pi_weights(&dual(spec)?, count)?;
    let mut max_abs = 0.0_f64;
    for (a, b) in psi.values.iter().zip(pi_dual.values.iter()) {
        max_abs = max_abs.max((a + b).abs());
    }
    Ok(max_abs)
}
