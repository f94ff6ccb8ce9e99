//! Numerical toolkit for hyperbolic-decay time series.
//!
//! Covers fractionally differenced white noise, FARMA(p, q) models with a
//! fractional differencing parameter, and fractional Gaussian noise. The
//! crate computes exact autocovariances, partial autocorrelations,
//! one-step prediction-error variances, standardized generalized variances,
//! random-shock and inverted-form weights, spectral densities, model duals,
//! temporal aggregates, exact Gaussian log-likelihoods, and exact Gaussian
//! sample paths.
//!
//! The decay exponent `alpha` in (0, 2), `alpha != 1`, classifies a model:
//! `alpha < 1` is strongly persistent (autocovariances decay like a
//! non-summable power law with a positive constant), `alpha > 1` is
//! antipersistent (negative constant, spectral density vanishing at the
//! origin). For the fractional families `alpha = 1 - 2d`; for fractional
//! Gaussian noise `alpha = 2 - 2H`.

// `!(x > 0.0)`-style guards are deliberate: they reject NaN along with the
// out-of-range sign.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acvf;
pub mod duality;
pub mod error;
pub mod models;
pub mod prediction;
pub mod simulation;
pub mod spectrum;
pub mod weights;

mod quad;
mod series;
mod special;

pub use acvf::{AcvfSeq, AcvfSource, AsymptoticFit, Exactness};
pub use error::{Error, Result};
pub use models::{DecayClass, ModelSpec, Persistence};
pub use prediction::{DlResult, GvarCurve};
pub use simulation::{CounterRng, SimConfig, SimMethod};
pub use spectrum::SpectrumEval;
pub use weights::{WeightKind, WeightSeq};
