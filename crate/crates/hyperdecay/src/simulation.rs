//! Exact Gaussian sample paths from an autocovariance sequence, plus the
//! biased sample autocovariance used to close the loop in Monte-Carlo
//! checks.
//!
//! Paths are deterministic functions of (seed, config). The generator is
//! counter-based, so the integer stream is reproducible from the written
//! description alone and replicate batches can split streams without
//! coordination.

use nalgebra::DMatrix;

use crate::acvf::{AcvfSeq, AcvfSource, Exactness};
use crate::error::{Error, Result};
use crate::models::ModelSpec;
use crate::prediction::{dl_core, max_dl_cap};

/// splitmix64 finalizer: bijective 64-bit mix with full avalanche.
fn mix64(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58476D1CE4E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D049BB133111EB);
    z ^= z >> 31;
    z
}

/// Counter-based generator.
///
/// The integer stream is `out_i = mix64(key + i * 0x9E3779B97F4A7C15)` for
/// i = 1, 2, ... where mix64 is the splitmix64 finalizer (xor-shift 30,
/// multiply 0xBF58476D1CE4E5B9, xor-shift 27, multiply 0x94D049BB133111EB,
/// xor-shift 31). The root stream uses `key = seed`; substream `j` uses
/// `key = mix64(seed ^ (j * 0xD2B74407B1CE6E93))`. Uniforms map a raw word
/// `x` to `((x >> 11) + 1) * 2^-53`, which lies in (0, 1] so logarithms
/// are safe. Normals are Box-Muller pairs from consecutive uniforms, the
/// cosine branch first.
#[derive(Debug, Clone)]
pub struct CounterRng {
    key: u64,
    counter: u64,
    spare_normal: Option<f64>,
}

/// Derived seed for replicate `index` of a batch rooted at `seed`:
/// `CounterRng::new(replicate_seed(s, j))` draws the same stream as
/// `CounterRng::substream(s, j)`, so replicate paths can be produced
/// through [`simulate`] without touching the generator directly.
pub fn replicate_seed(seed: u64, index: u64) -> u64 {
    mix64(seed ^ index.wrapping_mul(0xD2B74407B1CE6E93))
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng {
            key: seed,
            counter: 0,
            spare_normal: None,
        }
    }

    /// Independent stream `index` derived from `seed`; the key mixing
    /// keeps substreams disjoint from each other and from the root stream
    /// for any practical draw count.
    pub fn substream(seed: u64, index: u64) -> Self {
        CounterRng {
            key: mix64(seed ^ index.wrapping_mul(0xD2B74407B1CE6E93)),
            counter: 0,
            spare_normal: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.key.wrapping_add(self.counter.wrapping_mul(0x9E3779B97F4A7C15)))
    }

    /// Uniform draw in the half-open interval (0, 1].
    pub fn next_uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (0.5f64).powi(53)
    }

    /// Standard normal draw.
    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.next_uniform();
        let u2 = self.next_uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(r * theta.sin());
        r * theta.cos()
    }
}

/// Path-generation method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimMethod {
    /// One-step innovations through the Durbin-Levinson predictor;
    /// O(n^2) time, O(n) memory.
    DlInnovations,
    /// Explicit covariance matrix and Cholesky factor; O(n^3), capped at
    /// [`DENSE_CAP`], kept as an independent route for cross-validation.
    DenseFactorization,
}

/// Simulation request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub n: usize,
    pub seed: u64,
    pub method: SimMethod,
}

/// Largest order accepted by the dense-factorization method.
pub const DENSE_CAP: usize = 5000;

/// Zero-mean Gaussian path of length `config.n` whose covariance is
/// exactly the order-n Toeplitz matrix of `acvf`. Deterministic given
/// the seed; the two methods consume the same normal stream but combine
/// it differently, so they agree in distribution, not pathwise.
pub fn simulate(acvf: &AcvfSeq, config: &SimConfig) -> Result<Vec<f64>> {
    let n = config.n;
    if n == 0 {
        return Err(Error::ParameterOutOfRange("path length n = 0".into()));
    }
    if acvf.max_lag() + 1 < n {
        return Err(Error::InsufficientLags {
            needed: n - 1,
            available: acvf.max_lag(),
        });
    }
    let mut rng = CounterRng::new(config.seed);
    match config.method {
        SimMethod::DlInnovations => simulate_innovations(acvf, n, &mut rng),
        SimMethod::DenseFactorization => simulate_dense(acvf, n, &mut rng),
    }
}

/// Convenience wrapper: model ACVF (truncation tolerance 1e-12 where it
/// applies), then [`simulate`].
pub fn simulate_model(spec: &ModelSpec, config: &SimConfig) -> Result<Vec<f64>> {
    let lags = config.n.saturating_sub(1);
    let acvf = crate::acvf::acvf_model(spec, lags, 1e-12)?;
    simulate(&acvf, config)
}

fn simulate_innovations(acvf: &AcvfSeq, n: usize, rng: &mut CounterRng) -> Result<Vec<f64>> {
    let cap = max_dl_cap();
    if n > cap {
        return Err(Error::MethodCapExceeded { n, cap });
    }
    let g0 = acvf.gamma(0);
    if !(g0 > 0.0) {
        return Err(Error::NotPositiveDefinite { lag: 0 });
    }
    let mut z = Vec::with_capacity(n);
    z.push(g0.sqrt() * rng.next_normal());
    dl_core(&acvf.values, n, |k, _, s2, coeffs| {
        let mut pred = 0.0;
        for (i, c) in coeffs.iter().enumerate() {
            pred += c * z[k - 1 - i];
        }
        z.push(pred + s2.sqrt() * rng.next_normal());
    })?;
    Ok(z)
}

fn simulate_dense(acvf: &AcvfSeq, n: usize, rng: &mut CounterRng) -> Result<Vec<f64>> {
    if n > DENSE_CAP {
        return Err(Error::MethodCapExceeded { n, cap: DENSE_CAP });
    }
    let cov = DMatrix::from_fn(n, n, |i, j| acvf.gamma(i.abs_diff(j)));
    // The factorization does not report which leading minor failed.
    let chol = cov
        .cholesky()
        .ok_or(Error::NotPositiveDefinite { lag: 0 })?;
    let eps = DMatrix::from_fn(n, 1, |_, _| rng.next_normal());
    let z = chol.l() * eps;
    Ok(z.column(0).iter().copied().collect())
}

/// Biased sample autocovariance `(1/n) sum_t z_t z_{t+k}` for
/// k = 0..max_lag, mean assumed zero. The divisor-n form is positive
/// semidefinite, so the recursion machinery stays usable on the result;
/// constant-zero data is accepted and yields all zeros.
pub fn sample_acvf(data: &[f64], max_lag: usize) -> Result<AcvfSeq> {
    let n = data.len();
    if n == 0 {
        return Err(Error::EmptyData);
    }
    if max_lag >= n {
        return Err(Error::LagTooLarge {
            lag: max_lag,
            len: n,
        });
    }
    let values = (0..=max_lag)
        .map(|k| {
            let s: f64 = data[..n - k].iter().zip(&data[k..]).map(|(a, b)| a * b).sum();
            s / n as f64
        })
        .collect();
    Ok(AcvfSeq {
        values,
        exactness: Exactness::Exact,
        source: AcvfSource::RawInput,
    })
}
