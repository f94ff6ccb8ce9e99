//! Autocovariance contracts: closed forms against frozen high-precision
//! reference values, cross-route agreement, aggregation, and the
//! asymptotic-decay diagnostics.

// Frozen reference values keep their full printed digits.
#![allow(clippy::excessive_precision)]

use hyperdecay::acvf::{
    acvf_farma, acvf_fgn, acvf_fracnoise, aggregate_acvf, asymptotic_constant, fit_decay,
};
use hyperdecay::{AcvfSeq, Error, Exactness, ModelSpec};

fn rel_close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1e-300)
}

fn farma(d: f64, ar: &[f64], ma: &[f64]) -> ModelSpec {
    ModelSpec::Farma {
        d,
        ar: ar.to_vec(),
        ma: ma.to_vec(),
        sigma2: 1.0,
    }
}

/// 30-digit evaluations of gamma(0) = Gamma(1-2d)/Gamma(1-d)^2, rounded
/// to f64.
const GAMMA0_REFERENCE: [(f64, f64); 8] = [
    (0.4, 2.0700983252962857),
    (-0.4, 1.1831045468429218),
    (0.1, 1.0194947882253109),
    (-0.1, 1.0144745487792628),
    (0.3, 1.3164560621300048),
    (0.2, 1.0986855396043995),
    (-0.25, 1.0787052023767587),
    (0.25, 1.1803405990160962),
];

#[test]
fn fracnoise_variance_matches_reference() {
    for (d, want) in GAMMA0_REFERENCE {
        let acvf = acvf_fracnoise(d, 1.0, 0).expect("valid d");
        let got = acvf.gamma(0);
        assert!(
            rel_close(got, want, 1e-14),
            "gamma(0) at d = {d}: got {got:.17}, want {want:.17}"
        );
    }
}

#[test]
fn fracnoise_lags_match_reference() {
    let acvf = acvf_fracnoise(0.4, 1.0, 1).unwrap();
    assert!(
        rel_close(acvf.gamma(1), 1.3800655501975239, 1e-14),
        "gamma(1) at d = 0.4: got {:.17}",
        acvf.gamma(1)
    );
    let acvf = acvf_fracnoise(0.3, 1.0, 5).unwrap();
    assert!(
        rel_close(acvf.gamma(5), 0.2998961563905657, 1e-14),
        "gamma(5) at d = 0.3: got {:.17}",
        acvf.gamma(5)
    );
}

#[test]
fn fracnoise_scales_linearly_in_sigma2() {
    let unit = acvf_fracnoise(0.25, 1.0, 50).unwrap();
    let scaled = acvf_fracnoise(0.25, 2.5, 50).unwrap();
    for k in 0..=50 {
        assert!(
            rel_close(scaled.gamma(k), 2.5 * unit.gamma(k), 1e-15),
            "lag {k}"
        );
    }
}

#[test]
fn fracnoise_antipersistent_lags_are_negative_and_summable() {
    let acvf = acvf_fracnoise(-0.3, 1.0, 20_000).unwrap();
    for k in 1..=20_000 {
        assert!(acvf.gamma(k) < 0.0, "gamma({k}) = {}", acvf.gamma(k));
    }
    // Antipersistent autocovariances sum to zero over all lags:
    // gamma(0) + 2 sum_{k>=1} gamma(k) -> 0.
    let total: f64 = acvf.gamma(0) + 2.0 * (1..=20_000).map(|k| acvf.gamma(k)).sum::<f64>();
    // Remaining tail is O(K^{-0.6}) ~ 2.6e-3 at K = 2e4.
    assert!(total.abs() < 5e-3, "two-sided sum = {total}");
}

#[test]
fn white_noise_acvf_is_a_delta() {
    let acvf = acvf_fracnoise(0.0, 1.0, 10).unwrap();
    assert_eq!(acvf.gamma(0), 1.0);
    for k in 1..=10 {
        assert_eq!(acvf.gamma(k), 0.0, "lag {k}");
    }
}

#[test]
fn fgn_values_match_reference() {
    let cases = [
        (0.9, 1usize, 0.74110112659224836),
        (0.3, 5, -0.012751423614971454),
        (0.7, 3, 0.14617344221131173),
    ];
    for (h, k, want) in cases {
        let acvf = acvf_fgn(h, 1.0, k).unwrap();
        let got = acvf.gamma(k);
        assert!(
            rel_close(got, want, 1e-13),
            "fgn H = {h} lag {k}: got {got:.17}, want {want:.17}"
        );
    }
}

#[test]
fn fgn_at_half_is_white_noise() {
    let acvf = acvf_fgn(0.5, 2.0, 6).unwrap();
    assert_eq!(acvf.gamma(0), 2.0);
    for k in 1..=6 {
        assert_eq!(acvf.gamma(k), 0.0, "lag {k}");
    }
}

#[test]
fn fgn_far_lag_keeps_relative_precision() {
    // The literal second difference of k^{2H} loses ~9 digits here; the
    // reference is a 30-digit evaluation.
    let acvf = acvf_fgn(0.25, 1.0, 10_000).unwrap();
    let got = acvf.gamma(10_000);
    let want = -1.2500000039062501e-7;
    assert!(
        rel_close(got, want, 1e-10),
        "fgn H = 0.25 lag 1e4: got {got:.17e}, want {want:.17e}"
    );
}

#[test]
fn fgn_matches_literal_second_difference_at_small_lags() {
    for h in [0.1, 0.3, 0.6, 0.85] {
        let acvf = acvf_fgn(h, 1.0, 20).unwrap();
        for k in 1..=20i64 {
            let literal = 0.5
                * (((k + 1) as f64).powf(2.0 * h) - 2.0 * (k as f64).powf(2.0 * h)
                    + ((k - 1) as f64).powf(2.0 * h));
            assert!(
                (acvf.gamma(k as usize) - literal).abs() < 1e-12,
                "H = {h} lag {k}: {} vs literal {literal}",
                acvf.gamma(k as usize)
            );
        }
    }
}

#[test]
fn farma_with_empty_polynomials_reduces_to_fracnoise() {
    let plain = acvf_fracnoise(0.3, 1.5, 100).unwrap();
    let degenerate = acvf_farma(&farma_sigma2(0.3, &[], &[], 1.5), 100, 1e-10).unwrap();
    assert_eq!(degenerate.exactness, Exactness::Exact);
    for k in 0..=100 {
        assert_eq!(degenerate.gamma(k), plain.gamma(k), "lag {k}");
    }
}

fn farma_sigma2(d: f64, ar: &[f64], ma: &[f64], sigma2: f64) -> ModelSpec {
    ModelSpec::Farma {
        d,
        ar: ar.to_vec(),
        ma: ma.to_vec(),
        sigma2,
    }
}

#[test]
fn farma_with_zero_d_is_textbook_ar1() {
    let acvf = acvf_farma(&farma(0.0, &[0.5], &[]), 20, 1e-12).unwrap();
    for k in 0..=20 {
        let want = 0.5f64.powi(k as i32) / 0.75;
        assert!(
            rel_close(acvf.gamma(k), want, 1e-12),
            "lag {k}: got {}, want {want}",
            acvf.gamma(k)
        );
    }
}

#[test]
fn farma_matches_spectral_quadrature_reference() {
    // References: adaptive quadrature of 2 f(lambda) cos(k lambda) at
    // 30-digit precision.
    let ar1 = acvf_farma(&farma(0.3, &[0.5], &[]), 5, 1e-10).unwrap();
    let cases = [
        (0usize, 3.0193470459966036),
        (1, 2.4577277453657498),
        (5, 1.2872321369410262),
    ];
    for (k, want) in cases {
        assert!(
            (ar1.gamma(k) - want).abs() < 1e-8,
            "d=0.3 phi=0.5 lag {k}: got {:.17}, want {want:.17}",
            ar1.gamma(k)
        );
    }

    let mixed = acvf_farma(&farma(0.2, &[0.5], &[0.3]), 2, 1e-10).unwrap();
    let cases = [
        (0usize, 1.3519743960924597),
        (1, 0.65720358788743904),
        (2, 0.46133083226481991),
    ];
    for (k, want) in cases {
        assert!(
            (mixed.gamma(k) - want).abs() < 1e-8,
            "d=0.2 phi=0.5 theta=0.3 lag {k}: got {:.17}, want {want:.17}",
            mixed.gamma(k)
        );
    }

    let ma1 = acvf_farma(&farma(-0.3, &[], &[0.4]), 0, 1e-10).unwrap();
    assert!(
        (ma1.gamma(0) - 1.4916246067735959).abs() < 1e-8,
        "d=-0.3 theta=0.4 gamma(0): got {:.17}",
        ma1.gamma(0)
    );
}

#[test]
fn farma_truncation_is_certified() {
    let acvf = acvf_farma(&farma(0.3, &[0.9], &[]), 10, 1e-8).unwrap();
    match acvf.exactness {
        Exactness::Truncated { tail_bound } => {
            assert!(tail_bound <= 1e-8, "tail bound {tail_bound:e}")
        }
        Exactness::Exact => panic!("AR part must report a truncation bound"),
    }
    // Pure MA: finite convolution, no truncation.
    let acvf = acvf_farma(&farma(0.3, &[], &[0.4]), 10, 1e-8).unwrap();
    assert_eq!(acvf.exactness, Exactness::Truncated { tail_bound: 0.0 });
}

#[test]
fn farma_rejects_other_kinds() {
    let spec = ModelSpec::FractionalNoise {
        d: 0.2,
        sigma2: 1.0,
    };
    assert!(matches!(
        acvf_farma(&spec, 5, 1e-8),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn aggregation_matches_reference() {
    // Block means of m consecutive values; references from a 30-digit
    // evaluation of m^{-2} sum (m-|j|) gamma(ml+j).
    let acvf = acvf_fracnoise(0.3, 1.0, 20).unwrap();
    let m2 = aggregate_acvf(&acvf, 2, 1).unwrap();
    assert!(
        rel_close(m2.gamma(0), 0.94032575866428914, 1e-14),
        "m=2 gammaY(0): got {:.17}",
        m2.gamma(0)
    );
    assert!(
        rel_close(m2.gamma(1), 0.44865215936270003, 1e-14),
        "m=2 gammaY(1): got {:.17}",
        m2.gamma(1)
    );
    let m3 = aggregate_acvf(&acvf, 3, 2).unwrap();
    assert!(
        rel_close(m3.gamma(2), 0.28190292159115143, 1e-14),
        "m=3 gammaY(2): got {:.17}",
        m3.gamma(2)
    );
}

#[test]
fn aggregation_block_one_is_identity() {
    let acvf = acvf_fracnoise(-0.2, 1.0, 10).unwrap();
    let same = aggregate_acvf(&acvf, 1, 10).unwrap();
    assert_eq!(same.values, acvf.values);
}

#[test]
fn aggregation_needs_enough_input_lags() {
    let acvf = acvf_fracnoise(0.3, 1.0, 10).unwrap();
    match aggregate_acvf(&acvf, 4, 3) {
        Err(Error::InsufficientLags { needed, available }) => {
            assert_eq!(needed, 15);
            assert_eq!(available, 10);
        }
        other => panic!("expected InsufficientLags, got {other:?}"),
    }
}

#[test]
fn asymptotic_constant_matches_reference() {
    // c_gamma = Gamma(1-2d) / (Gamma(d) Gamma(1-d)), 30-digit references.
    let cases = [
        (0.4, 1.3897892913010341),
        (-0.4, -0.28195845299999039),
        (0.2, 0.27862467805309904),
        (-0.2, -0.16600515863350512),
        (0.1, 0.11451731862382135),
        (-0.1, -0.090313982871455617),
        (0.25, 0.3989422804014327),
        (-0.25, -0.19947114020071635),
    ];
    for (d, want) in cases {
        let spec = ModelSpec::FractionalNoise { d, sigma2: 1.0 };
        let got = asymptotic_constant(&spec).unwrap();
        assert!(
            rel_close(got, want, 1e-13),
            "c_gamma(d = {d}): got {got:.17}, want {want:.17}"
        );
        let sign = spec.decay_class().unwrap().c_gamma_sign;
        assert_eq!(got.signum(), sign, "sign at d = {d}");
    }
}

#[test]
fn asymptotic_constant_farma_and_fgn_scalings() {
    // FARMA multiplies the fractional constant by (theta(1)/phi(1))^2.
    let base = asymptotic_constant(&ModelSpec::FractionalNoise {
        d: 0.2,
        sigma2: 1.0,
    })
    .unwrap();
    let spec = farma(0.2, &[0.5], &[]);
    let got = asymptotic_constant(&spec).unwrap();
    assert!(
        rel_close(got, base * 4.0, 1e-14),
        "phi(1) = 0.5 quadruples c_gamma: got {got}, base {base}"
    );

    // FGN: sigma2 H (2H - 1).
    let got = asymptotic_constant(&ModelSpec::Fgn {
        hurst: 0.9,
        sigma2: 1.0,
    })
    .unwrap();
    assert!(rel_close(got, 0.72, 1e-15), "H = 0.9: got {got}");
    let got = asymptotic_constant(&ModelSpec::Fgn {
        hurst: 0.3,
        sigma2: 2.0,
    })
    .unwrap();
    assert!(rel_close(got, -0.24, 1e-15), "H = 0.3, sigma2 = 2: got {got}");
}

#[test]
fn asymptotic_constant_rejects_degenerate_memory() {
    for spec in [
        ModelSpec::FractionalNoise { d: 0.0, sigma2: 1.0 },
        ModelSpec::Fgn { hurst: 0.5, sigma2: 1.0 },
    ] {
        assert!(matches!(
            asymptotic_constant(&spec),
            Err(Error::DegenerateMemory(_))
        ));
    }
}

#[test]
fn fit_decay_recovers_exponent_and_constant() {
    for d in [0.25, -0.25] {
        let spec = ModelSpec::FractionalNoise { d, sigma2: 1.0 };
        let acvf = acvf_fracnoise(d, 1.0, 10_000).unwrap();
        let fit = fit_decay(&acvf, (1_000, 10_000)).unwrap();
        let alpha = 1.0 - 2.0 * d;
        let c = asymptotic_constant(&spec).unwrap();
        assert!(
            (fit.alpha_hat - alpha).abs() < 0.01,
            "d = {d}: alpha_hat = {}, want {alpha}",
            fit.alpha_hat
        );
        assert!(
            rel_close(fit.c_gamma_hat, c, 0.02),
            "d = {d}: c_hat = {}, want {c}",
            fit.c_gamma_hat
        );
    }
}

#[test]
fn fit_decay_rejects_sign_changes_in_window() {
    // Antipersistent sequences are positive at lag 0 and negative beyond:
    // a window containing the flip has no single power law.
    let acvf = acvf_fracnoise(-0.3, 1.0, 50).unwrap();
    assert!(matches!(
        fit_decay(&acvf, (0, 50)),
        Err(Error::MixedSigns { lo: 0, hi: 50 })
    ));
}

#[test]
fn fit_decay_window_must_hold_two_points() {
    let acvf = acvf_fracnoise(0.3, 1.0, 50).unwrap();
    assert!(matches!(
        fit_decay(&acvf, (10, 10)),
        Err(Error::WindowTooShort { len: 1 })
    ));
}

#[test]
fn raw_sequences_are_screened() {
    assert!(AcvfSeq::from_raw(vec![]).is_err(), "empty");
    assert!(AcvfSeq::from_raw(vec![0.0, 0.1]).is_err(), "gamma(0) = 0");
    assert!(AcvfSeq::from_raw(vec![-1.0]).is_err(), "gamma(0) < 0");
    assert!(
        AcvfSeq::from_raw(vec![1.0, 1.5]).is_err(),
        "|gamma(1)| > gamma(0)"
    );
    let ok = AcvfSeq::from_raw(vec![2.0, -1.0, 0.5]).expect("valid sequence");
    assert_eq!(ok.max_lag(), 2);
    assert!(ok.model().is_none());
}
