//! The dual transform and its two observable faces: spectral
//! reciprocity and the alpha -> 2 - alpha exponent map.

use hyperdecay::duality::{dual, dual_alpha, spectral_reciprocity_check};
use hyperdecay::{Error, ModelSpec};

fn farma(d: f64, ar: &[f64], ma: &[f64]) -> ModelSpec {
    ModelSpec::Farma {
        d,
        ar: ar.to_vec(),
        ma: ma.to_vec(),
        sigma2: 1.0,
    }
}

#[test]
fn dual_swaps_polynomials_and_negates_d() {
    let spec = farma(0.2, &[0.5], &[0.3]);
    let got = dual(&spec).unwrap();
    assert_eq!(got, farma(-0.2, &[0.3], &[0.5]));

    let spec = ModelSpec::FractionalNoise {
        d: 0.4,
        sigma2: 2.0,
    };
    let got = dual(&spec).unwrap();
    assert_eq!(
        got,
        ModelSpec::FractionalNoise {
            d: -0.4,
            sigma2: 2.0
        }
    );
}

#[test]
fn dual_is_an_involution() {
    let specs = [
        farma(0.2, &[0.5], &[0.3]),
        farma(-0.3, &[0.75, -0.125], &[0.4]),
        ModelSpec::FractionalNoise {
            d: 0.25,
            sigma2: 1.5,
        },
    ];
    for spec in specs {
        assert_eq!(dual(&dual(&spec).unwrap()).unwrap(), spec, "{spec:?}");
    }
}

#[test]
fn dual_requires_invertibility() {
    // theta root inside the unit circle: the would-be dual is not
    // stationary, and validation rejects the primal up front.
    let spec = farma(0.2, &[], &[1.25]);
    assert!(matches!(dual(&spec), Err(Error::NonInvertible { .. })));
}

#[test]
fn fgn_has_no_constructive_dual() {
    let spec = ModelSpec::Fgn {
        hurst: 0.7,
        sigma2: 1.0,
    };
    assert!(matches!(dual(&spec), Err(Error::Unsupported(_))));
}

#[test]
fn alpha_map_reflects_around_one() {
    assert!((dual_alpha(0.2).unwrap() - 1.8).abs() < 1e-15);
    assert!((dual_alpha(1.8).unwrap() - 0.2).abs() < 1e-15);
    assert!((dual_alpha(0.4).unwrap() - 1.6).abs() < 1e-15);
    for alpha in [0.0, 1.0, 2.0, -0.5, 2.4] {
        assert!(
            matches!(dual_alpha(alpha), Err(Error::DomainError(_))),
            "alpha = {alpha} accepted"
        );
    }
}

#[test]
fn alpha_map_matches_model_level_duality() {
    let spec = farma(0.2, &[0.5], &[0.3]);
    let alpha = spec.decay_class().unwrap().alpha;
    let dual_spec = dual(&spec).unwrap();
    let got = dual_spec.decay_class().unwrap().alpha;
    assert!(
        (got - dual_alpha(alpha).unwrap()).abs() < 1e-15,
        "model route {got} vs parameter route {}",
        dual_alpha(alpha).unwrap()
    );
}

#[test]
fn spectral_product_is_reciprocal() {
    // f(lambda) f_dual(lambda) = (sigma2 / 2pi)^2 at every frequency.
    let specs = [
        ModelSpec::FractionalNoise {
            d: 0.3,
            sigma2: 1.0,
        },
        farma(0.2, &[0.5], &[0.3]),
        farma(-0.45, &[0.75, -0.125], &[0.4]),
    ];
    for spec in &specs {
        let worst = spectral_reciprocity_check(spec, 1_000).unwrap();
        assert!(worst < 1e-12, "{spec:?}: max |product - 1| = {worst:e}");
    }
}

#[test]
fn white_noise_reciprocity_is_exact() {
    // The self-dual case must cancel algebraically, not just numerically.
    let spec = ModelSpec::FractionalNoise {
        d: 0.0,
        sigma2: 1.0,
    };
    let worst = spectral_reciprocity_check(&spec, 64).unwrap();
    assert_eq!(worst, 0.0);
}

#[test]
fn reciprocity_grid_must_be_nontrivial() {
    let spec = ModelSpec::FractionalNoise {
        d: 0.2,
        sigma2: 1.0,
    };
    assert!(spectral_reciprocity_check(&spec, 1).is_err());
}
