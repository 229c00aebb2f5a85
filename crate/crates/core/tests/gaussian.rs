mod common;

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use zerosum::{
    expected_loss, expected_net_payoff, expected_return_ratio, expected_win, gaussian_pdf,
    integrate, GaussianParams, PayoffSpec, QuadratureConfig,
};

fn params(mu: f64, sigma: f64) -> GaussianParams {
    GaussianParams::new(mu, sigma).unwrap()
}

fn spec(i: f64) -> PayoffSpec {
    PayoffSpec::new(i).unwrap()
}

const Q: QuadratureConfig = QuadratureConfig {
    abs_tol: 1e-10,
    max_subdivisions: 60,
};

#[test]
fn density_mass_inside_unit_range() {
    let p = params(0.0, 0.25);
    let m = integrate(|x| gaussian_pdf(x, &p), -1.0, 1.0, &Q).unwrap();
    // 4-sigma two-sided mass: erf(4 / sqrt 2)
    assert_abs_diff_eq!(m, 0.999_936_657_516_333_8, epsilon = 1e-12);
    assert_abs_diff_eq!(m, common::mass(-1.0, 1.0, 0.0, 0.25), epsilon = 1e-12);
    for mu in [-0.1, -0.05, 0.0, 0.05, 0.1] {
        let p = params(mu, 0.25);
        let m = integrate(|x| gaussian_pdf(x, &p), -1.0, 1.0, &Q).unwrap();
        assert!((m - 1.0).abs() < 1e-3, "mu = {mu}: {m}");
    }
}

#[test]
fn win_loss_reference_values() {
    let fair = params(0.0, 0.25);
    // σ/√(2π) less the tail beyond ±1
    assert_abs_diff_eq!(
        expected_win(&spec(1.0), &fair, &Q).unwrap(),
        0.099_74,
        epsilon = 1e-4
    );
    assert_abs_diff_eq!(
        expected_loss(&spec(0.0), &fair, &Q).unwrap(),
        0.099_74,
        epsilon = 1e-4
    );
    assert_abs_diff_eq!(
        expected_win(&spec(0.2), &fair, &Q).unwrap(),
        0.0697,
        epsilon = 1e-3
    );
    assert_abs_diff_eq!(
        expected_loss(&spec(0.0), &params(0.05, 0.25), &Q).unwrap(),
        0.0768,
        epsilon = 1e-3
    );
    assert!(expected_loss(&spec(0.0), &params(0.99, 0.25), &Q).unwrap() < 1e-3);
    assert_eq!(
        expected_win(&spec(0.0), &params(0.07, 0.3), &Q).unwrap(),
        0.0
    );
}

#[test]
fn ratio_reference_values() {
    let r = expected_return_ratio(&spec(1.0), &params(0.0, 0.25), &Q).unwrap();
    assert_abs_diff_eq!(r, 0.0, epsilon = 5e-3);
    let r = expected_return_ratio(&spec(0.15), &params(0.05, 0.25), &Q).unwrap();
    assert!(r < 0.0);
    assert_abs_diff_eq!(r, common::ratio(0.15, 0.05, 0.25), epsilon = 1e-8);
    assert_abs_diff_eq!(r, -0.0992, epsilon = 1e-3);
    let r = expected_return_ratio(&spec(0.2), &params(0.0, 0.25), &Q).unwrap();
    assert_abs_diff_eq!(r, -0.3011, epsilon = 1e-3);
}

#[test]
fn net_payoff_reference_values() {
    let fair = params(0.0, 0.25);
    assert_abs_diff_eq!(
        expected_net_payoff(&spec(1.0), &fair, &Q).unwrap(),
        0.0,
        epsilon = 5e-3
    );
    assert_abs_diff_eq!(
        expected_net_payoff(&spec(0.2), &fair, &Q).unwrap(),
        -0.0300,
        epsilon = 1e-3
    );
    assert_abs_diff_eq!(
        expected_net_payoff(&spec(0.0), &fair, &Q).unwrap(),
        -0.099_74,
        epsilon = 1e-4
    );
}

#[test]
fn zero_interest_ratio_is_minus_one() {
    for mu in [-0.3, 0.0, 0.1, 0.5] {
        assert_eq!(
            expected_return_ratio(&spec(0.0), &params(mu, 0.25), &Q).unwrap(),
            -1.0
        );
    }
}

#[test]
fn renormalized_integrals_divide_by_mass() {
    let p = params(0.05, 0.25);
    let s = spec(0.3).with_renormalize(true);
    let m = common::mass(-1.0, 1.0, 0.05, 0.25);
    assert_abs_diff_eq!(
        expected_win(&s, &p, &Q).unwrap(),
        common::win(0.3, 0.05, 0.25) / m,
        epsilon = 1e-9
    );
    assert_abs_diff_eq!(
        expected_loss(&s, &p, &Q).unwrap(),
        common::loss(0.05, 0.25) / m,
        epsilon = 1e-9
    );
    assert_abs_diff_eq!(
        expected_net_payoff(&s, &p, &Q).unwrap(),
        common::net(0.3, 0.05, 0.25) / m,
        epsilon = 1e-9
    );
}

proptest! {
    #[test]
    fn integrals_match_closed_form(i in 0.0f64..1.0, mu in -0.3f64..0.3, sigma in 0.05f64..0.6) {
        let p = params(mu, sigma);
        let w = expected_win(&spec(i), &p, &Q).unwrap();
        let l = expected_loss(&spec(i), &p, &Q).unwrap();
        prop_assert!((w - common::win(i, mu, sigma)).abs() < 1e-8);
        prop_assert!((l - common::loss(mu, sigma)).abs() < 1e-8);
    }

    #[test]
    fn net_equals_win_minus_loss(i in 0.0f64..1.6, mu in -0.3f64..0.3, sigma in 0.05f64..0.6) {
        let p = params(mu, sigma);
        let s = spec(i);
        let net = expected_net_payoff(&s, &p, &Q).unwrap();
        let diff = expected_win(&s, &p, &Q).unwrap() - expected_loss(&s, &p, &Q).unwrap();
        prop_assert!((net - diff).abs() <= 2.0 * Q.abs_tol);
        let ratio = expected_return_ratio(&s, &p, &Q).unwrap();
        if net.abs() > 1e-9 {
            prop_assert_eq!(net > 0.0, ratio > 0.0);
        }
    }

    #[test]
    fn ratio_monotone_in_interest(i in 0.0f64..1.0, d in 1e-3f64..0.5, mu in -0.2f64..0.2) {
        let p = params(mu, 0.25);
        let a = expected_return_ratio(&spec(i), &p, &Q).unwrap();
        let b = expected_return_ratio(&spec((i + d).min(1.0)), &p, &Q).unwrap();
        prop_assert!(a <= b);
        let wa = expected_win(&spec(i), &p, &Q).unwrap();
        let wb = expected_win(&spec((i + d).min(1.0)), &p, &Q).unwrap();
        prop_assert!(wa <= wb);
    }

    #[test]
    fn ratio_monotone_in_mu(i in 0.01f64..1.0, mu in -0.2f64..0.2, d in 1e-3f64..0.2) {
        let a = expected_return_ratio(&spec(i), &params(mu, 0.25), &Q).unwrap();
        let b = expected_return_ratio(&spec(i), &params(mu + d, 0.25), &Q).unwrap();
        prop_assert!(a <= b);
    }
}
