mod common;

use proptest::prelude::*;
use zerosum::breakeven::RATIO_SLACK;
use zerosum::report::{default_interest_axis, default_mu_axis};
use zerosum::{
    discrete_breakeven, expected_return_ratio, solve_breakeven, sweep, BreakevenRequest, Error,
    GaussianParams, PayoffSpec, QuadratureConfig,
};

fn solve(mu: f64) -> f64 {
    solve_breakeven(&BreakevenRequest::new(
        GaussianParams::new(mu, 0.25).unwrap(),
    ))
    .unwrap()
}

#[test]
fn fair_game_needs_full_principal() {
    let i = solve(0.0);
    assert!((i - 1.0).abs() <= 0.01, "{i}");
    // continuous and discrete models agree on 100%
    assert_eq!(discrete_breakeven(5, 5).unwrap(), Some(5));
    assert!((i - 5.0 / 5.0).abs() <= 0.01);
}

#[test]
fn five_percent_advantage() {
    let i = solve(0.05);
    assert!(i > 0.15);
    assert!((0.17..=0.18).contains(&i), "{i}");
    // bisection on the closed-form ratio: 0.17321689...
    assert!((i - common::breakeven(0.05, 0.25)).abs() < 1e-5);
    assert!((i - 0.173_216_891_829_976).abs() < 1e-5);
}

#[test]
fn rigged_against_borrower() {
    let mut req = BreakevenRequest::new(GaussianParams::new(-0.5, 0.25).unwrap());
    req.i_max = 1.0;
    assert!(matches!(
        solve_breakeven(&req),
        Err(Error::NoBreakEven { .. })
    ));
}

#[test]
fn root_is_bracketed() {
    let q = QuadratureConfig::default();
    for mu in [0.01, 0.02, 0.05, 0.1, 0.3] {
        let p = GaussianParams::new(mu, 0.25).unwrap();
        let req = BreakevenRequest::new(p);
        let i = solve_breakeven(&req).unwrap();
        let below = expected_return_ratio(&PayoffSpec::new(i - req.tol).unwrap(), &p, &q).unwrap();
        let above = expected_return_ratio(&PayoffSpec::new(i + req.tol).unwrap(), &p, &q).unwrap();
        assert!(
            below < 0.0 && above > -RATIO_SLACK,
            "mu = {mu}: {below} {above}"
        );
        assert!((i - common::breakeven(mu, 0.25)).abs() < 1e-5, "mu = {mu}");
    }
}

#[test]
fn breakeven_decreases_with_advantage() {
    let mus = default_mu_axis();
    let rates: Vec<f64> = mus.iter().map(|&m| solve(m)).collect();
    assert!(rates.windows(2).all(|w| w[0] >= w[1]), "{rates:?}");
}

#[test]
fn surface_properties() {
    let q = QuadratureConfig::default();
    let grid = sweep(&default_mu_axis(), &default_interest_axis(), 0.25, &q).unwrap();
    assert_eq!(grid.cells.len(), 11);
    assert!(grid.cells.iter().all(|r| r.len() == 160));
    assert!(grid.is_monotone());
    assert!(grid.cell(0.0, 1.0).unwrap().abs() <= 5e-3);
    let low = grid.cell(0.0, 0.01).unwrap();
    assert!((low - common::ratio(0.01, 0.0, 0.25)).abs() < 1e-8);
    assert!((low - (-0.950_653_949_6)).abs() < 1e-8);
}

#[test]
fn sweep_matches_serial_evaluation() {
    let q = QuadratureConfig::default();
    let mus = [0.0, 0.03, 0.07];
    let is = [0.05, 0.2, 0.9, 1.3];
    let grid = sweep(&mus, &is, 0.3, &q).unwrap();
    for (r, &mu) in mus.iter().enumerate() {
        for (c, &i) in is.iter().enumerate() {
            let p = GaussianParams::new(mu, 0.3).unwrap();
            let direct = expected_return_ratio(&PayoffSpec::new(i).unwrap(), &p, &q).unwrap();
            assert_eq!(grid.cells[r][c].to_bits(), direct.to_bits());
        }
    }
    assert_eq!(grid, sweep(&mus, &is, 0.3, &q).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_grids_are_monotone(
        mu0 in -0.2f64..0.2, dmu in 0.001f64..0.05,
        i0 in 0.0f64..1.0, di in 0.001f64..0.2,
        sigma in 0.1f64..0.5,
    ) {
        let mus: Vec<f64> = (0..4).map(|k| mu0 + k as f64 * dmu).collect();
        let is: Vec<f64> = (0..5).map(|k| i0 + k as f64 * di).collect();
        let grid = sweep(&mus, &is, sigma, &QuadratureConfig::default()).unwrap();
        prop_assert!(grid.is_monotone());
    }
}
