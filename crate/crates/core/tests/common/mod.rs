//! Closed-form truncated-normal moments via the error function.
//!
//! Independent of the library's quadrature: used as the oracle for every
//! integral the Gaussian model computes.

#![allow(dead_code)]

use statrs::function::erf::erf;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

pub fn std_pdf(z: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}

pub fn std_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / std::f64::consts::SQRT_2))
}

/// ∫[a, b] φ(x; mu, sigma) dx
pub fn mass(a: f64, b: f64, mu: f64, sigma: f64) -> f64 {
    std_cdf((b - mu) / sigma) - std_cdf((a - mu) / sigma)
}

/// ∫[a, b] x φ(x; mu, sigma) dx
pub fn first_moment(a: f64, b: f64, mu: f64, sigma: f64) -> f64 {
    let (alpha, beta) = ((a - mu) / sigma, (b - mu) / sigma);
    mu * mass(a, b, mu, sigma) + sigma * (std_pdf(alpha) - std_pdf(beta))
}

pub fn win(interest: f64, mu: f64, sigma: f64) -> f64 {
    let cap = interest.min(1.0);
    first_moment(0.0, cap, mu, sigma) + cap * mass(cap, 1.0, mu, sigma)
}

pub fn loss(mu: f64, sigma: f64) -> f64 {
    -first_moment(-1.0, 0.0, mu, sigma)
}

pub fn ratio(interest: f64, mu: f64, sigma: f64) -> f64 {
    win(interest, mu, sigma) / loss(mu, sigma) - 1.0
}

pub fn net(interest: f64, mu: f64, sigma: f64) -> f64 {
    win(interest, mu, sigma) - loss(mu, sigma)
}

/// Plain bisection on the closed-form ratio.
pub fn breakeven(mu: f64, sigma: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ratio(mid, mu, sigma) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Brute-force enumeration of the coin game: Σ over b in 0..=L+C of
/// min(b, L+k) - L.
pub fn coin_game_net(loan: i64, competitor: i64, interest: i64) -> i64 {
    (0..=loan + competitor)
        .map(|b| b.min(loan + interest) - loan)
        .sum()
}
