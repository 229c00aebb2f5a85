//! Continuous many-player model.
//!
//! A round's outcome `x` for the borrower class is Gaussian, measured as a
//! fraction of the capital risked and confined to `[lower_bound, upper_bound]`
//! (normally `[-1, 1]`). The investor absorbs every loss down to the full
//! principal but collects at most the simple interest `I` on the upside.
//!
//! The expected-return ratio divides the expected investor win by the
//! expected investor loss and subtracts one:
//!
//! ```text
//! win  = ∫[0, I] x φ(x) dx + I ∫[I, 1] φ(x) dx
//! loss = | ∫[-1, 0] x φ(x) dx |
//! ratio = win / loss - 1
//! ```
//!
//! Every integral is split at the payoff kinks `{0, I}` so each panel handed
//! to the quadrature is smooth.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureConfig};

pub const DEFAULT_SIGMA: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianParams {
    pub mu: f64,
    pub sigma: f64,
}

impl GaussianParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        let p = Self { mu, sigma };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "sigma must be positive and finite, got {}",
                self.sigma
            )));
        }
        if self.mu.is_nan() || self.mu.abs() >= 1.0 {
            return Err(Error::InvalidConfig(format!(
                "mu must lie strictly inside (-1, 1), got {}",
                self.mu
            )));
        }
        Ok(())
    }
}

impl Default for GaussianParams {
    fn default() -> Self {
        Self {
            mu: 0.0,
            sigma: DEFAULT_SIGMA,
        }
    }
}

/// The investor's payoff geometry for one interest rate.
///
/// `interest` may exceed `upper_bound`; the cap then never binds and the
/// payoff saturates at the uncapped outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffSpec {
    pub interest: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    /// Divide every integral by the Gaussian mass inside the bounds.
    pub renormalize: bool,
}

impl PayoffSpec {
    pub fn new(interest: f64) -> Result<Self> {
        let spec = Self {
            interest,
            ..Self::default()
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_renormalize(mut self, renormalize: bool) -> Self {
        self.renormalize = renormalize;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.interest >= 0.0 && self.interest.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "interest must be nonnegative and finite, got {}",
                self.interest
            )));
        }
        if !(self.lower_bound < 0.0 && 0.0 < self.upper_bound)
            || !self.lower_bound.is_finite()
            || !self.upper_bound.is_finite()
        {
            return Err(Error::InvalidConfig(format!(
                "outcome bounds must satisfy lower < 0 < upper, got [{}, {}]",
                self.lower_bound, self.upper_bound
            )));
        }
        Ok(())
    }

    /// Interest cap that actually binds inside the outcome range.
    pub fn effective_cap(&self) -> f64 {
        self.interest.min(self.upper_bound)
    }
}

impl Default for PayoffSpec {
    fn default() -> Self {
        Self {
            interest: 0.0,
            lower_bound: -1.0,
            upper_bound: 1.0,
            renormalize: false,
        }
    }
}

pub fn gaussian_pdf(x: f64, params: &GaussianParams) -> f64 {
    let z = (x - params.mu) / params.sigma;
    (-0.5 * z * z).exp() / (params.sigma * (2.0 * PI).sqrt())
}

/// Investor return for outcome `x`: losses pass through down to the full
/// principal, wins are capped at the interest.
pub fn investor_payoff_fraction(x: f64, spec: &PayoffSpec) -> f64 {
    x.clamp(spec.lower_bound, spec.upper_bound)
        .min(spec.interest)
}

/// Gaussian mass inside the outcome bounds.
pub fn mass_in_bounds(
    spec: &PayoffSpec,
    params: &GaussianParams,
    q: &QuadratureConfig,
) -> Result<f64> {
    integrate(
        |x| gaussian_pdf(x, params),
        spec.lower_bound,
        spec.upper_bound,
        q,
    )
}

fn check(spec: &PayoffSpec, params: &GaussianParams) -> Result<()> {
    spec.validate()?;
    params.validate()
}

fn normalization(spec: &PayoffSpec, params: &GaussianParams, q: &QuadratureConfig) -> Result<f64> {
    if spec.renormalize {
        mass_in_bounds(spec, params, q)
    } else {
        Ok(1.0)
    }
}

fn raw_win(spec: &PayoffSpec, params: &GaussianParams, q: &QuadratureConfig) -> Result<f64> {
    let cap = spec.effective_cap();
    if cap == 0.0 {
        return Ok(0.0);
    }
    let partial = integrate(|x| x * gaussian_pdf(x, params), 0.0, cap, q)?;
    let capped = integrate(|x| gaussian_pdf(x, params), cap, spec.upper_bound, q)?;
    Ok(partial + cap * capped)
}

fn raw_loss(spec: &PayoffSpec, params: &GaussianParams, q: &QuadratureConfig) -> Result<f64> {
    Ok(integrate(|x| x * gaussian_pdf(x, params), spec.lower_bound, 0.0, q)?.abs())
}

/// Expected investor win per unit principal.
pub fn expected_win(
    spec: &PayoffSpec,
    params: &GaussianParams,
    q: &QuadratureConfig,
) -> Result<f64> {
    check(spec, params)?;
    Ok(raw_win(spec, params, q)? / normalization(spec, params, q)?)
}

/// Expected investor loss magnitude per unit principal. Independent of the
/// interest; only the bounds and normalization policy of `spec` matter.
pub fn expected_loss(
    spec: &PayoffSpec,
    params: &GaussianParams,
    q: &QuadratureConfig,
) -> Result<f64> {
    check(spec, params)?;
    Ok(raw_loss(spec, params, q)? / normalization(spec, params, q)?)
}

/// `expected_win / expected_loss - 1`. Negative means the investor class
/// loses on average.
pub fn expected_return_ratio(
    spec: &PayoffSpec,
    params: &GaussianParams,
    q: &QuadratureConfig,
) -> Result<f64> {
    check(spec, params)?;
    let loss = raw_loss(spec, params, q)?;
    ratio_given_loss(spec, params, q, loss)
}

/// Ratio with a precomputed raw loss integral. The normalization cancels, so
/// only raw integrals are involved.
pub(crate) fn ratio_given_loss(
    spec: &PayoffSpec,
    params: &GaussianParams,
    q: &QuadratureConfig,
    raw_loss: f64,
) -> Result<f64> {
    if raw_loss.is_nan() || raw_loss <= 0.0 {
        return Err(Error::DegenerateRatio {
            mu: params.mu,
            sigma: params.sigma,
        });
    }
    Ok(raw_win(spec, params, q)? / raw_loss - 1.0)
}

pub(crate) fn raw_loss_integral(
    spec: &PayoffSpec,
    params: &GaussianParams,
    q: &QuadratureConfig,
) -> Result<f64> {
    check(spec, params)?;
    raw_loss(spec, params, q)
}

/// Direct expectation of the capped payoff over the outcome range.
pub fn expected_net_payoff(
    spec: &PayoffSpec,
    params: &GaussianParams,
    q: &QuadratureConfig,
) -> Result<f64> {
    check(spec, params)?;
    let integrand = |x: f64| investor_payoff_fraction(x, spec) * gaussian_pdf(x, params);
    let cap = spec.effective_cap();
    let mut total = integrate(integrand, spec.lower_bound, 0.0, q)?;
    total += integrate(integrand, 0.0, cap, q)?;
    total += integrate(integrand, cap, spec.upper_bound, q)?;
    Ok(total / normalization(spec, params, q)?)
}
