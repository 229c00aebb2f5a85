//! Break-even interest solving and parameter sweeps over the Gaussian model.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{
    gaussian_pdf, investor_payoff_fraction, ratio_given_loss, raw_loss_integral, GaussianParams,
    PayoffSpec,
};
use crate::quadrature::QuadratureConfig;

/// Ratios within this distance of zero count as break-even. The quadrature
/// delivers integrals to ~1e-10 absolute on a loss of order 0.1.
pub const RATIO_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BreakevenRequest {
    pub params: GaussianParams,
    pub i_max: f64,
    /// Root tolerance on the interest rate.
    pub tol: f64,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
}

impl BreakevenRequest {
    pub fn new(params: GaussianParams) -> Self {
        Self {
            params,
            i_max: 2.0,
            tol: 1e-6,
            quadrature: QuadratureConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.quadrature.validate()?;
        if !(self.i_max > 0.0 && self.i_max.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "i_max must be positive, got {}",
                self.i_max
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Smallest interest at which the expected return ratio reaches zero.
///
/// The ratio is -1 at zero interest and nondecreasing, so a bracketed search
/// on `(0, i_max]` finds the unique crossing. Past the upper outcome bound the
/// cap no longer binds and the ratio is flat, so the search never looks
/// beyond it.
pub fn solve_breakeven(req: &BreakevenRequest) -> Result<f64> {
    req.validate()?;
    let base = PayoffSpec::default();
    let q = &req.quadrature;
    let loss = raw_loss_integral(&base, &req.params, q)?;
    let ratio = |interest: f64| {
        let spec = PayoffSpec { interest, ..base };
        ratio_given_loss(&spec, &req.params, q, loss)
    };

    let mut hi = req.i_max.min(base.upper_bound);
    let mut f_hi = ratio(hi)?;
    if f_hi < -RATIO_SLACK {
        return Err(Error::NoBreakEven {
            mu: req.params.mu,
            sigma: req.params.sigma,
            i_max: req.i_max,
        });
    }
    let mut lo = 0.0;
    let mut f_lo = -1.0;

    // Regula falsi, with a bisection step whenever the bracket fails to halve.
    // Near a tangential root the secant stalls against one end.
    let mut prev_width = hi - lo;
    let mut bisect_next = false;
    while hi - lo > req.tol {
        let secant = hi - f_hi * (hi - lo) / (f_hi - f_lo);
        let candidate = if !bisect_next && secant > lo && secant < hi {
            secant
        } else {
            0.5 * (lo + hi)
        };
        let f_c = ratio(candidate)?;
        if f_c >= 0.0 {
            hi = candidate;
            f_hi = f_c;
        } else {
            lo = candidate;
            f_lo = f_c;
        }
        let width = hi - lo;
        bisect_next = width > 0.5 * prev_width;
        prev_width = width;
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub mu_values: Vec<f64>,
    pub i_values: Vec<f64>,
    pub sigma: f64,
    /// Row per mu, column per interest.
    pub cells: Vec<Vec<f64>>,
}

/// One long-form record of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub mu: f64,
    pub interest: f64,
    pub sigma: f64,
    pub expected_return: f64,
}

impl SweepGrid {
    pub fn records(&self) -> impl Iterator<Item = SweepRecord> + '_ {
        self.mu_values
            .iter()
            .zip(&self.cells)
            .flat_map(move |(&mu, row)| {
                self.i_values
                    .iter()
                    .zip(row)
                    .map(move |(&interest, &value)| SweepRecord {
                        mu,
                        interest,
                        sigma: self.sigma,
                        expected_return: value,
                    })
            })
    }

    pub fn cell(&self, mu: f64, interest: f64) -> Option<f64> {
        let r = self.mu_values.iter().position(|&m| m == mu)?;
        let c = self.i_values.iter().position(|&i| i == interest)?;
        Some(self.cells[r][c])
    }

    /// Every row nondecreasing in interest and every column nondecreasing in mu.
    pub fn is_monotone(&self) -> bool {
        let rows_ok = self
            .cells
            .iter()
            .all(|row| row.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .cells
            .windows(2)
            .all(|pair| pair[0].iter().zip(&pair[1]).all(|(a, b)| a <= b));
        rows_ok && cols_ok
    }
}

fn check_axis(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidConfig(format!("{name} must not be empty")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "{name} contains a non-finite value"
        )));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig(format!(
            "{name} must be strictly ascending"
        )));
    }
    Ok(())
}

/// Expected return ratio over a `mu × interest` grid.
///
/// Cells are evaluated in parallel; each is a pure function of its
/// coordinates, so the grid is identical to a serial evaluation.
pub fn sweep(
    mu_values: &[f64],
    i_values: &[f64],
    sigma: f64,
    q: &QuadratureConfig,
) -> Result<SweepGrid> {
    check_axis("mu values", mu_values)?;
    check_axis("interest values", i_values)?;
    q.validate()?;
    let base = PayoffSpec::default();
    for &i in i_values {
        PayoffSpec {
            interest: i,
            ..base
        }
        .validate()?;
    }

    let cells = mu_values
        .par_iter()
        .enumerate()
        .map(|(row, &mu)| {
            let cell_err = |col: usize, interest: f64, e: Error| Error::SweepCell {
                row,
                col,
                mu,
                interest,
                source: Box::new(e),
            };
            let params = GaussianParams::new(mu, sigma).map_err(|e| cell_err(0, i_values[0], e))?;
            let loss =
                raw_loss_integral(&base, &params, q).map_err(|e| cell_err(0, i_values[0], e))?;
            i_values
                .par_iter()
                .enumerate()
                .map(|(col, &interest)| {
                    let spec = PayoffSpec { interest, ..base };
                    ratio_given_loss(&spec, &params, q, loss)
                        .map_err(|e| cell_err(col, interest, e))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SweepGrid {
        mu_values: mu_values.to_vec(),
        i_values: i_values.to_vec(),
        sigma,
        cells,
    })
}

/// Break-even interest for each mu; `None` where no break-even exists.
pub fn breakeven_curve(
    mu_values: &[f64],
    sigma: f64,
    i_max: f64,
    tol: f64,
    q: &QuadratureConfig,
) -> Result<Vec<(f64, Option<f64>)>> {
    mu_values
        .par_iter()
        .map(|&mu| {
            let req = BreakevenRequest {
                params: GaussianParams::new(mu, sigma)?,
                i_max,
                tol,
                quadrature: *q,
            };
            match solve_breakeven(&req) {
                Ok(i) => Ok((mu, Some(i))),
                Err(Error::NoBreakEven { .. }) => Ok((mu, None)),
                Err(e) => Err(e),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x: f64,
    /// Outcome density.
    pub density: f64,
    /// Uncapped outcome times density: the full zero-sum win/loss curve.
    pub uncapped: f64,
    /// Interest-capped payoff times density.
    pub capped: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSeries {
    pub interest: f64,
    pub mu: f64,
    pub sigma: f64,
    pub points: Vec<CurvePoint>,
}

/// Plot data for the payoff-weighted density, one series per interest rate,
/// sampled uniformly on `[-1, 1]`.
pub fn payoff_curve_samples(
    i_list: &[f64],
    params: &GaussianParams,
    n_points: usize,
) -> Result<Vec<CurveSeries>> {
    params.validate()?;
    if n_points < 2 {
        return Err(Error::InvalidConfig(format!(
            "n_points must be at least 2, got {n_points}"
        )));
    }
    i_list
        .iter()
        .map(|&interest| {
            let spec = PayoffSpec::new(interest)?;
            let span = spec.upper_bound - spec.lower_bound;
            let points = (0..n_points)
                .map(|k| {
                    let x = spec.lower_bound + span * k as f64 / (n_points - 1) as f64;
                    let density = gaussian_pdf(x, params);
                    CurvePoint {
                        x,
                        density,
                        uncapped: x * density,
                        capped: investor_payoff_fraction(x, &spec) * density,
                    }
                })
                .collect();
            Ok(CurveSeries {
                interest,
                mu: params.mu,
                sigma: params.sigma,
                points,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rigged_against_borrower_has_no_breakeven() {
        let mut req = BreakevenRequest::new(GaussianParams::new(-0.5, 0.25).unwrap());
        req.i_max = 1.0;
        assert!(matches!(
            solve_breakeven(&req),
            Err(Error::NoBreakEven { .. })
        ));
    }

    #[test]
    fn bad_axes_rejected() {
        let q = QuadratureConfig::default();
        assert!(sweep(&[], &[0.1], 0.25, &q).is_err());
        assert!(sweep(&[0.0], &[0.2, 0.1], 0.25, &q).is_err());
        assert!(sweep(&[0.0], &[-0.1], 0.25, &q).is_err());
    }

    #[test]
    fn bad_mu_reports_cell() {
        let q = QuadratureConfig::default();
        let err = sweep(&[0.0, 1.5], &[0.1], 0.25, &q).unwrap_err();
        assert!(
            matches!(err, Error::SweepCell { row: 1, col: 0, .. }),
            "{err}"
        );
    }

    #[test]
    fn curve_points() {
        let params = GaussianParams::new(0.0, 0.25).unwrap();
        let series = payoff_curve_samples(&[0.2], &params, 9).unwrap();
        let pts = &series[0].points;
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0].x, -1.0);
        assert_eq!(pts[8].x, 1.0);
        // x = 0.5 sits at index 6
        assert!((pts[6].capped - 0.2 * gaussian_pdf(0.5, &params)).abs() < 1e-15);
        // x = -0.25 at index 3
        assert!((pts[3].capped - (-0.25) * gaussian_pdf(-0.25, &params)).abs() < 1e-15);
        assert_eq!(pts[4].capped, 0.0);
        assert!(payoff_curve_samples(&[0.2], &params, 1).is_err());
    }
}
