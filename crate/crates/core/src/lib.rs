//! Zero-sum hard-money lending model.
//!
//! When the money supply is fixed, every coin of interest an investor
//! collects is a coin some other player lost. This crate quantifies what that
//! does to the interest rate a lender needs just to break even:
//!
//! * [`discrete`]: exact enumeration of a three-player coin game,
//! * [`gaussian`]: the many-player model with Gaussian round outcomes and an
//!   interest-capped investor payoff, integrated by [`quadrature`],
//! * [`breakeven`]: break-even interest solving and parameter sweeps,
//! * [`monte_carlo`]: seeded, worker-count-independent simulation of both,
//! * [`report`] and [`cli`]: CSV/JSON artifacts and the `zsl` command.

pub mod breakeven;
pub mod cli;
pub mod discrete;
mod error;
pub mod gaussian;
pub mod monte_carlo;
pub mod quadrature;
pub mod report;

pub use breakeven::{
    breakeven_curve, payoff_curve_samples, solve_breakeven, sweep, BreakevenRequest, CurvePoint,
    CurveSeries, SweepGrid, SweepRecord,
};
pub use discrete::{
    borrower_net, discrete_breakeven, enumerate_outcomes, investor_payoff, DiscreteGameConfig,
    EnumerationSummary, OutcomeRow,
};
pub use error::{Error, Result};
pub use gaussian::{
    expected_loss, expected_net_payoff, expected_return_ratio, expected_win, gaussian_pdf,
    investor_payoff_fraction, GaussianParams, PayoffSpec,
};
pub use monte_carlo::{
    sample_outcome, simulate_discrete, simulate_investor, SimulationConfig, SimulationResult,
};
pub use quadrature::{integrate, QuadratureConfig};
