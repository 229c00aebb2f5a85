//! Seeded Monte Carlo estimates of the investor payoff.
//!
//! Rounds are cut into fixed blocks of [`BLOCK_ROUNDS`]. Block `i` draws from
//! ChaCha8 seeded with the run seed on stream `i`, so every block is a pure
//! function of `(seed, i)`. Blocks are farmed out to a worker pool and merged
//! back in index order, which makes the result independent of the number of
//! workers.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discrete::{DiscreteGameConfig, OutcomeRow};
use crate::error::{Error, Result};
use crate::gaussian::{investor_payoff_fraction, mass_in_bounds, GaussianParams, PayoffSpec};
use crate::quadrature::QuadratureConfig;

pub const BLOCK_ROUNDS: u64 = 1 << 16;

/// Minimum probability that a Gaussian draw lands inside the outcome bounds.
pub const MIN_ACCEPTANCE: f64 = 1e-6;

/// Per-draw attempt cap. At the minimum acceptance the chance of hitting it
/// is about e^-16.
const MAX_ATTEMPTS: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub n_rounds: u64,
    pub params: GaussianParams,
    pub spec: PayoffSpec,
    pub seed: u64,
    /// Parallelism hint; has no effect on the result.
    #[serde(skip)]
    pub workers: usize,
}

impl SimulationConfig {
    pub fn new(params: GaussianParams, spec: PayoffSpec, seed: u64) -> Self {
        Self {
            n_rounds: 1_000_000,
            params,
            spec,
            seed,
            workers: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_rounds(self.n_rounds)?;
        self.params.validate()?;
        self.spec.validate()
    }
}

fn check_rounds(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidConfig("n_rounds must be at least 1".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub mean_payoff: f64,
    pub win_total: f64,
    pub loss_total: f64,
    /// `win_total / loss_total - 1`; absent when no round lost anything.
    pub ratio_estimate: Option<f64>,
    /// Standard error of `mean_payoff`; zero for a single round.
    pub std_error: f64,
    pub n_rounds: u64,
    pub seed: u64,
}

/// Single-pass mean/variance with win and loss totals.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Accumulator {
    count: u64,
    mean: f64,
    m2: f64,
    win_total: f64,
    loss_total: f64,
}

impl Accumulator {
    pub fn push(&mut self, payoff: f64) {
        self.count += 1;
        let delta = payoff - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (payoff - self.mean);
        if payoff > 0.0 {
            self.win_total += payoff;
        } else {
            self.loss_total -= payoff;
        }
    }

    /// Chan et al. pairwise combination.
    pub fn merge(&mut self, other: &Accumulator) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n_a = self.count as f64;
        let n_b = other.count as f64;
        let n = n_a + n_b;
        let delta = other.mean - self.mean;
        self.mean += delta * n_b / n;
        self.m2 += other.m2 + delta * delta * n_a * n_b / n;
        self.count += other.count;
        self.win_total += other.win_total;
        self.loss_total += other.loss_total;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    fn into_result(self, seed: u64) -> SimulationResult {
        let ratio_estimate =
            (self.loss_total > 0.0).then(|| self.win_total / self.loss_total - 1.0);
        SimulationResult {
            mean_payoff: self.mean,
            win_total: self.win_total,
            loss_total: self.loss_total,
            ratio_estimate,
            std_error: (self.variance() / self.count as f64).sqrt(),
            n_rounds: self.count,
            seed,
        }
    }
}

/// Deterministic generator for block `index` of a run seeded with `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws from the Gaussian truncated to `[-1, 1]` by rejection.
pub fn sample_outcome<R: Rng + ?Sized>(rng: &mut R, params: &GaussianParams) -> Result<f64> {
    let bounds = PayoffSpec::default();
    sample_truncated(rng, params, bounds.lower_bound, bounds.upper_bound)
}

fn sample_truncated<R: Rng + ?Sized>(
    rng: &mut R,
    params: &GaussianParams,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    for _ in 0..MAX_ATTEMPTS {
        let z: f64 = rng.sample(StandardNormal);
        let x = params.mu + params.sigma * z;
        if (lo..=hi).contains(&x) {
            return Ok(x);
        }
    }
    Err(Error::RejectionBudget {
        acceptance: 1.0 / MAX_ATTEMPTS as f64,
        minimum: MIN_ACCEPTANCE,
    })
}

fn block_lengths(n_rounds: u64) -> Vec<(u64, u64)> {
    let blocks = n_rounds.div_ceil(BLOCK_ROUNDS);
    (0..blocks)
        .map(|i| (i, BLOCK_ROUNDS.min(n_rounds - i * BLOCK_ROUNDS)))
        .collect()
}

fn run_blocks<F>(n_rounds: u64, seed: u64, workers: usize, block: F) -> Result<Accumulator>
where
    F: Fn(&mut ChaCha8Rng, u64) -> Result<Accumulator> + Sync,
{
    let blocks = block_lengths(n_rounds);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;
    let parts = pool.install(|| {
        blocks
            .par_iter()
            .map(|&(index, len)| block(&mut substream(seed, index), len))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut total = Accumulator::default();
    for part in &parts {
        total.merge(part);
    }
    Ok(total)
}

/// Estimates the expected capped payoff of the Gaussian model.
pub fn simulate_investor(config: &SimulationConfig) -> Result<SimulationResult> {
    config.validate()?;
    let spec = config.spec;
    let params = config.params;
    let acceptance = mass_in_bounds(&spec, &params, &QuadratureConfig::default())?;
    if acceptance < MIN_ACCEPTANCE {
        return Err(Error::RejectionBudget {
            acceptance,
            minimum: MIN_ACCEPTANCE,
        });
    }
    let acc = run_blocks(config.n_rounds, config.seed, config.workers, |rng, len| {
        let mut acc = Accumulator::default();
        for _ in 0..len {
            let x = sample_truncated(rng, &params, spec.lower_bound, spec.upper_bound)?;
            acc.push(investor_payoff_fraction(x, &spec));
        }
        Ok(acc)
    })?;
    Ok(acc.into_result(config.seed))
}

/// Plays the coin game with B's final holding uniform over the pot.
/// Payoffs are in coins.
pub fn simulate_discrete(
    config: &DiscreteGameConfig,
    n_rounds: u64,
    seed: u64,
    workers: usize,
) -> Result<SimulationResult> {
    config.validate()?;
    check_rounds(n_rounds)?;
    let total_pot = config.total_pot();
    let acc = run_blocks(n_rounds, seed, workers, |rng, len| {
        let mut acc = Accumulator::default();
        for _ in 0..len {
            let row = OutcomeRow::new(rng.random_range(0..=total_pot), config)?;
            debug_assert_eq!(row.conserved_total(), total_pot);
            acc.push(row.investor_net() as f64);
        }
        Ok(acc)
    })?;
    Ok(acc.into_result(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_matches_sequential() {
        let data: Vec<f64> = (0..1000)
            .map(|i| ((i * 37) % 101) as f64 / 50.0 - 1.0)
            .collect();
        let mut seq = Accumulator::default();
        data.iter().for_each(|&x| seq.push(x));
        let mut merged = Accumulator::default();
        for chunk in data.chunks(77) {
            let mut part = Accumulator::default();
            chunk.iter().for_each(|&x| part.push(x));
            merged.merge(&part);
        }
        assert_eq!(merged.count(), seq.count());
        assert!((merged.mean() - seq.mean()).abs() < 1e-14);
        assert!((merged.variance() - seq.variance()).abs() < 1e-12);
    }

    #[test]
    fn blocks_cover_all_rounds() {
        let b = block_lengths(3 * BLOCK_ROUNDS + 5);
        assert_eq!(b.len(), 4);
        assert_eq!(b.iter().map(|x| x.1).sum::<u64>(), 3 * BLOCK_ROUNDS + 5);
        assert_eq!(block_lengths(1), vec![(0, 1)]);
    }

    #[test]
    fn wide_gaussian_rejected_up_front() {
        let params = GaussianParams::new(0.0, 1e7).unwrap();
        let cfg = SimulationConfig {
            n_rounds: 10,
            ..SimulationConfig::new(params, PayoffSpec::new(0.2).unwrap(), 1)
        };
        assert!(matches!(
            simulate_investor(&cfg),
            Err(Error::RejectionBudget { .. })
        ));
    }

    #[test]
    fn zero_rounds_rejected() {
        let cfg = DiscreteGameConfig::new(5, 5, 1).unwrap();
        assert!(simulate_discrete(&cfg, 0, 1, 1).is_err());
    }

    #[test]
    fn single_round_has_zero_error() {
        let cfg = DiscreteGameConfig::new(5, 5, 5).unwrap();
        let a = simulate_discrete(&cfg, 1, 99, 1).unwrap();
        let b = simulate_discrete(&cfg, 1, 99, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.std_error, 0.0);
        assert_eq!(a.n_rounds, 1);
    }
}
