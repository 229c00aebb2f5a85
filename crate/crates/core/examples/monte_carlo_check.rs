// Seeded simulation of both games, checked against the exact answers.
//
// ```bash
// cargo run --release --example monte_carlo_check
// ```

use zerosum::{
    enumerate_outcomes, expected_net_payoff, simulate_discrete, simulate_investor,
    DiscreteGameConfig, GaussianParams, PayoffSpec, QuadratureConfig, SimulationConfig,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let q = QuadratureConfig::default();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());

    println!("gaussian model, n = 1e6 per row");
    for (interest, mu) in [(1.0, 0.0), (0.2, 0.0), (0.15, 0.05), (0.2, 0.1)] {
        let params = GaussianParams::new(mu, 0.25)?;
        let spec = PayoffSpec::new(interest)?;
        let cfg = SimulationConfig {
            workers,
            ..SimulationConfig::new(params, spec, 2024)
        };
        let r = simulate_investor(&cfg)?;
        let exact = expected_net_payoff(&spec, &params, &q)?;
        println!(
            "  I = {interest:.2}, mu = {mu:.2}: mean {:+.5} ± {:.5}, exact {exact:+.5}, ratio ≈ {:+.4}",
            r.mean_payoff,
            r.std_error,
            r.ratio_estimate.unwrap_or(f64::NAN)
        );
    }

    println!("coin game, n = 1e6 per row");
    for k in [0, 1, 5] {
        let game = DiscreteGameConfig::new(5, 5, k)?;
        let exact = enumerate_outcomes(&game)?.expected_net;
        let r = simulate_discrete(&game, 1_000_000, 7, workers)?;
        println!(
            "  interest {k}: mean {:+.4} ± {:.4} coins, exact {exact} = {:+.4}",
            r.mean_payoff,
            r.std_error,
            *exact.numer() as f64 / *exact.denom() as f64
        );
    }

    // Same seed, different worker counts, identical result.
    let game = DiscreteGameConfig::new(5, 5, 1)?;
    assert_eq!(
        simulate_discrete(&game, 100_000, 3, 1)?,
        simulate_discrete(&game, 100_000, 3, workers)?
    );
    println!("results independent of worker count: ok");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
