// Expected win, loss and return ratio of the Gaussian model, plus the
// payoff-weighted density curves used for plotting.
//
// ```bash
// cargo run --example gaussian_payoff
// ```

use zerosum::{
    expected_loss, expected_net_payoff, expected_return_ratio, expected_win, payoff_curve_samples,
    GaussianParams, PayoffSpec, QuadratureConfig,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let q = QuadratureConfig::default();

    println!(
        "{:>6} {:>6} {:>10} {:>10} {:>10} {:>10}",
        "mu", "I", "win", "loss", "ratio", "net"
    );
    for mu in [0.0, 0.01, 0.05, 0.1] {
        let params = GaussianParams::new(mu, 0.25)?;
        for interest in [0.01, 0.1, 0.15, 0.2, 0.5, 1.0] {
            let spec = PayoffSpec::new(interest)?;
            println!(
                "{mu:>6.2} {interest:>6.2} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
                expected_win(&spec, &params, &q)?,
                expected_loss(&spec, &params, &q)?,
                expected_return_ratio(&spec, &params, &q)?,
                expected_net_payoff(&spec, &params, &q)?,
            );
        }
    }

    // Coarse look at the 20%-capped curve against the uncapped one.
    let fair = GaussianParams::new(0.0, 0.25)?;
    let series = payoff_curve_samples(&[0.2], &fair, 11)?;
    println!(
        "\n{:>6} {:>10} {:>10} {:>10}",
        "x", "density", "uncapped", "capped"
    );
    for p in &series[0].points {
        println!(
            "{:>6.2} {:>10.5} {:>10.5} {:>10.5}",
            p.x, p.density, p.uncapped, p.capped
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
