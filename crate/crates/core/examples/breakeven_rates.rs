// Break-even interest as the game is tilted toward the borrower class.
//
// ```bash
// cargo run --example breakeven_rates
// ```

use zerosum::report::default_mu_axis;
use zerosum::{
    breakeven_curve, solve_breakeven, BreakevenRequest, Error, GaussianParams, QuadratureConfig,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let q = QuadratureConfig::default();
    for sigma in [0.15, 0.25, 0.35] {
        println!("sigma = {sigma}");
        for (mu, rate) in breakeven_curve(&default_mu_axis(), sigma, 2.0, 1e-6, &q)? {
            match rate {
                Some(i) => println!("  mu = {mu:.2}: {:7.3}%", 100.0 * i),
                None => println!("  mu = {mu:.2}: none"),
            }
        }
    }

    let mut req = BreakevenRequest::new(GaussianParams::new(-0.1, 0.25)?);
    req.i_max = 1.0;
    match solve_breakeven(&req) {
        Err(Error::NoBreakEven { .. }) => println!("mu = -0.10: no interest rate breaks even"),
        other => println!("mu = -0.10: {other:?}"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
