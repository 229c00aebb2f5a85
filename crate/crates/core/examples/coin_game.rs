// The three-player coin game, enumerated exactly.
//
// ```bash
// cargo run --example coin_game
// ```

use zerosum::report::render_outcome_table;
use zerosum::{discrete_breakeven, enumerate_outcomes, DiscreteGameConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // 5 coins lent at 1 coin (20%), then at 5 coins (100%).
    for interest in [1, 5] {
        let summary = enumerate_outcomes(&DiscreteGameConfig::new(5, 5, interest)?)?;
        println!("{}", render_outcome_table(&summary));
    }

    println!("smallest break-even interest, equal stakes:");
    for loan in [1, 2, 3, 5, 10, 20] {
        let k = discrete_breakeven(loan, loan)?.expect("equal stakes always break even");
        println!(
            "  loan {loan:>2}: {k:>2} coins ({:.0}%)",
            100.0 * k as f64 / loan as f64
        );
    }

    println!("lopsided stakes:");
    for (loan, competitor) in [(5, 2), (5, 10), (5, 20)] {
        match discrete_breakeven(loan, competitor)? {
            Some(k) => println!("  loan {loan}, competitor {competitor:>2}: {k} coins"),
            None => println!("  loan {loan}, competitor {competitor:>2}: never breaks even"),
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
