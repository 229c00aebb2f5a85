// Expected return over the mu × interest grid, written as long-form CSV.
//
// ```bash
// cargo run --example surface_sweep -- surface.csv
// ```

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use zerosum::report::{default_interest_axis, default_mu_axis, write_sweep_csv};
use zerosum::{sweep, QuadratureConfig};

pub fn run_in(path: &Path) -> Result<(), Box<dyn std::error::Error>> {
    let grid = sweep(
        &default_mu_axis(),
        &default_interest_axis(),
        0.25,
        &QuadratureConfig::default(),
    )?;
    write_sweep_csv(&grid, BufWriter::new(File::create(path)?))?;
    println!(
        "wrote {} cells to {}",
        grid.mu_values.len() * grid.i_values.len(),
        path.display()
    );
    println!("monotone in both axes: {}", grid.is_monotone());

    // Where each row first turns profitable.
    for (mu, row) in grid.mu_values.iter().zip(&grid.cells) {
        let first = grid.i_values.iter().zip(row).find(|(_, &r)| r >= 0.0);
        match first {
            Some((i, r)) => println!("  mu = {mu:.2}: ratio >= 0 from I = {i:.2} ({r:+.4})"),
            None => println!("  mu = {mu:.2}: never positive on the grid"),
        }
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run_in(&std::env::temp_dir().join("zsl-surface-example.csv"))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    match std::env::args_os().nth(1) {
        Some(p) => run_in(Path::new(&p)),
        None => run_example(),
    }
}
