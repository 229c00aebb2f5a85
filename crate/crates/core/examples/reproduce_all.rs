// Regenerates every table, curve, surface and claim check into a directory.
//
// ```bash
// cargo run --example reproduce_all -- ./artifacts
// ```

use std::path::Path;

use zerosum::report::reproduce;
use zerosum::QuadratureConfig;

pub fn run_in(dir: &Path) -> Result<(), Box<dyn std::error::Error>> {
    let report = reproduce(dir, &QuadratureConfig::default())?;
    for out in &report.manifest.outputs {
        println!(
            "{:<22} {:>8} bytes {}",
            out.file,
            out.bytes,
            if out.ok { "" } else { "FAILED" }
        );
    }
    for c in &report.claims {
        println!(
            "{:<30} {:<5} {}",
            c.id,
            if c.pass { "pass" } else { "FAIL" },
            c.value
        );
    }
    println!("manifest: {}", report.manifest_path.display());
    if !report.manifest.all_ok() || !report.claims_pass() {
        return Err("reproduction incomplete".into());
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run_in(&std::env::temp_dir().join("zsl-reproduce-example"))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    match std::env::args_os().nth(1) {
        Some(p) => run_in(Path::new(&p)),
        None => run_example(),
    }
}
