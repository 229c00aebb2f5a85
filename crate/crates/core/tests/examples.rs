//! Every runnable example must keep working.

macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(coin_game, "coin_game.rs");
example!(gaussian_payoff, "gaussian_payoff.rs");
example!(breakeven_rates, "breakeven_rates.rs");
example!(surface_sweep, "surface_sweep.rs");
example!(monte_carlo_check, "monte_carlo_check.rs");
example!(reproduce_all, "reproduce_all.rs");

#[test]
fn coin_game_runs() {
    coin_game::run_example().unwrap();
}

#[test]
fn gaussian_payoff_runs() {
    gaussian_payoff::run_example().unwrap();
}

#[test]
fn breakeven_rates_runs() {
    breakeven_rates::run_example().unwrap();
}

#[test]
fn surface_sweep_runs() {
    let dir = tempfile::tempdir().unwrap();
    surface_sweep::run_in(&dir.path().join("s.csv")).unwrap();
}

#[test]
fn monte_carlo_check_runs() {
    monte_carlo_check::run_example().unwrap();
}

#[test]
fn reproduce_all_runs() {
    let dir = tempfile::tempdir().unwrap();
    reproduce_all::run_in(dir.path()).unwrap();
}
