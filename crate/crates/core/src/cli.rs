//! The `zsl` command line.
//!
//! Exit codes:
//!
//! | code | meaning                                   |
//! |------|-------------------------------------------|
//! | 0    | success                                   |
//! | 1    | `reproduce` finished but a claim failed   |
//! | 2    | usage error / invalid parameters          |
//! | 3    | numerical failure (quadrature, degenerate)|
//! | 4    | no break-even interest in range           |
//! | 5    | I/O or serialization failure              |
//! | 6    | truncated-Gaussian rejection budget       |

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::breakeven::{solve_breakeven, sweep, BreakevenRequest};
use crate::discrete::{discrete_breakeven, enumerate_outcomes, DiscreteGameConfig};
use crate::error::{Error, Result};
use crate::gaussian::{
    expected_loss, expected_net_payoff, expected_return_ratio, expected_win, GaussianParams,
    PayoffSpec,
};
use crate::monte_carlo::{
    simulate_discrete, simulate_investor, SimulationConfig, SimulationResult,
};
use crate::quadrature::QuadratureConfig;
use crate::report::{self, axis, render_outcome_table, write_outcome_csv, write_sweep_csv};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_NO_BREAK_EVEN: i32 = 4;
pub const EXIT_IO: i32 = 5;
pub const EXIT_REJECTION: i32 = 6;

#[derive(Debug, Parser)]
#[command(name = "zsl", version, about = "Zero-sum hard-money lending model")]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate the coin game (or find its break-even interest).
    Discrete(DiscreteArgs),
    /// Evaluate expected win, loss and return ratio of the Gaussian model.
    Analytic(AnalyticArgs),
    /// Solve for the break-even interest rate.
    Breakeven(BreakevenArgs),
    /// Expected return over a mu × interest grid, as long-form CSV.
    Sweep(SweepArgs),
    /// Seeded Monte Carlo estimate.
    Simulate(SimulateArgs),
    /// Regenerate every table, curve and claim check into a directory.
    Reproduce(ReproduceArgs),
}

/// Parses `0.2` or `20%`.
pub fn parse_fraction(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let (num, scale) = match s.strip_suffix('%') {
        Some(n) => (n.trim(), 0.01),
        None => (s, 1.0),
    };
    let v: f64 = num.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if !v.is_finite() {
        return Err(format!("not finite: {s:?}"));
    }
    Ok(v * scale)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl RangeSpec {
    pub fn values(&self) -> Result<Vec<f64>> {
        axis(self.start, self.stop, self.step)
    }
}

/// Parses `start:stop:step`, each part a fraction or percentage.
pub fn parse_range(s: &str) -> std::result::Result<RangeSpec, String> {
    let parts: Vec<_> = s.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(format!("expected start:stop:step, got {s:?}"));
    };
    let r = RangeSpec {
        start: parse_fraction(start)?,
        stop: parse_fraction(stop)?,
        step: parse_fraction(step)?,
    };
    r.values().map_err(|e| e.to_string())?;
    Ok(r)
}

#[derive(Debug, Args)]
struct QuadArgs {
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    abs_tol: f64,
    /// Maximum adaptive refinement depth.
    #[arg(long, default_value_t = 60)]
    max_subdivisions: u32,
}

impl QuadArgs {
    fn config(&self) -> QuadratureConfig {
        QuadratureConfig {
            abs_tol: self.abs_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

#[derive(Debug, Args)]
struct DiscreteArgs {
    #[arg(long, default_value_t = 5)]
    loan: u64,
    #[arg(long, default_value_t = 5)]
    competitor: u64,
    /// Interest in whole coins.
    #[arg(long, default_value_t = 1, conflicts_with = "breakeven")]
    interest: u64,
    /// Find the smallest break-even interest instead of printing a table.
    #[arg(long)]
    breakeven: bool,
    /// Write the table as CSV to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnalyticArgs {
    #[arg(long, value_parser = parse_fraction, allow_negative_numbers = true, default_value = "0")]
    mu: f64,
    #[arg(long, value_parser = parse_fraction, default_value = "0.25")]
    sigma: f64,
    #[arg(long, value_parser = parse_fraction)]
    interest: f64,
    /// Divide integrals by the Gaussian mass inside [-1, 1].
    #[arg(long)]
    renormalize: bool,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Debug, Args)]
struct BreakevenArgs {
    #[arg(long, value_parser = parse_fraction, allow_negative_numbers = true, default_value = "0")]
    mu: f64,
    #[arg(long, value_parser = parse_fraction, default_value = "0.25")]
    sigma: f64,
    #[arg(long, value_parser = parse_fraction, default_value = "2.0")]
    i_max: f64,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "0:0.10:0.01")]
    mu_range: RangeSpec,
    #[arg(long, value_parser = parse_range, default_value = "0.01:1.60:0.01")]
    i_range: RangeSpec,
    #[arg(long, value_parser = parse_fraction, default_value = "0.25")]
    sigma: f64,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Gaussian,
    Discrete,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, value_enum, default_value_t = Mode::Gaussian)]
    mode: Mode,
    #[arg(long, default_value_t = 1_000_000)]
    n: u64,
    #[arg(long, env = "ZSL_SEED", default_value_t = 42)]
    seed: u64,
    /// Worker threads; does not change the result.
    #[arg(long, env = "ZSL_WORKERS")]
    workers: Option<usize>,
    #[arg(long, value_parser = parse_fraction, allow_negative_numbers = true, default_value = "0")]
    mu: f64,
    #[arg(long, value_parser = parse_fraction, default_value = "0.25")]
    sigma: f64,
    /// Interest: a fraction (or percentage) in gaussian mode, whole coins in discrete mode.
    #[arg(long)]
    interest: String,
    #[arg(long, default_value_t = 5)]
    loan: u64,
    #[arg(long, default_value_t = 5)]
    competitor: u64,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    #[arg(long, default_value = "reproduce")]
    out_dir: PathBuf,
    #[command(flatten)]
    quad: QuadArgs,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    json: bool,
}

impl Io<'_> {
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) -> Result<()> {
        let io_err = |e| Error::io("<stdout>", e);
        if self.json {
            serde_json::to_writer_pretty(&mut *self.out, value)?;
            writeln!(self.out).map_err(io_err)?;
        } else {
            write!(self.out, "{}", text()).map_err(io_err)?;
        }
        Ok(())
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut io = Io {
        out,
        json: cli.json,
    };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn main_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    code
}

fn dispatch(cmd: Command, io: &mut Io<'_>) -> Result<i32> {
    match cmd {
        Command::Discrete(a) => cmd_discrete(a, io),
        Command::Analytic(a) => cmd_analytic(a, io),
        Command::Breakeven(a) => cmd_breakeven(a, io),
        Command::Sweep(a) => cmd_sweep(a, io),
        Command::Simulate(a) => cmd_simulate(a, io),
        Command::Reproduce(a) => cmd_reproduce(a, io),
    }
}

#[derive(Serialize)]
struct DiscreteBreakevenReport {
    loan_coins: u64,
    competitor_coins: u64,
    breakeven_interest_coins: Option<u64>,
    breakeven_fraction: Option<f64>,
}

fn cmd_discrete(a: DiscreteArgs, io: &mut Io<'_>) -> Result<i32> {
    if a.breakeven {
        let k = discrete_breakeven(a.loan, a.competitor)?;
        let report = DiscreteBreakevenReport {
            loan_coins: a.loan,
            competitor_coins: a.competitor,
            breakeven_interest_coins: k,
            breakeven_fraction: k.map(|k| k as f64 / a.loan as f64),
        };
        io.emit(&report, || match k {
            Some(k) => format!(
                "break-even interest: k={k} coins on a {} coin loan ({}%)\n",
                a.loan,
                100.0 * k as f64 / a.loan as f64
            ),
            None => "no break-even interest within the pot\n".into(),
        })?;
        return Ok(if k.is_some() {
            EXIT_OK
        } else {
            EXIT_NO_BREAK_EVEN
        });
    }
    let summary = enumerate_outcomes(&DiscreteGameConfig::new(a.loan, a.competitor, a.interest)?)?;
    if let Some(path) = &a.out {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        write_outcome_csv(&summary, BufWriter::new(file))?;
    }
    io.emit(&summary, || render_outcome_table(&summary))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct AnalyticReport {
    mu: f64,
    sigma: f64,
    interest: f64,
    renormalize: bool,
    expected_win: f64,
    expected_loss: f64,
    expected_return_ratio: f64,
    expected_net_payoff: f64,
}

fn cmd_analytic(a: AnalyticArgs, io: &mut Io<'_>) -> Result<i32> {
    let params = GaussianParams::new(a.mu, a.sigma)?;
    let spec = PayoffSpec::new(a.interest)?.with_renormalize(a.renormalize);
    let q = a.quad.config();
    let r = AnalyticReport {
        mu: a.mu,
        sigma: a.sigma,
        interest: a.interest,
        renormalize: a.renormalize,
        expected_win: expected_win(&spec, &params, &q)?,
        expected_loss: expected_loss(&spec, &params, &q)?,
        expected_return_ratio: expected_return_ratio(&spec, &params, &q)?,
        expected_net_payoff: expected_net_payoff(&spec, &params, &q)?,
    };
    io.emit(&r, || {
        format!(
            "mu                    = {}\nsigma                 = {}\ninterest              = {}\n\
             expected_win          = {}\nexpected_loss         = {}\n\
             expected_return_ratio = {}\nexpected_net_payoff   = {}\n",
            r.mu,
            r.sigma,
            r.interest,
            r.expected_win,
            r.expected_loss,
            r.expected_return_ratio,
            r.expected_net_payoff
        )
    })?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct BreakevenReport {
    mu: f64,
    sigma: f64,
    i_max: f64,
    tol: f64,
    breakeven_interest: f64,
    breakeven_percent: f64,
}

fn cmd_breakeven(a: BreakevenArgs, io: &mut Io<'_>) -> Result<i32> {
    let req = BreakevenRequest {
        params: GaussianParams::new(a.mu, a.sigma)?,
        i_max: a.i_max,
        tol: a.tol,
        quadrature: a.quad.config(),
    };
    let i = solve_breakeven(&req)?;
    let r = BreakevenReport {
        mu: a.mu,
        sigma: a.sigma,
        i_max: a.i_max,
        tol: a.tol,
        breakeven_interest: i,
        breakeven_percent: 100.0 * i,
    };
    io.emit(&r, || {
        format!("break-even interest: {:.4}% ({i})\n", r.breakeven_percent)
    })?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SweepReport {
    out: Option<String>,
    rows: usize,
    mu_count: usize,
    interest_count: usize,
    sigma: f64,
    monotone: bool,
}

fn cmd_sweep(a: SweepArgs, io: &mut Io<'_>) -> Result<i32> {
    let grid = sweep(
        &a.mu_range.values()?,
        &a.i_range.values()?,
        a.sigma,
        &a.quad.config(),
    )?;
    match &a.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Error::io(path, e))?;
            let mut w = BufWriter::new(file);
            write_sweep_csv(&grid, &mut w)?;
            w.flush().map_err(|e| Error::io(path, e))?;
        }
        None if !io.json => write_sweep_csv(&grid, &mut *io.out)?,
        None => {}
    }
    if a.out.is_some() || io.json {
        let r = SweepReport {
            out: a.out.as_ref().map(|p| p.display().to_string()),
            rows: grid.mu_values.len() * grid.i_values.len(),
            mu_count: grid.mu_values.len(),
            interest_count: grid.i_values.len(),
            sigma: grid.sigma,
            monotone: grid.is_monotone(),
        };
        io.emit(&r, || {
            format!(
                "wrote {} rows ({} mu × {} interest) to {}\n",
                r.rows,
                r.mu_count,
                r.interest_count,
                r.out.as_deref().unwrap_or("-")
            )
        })?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
#[serde(untagged)]
enum SimulateEcho {
    Gaussian {
        n_rounds: u64,
        seed: u64,
        params: GaussianParams,
        spec: PayoffSpec,
    },
    Discrete {
        n_rounds: u64,
        seed: u64,
        game: DiscreteGameConfig,
    },
}

#[derive(Serialize)]
struct SimulateReport {
    mode: Mode,
    tool_version: &'static str,
    config: SimulateEcho,
    result: SimulationResult,
}

fn cmd_simulate(a: SimulateArgs, io: &mut Io<'_>) -> Result<i32> {
    let workers = a
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let (config, result) = match a.mode {
        Mode::Gaussian => {
            let interest = parse_fraction(&a.interest).map_err(Error::InvalidConfig)?;
            let params = GaussianParams::new(a.mu, a.sigma)?;
            let spec = PayoffSpec::new(interest)?;
            let cfg = SimulationConfig {
                n_rounds: a.n,
                workers,
                ..SimulationConfig::new(params, spec, a.seed)
            };
            let result = simulate_investor(&cfg)?;
            (
                SimulateEcho::Gaussian {
                    n_rounds: a.n,
                    seed: a.seed,
                    params,
                    spec,
                },
                result,
            )
        }
        Mode::Discrete => {
            let k: u64 = a.interest.trim().parse().map_err(|_| {
                Error::InvalidConfig(format!(
                    "discrete interest must be whole coins, got {:?}",
                    a.interest
                ))
            })?;
            let game = DiscreteGameConfig::new(a.loan, a.competitor, k)?;
            let result = simulate_discrete(&game, a.n, a.seed, workers)?;
            (
                SimulateEcho::Discrete {
                    n_rounds: a.n,
                    seed: a.seed,
                    game,
                },
                result,
            )
        }
    };
    // Always JSON: the report is the artifact.
    io.json = true;
    io.emit(
        &SimulateReport {
            mode: a.mode,
            tool_version: report::TOOL_VERSION,
            config,
            result,
        },
        String::new,
    )?;
    Ok(EXIT_OK)
}

fn cmd_reproduce(a: ReproduceArgs, io: &mut Io<'_>) -> Result<i32> {
    let rep = report::reproduce(&a.out_dir, &a.quad.config())?;
    io.emit(&rep.manifest, || {
        let mut s = String::new();
        for o in &rep.manifest.outputs {
            s.push_str(&format!(
                "{:<22} {}\n",
                o.file,
                if o.ok {
                    format!("ok ({} bytes)", o.bytes)
                } else {
                    format!("FAILED: {}", o.error.as_deref().unwrap_or("empty"))
                }
            ));
        }
        for c in &rep.claims {
            s.push_str(&format!(
                "claim {:<30} {} (value {})\n",
                c.id,
                if c.pass { "pass" } else { "FAIL" },
                c.value
            ));
        }
        s.push_str(&format!("manifest: {}\n", rep.manifest_path.display()));
        s
    })?;
    Ok(if !rep.manifest.all_ok() {
        EXIT_IO
    } else if !rep.claims_pass() {
        EXIT_CLAIM_FAILED
    } else {
        EXIT_OK
    })
}
