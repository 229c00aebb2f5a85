//! CSV/JSON artifacts: coin tables, payoff curves, sweep surfaces, the
//! break-even curve, claim checks and the run manifest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::breakeven::{
    breakeven_curve, payoff_curve_samples, solve_breakeven, sweep, BreakevenRequest, CurveSeries,
    SweepGrid,
};
use crate::discrete::{
    discrete_breakeven, enumerate_outcomes, DiscreteGameConfig, EnumerationSummary,
};
use crate::error::{Error, Result};
use crate::gaussian::{expected_return_ratio, GaussianParams, PayoffSpec, DEFAULT_SIGMA};
use crate::quadrature::QuadratureConfig;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Inclusive arithmetic progression `start, start + step, …, stop`.
///
/// Values are rounded to 12 decimals so that e.g. `0.07` prints as `0.07`.
pub fn axis(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
        return Err(Error::InvalidConfig(format!(
            "empty range {start}:{stop}:{step}"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..n)
        .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

/// Default surface axes: mu 0..0.10 and interest 0.01..1.60, both by 0.01.
pub fn default_mu_axis() -> Vec<f64> {
    axis(0.0, 0.10, 0.01).expect("static range")
}

pub fn default_interest_axis() -> Vec<f64> {
    axis(0.01, 1.60, 0.01).expect("static range")
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

pub const OUTCOME_HEADER: [&str; 8] = [
    "iteration",
    "capital_loaned",
    "b_end",
    "c_end",
    "b_net",
    "a_win",
    "a_loss",
    "a_recovered",
];

/// Coin-game table, one row per outcome, then a `totals` row.
pub fn write_outcome_csv<W: Write>(summary: &EnumerationSummary, w: W) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(OUTCOME_HEADER)?;
    let loan = summary.config.loan_coins.to_string();
    for (i, row) in summary.rows.iter().enumerate() {
        out.write_record([
            (i + 1).to_string(),
            loan.clone(),
            row.b_end.to_string(),
            row.c_end.to_string(),
            row.b_net.to_string(),
            row.a_win.to_string(),
            row.a_loss.to_string(),
            row.a_recovered.to_string(),
        ])?;
    }
    out.write_record([
        "totals".to_string(),
        String::new(),
        String::new(),
        String::new(),
        summary.total_b_net.to_string(),
        summary.total_win.to_string(),
        summary.total_loss.to_string(),
        String::new(),
    ])?;
    out.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

/// Plain-text rendering of the coin table.
pub fn render_outcome_table(summary: &EnumerationSummary) -> String {
    let mut s = String::new();
    let cfg = &summary.config;
    s.push_str(&format!(
        "loan = {} coins, competitor = {} coins, interest = {} coins\n",
        cfg.loan_coins, cfg.competitor_coins, cfg.interest_coins
    ));
    s.push_str(&format!(
        "{:>9} {:>8} {:>8} {:>8} {:>6} {:>6} {:>6} {:>9}\n",
        "iteration", "loaned", "B end", "C end", "B net", "A win", "A loss", "A recov"
    ));
    for (i, r) in summary.rows.iter().enumerate() {
        s.push_str(&format!(
            "{:>9} {:>8} {:>8} {:>8} {:>6} {:>6} {:>6} {:>9}\n",
            i + 1,
            cfg.loan_coins,
            r.b_end,
            r.c_end,
            r.b_net,
            r.a_win,
            r.a_loss,
            r.a_recovered
        ));
    }
    s.push_str(&format!(
        "{:>9} {:>8} {:>8} {:>8} {:>6} {:>6} {:>6} {:>9}\n",
        "totals", "", "", "", summary.total_b_net, summary.total_win, summary.total_loss, ""
    ));
    s.push_str(&format!(
        "investor net = {} coins over {} outcomes (expected {} per round)\n",
        summary.net_total(),
        summary.outcome_count(),
        summary.expected_net
    ));
    s
}

pub const SWEEP_HEADER: [&str; 4] = ["mu", "interest", "sigma", "expected_return"];

/// Long-form sweep CSV.
pub fn write_sweep_csv<W: Write>(grid: &SweepGrid, w: W) -> Result<()> {
    let mut out = csv_writer(w);
    for rec in grid.records() {
        out.serialize(rec)?;
    }
    if grid.mu_values.is_empty() || grid.i_values.is_empty() {
        out.write_record(SWEEP_HEADER)?;
    }
    out.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

#[derive(Serialize)]
struct CurveRow {
    interest: f64,
    mu: f64,
    sigma: f64,
    x: f64,
    density: f64,
    uncapped: f64,
    capped: f64,
}

pub fn write_curves_csv<W: Write>(series: &[CurveSeries], w: W) -> Result<()> {
    let mut out = csv_writer(w);
    for s in series {
        for p in &s.points {
            out.serialize(CurveRow {
                interest: s.interest,
                mu: s.mu,
                sigma: s.sigma,
                x: p.x,
                density: p.density,
                uncapped: p.uncapped,
                capped: p.capped,
            })?;
        }
    }
    out.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

#[derive(Serialize)]
struct BreakevenRow {
    mu: f64,
    sigma: f64,
    breakeven_interest: Option<f64>,
}

pub fn write_breakeven_csv<W: Write>(curve: &[(f64, Option<f64>)], sigma: f64, w: W) -> Result<()> {
    let mut out = csv_writer(w);
    for &(mu, i) in curve {
        out.serialize(BreakevenRow {
            mu,
            sigma,
            breakeven_interest: i,
        })?;
    }
    out.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

/// One quantitative claim checked against the model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub criterion: String,
    pub value: f64,
    pub pass: bool,
}

fn claim(id: &str, statement: &str, criterion: &str, value: f64, pass: bool) -> Claim {
    Claim {
        id: id.into(),
        statement: statement.into(),
        criterion: criterion.into(),
        value,
        pass,
    }
}

pub fn evaluate_claims(q: &QuadratureConfig) -> Result<Vec<Claim>> {
    let t1 = enumerate_outcomes(&DiscreteGameConfig::new(5, 5, 1)?)?;
    let t2 = enumerate_outcomes(&DiscreteGameConfig::new(5, 5, 5)?)?;
    let mut symmetric = true;
    for l in 1..=20 {
        symmetric &= discrete_breakeven(l, l)? == Some(l);
    }
    let fair = GaussianParams::new(0.0, DEFAULT_SIGMA)?;
    let rigged = GaussianParams::new(0.05, DEFAULT_SIGMA)?;
    let be_fair = solve_breakeven(&BreakevenRequest {
        quadrature: *q,
        ..BreakevenRequest::new(fair)
    })?;
    let be_rigged = solve_breakeven(&BreakevenRequest {
        quadrature: *q,
        ..BreakevenRequest::new(rigged)
    })?;
    let ratio_15 = expected_return_ratio(&PayoffSpec::new(0.15)?, &rigged, q)?;

    Ok(vec![
        claim(
            "table1_totals",
            "1 coin interest on a 5 coin loan: investor wins 5, loses 15",
            "total_win == 5 && total_loss == 15 && total_b_net == 10",
            t1.net_total() as f64,
            t1.total_win == 5 && t1.total_loss == 15 && t1.total_b_net == 10,
        ),
        claim(
            "table2_totals",
            "5 coin interest on a 5 coin loan: investor wins 15, loses 15",
            "total_win == 15 && total_loss == 15 && total_b_net == 0",
            t2.net_total() as f64,
            t2.total_win == 15 && t2.total_loss == 15 && t2.total_b_net == 0,
        ),
        claim(
            "discrete_breakeven_symmetric",
            "with equal stakes the coin game breaks even at 100% interest",
            "discrete_breakeven(L, L) == L for L in 1..=20",
            discrete_breakeven(5, 5)?.map_or(0.0, |k| k as f64 / 5.0),
            symmetric,
        ),
        claim(
            "breakeven_mu0",
            "a fair game cannot break even below 100% interest",
            "|breakeven(mu=0, sigma=0.25) - 1.0| <= 0.01",
            be_fair,
            (be_fair - 1.0).abs() <= 0.01,
        ),
        claim(
            "ratio_i015_mu005",
            "with a 5% advantage the investor does not break even at 15% interest",
            "expected_return_ratio(I=0.15, mu=0.05, sigma=0.25) < 0",
            ratio_15,
            ratio_15 < 0.0,
        ),
        claim(
            "breakeven_mu005",
            "with a 5% advantage the break-even interest exceeds 15%",
            "breakeven(mu=0.05, sigma=0.25) > 0.15",
            be_rigged,
            be_rigged > 0.15,
        ),
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArtifactStatus {
    pub file: String,
    pub ok: bool,
    pub bytes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: String,
    pub parameters: serde_json::Value,
    pub seeds: Vec<u64>,
    pub outputs: Vec<ArtifactStatus>,
    pub duration_ms: f64,
}

impl RunManifest {
    pub fn all_ok(&self) -> bool {
        self.outputs.iter().all(|o| o.ok)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReproduceReport {
    pub manifest: RunManifest,
    pub claims: Vec<Claim>,
    pub manifest_path: PathBuf,
}

impl ReproduceReport {
    pub fn claims_pass(&self) -> bool {
        !self.claims.is_empty() && self.claims.iter().all(|c| c.pass)
    }
}

pub const ARTIFACTS: [&str; 8] = [
    "table1.csv",
    "table2.csv",
    "fig2_curves.csv",
    "fig3a_curves.csv",
    "fig3b_curves.csv",
    "fig4_surface.csv",
    "breakeven_curve.csv",
    "claims.json",
];

const CURVE_POINTS: usize = 201;

fn write_file(path: &Path, produce: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<u64> {
    let mut buf = Vec::new();
    produce(&mut buf)?;
    fs::write(path, &buf).map_err(|e| Error::io(path, e))?;
    Ok(buf.len() as u64)
}

/// Writes every table, curve, surface and claim file into `out_dir`, followed
/// by `manifest.json`. A failing artifact is recorded in the manifest and does
/// not stop the others.
pub fn reproduce(out_dir: &Path, q: &QuadratureConfig) -> Result<ReproduceReport> {
    let started = Instant::now();
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let sigma = DEFAULT_SIGMA;
    let fair = GaussianParams::new(0.0, sigma)?;
    let mut claims = Vec::new();

    let mut outputs = Vec::new();
    for name in ARTIFACTS {
        let path = out_dir.join(name);
        let written = write_file(&path, |buf| match name {
            "table1.csv" => write_outcome_csv(
                &enumerate_outcomes(&DiscreteGameConfig::new(5, 5, 1)?)?,
                buf,
            ),
            "table2.csv" => write_outcome_csv(
                &enumerate_outcomes(&DiscreteGameConfig::new(5, 5, 5)?)?,
                buf,
            ),
            "fig2_curves.csv" => {
                write_curves_csv(&payoff_curve_samples(&[0.2], &fair, CURVE_POINTS)?, buf)
            }
            "fig3a_curves.csv" => write_curves_csv(
                &payoff_curve_samples(&[0.01, 0.10, 0.20, 0.50], &fair, CURVE_POINTS)?,
                buf,
            ),
            "fig3b_curves.csv" => {
                let mut series = Vec::new();
                for mu in [0.0, 0.01, 0.05, 0.10] {
                    series.extend(payoff_curve_samples(
                        &[0.2],
                        &GaussianParams::new(mu, sigma)?,
                        CURVE_POINTS,
                    )?);
                }
                write_curves_csv(&series, buf)
            }
            "fig4_surface.csv" => write_sweep_csv(
                &sweep(&default_mu_axis(), &default_interest_axis(), sigma, q)?,
                buf,
            ),
            "breakeven_curve.csv" => write_breakeven_csv(
                &breakeven_curve(&default_mu_axis(), sigma, 2.0, 1e-6, q)?,
                sigma,
                buf,
            ),
            "claims.json" => {
                claims = evaluate_claims(q)?;
                serde_json::to_writer_pretty(&mut *buf, &claims)?;
                buf.push(b'\n');
                Ok(())
            }
            _ => unreachable!("unknown artifact {name}"),
        });
        outputs.push(match written {
            Ok(bytes) => ArtifactStatus {
                file: name.into(),
                ok: bytes > 0,
                bytes,
                error: None,
            },
            Err(e) => ArtifactStatus {
                file: name.into(),
                ok: false,
                bytes: 0,
                error: Some(e.to_string()),
            },
        });
    }

    let manifest = RunManifest {
        command: "reproduce".into(),
        tool_version: TOOL_VERSION.into(),
        parameters: serde_json::json!({
            "out_dir": out_dir.display().to_string(),
            "sigma": sigma,
            "mu_axis": default_mu_axis(),
            "interest_axis": { "start": 0.01, "stop": 1.60, "step": 0.01 },
            "curve_points": CURVE_POINTS,
            "quadrature": q,
        }),
        seeds: Vec::new(),
        outputs,
        duration_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    let manifest_path = out_dir.join("manifest.json");
    let mut json = serde_json::to_vec_pretty(&manifest)?;
    json.push(b'\n');
    fs::write(&manifest_path, json).map_err(|e| Error::io(&manifest_path, e))?;
    Ok(ReproduceReport {
        manifest,
        claims,
        manifest_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_endpoints() {
        let mu = default_mu_axis();
        assert_eq!(mu.len(), 11);
        assert_eq!(mu[7], 0.07);
        assert_eq!(mu[10], 0.1);
        let i = default_interest_axis();
        assert_eq!(i.len(), 160);
        assert_eq!(i[0], 0.01);
        assert_eq!(i[159], 1.6);
        assert_eq!(axis(0.0, 0.0, 1.0).unwrap(), vec![0.0]);
    }

    #[test]
    fn empty_axis_is_error() {
        assert!(axis(1.0, 0.0, 0.1).is_err());
        assert!(axis(0.0, 1.0, 0.0).is_err());
        assert!(axis(0.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn table_csv_layout() {
        let s = enumerate_outcomes(&DiscreteGameConfig::new(5, 5, 1).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_outcome_csv(&s, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(
            lines[0],
            "iteration,capital_loaned,b_end,c_end,b_net,a_win,a_loss,a_recovered"
        );
        assert_eq!(lines[2], "2,5,1,9,0,0,4,1");
        assert_eq!(lines[12], "totals,,,,10,5,15,");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn table_text_has_totals() {
        let s = enumerate_outcomes(&DiscreteGameConfig::new(5, 5, 5).unwrap()).unwrap();
        let text = render_outcome_table(&s);
        assert!(text.contains("investor net = 0 coins over 11 outcomes"));
    }
}
