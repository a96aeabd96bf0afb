//! `qcar` command-line driver.
//!
//! Flags and config documents both become a [`RunConfig`]; a flag wins over
//! the same key in the document. Everything downstream sees only the merged
//! config, so the two input routes cannot drift apart.

pub mod config;
pub mod error;
pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use qcar_core::{compare, extract_loop, metrics, run_matrix, simulate, InputMode, MetricOptions, SignalPreset};

pub use config::{canonical_model, Resolved, RunConfig};
pub use error::{CliError, ConfigError};
use output::GridRow;

#[derive(Debug, Parser)]
#[command(
    name = "qcar",
    version,
    about = "Quarter-car suspension simulator with MR damper models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one scenario and write the time series as CSV
    Simulate(RunArgs),
    /// Run a model x signal grid and tabulate metrics
    Compare(CompareArgs),
    /// Write the force loop over the last excitation periods of a sine run
    Loop(RunArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// passive, bingham, dahl, lugre, boucwen (or table2..table5)
    #[arg(long)]
    pub model: Option<String>,
    /// noise, step, sine-low, sine-high, sine-noise
    #[arg(long)]
    pub signal: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Comma-separated models [default: all five]
    #[arg(long = "models", visible_alias = "model", value_delimiter = ',')]
    pub models: Vec<String>,
    /// Comma-separated signal presets [default: all five]
    #[arg(long = "signals", visible_alias = "signal", value_delimiter = ',')]
    pub signals: Vec<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON run configuration; flags override its keys
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Integration step [s]
    #[arg(long)]
    pub dt: Option<f64>,
    /// Simulated time [s]
    #[arg(long)]
    pub duration: Option<f64>,
    /// Seed of the noise signals
    #[arg(long)]
    pub seed: Option<u64>,
    /// relative or sprung-absolute
    #[arg(long, value_parser = parse_input_mode)]
    pub input_mode: Option<InputMode>,
    /// Settling band as a fraction of the step height
    #[arg(long)]
    pub band: Option<f64>,
    /// Number of excitation periods in a loop
    #[arg(long)]
    pub periods: Option<u32>,
}

fn parse_input_mode(s: &str) -> Result<InputMode, String> {
    serde_json::from_value(serde_json::Value::String(s.to_owned()))
        .map_err(|_| format!("unknown input mode `{s}` (expected relative or sprung-absolute)"))
}

impl CommonArgs {
    fn merged(&self, model: Option<String>, signal: Option<String>) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        Ok(base.overlay(RunConfig {
            model,
            signal,
            dt: self.dt,
            duration: self.duration,
            seed: self.seed,
            input_mode: self.input_mode,
            out: self.out.clone(),
            band: self.band,
            periods: self.periods,
            ..Default::default()
        }))
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(a) => cmd_simulate(&a.common.merged(a.model, a.signal)?),
        Command::Loop(a) => cmd_loop(&a.common.merged(a.model, a.signal)?),
        Command::Compare(a) => {
            let cfg = a.common.merged(None, None)?;
            let models = match (a.models.is_empty(), &cfg.model) {
                (false, _) => a
                    .models
                    .iter()
                    .map(|m| canonical_model(m))
                    .collect::<Result<Vec<_>, _>>()?,
                (true, Some(m)) => vec![canonical_model(m)?],
                (true, None) => vec!["passive", "bingham", "dahl", "lugre", "boucwen"],
            };
            let signals = match (a.signals.is_empty(), &cfg.signal) {
                (false, _) => a.signals.iter().map(|s| preset(s)).collect::<Result<Vec<_>, _>>()?,
                (true, Some(s)) => vec![preset(s)?],
                (true, None) => SignalPreset::ALL.to_vec(),
            };
            cmd_compare(&cfg, &models, &signals)
        }
    }
}

fn preset(name: &str) -> Result<SignalPreset, CliError> {
    name.parse()
        .map_err(|reason| ConfigError::Invalid { key: "signal", reason }.into())
}

fn emit(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> csv::Result<()>) -> Result<(), CliError> {
    let shown = path.unwrap_or(Path::new("<stdout>")).to_owned();
    let wrap = |e: csv::Error| CliError::Write {
        path: shown.clone(),
        source: io::Error::other(e),
    };
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|source| CliError::Write {
                path: p.to_owned(),
                source,
            })?;
            let mut w = BufWriter::new(file);
            f(&mut w).map_err(wrap)?;
            w.flush().map_err(|source| CliError::Write {
                path: p.to_owned(),
                source,
            })
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            match f(&mut w) {
                // reader went away (`| head`); nothing left to report
                Err(e) if matches!(e.kind(), csv::ErrorKind::Io(io) if io.kind() == io::ErrorKind::BrokenPipe) => {
                    Ok(())
                }
                r => r.map_err(wrap),
            }
        }
    }
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<(), CliError> {
    let r = cfg.resolve()?;
    let ts = simulate(&r.scenario)?;
    emit(r.out.as_deref(), |w| output::write_series(w, &ts))
}

pub fn cmd_loop(cfg: &RunConfig) -> Result<(), CliError> {
    let r = cfg.resolve()?;
    let f = r.scenario.signal.frequency().ok_or_else(|| {
        CliError::Usage(format!(
            "loop needs a sine signal (sine-low, sine-high or sine-noise), got `{}`",
            r.signal
        ))
    })?;
    let ts = simulate(&r.scenario)?;
    let lp = extract_loop(&ts, r.periods, f)?;
    emit(r.out.as_deref(), |w| output::write_loop(w, &lp))
}

type Cell = (&'static str, SignalPreset);

/// Runs every `(model, signal)` cell in enumeration order. Ratios are taken
/// against the passive cell of the same signal.
pub fn compare_grid(
    cfg: &RunConfig,
    models: &[&'static str],
    signals: &[SignalPreset],
) -> Result<Vec<GridRow>, CliError> {
    if models.is_empty() || signals.is_empty() {
        return Err(CliError::Usage(
            "compare needs at least one model and one signal".into(),
        ));
    }
    cfg.check_damper_keys(models)?;
    let mut cells = Vec::with_capacity(models.len() * signals.len());
    let mut band = None;
    for &m in models {
        for &s in signals {
            let r = cfg.resolve_cell(m, s)?;
            band = Some(r.band);
            cells.push(((m, s), r.scenario));
        }
    }
    let opts = MetricOptions {
        band: band.unwrap_or(qcar_core::analysis::DEFAULT_BAND),
        ..Default::default()
    };
    let outcomes: Vec<(Cell, Result<qcar_core::Metrics, String>)> = run_matrix(&cells)
        .into_iter()
        .map(|(k, res)| {
            let m = res
                .map_err(|e| e.to_string())
                .and_then(|ts| metrics(&ts, &opts).map_err(|e| e.to_string()));
            (k, m)
        })
        .collect();

    let mut rows = Vec::with_capacity(outcomes.len());
    for ((model, signal), m) in &outcomes {
        let outcome = match m {
            Ok(m) => {
                let peers: Vec<(String, qcar_core::Metrics)> = outcomes
                    .iter()
                    .filter(|((_, s), r)| s == signal && r.is_ok())
                    .map(|((name, _), r)| (name.to_string(), *r.as_ref().unwrap()))
                    .collect();
                let ratio = compare(&peers).get(model).and_then(|row| row.rms_ratio);
                Ok((*m, ratio))
            }
            Err(e) => Err(e.clone()),
        };
        rows.push(GridRow {
            model,
            signal: signal.name(),
            outcome,
        });
    }
    Ok(rows)
}

pub fn cmd_compare(cfg: &RunConfig, models: &[&'static str], signals: &[SignalPreset]) -> Result<(), CliError> {
    let rows = compare_grid(cfg, models, signals)?;
    if let Some(path) = &cfg.out {
        emit(Some(path), |w| output::write_grid(w, &rows))?;
    }
    print!("{}", output::grid_text(&rows));
    let failed = rows.iter().filter(|r| r.outcome.is_err()).count();
    if failed > 0 {
        return Err(CliError::PartialGrid {
            failed,
            total: rows.len(),
        });
    }
    Ok(())
}
