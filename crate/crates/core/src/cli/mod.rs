//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage and configuration errors, 2 for
//! numerical failures and failed validation.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::measures::{state_measures, MeasurePoint};
use crate::spectrum::{eigenvalue_default, find_crossing_bc, BoundarySpec, FieldStrength, LevelId, DEFAULT_ENERGY_TOL};
use crate::validation::{run_criterion, CriterionOutcome};
use crate::wavefn::{build_position, build_state};

pub mod config;
pub mod output;

pub use config::{Command, FieldGrid, Format, RunConfig, Settings, Space};
pub use output::{Meta, Table};

#[derive(Debug, Parser)]
#[command(
    name = "qdinfo",
    version,
    about = "Spectra, wavefunctions and information measures of a circular quantum dot in a magnetic field"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Energies of the requested levels over a field grid.
    Spectrum(CommonArgs),
    /// Radial position or momentum functions sampled on a grid.
    Wavefunction(CommonArgs),
    /// Information measures at explicit field values.
    Measures(CommonArgs),
    /// Information measures over a field grid.
    Sweep(CommonArgs),
    /// Fields where level (n, m) meets (n, m-1).
    Crossings(CommonArgs),
    /// Run the regression suite.
    Validate(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON file with settings; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub settings: Settings,
}

impl CliCommand {
    fn split(self) -> (Command, CommonArgs) {
        match self {
            CliCommand::Spectrum(a) => (Command::Spectrum, a),
            CliCommand::Wavefunction(a) => (Command::Wavefunction, a),
            CliCommand::Measures(a) => (Command::Measures, a),
            CliCommand::Sweep(a) => (Command::Sweep, a),
            CliCommand::Crossings(a) => (Command::Crossings, a),
            CliCommand::Validate(a) => (Command::Validate, a),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct SpectrumRow {
    bc: BoundarySpec,
    n: u32,
    m: i32,
    b_bar: f64,
    e_bar: f64,
    e_bbar: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
struct CrossingRow {
    bc: BoundarySpec,
    n: u32,
    m: i32,
    m_partner: i32,
    b_star: f64,
    e_bar: f64,
    e_bbar: f64,
}

/// Every `(bc, level, b)` in output order.
fn jobs(cfg: &RunConfig) -> Vec<(BoundarySpec, LevelId, f64)> {
    let mut out = Vec::new();
    for &bc in &cfg.bcs {
        for &level in &cfg.levels {
            for &b in &cfg.b_values {
                out.push((bc, level, b));
            }
        }
    }
    out
}

fn spectrum(cfg: &RunConfig) -> Result<Table> {
    let rows: Vec<SpectrumRow> = jobs(cfg)
        .par_iter()
        .map(|&(bc, level, b)| {
            let e = eigenvalue_default(bc, level, FieldStrength::new(b)?).map_err(|e| e.at(level.n, level.m, b))?;
            Ok(SpectrumRow {
                bc,
                n: level.n,
                m: level.m,
                b_bar: b,
                e_bar: e.e_bar,
                e_bbar: e.e_bbar,
            })
        })
        .collect::<Result<_>>()?;
    Table::from_records(&rows)
}

fn measures(cfg: &RunConfig) -> Result<Table> {
    let rows: Vec<MeasurePoint> = jobs(cfg)
        .par_iter()
        .map(|&(bc, level, b)| state_measures(bc, level, b, &cfg.quad))
        .collect::<Result<_>>()?;
    Table::from_records(&rows)
}

fn crossings(cfg: &RunConfig) -> Result<Table> {
    if let Some(l) = cfg.levels.iter().find(|l| l.m > 0) {
        return Err(Error::Config(format!(
            "crossings pair (n, m) with (n, m-1) for m <= 0, got {l}"
        )));
    }
    let mut rows = Vec::new();
    for &bc in &cfg.bcs {
        for &level in &cfg.levels {
            let c = find_crossing_bc(bc, level.n, level.m, 1e-10)?;
            rows.push(CrossingRow {
                bc,
                n: c.n,
                m: c.m,
                m_partner: c.m - 1,
                b_star: c.b_star,
                e_bar: c.e_bar,
                e_bbar: c.e_bbar,
            });
        }
    }
    Table::from_records(&rows)
}

fn column_name(bc: BoundarySpec, level: LevelId, b: f64) -> String {
    format!("{bc}_n{}_m{}_b{b}", level.n, level.m)
}

fn wavefunction(cfg: &RunConfig) -> Result<Table> {
    let items = jobs(cfg);
    let states = items
        .par_iter()
        .map(|&(bc, level, b)| {
            let run = || {
                let e = eigenvalue_default(bc, level, FieldStrength::new(b)?)?;
                match cfg.space {
                    Space::Position => build_position(&e, &cfg.quad),
                    Space::Momentum => build_state(&e, &cfg.quad),
                }
            };
            run().map_err(|e| e.at(level.n, level.m, b))
        })
        .collect::<Result<Vec<_>>>()?;
    let (axis, top) = match cfg.space {
        Space::Position => ("r_bar", 1.0),
        Space::Momentum => ("k_bar", cfg.k_max),
    };
    let mut columns = vec![axis.to_string()];
    columns.extend(items.iter().map(|&(bc, level, b)| column_name(bc, level, b)));
    let last = (cfg.points - 1) as f64;
    let rows = (0..cfg.points)
        .map(|i| {
            let t = if i == cfg.points - 1 {
                top
            } else {
                top * i as f64 / last
            };
            let mut row = vec![json!(t)];
            for s in &states {
                let v = match cfg.space {
                    Space::Position => s.position(t),
                    Space::Momentum => s.momentum(t)?,
                };
                row.push(json!(v));
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(Table { columns, rows })
}

fn validate(cfg: &RunConfig) -> Result<(Table, bool)> {
    let outcomes: Vec<CriterionOutcome> = cfg
        .criteria
        .iter()
        .map(|&id| {
            let o = run_criterion(id);
            eprintln!("{} {:>2}  {}", if o.passed { "PASS" } else { "FAIL" }, o.id, o.title);
            o
        })
        .collect();
    let all = outcomes.iter().all(|o| o.passed);
    Ok((Table::from_records(&outcomes)?, all))
}

fn meta(cfg: &RunConfig) -> Meta {
    Meta {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        schema: output::SCHEMA_VERSION,
        command: cfg.command.as_str(),
        config: serde_json::to_value(&cfg.settings).unwrap_or(Value::Null),
        tolerances: json!({
            "energy_tol": DEFAULT_ENERGY_TOL,
            "quad_rel_tol": cfg.quad.rel_tol(),
            "quad_abs_tol": cfg.quad.abs_tol(),
        }),
    }
}

/// Computes and writes the output of one command. Returns `false` when
/// validation ran and some criterion failed.
pub fn run(cfg: &RunConfig) -> Result<bool> {
    let (table, ok) = match cfg.command {
        Command::Spectrum => (spectrum(cfg)?, true),
        Command::Wavefunction => (wavefunction(cfg)?, true),
        Command::Measures | Command::Sweep => (measures(cfg)?, true),
        Command::Crossings => (crossings(cfg)?, true),
        Command::Validate => validate(cfg)?,
    };
    let meta = meta(cfg);
    match &cfg.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            output::write_table(&table, &meta, cfg.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            output::write_table(&table, &meta, cfg.format, stdout.lock())?;
        }
    }
    Ok(ok)
}

fn exit_code(e: &Error) -> ExitCode {
    if e.is_config() {
        ExitCode::from(1)
    } else {
        ExitCode::from(2)
    }
}

/// Parse the process arguments and run.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (command, args) = cli.command.split();
    let cfg = match RunConfig::resolve(command, args.settings, args.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("qdinfo: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(t) = cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("qdinfo: cannot start {t} threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("qdinfo: validation failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("qdinfo: {e}");
            exit_code(&e)
        }
    }
}
