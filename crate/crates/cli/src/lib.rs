//! Command-line front end for `eitsqueeze-core`: configuration files, CSV
//! output and figure data.

pub mod config;
pub mod csv;
pub mod figures;
pub mod grid;
pub mod tables;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use eitsqueeze_core::epr::{self, EprLevel};
use eitsqueeze_core::homodyne::Formula;
use eitsqueeze_core::params::{PhaseMode, RunConfig};
use eitsqueeze_core::{eit, oracle, validate, Error, ValidatedConfig};

use crate::config::{apply_overrides, dump_config, read_config, ConfigError};
use crate::csv::{Cell, CsvTable};
use crate::grid::GridSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Compute(#[from] Error),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl AppError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        AppError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => EXIT_CONFIG,
            AppError::Config(ConfigError::Read { .. }) => EXIT_IO,
            AppError::Config(_) => EXIT_CONFIG,
            AppError::Compute(e) if e.is_config_error() => EXIT_CONFIG,
            AppError::Compute(_) | AppError::CheckFailed(_) => EXIT_COMPUTE,
            AppError::Io { .. } => EXIT_IO,
        }
    }
}

fn stdout_err(e: io::Error) -> AppError {
    AppError::io(Path::new("<stdout>"), e)
}

#[derive(Debug, Parser)]
#[command(
    name = "eitsqueeze",
    version,
    about = "Squeezed-light noise through an EIT channel and a fiber delay line"
)]
struct Cli {
    /// Parameter file of `key = value` lines.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Override one parameter; repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Local-oscillator phase handling (default: from config, else optimized).
    #[arg(long, global = true, value_name = "fixed|optimized")]
    phase: Option<PhaseMode>,
    /// Variance formula.
    #[arg(long, global = true, value_name = "exact|mismatched|matched")]
    formula: Option<Formula>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Variance and EPR class over a detuning grid.
    Spectrum {
        /// Detuning grid start:stop:count in 1/s.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<GridSpec>,
    },
    /// Variance and EPR class versus |T| at a fixed detuning.
    TransmissionScan {
        #[arg(long, default_value_t = figures::SCAN_OMEGA, allow_hyphen_values = true)]
        omega: f64,
        /// |T| grid start:stop:count.
        #[arg(long = "t", default_value = "0:1:101")]
        t: GridSpec,
    },
    /// Smallest |T| reaching the weak and strong EPR criteria.
    Thresholds {
        #[arg(long, default_value_t = figures::SCAN_OMEGA, allow_hyphen_values = true)]
        omega: f64,
    },
    /// Width of the transparency window.
    Window {
        #[arg(long, default_value_t = 0.5)]
        level: f64,
    },
    /// Fiber length that cancels the EIT group delay.
    FiberMatch,
    /// Compare the closed forms with the mode-expansion calculation.
    OracleCheck {
        /// Default: ±2 window widths, 101 points.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<GridSpec>,
        /// Default: 8 phases in [0, π).
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<GridSpec>,
        /// Also write per-point values here.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Write fig3a.csv, fig3b.csv, fig4a.csv and fig4b.csv.
    Figures {
        #[arg(long, value_name = "DIR")]
        outdir: PathBuf,
    },
    /// Print the resolved parameters in config-file form.
    DumpParams,
}

impl Cli {
    fn raw_config(&self) -> Result<RunConfig, AppError> {
        let mut cfg = match &self.config {
            Some(p) => read_config(p)?,
            None => eitsqueeze_core::default_paper_params(),
        };
        apply_overrides(&mut cfg, &self.set)?;
        if let Some(mode) = self.phase {
            cfg.phase_mode = mode;
        }
        Ok(cfg)
    }

    fn validated(&self) -> Result<ValidatedConfig, AppError> {
        Ok(validate(self.raw_config()?)?)
    }
}

/// Run with explicit arguments (including the program name) and streams.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_CONFIG;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), AppError> {
    match &cli.command {
        Command::Spectrum { omega } => {
            let mut raw = cli.raw_config()?;
            if let Some(g) = omega {
                raw.omega_grid = g.points();
            }
            let config = validate(raw)?;
            let formula = cli.formula.unwrap_or(Formula::Exact);
            let (table, failure) = tables::spectrum_table(&config, formula, "spectrum");
            table.write_to(out).map_err(stdout_err)?;
            match failure {
                Some(e) => Err(e.into()),
                None => Ok(()),
            }
        }
        Command::TransmissionScan { omega, t } => {
            let config = cli.validated()?;
            let formula = cli.formula.unwrap_or(Formula::Exact);
            let table = tables::transmission_table(
                &config,
                *omega,
                formula,
                &t.points(),
                "transmission-scan",
            )?;
            table.write_to(out).map_err(stdout_err)
        }
        Command::Thresholds { omega } => {
            let config = cli.validated()?;
            let formulas = match cli.formula {
                Some(f) => vec![f],
                None => vec![Formula::Mismatched, Formula::Matched],
            };
            writeln!(out, "omega = {omega:e}").map_err(stdout_err)?;
            for f in formulas {
                for level in [EprLevel::Weak, EprLevel::Strong] {
                    let value = match epr::threshold_scan(&config, *omega, f, level) {
                        Ok(t) => format!("{t:.6}"),
                        Err(Error::NeverSatisfied) => "unreachable".to_string(),
                        Err(e) => return Err(e.into()),
                    };
                    writeln!(out, "{f} {level}_threshold = {value}").map_err(stdout_err)?;
                }
            }
            Ok(())
        }
        Command::Window { level } => {
            let config = cli.validated()?;
            if !(*level > 0.0 && *level < 1.0) {
                return Err(AppError::Usage(format!(
                    "--level {level}: must lie in (0, 1)"
                )));
            }
            let width = eit::window_width(config.eit(), *level)?;
            let center = eit::transmission(config.eit(), 0.0)?.t_mag;
            writeln!(out, "level = {level}").map_err(stdout_err)?;
            writeln!(out, "center_t_mag = {center:.6}").map_err(stdout_err)?;
            writeln!(out, "window_width = {width:.6e} 1/s").map_err(stdout_err)
        }
        Command::FiberMatch => {
            let config = cli.validated()?;
            let l_f = eit::matched_fiber_length(config.eit(), config.fiber())?;
            let matched = config.with_fiber_length(l_f)?;
            let mut worst: f64 = 0.0;
            for w in eitsqueeze_core::params::linspace(-2.0e5, 2.0e5, 401) {
                let ch = eit::channel_pair(matched.eit(), matched.fiber(), w)?;
                worst = worst.max(ch.residual_delay_phase().abs());
            }
            writeln!(
                out,
                "group_delay = {:.6e} s",
                eit::group_delay(config.eit())
            )
            .map_err(stdout_err)?;
            writeln!(out, "matched_fiber_length = {l_f:.6e} m").map_err(stdout_err)?;
            writeln!(out, "configured_fiber_length = {:e} m", config.fiber().l_f)
                .map_err(stdout_err)?;
            writeln!(out, "max_residual_phase(|omega|<=2e5) = {worst:.3e} rad").map_err(stdout_err)
        }
        Command::OracleCheck { omega, phi, csv } => {
            oracle_check(cli, *omega, *phi, csv.as_deref(), out, err)
        }
        Command::Figures { outdir } => {
            let config = cli.validated()?;
            for path in figures::reproduce_figures(&config, outdir)? {
                writeln!(err, "wrote {}", path.display()).map_err(stdout_err)?;
            }
            Ok(())
        }
        Command::DumpParams => {
            let config = cli.validated()?;
            write!(out, "{}", dump_config(config.get())).map_err(stdout_err)
        }
    }
}

fn oracle_check(
    cli: &Cli,
    omega: Option<GridSpec>,
    phi: Option<GridSpec>,
    csv: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), AppError> {
    let config = cli.validated()?;
    let omegas = match omega {
        Some(g) => g.points(),
        None => {
            let span = 2.0 * eit::window_width(config.eit(), oracle::WINDOW_LEVEL)?;
            eitsqueeze_core::params::linspace(-span, span, 101)
        }
    };
    let phis = match phi {
        Some(g) => g.points(),
        None => (0..8)
            .map(|k| k as f64 * std::f64::consts::PI / 8.0)
            .collect(),
    };
    let report = oracle::cross_check(&config, &omegas, &phis)?;
    for d in report.deviations() {
        writeln!(
            out,
            "{} max_abs_deviation = {:.3e} at omega = {:e}, phi_lo = {:.4} ({} points, tolerance {:e}) {}",
            d.formula,
            d.max_abs,
            d.at_omega,
            d.at_phi,
            d.points,
            d.tolerance,
            if d.pass() { "PASS" } else { "FAIL" }
        )
        .map_err(stdout_err)?;
    }
    if let Some(path) = csv {
        let mut table = CsvTable::new(&[
            "omega",
            "phi_lo",
            "oracle",
            "oracle_matched",
            "exact",
            "mismatched",
            "matched",
            "in_window",
        ]);
        tables::parameter_header(&mut table, &config, "oracle-check", Formula::Exact);
        for r in &report.rows {
            table.push(vec![
                r.omega.into(),
                r.phi_lo.into(),
                r.oracle.into(),
                r.oracle_matched.into(),
                r.exact.into(),
                r.mismatched.into(),
                r.matched.into(),
                Cell::Text(if r.in_window { "yes" } else { "no" }),
            ]);
        }
        std::fs::write(path, table.render()).map_err(|e| AppError::io(path, e))?;
        writeln!(err, "wrote {}", path.display()).map_err(stdout_err)?;
    }
    if report.pass() {
        Ok(())
    } else {
        Err(AppError::CheckFailed(
            "closed forms disagree with the mode expansion".into(),
        ))
    }
}
