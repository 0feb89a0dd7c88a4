//! The four figure data sets.

use std::fs;
use std::path::{Path, PathBuf};

use eitsqueeze_core::homodyne::Formula;
use eitsqueeze_core::params::linspace;
use eitsqueeze_core::ValidatedConfig;

use crate::tables::{spectrum_table, transmission_table};
use crate::AppError;

/// Detuning of the transmission scans (1/s).
pub const SCAN_OMEGA: f64 = 5.0e4;
pub const SCAN_POINTS: usize = 101;

/// Write fig3a/fig3b (spectra over the configured grid) and fig4a/fig4b
/// (|T| scans at [`SCAN_OMEGA`]). The phase mode comes from `config`.
pub fn reproduce_figures(
    config: &ValidatedConfig,
    outdir: &Path,
) -> Result<Vec<PathBuf>, AppError> {
    fs::create_dir_all(outdir).map_err(|e| AppError::io(outdir, e))?;
    let t_grid = linspace(0.0, 1.0, SCAN_POINTS);
    let mut written = Vec::with_capacity(4);
    for (name, formula) in [("fig3a", Formula::Mismatched), ("fig3b", Formula::Matched)] {
        let (table, err) = spectrum_table(config, formula, name);
        if let Some(e) = err {
            return Err(AppError::Compute(e));
        }
        written.push(write(outdir, name, &table.render())?);
    }
    for (name, formula) in [("fig4a", Formula::Mismatched), ("fig4b", Formula::Matched)] {
        let table = transmission_table(config, SCAN_OMEGA, formula, &t_grid, name)?;
        written.push(write(outdir, name, &table.render())?);
    }
    Ok(written)
}

fn write(dir: &Path, name: &str, body: &str) -> Result<PathBuf, AppError> {
    let path = dir.join(format!("{name}.csv"));
    fs::write(&path, body).map_err(|e| AppError::io(&path, e))?;
    Ok(path)
}
