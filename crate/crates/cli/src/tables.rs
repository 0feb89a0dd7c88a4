//! CSV tables for sweeps, with the parameter header.

use eitsqueeze_core::homodyne::{self, Formula};
use eitsqueeze_core::{Error, ValidatedConfig};

use crate::config::{config_hash, dump_config};
use crate::csv::{Cell, CsvTable};

pub const SPECTRUM_COLUMNS: [&str; 4] = ["omega", "t_mag", "variance", "classification"];
pub const TRANSMISSION_COLUMNS: [&str; 3] = ["t_mag", "variance", "classification"];

/// Records the command, the formula, every parameter and the config hash.
pub fn parameter_header(
    table: &mut CsvTable,
    config: &ValidatedConfig,
    title: &str,
    formula: Formula,
) {
    table.meta("eitsqueeze", title);
    table.meta("formula", formula.as_str());
    table.meta("config_hash", config_hash(config.get()));
    for line in dump_config(config.get()).lines() {
        if let Some((k, v)) = line.split_once(" = ") {
            table.meta(k, v);
        }
    }
}

/// Sweep over the configured Ω grid. Rows that fail keep their place with
/// NaN values; the first failure is returned alongside the table.
pub fn spectrum_table(
    config: &ValidatedConfig,
    formula: Formula,
    title: &str,
) -> (CsvTable, Option<Error>) {
    let mut table = CsvTable::new(&SPECTRUM_COLUMNS);
    parameter_header(&mut table, config, title, formula);
    let mut first_err = None;
    for row in homodyne::sweep_spectrum(config, formula) {
        match row.point {
            Ok(p) => table.push(vec![
                row.omega.into(),
                p.t_mag.into(),
                p.variance.variance.into(),
                p.classification.level.as_str().into(),
            ]),
            Err(e) => {
                first_err.get_or_insert(e);
                table.push(vec![
                    row.omega.into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    Cell::Text("none"),
                ]);
            }
        }
    }
    (table, first_err)
}

pub fn transmission_table(
    config: &ValidatedConfig,
    omega: f64,
    formula: Formula,
    t_grid: &[f64],
    title: &str,
) -> Result<CsvTable, Error> {
    let rows = homodyne::sweep_transmission(config, omega, formula, t_grid)?;
    let mut table = CsvTable::new(&TRANSMISSION_COLUMNS);
    parameter_header(&mut table, config, title, formula);
    table.meta("omega", format!("{omega:e}"));
    for r in rows {
        table.push(vec![
            r.t_mag.into(),
            r.variance.variance.into(),
            r.classification.level.as_str().into(),
        ]);
    }
    Ok(table)
}
