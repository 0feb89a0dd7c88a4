//! Flat `key = value` configuration files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use eitsqueeze_core::params::{default_paper_params, RunConfig};
use eitsqueeze_core::{validate, ValidatedConfig};
use sha2::{Digest, Sha256};

/// Recognized keys, in dump order.
pub const KEYS: [&str; 14] = [
    "gamma",
    "kappa",
    "n_density",
    "mu_ac",
    "omega_c",
    "gamma_b",
    "gamma_c",
    "z",
    "omega0",
    "n_f",
    "v_f",
    "l_f",
    "phi_lo",
    "phase_mode",
];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    pub message: String,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("--set {assignment}: {message}")]
    Override { assignment: String, message: String },
    #[error(transparent)]
    Invalid(#[from] eitsqueeze_core::Error),
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn field<'a>(cfg: &'a mut RunConfig, key: &str) -> Option<&'a mut f64> {
    Some(match key {
        "gamma" => &mut cfg.opa.gamma,
        "kappa" => &mut cfg.opa.kappa,
        "n_density" => &mut cfg.eit.n_density,
        "mu_ac" => &mut cfg.eit.mu_ac,
        "omega_c" => &mut cfg.eit.omega_c,
        "gamma_b" => &mut cfg.eit.gamma_b,
        "gamma_c" => &mut cfg.eit.gamma_c,
        "z" => &mut cfg.eit.z,
        "omega0" => &mut cfg.eit.omega0,
        "n_f" => &mut cfg.fiber.n_f,
        "v_f" => &mut cfg.fiber.v_f,
        "l_f" => &mut cfg.fiber.l_f,
        "phi_lo" => &mut cfg.phi_lo,
        _ => return None,
    })
}

/// Set one key from its textual value.
pub fn assign(cfg: &mut RunConfig, key: &str, value: &str) -> Result<(), String> {
    if key == "phase_mode" {
        cfg.phase_mode = value.parse()?;
        return Ok(());
    }
    let slot = field(cfg, key).ok_or_else(|| format!("unknown key `{key}`"))?;
    *slot = value
        .parse()
        .map_err(|_| format!("`{value}` is not a number"))?;
    Ok(())
}

fn split_assignment(s: &str) -> Result<(&str, &str), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| "expected `key = value`".to_string())?;
    let (k, v) = (k.trim(), v.trim());
    if k.is_empty() || v.is_empty() {
        return Err("expected `key = value`".to_string());
    }
    Ok((k, v))
}

/// Parse a document on top of the built-in defaults, without validating.
pub fn parse_config(text: &str) -> Result<RunConfig, ParseError> {
    let mut cfg = default_paper_params();
    let mut seen = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| ParseError { line, message };
        let (key, value) = split_assignment(content).map_err(err)?;
        if seen.contains(&key) {
            return Err(err(format!("duplicate key `{key}`")));
        }
        assign(&mut cfg, key, value).map_err(err)?;
        seen.push(key);
    }
    Ok(cfg)
}

/// Parse and validate.
pub fn load_config(text: &str) -> Result<ValidatedConfig, ConfigError> {
    Ok(validate(parse_config(text)?)?)
}

/// Apply `key=value` overrides in order.
pub fn apply_overrides<S: AsRef<str>>(cfg: &mut RunConfig, sets: &[S]) -> Result<(), ConfigError> {
    for s in sets {
        let s = s.as_ref();
        let fail = |message: String| ConfigError::Override {
            assignment: s.to_string(),
            message,
        };
        let (k, v) = split_assignment(s).map_err(fail)?;
        assign(cfg, k, v).map_err(fail)?;
    }
    Ok(())
}

/// Read and parse a config file.
pub fn read_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(parse_config(&text)?)
}

fn value_of(cfg: &RunConfig, key: &str) -> String {
    if key == "phase_mode" {
        return cfg.phase_mode.as_str().to_string();
    }
    let mut c = cfg.clone();
    // shortest representation that parses back to the same bits
    format!("{:e}", *field(&mut c, key).expect("known key"))
}

/// Serialize every key. `parse_config(dump_config(c))` reproduces `c` exactly.
pub fn dump_config(cfg: &RunConfig) -> String {
    let mut out = String::new();
    for key in KEYS {
        writeln!(out, "{key} = {}", value_of(cfg, key)).unwrap();
    }
    out
}

/// SHA-256 of the dumped parameters, hex encoded.
pub fn config_hash(cfg: &RunConfig) -> String {
    let digest = Sha256::digest(dump_config(cfg).as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        write!(s, "{b:02x}").unwrap();
        s
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use eitsqueeze_core::params::PhaseMode;

    #[test]
    fn empty_document_gives_defaults() {
        assert_eq!(parse_config("").unwrap(), default_paper_params());
        assert_eq!(
            parse_config("# nothing\n\n   \n").unwrap(),
            default_paper_params()
        );
    }

    #[test]
    fn single_override() {
        let cfg = parse_config("kappa = 1.0e7").unwrap();
        let mut want = default_paper_params();
        want.opa.kappa = 1.0e7;
        assert_eq!(cfg, want);
    }

    #[test]
    fn malformed_number_reports_line() {
        let err = parse_config("# header\ngamma = 4e7\nkappa = abc\n").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn unknown_and_duplicate_keys() {
        assert_eq!(parse_config("foo = 1").unwrap_err().line, 1);
        assert_eq!(parse_config("z = 1\nz = 2").unwrap_err().line, 2);
        assert_eq!(parse_config("kappa 3").unwrap_err().line, 1);
    }

    #[test]
    fn trailing_comments_and_phase_mode() {
        let cfg = parse_config("phase_mode = fixed # use phi_lo\nphi_lo = 1.5").unwrap();
        assert_eq!(cfg.phase_mode, PhaseMode::Fixed);
        assert_eq!(cfg.phi_lo, 1.5);
    }

    #[test]
    fn invalid_values_surface_after_parse() {
        assert!(matches!(
            load_config("kappa = 2e7"),
            Err(ConfigError::Invalid(_))
        ));
    }

    #[test]
    fn overrides_apply_in_order() {
        let mut cfg = default_paper_params();
        apply_overrides(&mut cfg, &["l_f=100", "l_f = 200"]).unwrap();
        assert_eq!(cfg.fiber.l_f, 200.0);
        assert!(apply_overrides(&mut cfg, &["l_f"]).is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = default_paper_params();
        let mut b = a.clone();
        b.phi_lo = 2.5;
        assert_eq!(config_hash(&a), config_hash(&a.clone()));
        assert_ne!(config_hash(&a), config_hash(&b));
        assert_eq!(config_hash(&a).len(), 64);
    }
}
