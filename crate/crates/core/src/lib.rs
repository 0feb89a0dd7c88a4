//! Homodyne noise spectra of two-mode squeezed vacuum when one mode crosses a
//! lossy, dispersive EIT cell and the other a lossless fiber delay line.
//!
//! The crate is `no_std` (with `alloc`). All quantities are plain `f64` in SI
//! units; rates and detunings are angular quantities in 1/s. Noise powers are
//! normalized so that the vacuum level of the measured quadrature is 0.5.
//!
//! Module map:
//!
//! - [`params`]: physical constants, parameter sets, validation.
//! - [`opa`]: Bogoliubov coefficients of the cavity parametric amplifier.
//! - [`eit`]: susceptibility, complex transmission, fiber phase, window metrics.
//! - [`homodyne`]: exact and approximated quadrature variances, sweeps.
//! - [`epr`]: strong and weak EPR criteria.
//! - [`oracle`]: operator-level reference calculation of the same noise.

#![no_std]

extern crate alloc;

pub mod angle;
pub mod eit;
pub mod epr;
mod error;
pub mod homodyne;
pub mod opa;
pub mod oracle;
pub mod params;
pub mod point;
mod search;

pub use error::{Error, Result};
pub use params::{default_paper_params, validate, RunConfig, ValidatedConfig};

/// Vacuum noise level of the measured quadrature. Squeezing means strictly below this.
pub const VACUUM_NOISE: f64 = 0.5;
