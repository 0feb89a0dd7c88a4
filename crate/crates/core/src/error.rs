use alloc::vec::Vec;
use core::fmt;

use crate::params::InvalidParam;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{}", ParamList(.0))]
    InvalidParams(Vec<InvalidParam>),

    #[error(
        "|chi| = {magnitude:e} at omega = {omega:e} 1/s exceeds the weak-susceptibility limit"
    )]
    AbsorptionDominates { omega: f64, magnitude: f64 },

    #[error("Bogoliubov denominator vanishes at omega = {omega:e} 1/s")]
    DegenerateDenominator { omega: f64 },

    #[error("sideband parity of chi broken beyond 1% at omega = {omega:e} 1/s")]
    OutsideValidity { omega: f64 },

    #[error("group-delay slope mismatch: analytic {analytic:e}, finite difference {numeric:e}")]
    DerivativeMismatch { analytic: f64, numeric: f64 },

    #[error("transmission at line center ({center}) does not exceed level {level}")]
    LevelUnreachable { level: f64, center: f64 },

    #[error("no squeezing at line center (variance {variance})")]
    NoSqueezing { variance: f64 },

    #[error("no band edge found below omega = {limit:e} 1/s")]
    BandEdgeNotFound { limit: f64 },

    #[error("conjugate quadrature variances differ: {var_x} vs {var_p}")]
    ConjugateMismatch { var_x: f64, var_p: f64 },

    #[error("criterion never satisfied, even at unit transmission")]
    NeverSatisfied,

    #[error("variance is not monotone in transmission at omega = {omega:e} 1/s")]
    NonMonotone { omega: f64 },
}

impl Error {
    /// True for errors that come from bad input parameters rather than from
    /// a computation leaving its domain of validity.
    pub fn is_config_error(&self) -> bool {
        matches!(self, Error::InvalidParams(_))
    }
}

struct ParamList<'a>(&'a [InvalidParam]);

impl fmt::Display for ParamList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid parameters:")?;
        for p in self.0 {
            write!(f, " [{p}]")?;
        }
        Ok(())
    }
}
