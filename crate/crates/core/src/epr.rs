//! Strong and weak EPR criteria on the joint quadratures X_a − X_b and P_a + P_b.
//!
//! Δ is a standard deviation: the criteria compare √(var_x·var_p) with 1/4
//! (strong, EPR paradox) and 1/2 (weak, inseparability). Both inequalities are
//! strict, so two-mode vacuum (0.5, 0.5) sits on the weak boundary and is not
//! entangled.

use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;

use crate::homodyne::{self, Formula};
use crate::params::{PhaseMode, ValidatedConfig};
use crate::point::OperatingPoint;
use crate::search;
use crate::{Error, Result};

pub const STRONG_BOUND: f64 = 0.25;
pub const WEAK_BOUND: f64 = 0.5;

/// Tolerance on var_x = var_p.
pub const CONJUGATE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EprLevel {
    /// Neither criterion holds.
    Neither,
    Weak,
    Strong,
}

impl EprLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            EprLevel::Strong => "strong",
            EprLevel::Weak => "weak",
            EprLevel::Neither => "none",
        }
    }
}

impl fmt::Display for EprLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EprClassification {
    pub level: EprLevel,
    /// Δ(X_a − X_b)·Δ(P_a + P_b)
    pub product: f64,
    pub var_x: f64,
    pub var_p: f64,
}

pub fn classify(var_x: f64, var_p: f64) -> EprClassification {
    let product = libm::sqrt(var_x * var_p);
    let level = if product < STRONG_BOUND {
        EprLevel::Strong
    } else if product < WEAK_BOUND {
        EprLevel::Weak
    } else {
        EprLevel::Neither
    };
    EprClassification {
        level,
        product,
        var_x,
        var_p,
    }
}

/// Local-oscillator phase at which the measured quadrature has the same
/// noise as X^θ_φ = X_a(θ) − X_b(φ). The cross term depends on θ + φ only,
/// and the measured quadrature is X^{φ_LO}_{π + φ_LO − n_f ω₀ l_f/c}.
pub fn equivalent_lo_phase(point: &OperatingPoint, theta: f64, phi: f64) -> f64 {
    0.5 * (theta + phi - PI + point.plus.fiber_phase_static)
}

/// Variances of X_a − X_b and P_a + P_b at the point's φ_LO.
pub fn conjugate_variances_at(point: &OperatingPoint, formula: Formula) -> Result<(f64, f64)> {
    let theta = point.phi_lo;
    let phi = PI + point.phi_lo - point.plus.fiber_phase_static;
    let var_x = homodyne::variance_at(
        &point.with_phi_lo(equivalent_lo_phase(point, theta, phi)),
        formula,
    )
    .variance;
    let var_p = homodyne::variance_at(
        &point.with_phi_lo(equivalent_lo_phase(
            point,
            theta + FRAC_PI_2,
            phi - FRAC_PI_2,
        )),
        formula,
    )
    .variance;
    if (var_x - var_p).abs() > CONJUGATE_TOL {
        return Err(Error::ConjugateMismatch { var_x, var_p });
    }
    Ok((var_x, var_p))
}

pub fn conjugate_variances(
    config: &ValidatedConfig,
    omega: f64,
    formula: Formula,
    mode: PhaseMode,
) -> Result<(f64, f64)> {
    let point = homodyne::point_for_mode(config, omega, formula, mode)?;
    conjugate_variances_at(&point, formula)
}

fn level_at(base: &OperatingPoint, formula: Formula, t: f64) -> Result<EprClassification> {
    let point = homodyne::apply_mode(&base.with_transmission(t), formula, PhaseMode::Optimized);
    let (vx, vp) = conjugate_variances_at(&point, formula)?;
    Ok(classify(vx, vp))
}

/// Smallest |T| at which `criterion` (Weak or Strong) holds, at optimal φ_LO.
pub fn threshold_scan(
    config: &ValidatedConfig,
    omega: f64,
    formula: Formula,
    criterion: EprLevel,
) -> Result<f64> {
    let base = homodyne::prepare(config, omega, formula)?;
    let mut last = f64::INFINITY;
    for i in 0..=100 {
        let v = level_at(&base, formula, i as f64 / 100.0)?.var_x;
        if v > last + 1e-12 {
            return Err(Error::NonMonotone { omega });
        }
        last = v;
    }
    let holds = |t: f64| Ok(level_at(&base, formula, t)?.level >= criterion);
    if holds(0.0)? {
        return Ok(0.0);
    }
    if !holds(1.0)? {
        return Err(Error::NeverSatisfied);
    }
    search::bisect_threshold(holds, 0.0, 1.0, 1e-7)
}
