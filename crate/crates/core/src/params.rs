//! Physical constants, parameter sets and validation.
//!
//! Units: every rate and detuning is an angular quantity in 1/s, lengths in m,
//! densities in 1/m³, the dipole element in C·m. `omega0` is the true optical
//! angular frequency of the carrier.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use core::fmt;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
    /// Vacuum permittivity (F/m).
    pub epsilon0: f64,
    /// Speed of light (m/s).
    pub c: f64,
}

impl PhysicalConstants {
    pub const SI: PhysicalConstants = PhysicalConstants {
        hbar: 1.0546e-34,
        epsilon0: 8.854e-12,
        c: 2.9979e8,
    };
}

/// Speed of light used throughout (m/s).
pub const C: f64 = PhysicalConstants::SI.c;

/// Cavity parametric amplifier: damping rate and pump coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpaParams {
    pub gamma: f64,
    pub kappa: f64,
}

/// Λ-system EIT cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EitParams {
    /// Atomic density (1/m³).
    pub n_density: f64,
    /// Probe dipole matrix element (C·m).
    pub mu_ac: f64,
    /// Control Rabi frequency (1/s).
    pub omega_c: f64,
    /// Decay rate of the metastable state |b⟩ (1/s).
    pub gamma_b: f64,
    /// Decay rate of the excited state |c⟩ (1/s).
    pub gamma_c: f64,
    /// Cell length (m).
    pub z: f64,
    /// Carrier angular frequency (rad/s).
    pub omega0: f64,
}

impl EitParams {
    /// Susceptibility prefactor N|μ|²/(ħε₀), in 1/s.
    pub fn prefactor(&self) -> f64 {
        let k = PhysicalConstants::SI;
        self.n_density * self.mu_ac * self.mu_ac / (k.hbar * k.epsilon0)
    }

    /// ω₀z/2c: converts χ into a phase (real part) or an attenuation exponent
    /// (imaginary part).
    pub fn optical_depth_factor(&self) -> f64 {
        self.omega0 * self.z / (2.0 * C)
    }
}

/// Lossless, non-dispersive fiber delay line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberParams {
    pub n_f: f64,
    /// Group velocity (m/s).
    pub v_f: f64,
    /// Length (m).
    pub l_f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PhaseMode {
    /// Use the configured local-oscillator phase as is.
    Fixed,
    /// Minimize the variance over the local-oscillator phase at each point.
    #[default]
    Optimized,
}

impl PhaseMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PhaseMode::Fixed => "fixed",
            PhaseMode::Optimized => "optimized",
        }
    }
}

impl core::str::FromStr for PhaseMode {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fixed" => Ok(PhaseMode::Fixed),
            "optimized" | "optimised" => Ok(PhaseMode::Optimized),
            other => Err(alloc::format!(
                "unknown phase mode `{other}` (expected fixed|optimized)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub opa: OpaParams,
    pub eit: EitParams,
    pub fiber: FiberParams,
    /// Local-oscillator phase (rad).
    pub phi_lo: f64,
    /// Sideband detunings (1/s), strictly increasing.
    pub omega_grid: Vec<f64>,
    pub phase_mode: PhaseMode,
}

/// Evenly spaced grid from `start` to `stop`, both included.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => alloc::vec![start],
        n => {
            let step = (stop - start) / (n - 1) as f64;
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        stop
                    } else {
                        start + step * i as f64
                    }
                })
                .collect()
        }
    }
}

/// The parameter set of the reference calculation.
pub fn default_paper_params() -> RunConfig {
    let gamma = 4.0e7;
    RunConfig {
        opa: OpaParams {
            gamma,
            kappa: 0.3 * gamma,
        },
        eit: EitParams {
            n_density: 2.7e17,
            mu_ac: 1.46e-29,
            omega_c: 2.0e7,
            gamma_b: 1.0e4,
            gamma_c: 6.0 * PI * 1.0e6,
            z: 0.05,
            // Rb D1 line, 795 nm.
            omega0: TAU * C / 795e-9,
        },
        fiber: FiberParams {
            n_f: 1.5,
            v_f: 1.0e8,
            l_f: 3.04e3,
        },
        phi_lo: 2.4,
        omega_grid: linspace(-2.0e6, 2.0e6, 401),
        phase_mode: PhaseMode::Optimized,
    }
}

/// One violated bound.
#[derive(Debug, Clone, PartialEq)]
pub struct InvalidParam {
    pub field: &'static str,
    pub value: f64,
    pub bound: &'static str,
}

impl fmt::Display for InvalidParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {:e} violates {}",
            self.field, self.value, self.bound
        )
    }
}

/// A [`RunConfig`] whose invariants have been checked. Immutable.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedConfig(RunConfig);

impl ValidatedConfig {
    pub fn get(&self) -> &RunConfig {
        &self.0
    }

    pub fn opa(&self) -> &OpaParams {
        &self.0.opa
    }

    pub fn eit(&self) -> &EitParams {
        &self.0.eit
    }

    pub fn fiber(&self) -> &FiberParams {
        &self.0.fiber
    }

    pub fn phi_lo(&self) -> f64 {
        self.0.phi_lo
    }

    pub fn phase_mode(&self) -> PhaseMode {
        self.0.phase_mode
    }

    pub fn omega_grid(&self) -> &[f64] {
        &self.0.omega_grid
    }

    pub fn into_inner(self) -> RunConfig {
        self.0
    }

    /// Copy with the fiber length replaced. The length bound is rechecked.
    pub fn with_fiber_length(&self, l_f: f64) -> Result<ValidatedConfig> {
        let mut cfg = self.0.clone();
        cfg.fiber.l_f = l_f;
        validate(cfg)
    }
}

/// Check every invariant and report all violations together.
pub fn validate(mut config: RunConfig) -> Result<ValidatedConfig> {
    let mut errs = Vec::new();
    let mut check = |ok: bool, field: &'static str, value: f64, bound: &'static str| {
        if !ok {
            errs.push(InvalidParam {
                field,
                value,
                bound,
            });
        }
    };

    let consts = PhysicalConstants::SI;
    check(consts.hbar > 0.0, "hbar", consts.hbar, "hbar > 0");
    check(
        consts.epsilon0 > 0.0,
        "epsilon0",
        consts.epsilon0,
        "epsilon0 > 0",
    );
    check(consts.c > 0.0, "c", consts.c, "c > 0");

    let opa = config.opa;
    check(
        opa.gamma > 0.0 && opa.gamma.is_finite(),
        "gamma",
        opa.gamma,
        "gamma > 0",
    );
    check(opa.kappa >= 0.0, "kappa", opa.kappa, "kappa >= 0");
    check(
        opa.kappa.is_nan() || opa.gamma.is_nan() || opa.kappa < opa.gamma / 2.0,
        "kappa",
        opa.kappa,
        "amplifier threshold kappa < gamma/2",
    );

    let eit = config.eit;
    for (field, value) in [
        ("n_density", eit.n_density),
        ("mu_ac", eit.mu_ac),
        ("omega_c", eit.omega_c),
        ("gamma_b", eit.gamma_b),
        ("gamma_c", eit.gamma_c),
        ("z", eit.z),
        ("omega0", eit.omega0),
    ] {
        check(
            value > 0.0 && value.is_finite(),
            field,
            value,
            "strictly positive",
        );
    }
    check(
        eit.gamma_b < eit.gamma_c,
        "gamma_b",
        eit.gamma_b,
        "gamma_b < gamma_c (Λ system)",
    );

    let fiber = config.fiber;
    check(
        fiber.n_f >= 1.0 && fiber.n_f.is_finite(),
        "n_f",
        fiber.n_f,
        "n_f >= 1",
    );
    check(
        fiber.v_f > 0.0 && fiber.v_f <= C,
        "v_f",
        fiber.v_f,
        "0 < v_f <= c (no superluminal group velocity)",
    );
    check(
        fiber.l_f >= 0.0 && fiber.l_f.is_finite(),
        "l_f",
        fiber.l_f,
        "l_f >= 0",
    );

    check(config.phi_lo.is_finite(), "phi_lo", config.phi_lo, "finite");
    for &w in &config.omega_grid {
        check(w.is_finite(), "omega_grid", w, "finite entries");
    }
    for pair in config.omega_grid.windows(2) {
        check(
            pair[1] > pair[0],
            "omega_grid",
            pair[1],
            "strictly increasing",
        );
    }

    if !errs.is_empty() {
        return Err(Error::InvalidParams(errs));
    }
    config.phi_lo = crate::angle::reduce(config.phi_lo);
    Ok(ValidatedConfig(config))
}
