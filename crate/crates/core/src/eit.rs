//! EIT probe channel and fiber delay line.
//!
//! The susceptibility of the resonantly driven Λ system at probe detuning
//! Ω = ω_ca − ω_p is
//!
//! ```text
//! χ(Ω) = K (Ω − iγ_b) / [(Ω − iγ_b)(Ω − iγ_c) − Ω_c²],   K = N|μ_ac|²/(ħε₀)
//! ```
//!
//! and for |χ| ≪ 1 the cell transmits
//! `T(Ω) = e^{iω₀z/c} e^{−χ₂ω₀z/2c} e^{iχ₁ω₀z/2c}`. Absorption is modelled as a
//! beamsplitter whose reflectance port admits vacuum, |R|² = 1 − |T|².

use num_complex::Complex64;

use crate::angle;
use crate::params::{EitParams, FiberParams, C};
use crate::search;
use crate::{Error, Result};

/// Largest |χ| for which the first-order expansion of √(1+χ) is used.
pub const CHI_LIMIT: f64 = 1e-2;

/// Finite-difference step for the group-delay cross-check (1/s).
pub const SLOPE_FD_STEP: f64 = 1e2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Susceptibility {
    pub chi1: f64,
    pub chi2: f64,
    pub omega: f64,
}

impl Susceptibility {
    pub fn magnitude(&self) -> f64 {
        libm::hypot(self.chi1, self.chi2)
    }
}

/// Per-sideband channel data for the EIT arm (A) and the fiber arm (B).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPair {
    /// |T(Ω)| of the EIT cell.
    pub t_mag: f64,
    /// χ₁(Ω)ω₀z/2c.
    pub t_phase_disp: f64,
    /// ω₀z/c mod 2π.
    pub t_phase_static: f64,
    /// |R(Ω)| = √(1 − |T|²).
    pub r_mag: f64,
    /// −Ω l_f / V_f.
    pub fiber_phase_disp: f64,
    /// n_f ω₀ l_f / c mod 2π.
    pub fiber_phase_static: f64,
    pub omega: f64,
}

impl ChannelPair {
    /// Full complex EIT transmission T(Ω).
    pub fn transmission(&self) -> Complex64 {
        Complex64::from_polar(self.t_mag, self.t_phase_static + self.t_phase_disp)
    }

    /// Fiber propagation factor e^{iφ_d(Ω)}.
    pub fn fiber_factor(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.fiber_phase_static + self.fiber_phase_disp)
    }

    /// Ω l_f/V_f + χ₁(Ω)ω₀z/2c: the part of the signal–idler interference phase
    /// linear in the detuning. Zero when the fiber delay matches the EIT group delay.
    pub fn residual_delay_phase(&self) -> f64 {
        self.t_phase_disp - self.fiber_phase_disp
    }

    /// Same channel with |T| replaced (phases untouched), |R| adjusted.
    pub fn with_t_mag(mut self, t_mag: f64) -> Self {
        self.t_mag = t_mag;
        self.r_mag = libm::sqrt((1.0 - t_mag * t_mag).max(0.0));
        self
    }
}

/// χ(Ω) as a complex number, without the weak-susceptibility check.
pub fn chi_complex(eit: &EitParams, omega: f64) -> Complex64 {
    let a = Complex64::new(omega, -eit.gamma_b);
    let b = Complex64::new(omega, -eit.gamma_c);
    let denom = a * b - Complex64::new(eit.omega_c * eit.omega_c, 0.0);
    a / denom * eit.prefactor()
}

pub fn susceptibility(eit: &EitParams, omega: f64) -> Result<Susceptibility> {
    let chi = chi_complex(eit, omega);
    let magnitude = chi.norm();
    if magnitude.is_nan() || magnitude >= CHI_LIMIT {
        return Err(Error::AbsorptionDominates { omega, magnitude });
    }
    Ok(Susceptibility {
        chi1: chi.re,
        chi2: chi.im,
        omega,
    })
}

/// ω₀z/c without reduction.
pub fn eit_static_phase_unreduced(eit: &EitParams) -> f64 {
    eit.omega0 * eit.z / C
}

/// n_f ω₀ l_f/c without reduction.
pub fn fiber_static_phase_unreduced(fiber: &FiberParams, omega0: f64) -> f64 {
    fiber.n_f * omega0 * fiber.l_f / C
}

/// EIT arm only; fiber fields are zero.
pub fn transmission(eit: &EitParams, omega: f64) -> Result<ChannelPair> {
    let chi = susceptibility(eit, omega)?;
    let depth = eit.optical_depth_factor();
    let t_mag = libm::exp(-chi.chi2 * depth);
    Ok(ChannelPair {
        t_mag,
        t_phase_disp: chi.chi1 * depth,
        t_phase_static: angle::reduced_phase(&[eit.omega0, eit.z], C),
        r_mag: libm::sqrt((1.0 - t_mag * t_mag).max(0.0)),
        fiber_phase_disp: 0.0,
        fiber_phase_static: 0.0,
        omega,
    })
}

/// (static mod 2π, dispersive) parts of φ_d(Ω) = (n_f ω₀/c − Ω/V_f) l_f.
pub fn fiber_phase(fiber: &FiberParams, omega0: f64, omega: f64) -> (f64, f64) {
    let stat = angle::reduced_phase(&[fiber.n_f, omega0, fiber.l_f], C);
    // −0.0 for l_f = 0 would print oddly
    let disp = if fiber.l_f == 0.0 {
        0.0
    } else {
        -omega * fiber.l_f / fiber.v_f
    };
    (stat, disp)
}

/// Both arms at one detuning.
pub fn channel_pair(eit: &EitParams, fiber: &FiberParams, omega: f64) -> Result<ChannelPair> {
    let mut ch = transmission(eit, omega)?;
    let (stat, disp) = fiber_phase(fiber, eit.omega0, omega);
    ch.fiber_phase_static = stat;
    ch.fiber_phase_disp = disp;
    Ok(ch)
}

/// dχ₁/dΩ at line center, from the closed form:
/// K(γ_b² − Ω_c²)/(γ_bγ_c + Ω_c²)². Reduces to −K/Ω_c² for γ_bγ_c ≪ Ω_c².
pub fn dispersion_slope(eit: &EitParams) -> f64 {
    let oc2 = eit.omega_c * eit.omega_c;
    let d = eit.gamma_b * eit.gamma_c + oc2;
    eit.prefactor() * (eit.gamma_b * eit.gamma_b - oc2) / (d * d)
}

/// Central finite difference of Re χ at Ω = 0.
pub fn dispersion_slope_numeric(eit: &EitParams, step: f64) -> f64 {
    (chi_complex(eit, step).re - chi_complex(eit, -step).re) / (2.0 * step)
}

/// EIT group delay (ω₀z/2c)|dχ₁/dΩ| in seconds.
pub fn group_delay(eit: &EitParams) -> f64 {
    eit.optical_depth_factor() * dispersion_slope(eit).abs()
}

/// Fiber length whose delay l_f/V_f equals the EIT group delay.
pub fn matched_fiber_length(eit: &EitParams, fiber: &FiberParams) -> Result<f64> {
    let analytic = dispersion_slope(eit);
    let numeric = dispersion_slope_numeric(eit, SLOPE_FD_STEP);
    let scale = analytic.abs().max(numeric.abs());
    if scale > 0.0 && (analytic - numeric).abs() > 1e-3 * scale {
        return Err(Error::DerivativeMismatch { analytic, numeric });
    }
    Ok(fiber.v_f * group_delay(eit))
}

/// Full width of the interval around Ω = 0 where |T(Ω)| ≥ `level`.
pub fn window_width(eit: &EitParams, level: f64) -> Result<f64> {
    let center = transmission(eit, 0.0)?.t_mag;
    if center.partial_cmp(&level) != Some(core::cmp::Ordering::Greater) {
        return Err(Error::LevelUnreachable { level, center });
    }
    let limit = 100.0 * eit.omega_c * eit.omega_c / eit.gamma_c;
    let first = limit * 1e-9;
    let mut width = 0.0;
    for sign in [1.0, -1.0] {
        let edge = search::edge(
            |w| Ok(transmission(eit, sign * w)?.t_mag >= level),
            first,
            limit,
            1e-10,
        )?
        .ok_or(Error::BandEdgeNotFound { limit })?;
        width += edge;
    }
    Ok(width)
}
