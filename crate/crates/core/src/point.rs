//! Everything the noise calculations need at one sideband pair ±Ω.

use crate::eit::{self, ChannelPair, Susceptibility};
use crate::opa::{self, BogoliubovPair};
use crate::params::ValidatedConfig;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub omega: f64,
    /// Local-oscillator phase (rad).
    pub phi_lo: f64,
    /// G, g at +Ω.
    pub bog_plus: BogoliubovPair,
    /// G, g at −Ω.
    pub bog_minus: BogoliubovPair,
    pub plus: ChannelPair,
    pub minus: ChannelPair,
    pub chi_plus: Susceptibility,
    pub chi_minus: Susceptibility,
}

impl OperatingPoint {
    pub fn new(config: &ValidatedConfig, omega: f64) -> Result<Self> {
        let eit = config.eit();
        let fiber = config.fiber();
        Ok(OperatingPoint {
            omega,
            phi_lo: config.phi_lo(),
            bog_plus: opa::bogoliubov(config.opa(), omega)?,
            bog_minus: opa::bogoliubov(config.opa(), -omega)?,
            plus: eit::channel_pair(eit, fiber, omega)?,
            minus: eit::channel_pair(eit, fiber, -omega)?,
            chi_plus: eit::susceptibility(eit, omega)?,
            chi_minus: eit::susceptibility(eit, -omega)?,
        })
    }

    pub fn with_phi_lo(mut self, phi_lo: f64) -> Self {
        self.phi_lo = phi_lo;
        self
    }

    /// Override |T| on both sidebands; every phase stays at its physical value.
    pub fn with_transmission(mut self, t_mag: f64) -> Self {
        self.plus = self.plus.with_t_mag(t_mag);
        self.minus = self.minus.with_t_mag(t_mag);
        self
    }

    /// Whether χ(−Ω) = −χ*(Ω) holds to 1%, the condition under which the
    /// approximated variance formulas apply.
    pub fn parity_holds(&self) -> bool {
        let tol = 0.01 * self.chi_plus.magnitude().max(self.chi_minus.magnitude());
        (self.chi_plus.chi1 + self.chi_minus.chi1).abs() <= tol
            && (self.chi_plus.chi2 - self.chi_minus.chi2).abs() <= tol
    }
}
