//! Cavity parametric amplifier below threshold.
//!
//! Output sidebands are mixed from vacuum inputs by
//!
//! ```text
//! D_o_out(ω)   = G(ω) D_o_in(ω) + g(ω) D_e_in†(−ω)
//! D_e_out†(−ω) = G(ω) D_e_in†(−ω) + g(ω) D_o_in(ω)
//! G(ω) = [κ² + (γ/2 + iω)(γ/2 − iω)] / M,  g(ω) = κγ / M,  M = (γ/2 − iω)² − κ²
//! ```

use num_complex::Complex64;

use crate::params::OpaParams;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovPair {
    pub g_big: Complex64,
    pub g_small: Complex64,
    pub omega: f64,
}

impl BogoliubovPair {
    /// |G|² − |g|², which is 1 for a unitary two-mode squeezer.
    pub fn unitarity(&self) -> f64 {
        self.g_big.norm_sqr() - self.g_small.norm_sqr()
    }

    /// g·G*. Real and non-negative for this amplifier, but returned complex.
    pub fn cross(&self) -> Complex64 {
        self.g_small * self.g_big.conj()
    }
}

pub fn bogoliubov(opa: &OpaParams, omega: f64) -> Result<BogoliubovPair> {
    let half = Complex64::new(opa.gamma / 2.0, 0.0);
    let iw = Complex64::new(0.0, omega);
    let kappa2 = Complex64::new(opa.kappa * opa.kappa, 0.0);
    let m = (half - iw) * (half - iw) - kappa2;
    if m.norm() < 1e-300 {
        return Err(Error::DegenerateDenominator { omega });
    }
    let g_big = (kappa2 + (half + iw) * (half - iw)) / m;
    let g_small = Complex64::new(opa.kappa * opa.gamma, 0.0) / m;
    Ok(BogoliubovPair {
        g_big,
        g_small,
        omega,
    })
}

/// Ideal two-mode variance at ω = 0 with no loss: (G(0) − g(0))²/2.
pub fn squeeze_floor(opa: &OpaParams) -> f64 {
    // Below threshold M(0) = γ²/4 − κ² > 0, so this cannot fail for validated params.
    let b = bogoliubov(opa, 0.0).expect("M(0) nonzero below threshold");
    let d = (b.g_big - b.g_small).re;
    0.5 * d * d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defaults() -> OpaParams {
        OpaParams {
            gamma: 4.0e7,
            kappa: 0.3 * 4.0e7,
        }
    }

    #[test]
    fn no_pump_is_identity() {
        let opa = OpaParams {
            gamma: 4.0e7,
            kappa: 0.0,
        };
        let center = bogoliubov(&opa, 0.0).unwrap();
        assert_eq!(center.g_big, Complex64::new(1.0, 0.0));
        assert_eq!(center.g_small.norm(), 0.0);
        // off center only the empty-cavity phase (γ/2 + iω)/(γ/2 − iω) remains
        for w in [-3.0e7, 1.0e5, 8.0e8] {
            let b = bogoliubov(&opa, w).unwrap();
            let phase = Complex64::new(2.0e7, w) / Complex64::new(2.0e7, -w);
            assert!((b.g_big - phase).norm() < 1e-15);
            assert!((b.g_big.norm() - 1.0).abs() < 1e-15);
            assert_eq!(b.g_small.norm(), 0.0);
        }
    }

    #[test]
    fn line_center_values() {
        // (0.09 + 0.25)/(0.25 − 0.09) and 0.3/0.16 in units of γ²
        let b = bogoliubov(&defaults(), 0.0).unwrap();
        assert!((b.g_big.re - 2.125).abs() < 1e-14);
        assert!((b.g_small.re - 1.875).abs() < 1e-14);
        assert_eq!(b.g_big.im, 0.0);
        assert_eq!(b.g_small.im, 0.0);
    }

    #[test]
    fn unitarity_off_center() {
        let b = bogoliubov(&defaults(), 1.0e7).unwrap();
        assert!((b.unitarity() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn cross_term_is_real() {
        for w in [-5.0e7, -1.0e6, 5.0e4, 2.0e7] {
            let c = bogoliubov(&defaults(), w).unwrap().cross();
            assert!(c.re > 0.0);
            assert!(c.im.abs() <= 1e-14 * c.re, "{c}");
        }
    }

    #[test]
    fn squeeze_floor_values() {
        let vac = OpaParams {
            gamma: 4.0e7,
            kappa: 0.0,
        };
        assert_eq!(squeeze_floor(&vac), 0.5);
        assert!((squeeze_floor(&defaults()) - 0.03125).abs() < 1e-15);
    }

    #[test]
    fn squeeze_floor_decreases_toward_threshold() {
        let gamma = 4.0e7;
        let mut last = f64::INFINITY;
        for i in 0..100 {
            let kappa = gamma / 2.0 * (i as f64) / 100.0;
            let s = squeeze_floor(&OpaParams { gamma, kappa });
            assert!(s < last, "not decreasing at kappa={kappa}");
            last = s;
        }
        let near = squeeze_floor(&OpaParams {
            gamma,
            kappa: gamma / 2.0 * (1.0 - 1e-6),
        });
        assert!(near < 1e-12);
    }

    #[test]
    fn far_detuning_decouples() {
        let w = 1.0e3 * 4.0e7;
        let b = bogoliubov(&defaults(), w).unwrap();
        assert!(b.g_small.norm() < 1e-4);
        assert!((b.g_big.norm() - 1.0).abs() < 1e-4);
        // G tends to −1 (the cavity reflection phase), not +1
        assert!((b.g_big + Complex64::new(1.0, 0.0)).norm() < 1e-2);
    }
}
