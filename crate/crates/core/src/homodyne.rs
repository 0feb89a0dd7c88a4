//! Balanced-homodyne noise of the combined EIT/fiber output.
//!
//! Three closed forms are provided:
//!
//! - [`Formula::Exact`]: the full expression with independent ±Ω sidebands.
//! - [`Formula::Mismatched`]: the same after using χ(−Ω) = −χ*(Ω); only the
//!   EIT arm is lossy.
//! - [`Formula::Matched`]: both arms see the same |T|.
//!
//! All variances are normalized so that vacuum gives [`VACUUM_NOISE`] = 0.5.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use core::fmt;
use core::str::FromStr;

use crate::epr::{self, EprClassification};
use crate::params::{PhaseMode, ValidatedConfig};
use crate::point::OperatingPoint;
use crate::search;
use crate::{Error, Result, VACUUM_NOISE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    Exact,
    Mismatched,
    Matched,
}

impl Formula {
    pub const ALL: [Formula; 3] = [Formula::Exact, Formula::Mismatched, Formula::Matched];

    pub fn as_str(self) -> &'static str {
        match self {
            Formula::Exact => "exact",
            Formula::Mismatched => "mismatched",
            Formula::Matched => "matched",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Formula {
    type Err = alloc::string::String;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Formula::Exact),
            "mismatched" => Ok(Formula::Mismatched),
            "matched" => Ok(Formula::Matched),
            other => Err(alloc::format!(
                "unknown formula `{other}` (expected exact|mismatched|matched)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceResult {
    pub variance: f64,
    pub omega: f64,
    pub phi_lo: f64,
    pub t_mag: f64,
    pub formula: Formula,
}

impl VarianceResult {
    pub fn is_squeezed(&self) -> bool {
        self.variance < VACUUM_NOISE
    }
}

/// The two cosines of the approximated formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseTerms {
    /// cos(Ω l_f/V_f + χ₁(Ω)ω₀z/2c)
    pub cos_disp: f64,
    /// cos(2φ_LO − ω₀z/c − n_f ω₀ l_f/c − arg(gG*))
    pub cos_lo: f64,
}

impl PhaseTerms {
    pub fn at(point: &OperatingPoint) -> Self {
        let ch = &point.plus;
        let lo_arg = 2.0 * point.phi_lo
            - ch.t_phase_static
            - ch.fiber_phase_static
            - point.bog_plus.cross().arg();
        PhaseTerms {
            cos_disp: libm::cos(ch.residual_delay_phase()),
            cos_lo: libm::cos(lo_arg),
        }
    }
}

fn exact(point: &OperatingPoint) -> f64 {
    let b = &point.bog_plus;
    let (p, m) = (&point.plus, &point.minus);
    let gg = b.cross();
    let (big2, small2) = (b.g_big.norm_sqr(), b.g_small.norm_sqr());
    let two_phi = 2.0 * point.phi_lo;
    // φ_d(−Ω) − 2φ_LO + χ₁(Ω)ω₀z/2c + ω₀z/c, and its ±Ω partner
    let psi_plus =
        m.fiber_phase_static + m.fiber_phase_disp - two_phi + p.t_phase_disp + p.t_phase_static;
    let psi_minus =
        p.fiber_phase_static + p.fiber_phase_disp - two_phi + m.t_phase_disp + m.t_phase_static;
    let re = |psi: f64| (gg * num_complex::Complex64::from_polar(1.0, psi)).re;
    let r2 = 1.0 - p.t_mag * p.t_mag;
    0.25 * (r2
        + big2 * (1.0 + p.t_mag * p.t_mag)
        + small2 * (1.0 + m.t_mag * m.t_mag)
        + 2.0 * p.t_mag * re(psi_plus)
        + 2.0 * m.t_mag * re(psi_minus))
}

fn mismatched(point: &OperatingPoint) -> f64 {
    let b = &point.bog_plus;
    let t = point.plus.t_mag;
    let pt = PhaseTerms::at(point);
    let sum2 = b.g_big.norm_sqr() + b.g_small.norm_sqr();
    0.25 * ((1.0 - t * t)
        + sum2 * (1.0 + t * t)
        + 4.0 * t * b.cross().norm() * pt.cos_disp * pt.cos_lo)
}

fn matched(point: &OperatingPoint) -> f64 {
    let b = &point.bog_plus;
    let t = point.plus.t_mag;
    let pt = PhaseTerms::at(point);
    let sum2 = b.g_big.norm_sqr() + b.g_small.norm_sqr();
    0.5 * ((1.0 - t * t) + sum2 * t * t + 2.0 * t * t * b.cross().norm() * pt.cos_disp * pt.cos_lo)
}

/// Evaluate a closed form at a prepared point, no validity checks.
pub fn variance_at(point: &OperatingPoint, formula: Formula) -> VarianceResult {
    let variance = match formula {
        Formula::Exact => exact(point),
        Formula::Mismatched => mismatched(point),
        Formula::Matched => matched(point),
    };
    VarianceResult {
        variance,
        omega: point.omega,
        phi_lo: point.phi_lo,
        t_mag: point.plus.t_mag,
        formula,
    }
}

/// Build the point for `formula`, rejecting the approximated formulas where
/// sideband parity fails.
pub fn prepare(config: &ValidatedConfig, omega: f64, formula: Formula) -> Result<OperatingPoint> {
    let point = OperatingPoint::new(config, omega)?;
    if formula != Formula::Exact && !point.parity_holds() {
        return Err(Error::OutsideValidity { omega });
    }
    Ok(point)
}

pub fn variance_exact(config: &ValidatedConfig, omega: f64) -> Result<VarianceResult> {
    Ok(variance_at(
        &prepare(config, omega, Formula::Exact)?,
        Formula::Exact,
    ))
}

pub fn variance_mismatched(config: &ValidatedConfig, omega: f64) -> Result<VarianceResult> {
    let f = Formula::Mismatched;
    Ok(variance_at(&prepare(config, omega, f)?, f))
}

pub fn variance_matched(config: &ValidatedConfig, omega: f64) -> Result<VarianceResult> {
    let f = Formula::Matched;
    Ok(variance_at(&prepare(config, omega, f)?, f))
}

/// Variance at the configured φ_LO.
pub fn variance(config: &ValidatedConfig, omega: f64, formula: Formula) -> Result<VarianceResult> {
    Ok(variance_at(&prepare(config, omega, formula)?, formula))
}

/// Coefficients of V(φ) = mean + p·cos 2φ + q·sin 2φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseFit {
    pub mean: f64,
    pub p: f64,
    pub q: f64,
}

impl PhaseFit {
    pub fn amplitude(&self) -> f64 {
        libm::hypot(self.p, self.q)
    }

    pub fn eval(&self, phi: f64) -> f64 {
        self.mean + self.p * libm::cos(2.0 * phi) + self.q * libm::sin(2.0 * phi)
    }

    /// Minimizing phase in [0, π).
    pub fn argmin(&self) -> f64 {
        if self.amplitude() <= 1e-15 * self.mean.abs() {
            return 0.0;
        }
        let phi = 0.5 * (libm::atan2(self.q, self.p) + PI);
        if phi >= PI {
            0.0
        } else {
            phi
        }
    }
}

/// Every closed form depends on φ_LO only through cos(2φ_LO − Φ), so three
/// samples fix the curve.
pub fn phase_fit(point: &OperatingPoint, formula: Formula) -> PhaseFit {
    let v = |phi: f64| variance_at(&point.with_phi_lo(phi), formula).variance;
    let (v0, v45, v90) = (v(0.0), v(FRAC_PI_4), v(FRAC_PI_2));
    let mean = 0.5 * (v0 + v90);
    PhaseFit {
        mean,
        p: 0.5 * (v0 - v90),
        q: v45 - mean,
    }
}

/// Point with φ_LO at the variance minimum, and the variance there.
pub fn optimize_point(
    point: &OperatingPoint,
    formula: Formula,
) -> (OperatingPoint, VarianceResult) {
    let phi = phase_fit(point, formula).argmin();
    let best = point.with_phi_lo(phi);
    (best, variance_at(&best, formula))
}

/// φ_LO minimizing the variance at `omega`, with that variance.
pub fn optimal_phase(
    config: &ValidatedConfig,
    omega: f64,
    formula: Formula,
) -> Result<(f64, VarianceResult)> {
    let point = prepare(config, omega, formula)?;
    let (best, res) = optimize_point(&point, formula);
    Ok((best.phi_lo, res))
}

/// Point at `omega` with φ_LO fixed or optimized per `mode`.
pub fn point_for_mode(
    config: &ValidatedConfig,
    omega: f64,
    formula: Formula,
    mode: PhaseMode,
) -> Result<OperatingPoint> {
    let point = prepare(config, omega, formula)?;
    Ok(apply_mode(&point, formula, mode))
}

pub(crate) fn apply_mode(
    point: &OperatingPoint,
    formula: Formula,
    mode: PhaseMode,
) -> OperatingPoint {
    match mode {
        PhaseMode::Fixed => *point,
        PhaseMode::Optimized => optimize_point(point, formula).0,
    }
}

/// Variance at `omega` under the given phase mode.
pub fn evaluate(
    config: &ValidatedConfig,
    omega: f64,
    formula: Formula,
    mode: PhaseMode,
) -> Result<VarianceResult> {
    let point = point_for_mode(config, omega, formula, mode)?;
    Ok(variance_at(&point, formula))
}

/// Contiguous detuning interval around 0 with variance below vacuum.
pub fn squeezing_band(
    config: &ValidatedConfig,
    formula: Formula,
    mode: PhaseMode,
) -> Result<(f64, f64)> {
    let center = evaluate(config, 0.0, formula, mode)?;
    if !center.is_squeezed() {
        return Err(Error::NoSqueezing {
            variance: center.variance,
        });
    }
    let eit = config.eit();
    let limit = (10.0 * config.opa().gamma).max(100.0 * eit.omega_c * eit.omega_c / eit.gamma_c);
    let mut edges = [0.0; 2];
    for (slot, sign) in edges.iter_mut().zip([-1.0, 1.0]) {
        let edge = search::edge(
            |w| Ok(evaluate(config, sign * w, formula, mode)?.is_squeezed()),
            1.0,
            limit,
            1e-9,
        )?
        .ok_or(Error::BandEdgeNotFound { limit })?;
        *slot = sign * edge;
    }
    Ok((edges[0], edges[1]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    pub t_mag: f64,
    pub variance: VarianceResult,
    pub classification: EprClassification,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRow {
    pub omega: f64,
    /// Per-row outcome; a failed row does not abort the sweep.
    pub point: Result<SpectrumPoint>,
}

fn spectrum_point(config: &ValidatedConfig, omega: f64, formula: Formula) -> Result<SpectrumPoint> {
    let point = point_for_mode(config, omega, formula, config.phase_mode())?;
    let variance = variance_at(&point, formula);
    let (vx, vp) = epr::conjugate_variances_at(&point, formula)?;
    Ok(SpectrumPoint {
        t_mag: point.plus.t_mag,
        variance,
        classification: epr::classify(vx, vp),
    })
}

/// One row per configured grid detuning, in grid order.
pub fn sweep_spectrum(config: &ValidatedConfig, formula: Formula) -> Vec<SpectrumRow> {
    config
        .omega_grid()
        .iter()
        .map(|&omega| SpectrumRow {
            omega,
            point: spectrum_point(config, omega, formula),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionRow {
    pub t_mag: f64,
    pub variance: VarianceResult,
    pub classification: EprClassification,
}

/// Vary |T| at fixed `omega`; all phases keep their physical values.
pub fn sweep_transmission(
    config: &ValidatedConfig,
    omega: f64,
    formula: Formula,
    t_grid: &[f64],
) -> Result<Vec<TransmissionRow>> {
    let bad: Vec<_> = t_grid
        .iter()
        .filter(|t| !(0.0..=1.0).contains(*t))
        .map(|&t| crate::params::InvalidParam {
            field: "t_grid",
            value: t,
            bound: "0 <= |T| <= 1",
        })
        .collect();
    if !bad.is_empty() {
        return Err(Error::InvalidParams(bad));
    }
    let base = prepare(config, omega, formula)?;
    t_grid
        .iter()
        .map(|&t| {
            let point = apply_mode(&base.with_transmission(t), formula, config.phase_mode());
            let (vx, vp) = epr::conjugate_variances_at(&point, formula)?;
            Ok(TransmissionRow {
                t_mag: t,
                variance: variance_at(&point, formula),
                classification: epr::classify(vx, vp),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{default_paper_params, linspace, validate};

    fn defaults() -> ValidatedConfig {
        validate(default_paper_params()).unwrap()
    }

    fn vacuum() -> ValidatedConfig {
        let mut cfg = default_paper_params();
        cfg.opa.kappa = 0.0;
        validate(cfg).unwrap()
    }

    #[test]
    fn vacuum_in_vacuum_out() {
        let cfg = vacuum();
        for w in [-1.0e6, 0.0, 5.0e4, 7.0e5] {
            let point = OperatingPoint::new(&cfg, w).unwrap();
            for t in [0.0, 0.3, 1.0] {
                for phi in [0.0, 1.0, 2.4] {
                    let p = point.with_transmission(t).with_phi_lo(phi);
                    for f in Formula::ALL {
                        let v = variance_at(&p, f).variance;
                        assert!((v - 0.5).abs() < 1e-12, "{f} w={w} t={t}: {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn exact_equals_mismatched_at_center() {
        let cfg = defaults();
        let a = variance_exact(&cfg, 0.0).unwrap().variance;
        let b = variance_mismatched(&cfg, 0.0).unwrap().variance;
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn unit_transmission_formulas_coincide() {
        let cfg = defaults();
        for w in linspace(-2.0e6, 2.0e6, 41) {
            let p = OperatingPoint::new(&cfg, w).unwrap().with_transmission(1.0);
            let a = variance_at(&p, Formula::Mismatched).variance;
            let b = variance_at(&p, Formula::Matched).variance;
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn blocked_arm() {
        // (1/4)(1 + |G|² + |g|²) = 9.03125/4 at Ω = 0
        let p = OperatingPoint::new(&defaults(), 0.0)
            .unwrap()
            .with_transmission(0.0);
        let v = variance_at(&p, Formula::Mismatched).variance;
        assert!((v - 9.03125 / 4.0).abs() < 1e-12);
    }

    #[test]
    fn forty_percent_mismatch_root() {
        // (1/4)[9.03125 + 7.03125T² − 15.9375T] = 0.5 at T = 0.6 with the
        // cosine product at −1
        let p = OperatingPoint::new(&defaults(), 0.0)
            .unwrap()
            .with_transmission(0.6);
        let (_, best) = optimize_point(&p, Formula::Mismatched);
        assert!((best.variance - 0.5).abs() < 1e-6, "{}", best.variance);
    }

    #[test]
    fn matched_closed_form() {
        // 0.5 − 0.46875·T² at optimal phase, Ω = 0
        let p = OperatingPoint::new(&defaults(), 0.0).unwrap();
        for t in [1.0, 0.5, 0.2] {
            let (_, best) = optimize_point(&p.with_transmission(t), Formula::Matched);
            let expect = 0.5 - 0.46875 * t * t;
            assert!((best.variance - expect).abs() < 1e-12, "t={t}");
        }
        let (_, best) = optimize_point(&p.with_transmission(0.5), Formula::Matched);
        assert!((best.variance - 0.3828).abs() < 1e-4);
        let (_, floor) = optimize_point(&p.with_transmission(1.0), Formula::Matched);
        assert!((floor.variance - 0.03125).abs() < 1e-12);
    }

    #[test]
    fn optimal_phase_for_vacuum_is_zero() {
        let (phi, res) = optimal_phase(&vacuum(), 1.0e5, Formula::Matched).unwrap();
        assert_eq!(phi, 0.0);
        assert!((res.variance - 0.5).abs() < 1e-12);
    }

    #[test]
    fn phase_dependence_is_single_harmonic() {
        let p = OperatingPoint::new(&defaults(), 3.0e5).unwrap();
        for f in Formula::ALL {
            let fit = phase_fit(&p, f);
            for i in 0..100 {
                let phi = i as f64 * 0.0731;
                let v = variance_at(&p.with_phi_lo(phi), f).variance;
                assert!((v - fit.eval(phi)).abs() < 1e-9, "{f} phi={phi}");
            }
        }
    }

    #[test]
    fn mismatched_floor_bound() {
        let cfg = defaults();
        for w in linspace(-1.5e6, 1.5e6, 31) {
            let p = OperatingPoint::new(&cfg, w).unwrap();
            for phi in [0.0, 0.7, 1.9, 2.4] {
                let r = variance_at(&p.with_phi_lo(phi), Formula::Mismatched);
                let t = r.t_mag;
                assert!(r.variance >= (1.0 - t * t) / 4.0);
            }
        }
    }

    #[test]
    fn vacuum_has_no_squeezing_band() {
        assert!(matches!(
            squeezing_band(&vacuum(), Formula::Mismatched, PhaseMode::Optimized),
            Err(Error::NoSqueezing { .. })
        ));
    }

    #[test]
    fn empty_and_single_grids() {
        let mut cfg = default_paper_params();
        cfg.omega_grid = Vec::new();
        assert!(sweep_spectrum(&validate(cfg.clone()).unwrap(), Formula::Matched).is_empty());
        cfg.omega_grid = alloc::vec![0.0];
        let rows = sweep_spectrum(&validate(cfg).unwrap(), Formula::Mismatched);
        assert_eq!(rows.len(), 1);
        let t = rows[0].point.as_ref().unwrap().t_mag;
        assert!((t - 0.738).abs() < 1e-3);
    }

    #[test]
    fn transmission_grid_rejects_out_of_range() {
        let err = sweep_transmission(&defaults(), 5.0e4, Formula::Matched, &[0.5, 1.5]);
        assert!(matches!(err, Err(Error::InvalidParams(_))));
    }

    #[test]
    fn formula_names_round_trip() {
        for f in Formula::ALL {
            assert_eq!(f.as_str().parse::<Formula>().unwrap(), f);
        }
        assert!("squeezed".parse::<Formula>().is_err());
    }
}
