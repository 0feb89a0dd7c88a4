//! Operator-level reference for the homodyne noise.
//!
//! The measured quadrature is built by linear substitution only: vacuum input
//! modes of the OPA are mixed by the Bogoliubov relations, the signal passes a
//! beamsplitter of amplitude T(Ω) with a vacuum port, the idler picks up the
//! fiber phase, and the homodyne current combines the two arms with the local
//! oscillator. The noise is then read off the vacuum moments of the resulting
//! linear combination. No closed-form variance expression is used here.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul};

use num_complex::Complex64;

use crate::homodyne::{self, Formula};
use crate::params::ValidatedConfig;
use crate::point::OperatingPoint;
use crate::Result;

/// Input modes: OPA signal (o) and idler (e) vacuum inputs, the EIT loss port
/// (v), and the fiber loss port (w) used when both arms are attenuated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    O,
    E,
    V,
    W,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::O, Mode::E, Mode::V, Mode::W];

    fn index(self) -> usize {
        self as usize
    }
}

/// Which sideband of the pair an operator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// Arm configuration of the experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Setup {
    /// EIT arm lossy, fiber arm lossless.
    Mismatched,
    /// Fiber arm attenuated to the same |T| through its own vacuum port.
    Matched,
}

const SLOTS: usize = 16;

fn slot(mode: Mode, side: Side, dagger: bool) -> usize {
    mode.index() * 4 + (side as usize) * 2 + dagger as usize
}

/// Linear combination of the 16 operators {o, e, v, w} × {±Ω} × {a, a†}.
#[derive(Debug, Clone, Copy, PartialEq)]
struct LinearOp([Complex64; SLOTS]);

impl LinearOp {
    fn zero() -> Self {
        LinearOp([Complex64::new(0.0, 0.0); SLOTS])
    }

    fn annihilate(mode: Mode, side: Side) -> Self {
        let mut op = Self::zero();
        op.0[slot(mode, side, false)] = Complex64::new(1.0, 0.0);
        op
    }

    fn create(mode: Mode, side: Side) -> Self {
        let mut op = Self::zero();
        op.0[slot(mode, side, true)] = Complex64::new(1.0, 0.0);
        op
    }

    /// Hermitian conjugate: (c·a)† = c*·a†.
    fn dagger(&self) -> Self {
        let mut out = Self::zero();
        for mode in Mode::ALL {
            for side in [Side::Plus, Side::Minus] {
                out.0[slot(mode, side, true)] = self.0[slot(mode, side, false)].conj();
                out.0[slot(mode, side, false)] = self.0[slot(mode, side, true)].conj();
            }
        }
        out
    }
}

impl Add for LinearOp {
    type Output = LinearOp;

    fn add(mut self, rhs: LinearOp) -> LinearOp {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        self
    }
}

impl Mul<LinearOp> for Complex64 {
    type Output = LinearOp;

    fn mul(self, mut rhs: LinearOp) -> LinearOp {
        for a in rhs.0.iter_mut() {
            *a *= self;
        }
        rhs
    }
}

/// Quadrature X(Ω) as Σ c_a(k)·a_k(Ω) + Σ c_a†(k)·a_k†(−Ω) over input modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeExpansion {
    /// Coefficients of annihilation operators at +Ω, indexed by [`Mode`].
    pub coeff_a: [Complex64; 4],
    /// Coefficients of creation operators at −Ω, indexed by [`Mode`].
    pub coeff_adag: [Complex64; 4],
}

impl ModeExpansion {
    fn from_op(op: &LinearOp) -> Self {
        let mut coeff_a = [Complex64::new(0.0, 0.0); 4];
        let mut coeff_adag = [Complex64::new(0.0, 0.0); 4];
        for mode in Mode::ALL {
            coeff_a[mode.index()] = op.0[slot(mode, Side::Plus, false)];
            coeff_adag[mode.index()] = op.0[slot(mode, Side::Minus, true)];
            // a(−Ω) and a†(+Ω) cannot appear in an operator at +Ω
            debug_assert_eq!(op.0[slot(mode, Side::Minus, false)].norm(), 0.0);
            debug_assert_eq!(op.0[slot(mode, Side::Plus, true)].norm(), 0.0);
        }
        ModeExpansion {
            coeff_a,
            coeff_adag,
        }
    }

    pub fn a(&self, mode: Mode) -> Complex64 {
        self.coeff_a[mode.index()]
    }

    pub fn adag(&self, mode: Mode) -> Complex64 {
        self.coeff_adag[mode.index()]
    }

    pub fn nonzero_count(&self, eps: f64) -> usize {
        self.coeff_a
            .iter()
            .chain(&self.coeff_adag)
            .filter(|c| c.norm() > eps)
            .count()
    }

    /// Σ|c_a|² − Σ|c_a†|², 1 for an operator with canonical commutator.
    pub fn commutator(&self) -> f64 {
        let a: f64 = self.coeff_a.iter().map(|c| c.norm_sqr()).sum();
        let b: f64 = self.coeff_adag.iter().map(|c| c.norm_sqr()).sum();
        a - b
    }

    /// Multiply every coefficient by e^{iθ}.
    pub fn rotated(&self, theta: f64) -> Self {
        let u = Complex64::from_polar(1.0, theta);
        let mut out = *self;
        for c in out.coeff_a.iter_mut().chain(out.coeff_adag.iter_mut()) {
            *c *= u;
        }
        out
    }
}

/// Symmetrized vacuum noise: ⟨a a†⟩ = 1, ⟨a† a⟩ = 0 averaged over both orderings.
pub fn noise(expansion: &ModeExpansion) -> f64 {
    let total: f64 = expansion
        .coeff_a
        .iter()
        .chain(&expansion.coeff_adag)
        .map(|c| c.norm_sqr())
        .sum();
    0.5 * total
}

struct Arms<'a> {
    point: &'a OperatingPoint,
    setup: Setup,
}

impl Arms<'_> {
    fn side_value(&self, side: Side) -> (&crate::opa::BogoliubovPair, &crate::eit::ChannelPair) {
        match side {
            Side::Plus => (&self.point.bog_plus, &self.point.plus),
            Side::Minus => (&self.point.bog_minus, &self.point.minus),
        }
    }

    /// D_o_out at sideband `side`: G D_o_in + g D_e_in†(opposite).
    fn signal_out(&self, side: Side) -> LinearOp {
        let (b, _) = self.side_value(side);
        b.g_big * LinearOp::annihilate(Mode::O, side)
            + b.g_small * LinearOp::create(Mode::E, side.flip())
    }

    /// D_e_out at `side`, from the conjugate relation
    /// D_e_out†(ω) = G(−ω) D_e_in†(ω) + g(−ω) D_o_in(−ω), evaluated at ω = side.
    fn idler_out(&self, side: Side) -> LinearOp {
        let (b, _) = self.side_value(side.flip());
        let dag = b.g_big * LinearOp::create(Mode::E, side)
            + b.g_small * LinearOp::annihilate(Mode::O, side.flip());
        dag.dagger()
    }

    /// D_A = T D_o_out + iR D_v.
    fn eit_arm(&self, side: Side) -> LinearOp {
        let (_, ch) = self.side_value(side);
        let i = Complex64::new(0.0, 1.0);
        ch.transmission() * self.signal_out(side)
            + (i * ch.r_mag) * LinearOp::annihilate(Mode::V, side)
    }

    /// The idler after the fiber, before the fixed beamsplitter factor i e^{iφ_d}.
    fn fiber_transmitted(&self, side: Side) -> LinearOp {
        let (_, ch) = self.side_value(side);
        match self.setup {
            Setup::Mismatched => self.idler_out(side),
            Setup::Matched => {
                let t = ch.t_mag;
                let r = libm::sqrt((1.0 - t * t).max(0.0));
                Complex64::new(t, 0.0) * self.idler_out(side)
                    + Complex64::new(0.0, r) * LinearOp::annihilate(Mode::W, side)
            }
        }
    }

    /// D_B = i e^{iφ_d} (fiber output).
    fn fiber_arm(&self, side: Side) -> LinearOp {
        let (_, ch) = self.side_value(side);
        let i = Complex64::new(0.0, 1.0);
        (i * ch.fiber_factor()) * self.fiber_transmitted(side)
    }

    /// b(Ω): the fiber output with only its detuning-dependent phase.
    fn b_mode(&self, side: Side) -> LinearOp {
        let (_, ch) = self.side_value(side);
        Complex64::from_polar(1.0, ch.fiber_phase_disp) * self.fiber_transmitted(side)
    }
}

/// The measured quadrature X^{φ_LO}(Ω) from the difference photocurrent
/// I_D ∝ i[e^{iφ}(−i D_A†(−Ω) + D_B†(−Ω)) − e^{−iφ}(i D_A(Ω) + D_B(Ω))],
/// normalized so that two-mode vacuum gives 0.5.
pub fn expand_measured(point: &OperatingPoint, setup: Setup) -> ModeExpansion {
    let arms = Arms { point, setup };
    let i = Complex64::new(0.0, 1.0);
    let up = Complex64::from_polar(1.0, point.phi_lo);
    let down = up.conj();
    let da_minus_dag = arms.eit_arm(Side::Minus).dagger();
    let db_minus_dag = arms.fiber_arm(Side::Minus).dagger();
    let da = arms.eit_arm(Side::Plus);
    let db = arms.fiber_arm(Side::Plus);
    let bracket = up * ((-i) * da_minus_dag + db_minus_dag) + (-down) * (i * da + db);
    ModeExpansion::from_op(&(Complex64::new(0.0, 0.5) * bracket))
}

/// X^θ_φ(Ω) = ½[(e^{iθ}a†(−Ω) + e^{−iθ}a(Ω)) − (e^{iφ}b†(−Ω) + e^{−iφ}b(Ω))]
/// with a = D_A and b the fiber output carrying only e^{−iΩl_f/V_f}.
pub fn expand_joint(point: &OperatingPoint, setup: Setup, theta: f64, phi: f64) -> ModeExpansion {
    let arms = Arms { point, setup };
    let half = Complex64::new(0.5, 0.0);
    let quad = |op_plus: LinearOp, op_minus: LinearOp, angle: f64| {
        Complex64::from_polar(1.0, angle) * op_minus.dagger()
            + Complex64::from_polar(1.0, -angle) * op_plus
    };
    let xa = quad(arms.eit_arm(Side::Plus), arms.eit_arm(Side::Minus), theta);
    let xb = quad(arms.b_mode(Side::Plus), arms.b_mode(Side::Minus), phi);
    ModeExpansion::from_op(&(half * (xa + Complex64::new(-1.0, 0.0) * xb)))
}

/// Joint quadratures (X_a − X_b, P_a + P_b) paired with the measured one.
pub fn conjugate_expansions(
    point: &OperatingPoint,
    setup: Setup,
) -> (ModeExpansion, ModeExpansion) {
    let theta = point.phi_lo;
    let phi = PI + point.phi_lo - point.plus.fiber_phase_static;
    let x = expand_joint(point, setup, theta, phi);
    let p = expand_joint(point, setup, theta + PI / 2.0, phi - PI / 2.0);
    (x, p)
}

/// Expansion of D_A(Ω) alone, for commutator checks.
pub fn expand_eit_output(point: &OperatingPoint) -> ModeExpansion {
    let arms = Arms {
        point,
        setup: Setup::Mismatched,
    };
    ModeExpansion::from_op(&arms.eit_arm(Side::Plus))
}

pub fn build_quadrature(
    config: &ValidatedConfig,
    omega: f64,
    phi_lo: f64,
) -> Result<ModeExpansion> {
    let point = OperatingPoint::new(config, omega)?.with_phi_lo(phi_lo);
    Ok(expand_measured(&point, Setup::Mismatched))
}

/// Oracle noise at a point for the setup a closed form describes.
pub fn noise_for(point: &OperatingPoint, formula: Formula) -> f64 {
    let setup = match formula {
        Formula::Exact | Formula::Mismatched => Setup::Mismatched,
        Formula::Matched => Setup::Matched,
    };
    noise(&expand_measured(point, setup))
}

pub const EXACT_TOL: f64 = 1e-10;
pub const APPROX_TOL: f64 = 1e-3;
/// The approximated formulas are compared only where |T| is at least this.
pub const WINDOW_LEVEL: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviation {
    pub formula: Formula,
    pub max_abs: f64,
    pub at_omega: f64,
    pub at_phi: f64,
    pub points: usize,
    pub tolerance: f64,
}

impl Deviation {
    fn new(formula: Formula, tolerance: f64) -> Self {
        Deviation {
            formula,
            max_abs: 0.0,
            at_omega: f64::NAN,
            at_phi: f64::NAN,
            points: 0,
            tolerance,
        }
    }

    fn record(&mut self, dev: f64, omega: f64, phi: f64) {
        self.points += 1;
        if dev > self.max_abs || self.at_omega.is_nan() {
            self.max_abs = dev;
            self.at_omega = omega;
            self.at_phi = phi;
        }
    }

    pub fn pass(&self) -> bool {
        self.max_abs < self.tolerance
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossCheckRow {
    pub omega: f64,
    pub phi_lo: f64,
    pub oracle: f64,
    pub oracle_matched: f64,
    pub exact: f64,
    pub mismatched: f64,
    pub matched: f64,
    /// Whether the approximated formulas were compared at this point.
    pub in_window: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheckReport {
    pub exact: Deviation,
    pub mismatched: Deviation,
    pub matched: Deviation,
    pub rows: Vec<CrossCheckRow>,
}

impl CrossCheckReport {
    pub fn pass(&self) -> bool {
        self.exact.pass() && self.mismatched.pass() && self.matched.pass()
    }

    pub fn deviations(&self) -> [&Deviation; 3] {
        [&self.exact, &self.mismatched, &self.matched]
    }
}

/// Compare the oracle against all three closed forms on a grid.
pub fn cross_check(
    config: &ValidatedConfig,
    omega_grid: &[f64],
    phi_grid: &[f64],
) -> Result<CrossCheckReport> {
    let mut report = CrossCheckReport {
        exact: Deviation::new(Formula::Exact, EXACT_TOL),
        mismatched: Deviation::new(Formula::Mismatched, APPROX_TOL),
        matched: Deviation::new(Formula::Matched, APPROX_TOL),
        rows: Vec::with_capacity(omega_grid.len() * phi_grid.len()),
    };
    for &omega in omega_grid {
        let base = OperatingPoint::new(config, omega)?;
        let in_window = base.plus.t_mag >= WINDOW_LEVEL && base.parity_holds();
        for &phi in phi_grid {
            let point = base.with_phi_lo(phi);
            let oracle = noise_for(&point, Formula::Exact);
            let oracle_matched = noise_for(&point, Formula::Matched);
            let exact = homodyne::variance_at(&point, Formula::Exact).variance;
            let mismatched = homodyne::variance_at(&point, Formula::Mismatched).variance;
            let matched = homodyne::variance_at(&point, Formula::Matched).variance;
            report.exact.record((oracle - exact).abs(), omega, phi);
            if in_window {
                report
                    .mismatched
                    .record((oracle - mismatched).abs(), omega, phi);
                report
                    .matched
                    .record((oracle_matched - matched).abs(), omega, phi);
            }
            report.rows.push(CrossCheckRow {
                omega,
                phi_lo: phi,
                oracle,
                oracle_matched,
                exact,
                mismatched,
                matched,
                in_window,
            });
        }
    }
    Ok(report)
}
