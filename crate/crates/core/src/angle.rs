//! Argument reduction for large phases.
//!
//! Static propagation phases such as n_f ω₀ l_f / c reach 10¹⁰ rad. Taking a
//! cosine of such a double directly throws away every significant digit of the
//! fractional turn, so products are formed in double-double arithmetic and
//! reduced against a double-double 2π.

use core::f64::consts::TAU;
use core::ops::{Add, Mul, Neg};

/// 2π as an unevaluated sum hi + lo.
const TAU_HI: f64 = TAU;
const TAU_LO: f64 = 2.449_293_598_294_706_4e-16;

/// Unevaluated sum `hi + lo` with |lo| ≤ ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

impl DoubleDouble {
    pub const fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn mul_f64(self, b: f64) -> DoubleDouble {
        self * DoubleDouble::from_f64(b)
    }

    pub fn div_f64(self, b: f64) -> DoubleDouble {
        let q1 = self.hi / b;
        let r = self + -DoubleDouble::from_f64(b).mul_f64(q1);
        let q2 = r.hi / b;
        let r = r + -DoubleDouble::from_f64(b).mul_f64(q2);
        let q3 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::from_f64(q3)
    }
}

impl Add for DoubleDouble {
    type Output = DoubleDouble;

    fn add(self, other: DoubleDouble) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, other.hi);
        let (t, f) = two_sum(self.lo, other.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = DoubleDouble;

    fn neg(self) -> DoubleDouble {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for DoubleDouble {
    type Output = DoubleDouble;

    fn mul(self, other: DoubleDouble) -> DoubleDouble {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + (self.hi * other.lo + self.lo * other.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

/// Reduce a double-double phase into [0, 2π).
pub fn reduce_dd(x: DoubleDouble) -> f64 {
    let turns = libm::floor(x.hi / TAU);
    // turns·2π exactly, as a sum of two two_prods
    let (p1, e1) = two_prod(turns, TAU_HI);
    let (p2, e2) = two_prod(turns, TAU_LO);
    let mut r = x + DoubleDouble { hi: -p1, lo: -e1 } + DoubleDouble { hi: -p2, lo: -e2 };
    let tau = DoubleDouble {
        hi: TAU_HI,
        lo: TAU_LO,
    };
    // x.hi/TAU can be off by one turn
    while r.hi < 0.0 {
        r = r + tau;
    }
    while r.to_f64() >= TAU {
        r = r + -tau;
    }
    let v = r.to_f64();
    if !(0.0..TAU).contains(&v) {
        0.0
    } else {
        v
    }
}

/// Exact real product of the factors divided by `divisor`, reduced mod 2π.
pub fn reduced_phase(factors: &[f64], divisor: f64) -> f64 {
    let prod = factors
        .iter()
        .fold(DoubleDouble::from_f64(1.0), |acc, &f| acc.mul_f64(f));
    reduce_dd(prod.div_f64(divisor))
}

/// Reduce an ordinary double into [0, 2π).
pub fn reduce(x: f64) -> f64 {
    reduce_dd(DoubleDouble::from_f64(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_angles_unchanged() {
        assert_eq!(reduce(0.0), 0.0);
        assert_eq!(reduce(1.25), 1.25);
        assert!((reduce(-1.0) - (TAU - 1.0)).abs() < 1e-15);
        assert!((reduce(TAU + 0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn integer_multiples_of_tau_reduce_to_zero() {
        // k·2π computed in double-double, then reduced
        for k in [1.0, 17.0, 1.0e6, 5.7e9] {
            let x = DoubleDouble {
                hi: TAU_HI,
                lo: TAU_LO,
            }
            .mul_f64(k);
            let r = reduce_dd(x);
            let dist = r.min(TAU - r);
            assert!(dist < 1e-12, "k={k} r={r}");
        }
    }

    #[test]
    fn quotient_is_exact_to_double_double() {
        // 10/3 in double-double times 3 returns 10
        let q = DoubleDouble::from_f64(10.0).div_f64(3.0);
        let back = q.mul_f64(3.0) + DoubleDouble::from_f64(-10.0);
        assert!(back.to_f64().abs() < 1e-30);
    }

    #[test]
    fn large_product_matches_split_reduction() {
        // (a·b)/c mod 2π against reduction of the pieces: a·b = a·(b1 + b2)
        let a = 1.5 * 2.369_353_614_137_57e15;
        let b = 3.04e3;
        let c = 2.9979e8;
        let whole = reduced_phase(&[a, b], c);
        let part1 = reduced_phase(&[a, 3.0e3], c);
        let part2 = reduced_phase(&[a, 40.0], c);
        let mut combined = part1 + part2;
        if combined >= TAU {
            combined -= TAU;
        }
        assert!((whole - combined).abs() < 1e-9, "{whole} vs {combined}");
    }
}
