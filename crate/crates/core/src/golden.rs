//! Exact arithmetic in the golden ring ℤ[τ], τ = (1+√5)/2.
//!
//! Every element is stored as an integer pair `(a, b)` meaning `a + b·τ`.
//! Multiplication closes through the defining relation τ² = τ + 1, and the
//! Galois conjugation `star` sends τ ↦ 1−τ (equivalently √5 ↦ −√5). Signs and
//! comparisons are decided from the integers alone, so all tiling geometry
//! built on top of this module is exact.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// τ as the nearest IEEE double. All float conversions go through this one
/// constant; comparisons never do.
pub const TAU_F64: f64 = 1.618_033_988_749_894_9;

/// √5 as a double, for the Fourier-module scaling k = (p+qτ)/√5.
pub const SQRT5_F64: f64 = 2.236_067_977_499_79;

/// σ = 1 − τ = −1/τ, the image of τ under conjugation.
pub const SIGMA_F64: f64 = 1.0 - TAU_F64;

#[inline]
fn checked(v: Option<i64>) -> i64 {
    v.expect("GoldenNumber arithmetic overflowed i64; coefficients are expected to stay tiny")
}

/// An element a + b·τ of ℤ[τ].
///
/// Arithmetic uses checked i64 operations and panics on overflow: the
/// displacement and window geometry in this crate keeps coefficients below
/// 10³, so an overflow is a logic error rather than a scaling limit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GoldenNumber {
    /// Rational part.
    pub a: i64,
    /// Coefficient of τ.
    pub b: i64,
}

impl GoldenNumber {
    pub const ZERO: GoldenNumber = GoldenNumber { a: 0, b: 0 };
    pub const ONE: GoldenNumber = GoldenNumber { a: 1, b: 0 };
    /// The golden ratio itself.
    pub const TAU: GoldenNumber = GoldenNumber { a: 0, b: 1 };
    /// σ = 1 − τ.
    pub const SIGMA: GoldenNumber = GoldenNumber { a: 1, b: -1 };

    #[inline]
    pub const fn new(a: i64, b: i64) -> Self {
        GoldenNumber { a, b }
    }

    /// Galois conjugation: a + bτ ↦ a + b(1−τ) = (a+b) − bτ.
    #[inline]
    pub fn star(self) -> Self {
        GoldenNumber {
            a: checked(self.a.checked_add(self.b)),
            b: checked(self.b.checked_neg()),
        }
    }

    /// Conversion to double precision; used for rendering and numerics only.
    #[inline]
    pub fn value(self) -> f64 {
        self.a as f64 + self.b as f64 * TAU_F64
    }

    /// Value of the conjugate, a + b·(1−τ), as a double.
    #[inline]
    pub fn star_value(self) -> f64 {
        self.a as f64 + self.b as f64 * SIGMA_F64
    }

    /// Exact sign of a + bτ, using integer arithmetic only.
    ///
    /// With s = 2a + b and t = b, the number equals (s + t√5)/2; the sign
    /// follows from comparing s² against 5t² in the mixed-sign cases. (s² =
    /// 5t² has no nonzero integer solutions, so ties cannot occur.)
    pub fn signum(self) -> i32 {
        let s = checked(checked(self.a.checked_mul(2)).checked_add(self.b)) as i128;
        let t = self.b as i128;
        match (s.cmp(&0), t.cmp(&0)) {
            (Ordering::Equal, Ordering::Equal) => 0,
            (sgn, Ordering::Equal) => ord_sign(sgn),
            (Ordering::Equal, sgn) => ord_sign(sgn),
            (Ordering::Greater, Ordering::Greater) => 1,
            (Ordering::Less, Ordering::Less) => -1,
            (Ordering::Greater, Ordering::Less) => {
                if s * s > 5 * t * t {
                    1
                } else {
                    -1
                }
            }
            (Ordering::Less, Ordering::Greater) => {
                if 5 * t * t > s * s {
                    1
                } else {
                    -1
                }
            }
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.signum() > 0
    }

    /// Multiplication by an integer scalar.
    pub fn scale(self, n: i64) -> Self {
        GoldenNumber {
            a: checked(self.a.checked_mul(n)),
            b: checked(self.b.checked_mul(n)),
        }
    }
}

#[inline]
fn ord_sign(o: Ordering) -> i32 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

impl Add for GoldenNumber {
    type Output = GoldenNumber;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        GoldenNumber {
            a: checked(self.a.checked_add(rhs.a)),
            b: checked(self.b.checked_add(rhs.b)),
        }
    }
}

impl Sub for GoldenNumber {
    type Output = GoldenNumber;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        GoldenNumber {
            a: checked(self.a.checked_sub(rhs.a)),
            b: checked(self.b.checked_sub(rhs.b)),
        }
    }
}

impl Neg for GoldenNumber {
    type Output = GoldenNumber;
    #[inline]
    fn neg(self) -> Self {
        GoldenNumber {
            a: checked(self.a.checked_neg()),
            b: checked(self.b.checked_neg()),
        }
    }
}

impl Mul for GoldenNumber {
    type Output = GoldenNumber;
    /// (a + bτ)(c + dτ) = (ac + bd) + (ad + bc + bd)τ, via τ² = τ + 1.
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let ac = checked(self.a.checked_mul(rhs.a));
        let bd = checked(self.b.checked_mul(rhs.b));
        let ad = checked(self.a.checked_mul(rhs.b));
        let bc = checked(self.b.checked_mul(rhs.a));
        GoldenNumber {
            a: checked(ac.checked_add(bd)),
            b: checked(checked(ad.checked_add(bc)).checked_add(bd)),
        }
    }
}

impl PartialOrd for GoldenNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        match (*self - *other).signum() {
            x if x < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Debug for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, 0) => write!(f, "0"),
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "τ"),
            (0, -1) => write!(f, "-τ"),
            (0, b) => write!(f, "{b}τ"),
            (a, 1) => write!(f, "{a}+τ"),
            (a, -1) => write!(f, "{a}-τ"),
            (a, b) if b > 0 => write!(f, "{a}+{b}τ"),
            (a, b) => write!(f, "{a}{b}τ"),
        }
    }
}

/// A point with GoldenNumber coordinates in one or two dimensions.
///
/// The second component is fixed to zero for one-dimensional geometry; the
/// ambient dimension is carried by the inflation rule, not by the point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug, Serialize, Deserialize)]
pub struct GoldenVec {
    pub x: GoldenNumber,
    pub y: GoldenNumber,
}

impl GoldenVec {
    pub const ZERO: GoldenVec = GoldenVec {
        x: GoldenNumber::ZERO,
        y: GoldenNumber::ZERO,
    };

    #[inline]
    pub const fn new1(x: GoldenNumber) -> Self {
        GoldenVec {
            x,
            y: GoldenNumber::ZERO,
        }
    }

    #[inline]
    pub const fn new2(x: GoldenNumber, y: GoldenNumber) -> Self {
        GoldenVec { x, y }
    }

    /// Componentwise conjugation.
    #[inline]
    pub fn star(self) -> Self {
        GoldenVec {
            x: self.x.star(),
            y: self.y.star(),
        }
    }

    #[inline]
    pub fn value(self) -> [f64; 2] {
        [self.x.value(), self.y.value()]
    }

    #[inline]
    pub fn star_value(self) -> [f64; 2] {
        [self.x.star_value(), self.y.star_value()]
    }

    /// Componentwise product, used for inflating anchors by τ.
    #[inline]
    pub fn scale_golden(self, g: GoldenNumber) -> Self {
        GoldenVec {
            x: self.x * g,
            y: self.y * g,
        }
    }

    #[inline]
    pub fn component(self, axis: usize) -> GoldenNumber {
        match axis {
            0 => self.x,
            1 => self.y,
            _ => panic!("axis out of range"),
        }
    }
}

impl Add for GoldenVec {
    type Output = GoldenVec;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        GoldenVec {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
        }
    }
}

impl Sub for GoldenVec {
    type Output = GoldenVec;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        GoldenVec {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
        }
    }
}

impl Neg for GoldenVec {
    type Output = GoldenVec;
    #[inline]
    fn neg(self) -> Self {
        GoldenVec {
            x: -self.x,
            y: -self.y,
        }
    }
}

/// One axis of a Fourier-module point: k = (p + qτ)/√5.
///
/// The module ℤ[τ]/√5 is closed under addition and negation, and the
/// conjugate k⋆ = −(p + q(1−τ))/√5 locates the point in internal space.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FourierIndex {
    pub p: i64,
    pub q: i64,
}

impl FourierIndex {
    pub const ZERO: FourierIndex = FourierIndex { p: 0, q: 0 };

    #[inline]
    pub const fn new(p: i64, q: i64) -> Self {
        FourierIndex { p, q }
    }

    /// Physical position k = (p + qτ)/√5.
    #[inline]
    pub fn value(self) -> f64 {
        (self.p as f64 + self.q as f64 * TAU_F64) / SQRT5_F64
    }

    /// Internal position k⋆ = −(p + q(1−τ))/√5; the ⋆-map flips √5.
    #[inline]
    pub fn star_value(self) -> f64 {
        -(self.p as f64 + self.q as f64 * SIGMA_F64) / SQRT5_F64
    }
}

impl Add for FourierIndex {
    type Output = FourierIndex;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        FourierIndex {
            p: checked(self.p.checked_add(rhs.p)),
            q: checked(self.q.checked_add(rhs.q)),
        }
    }
}

impl Sub for FourierIndex {
    type Output = FourierIndex;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        FourierIndex {
            p: checked(self.p.checked_sub(rhs.p)),
            q: checked(self.q.checked_sub(rhs.q)),
        }
    }
}

impl Neg for FourierIndex {
    type Output = FourierIndex;
    #[inline]
    fn neg(self) -> Self {
        FourierIndex {
            p: checked(self.p.checked_neg()),
            q: checked(self.q.checked_neg()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GoldenNumber {
        GoldenNumber::new(a, b)
    }

    #[test]
    fn defining_relation() {
        assert_eq!(GoldenNumber::TAU * GoldenNumber::TAU, g(1, 1));
    }

    #[test]
    fn square_of_one_plus_tau() {
        // (1+τ)² = τ⁴ = 2 + 3τ
        assert_eq!(g(1, 1) * g(1, 1), g(2, 3));
    }

    #[test]
    fn star_is_multiplicative_on_tau_squared() {
        // (1+τ)⋆ = 2 − τ and (1−τ)² = 2 − τ
        let lhs = (GoldenNumber::TAU * GoldenNumber::TAU).star();
        let rhs = GoldenNumber::TAU.star() * GoldenNumber::TAU.star();
        assert_eq!(lhs, g(2, -1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sign_examples() {
        assert_eq!(g(1, -1).signum(), -1); // 1 − τ < 0
        assert_eq!(g(0, 0).signum(), 0);
        assert_eq!(g(-2, 2).signum(), 1); // 2τ − 2 ≈ 1.236
        assert_eq!(g(3, -2).signum(), -1); // 3 − 2τ ≈ −0.236
        assert_eq!(g(-3, 2).signum(), 1);
        assert_eq!(g(2, -1).signum(), 1); // 2 − τ ≈ 0.382
    }

    #[test]
    fn star_values_of_module_points() {
        assert_eq!(FourierIndex::new(0, 0).star_value(), 0.0);
        assert!((FourierIndex::new(1, 0).star_value() + 1.0 / SQRT5_F64).abs() < 1e-15);
        let expected = -(1.0 - TAU_F64) / SQRT5_F64; // ≈ +0.2763932
        assert!((FourierIndex::new(0, 1).star_value() - expected).abs() < 1e-15);
        assert!((FourierIndex::new(0, 1).star_value() - 0.276_393_2).abs() < 1e-7);
    }

    #[test]
    #[should_panic(expected = "overflowed")]
    fn overflow_is_reported() {
        let big = g(i64::MAX / 2, i64::MAX / 2);
        let _ = big * big;
    }

    #[test]
    fn ordering_is_exact() {
        let mut xs = vec![g(2, -1), g(-1, 1), g(0, 0), g(1, -1), g(0, 1)];
        xs.sort();
        // 1−τ < 0 < 2−τ < −1+τ < τ
        assert_eq!(xs, vec![g(1, -1), g(0, 0), g(2, -1), g(-1, 1), g(0, 1)]);
    }
}
