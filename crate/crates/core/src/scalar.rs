//! Scalar traits shared by the exact linear algebra.
//!
//! Everything determinant-shaped in this crate is written against [`Ring`]
//! and [`ExactRing`] so the same elimination code runs over big integers,
//! Laurent polynomials with big-integer coefficients, and the two-element
//! field used for parity computations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A commutative ring with identity.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// An integral domain where exact division can be carried out.
///
/// `exact_div(a, b)` returns `Some(q)` with `q * b == a` when such `q`
/// exists, `None` otherwise. Fraction-free elimination only ever divides
/// when the quotient is known to exist.
pub trait ExactRing: Ring {
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

impl ExactRing for BigInt {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }
}

impl ExactRing for i128 {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if *divisor == 0 || self % divisor != 0 {
            return None;
        }
        Some(self / divisor)
    }
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf2(pub bool);

impl Gf2 {
    pub fn from_int(v: i64) -> Self {
        Gf2(v.rem_euclid(2) == 1)
    }

    pub fn as_u8(self) -> u8 {
        self.0 as u8
    }
}

impl fmt::Debug for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

impl Add for Gf2 {
    type Output = Gf2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Sub for Gf2 {
    type Output = Gf2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    fn neg(self) -> Gf2 {
        self
    }
}

impl Zero for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Gf2 {
    fn one() -> Self {
        Gf2(true)
    }
}

impl ExactRing for Gf2 {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        divisor.0.then_some(*self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_arithmetic() {
        let one = Gf2::one();
        let zero = Gf2::zero();
        assert_eq!(one + one, zero);
        assert_eq!(one * one, one);
        assert_eq!(one * zero, zero);
        assert_eq!(-one, one);
        assert_eq!(Gf2::from_int(-3), one);
        assert_eq!(one.exact_div(&zero), None);
    }

    #[test]
    fn bigint_exact_division() {
        let a = BigInt::from(42);
        assert_eq!(a.exact_div(&BigInt::from(7)), Some(BigInt::from(6)));
        assert_eq!(a.exact_div(&BigInt::from(5)), None);
        assert_eq!(a.exact_div(&BigInt::from(0)), None);
    }
}
