use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::rational::{exact_sqrt, Rational};

/// Signed square root of a nonnegative rational: `sign * sqrt(radicand)`.
///
/// This is the value domain of Clebsch-Gordan, 3j and 6j symbols. Products
/// stay in the domain exactly; sums in general do not (see
/// [`RadicalSum`](super::RadicalSum)).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqrtRational {
    sign: i8,
    radicand: Rational,
}

impl SqrtRational {
    pub fn zero() -> Self {
        SqrtRational { sign: 0, radicand: Rational::zero() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::from_integer(1.into()))
    }

    /// `sign * sqrt(radicand)`; the sign is dropped when the radicand is zero.
    ///
    /// # Panics
    /// If `radicand` is negative.
    pub fn new(sign: i32, radicand: Rational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand {radicand}");
        if radicand.is_zero() || sign == 0 {
            return Self::zero();
        }
        SqrtRational { sign: if sign > 0 { 1 } else { -1 }, radicand }
    }

    /// `+sqrt(q)`.
    pub fn sqrt(q: Rational) -> Self {
        Self::new(1, q)
    }

    /// The rational `q` itself, written as `sign(q) * sqrt(q^2)`.
    pub fn from_rational(q: Rational) -> Self {
        let sign = match q.cmp(&Rational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
        Self::new(sign, &q * &q)
    }

    pub fn sign(&self) -> i32 {
        i32::from(self.sign)
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// The square of the value, exactly.
    pub fn square(&self) -> Rational {
        self.radicand.clone()
    }

    /// The value as a rational, if the radicand is a perfect square.
    pub fn as_rational(&self) -> Option<Rational> {
        let root = exact_sqrt(&self.radicand)?;
        Some(if self.sign < 0 { -root } else { root })
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.radicand.numer().to_f64().unwrap_or(f64::NAN) / self.radicand.denom().to_f64().unwrap_or(f64::NAN);
        f64::from(self.sign) * r.sqrt()
    }

    /// Multiplies by the integer `k`.
    pub fn scale(&self, k: i64) -> Self {
        self * &SqrtRational::from_rational(Rational::from_integer(BigInt::from(k)))
    }
}

impl Mul for &SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: &SqrtRational) -> SqrtRational {
        SqrtRational::new(i32::from(self.sign * rhs.sign), &self.radicand * &rhs.radicand)
    }
}

impl Mul for SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: SqrtRational) -> SqrtRational {
        &self * &rhs
    }
}

impl Neg for SqrtRational {
    type Output = SqrtRational;
    fn neg(self) -> SqrtRational {
        SqrtRational { sign: -self.sign, radicand: self.radicand }
    }
}

impl fmt::Display for SqrtRational {
    /// `8/5` when rational, otherwise `-√(2/15)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let sign = if self.sign < 0 { "-" } else { "" };
        write!(f, "{sign}√({})", self.radicand)
    }
}
