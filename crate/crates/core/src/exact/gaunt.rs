use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;

use super::halfint::{triangle, HalfInt};
use super::rational::{parity_sign, Rational};
use super::sqrt_rational::SqrtRational;
use super::wigner::wigner_3j;

/// `coeff * (4π)^(power/2)`.
///
/// The transcendental factor is carried as an exponent so that Gaunt
/// coefficients, which all contain `1/sqrt(4π)`, multiply exactly. Two Gaunt
/// coefficients give a rational multiple of `1/(4π)`, which cancels against
/// the explicit `4π` of the spherical-harmonic addition theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourPiScaled {
    pub coeff: SqrtRational,
    pub power: i32,
}

impl FourPiScaled {
    /// Multiplies by `(4π)^k` for integer `k`.
    pub fn times_four_pi(mut self, k: i32) -> Self {
        self.power += 2 * k;
        self
    }

    /// The coefficient, when the `4π` factors have cancelled completely.
    pub fn into_algebraic(self) -> Option<SqrtRational> {
        (self.power == 0 || self.coeff.is_zero()).then_some(self.coeff)
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64() * (4.0 * std::f64::consts::PI).powf(f64::from(self.power) / 2.0)
    }
}

impl Mul for &FourPiScaled {
    type Output = FourPiScaled;
    fn mul(self, rhs: &FourPiScaled) -> FourPiScaled {
        FourPiScaled { coeff: &self.coeff * &rhs.coeff, power: self.power + rhs.power }
    }
}

impl fmt::Display for FourPiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.power {
            0 => write!(f, "{}", self.coeff),
            p if p % 2 == 0 => write!(f, "{} * (4π)^{}", self.coeff, p / 2),
            p => write!(f, "{} * (4π)^({p}/2)", self.coeff),
        }
    }
}

/// Gaunt coefficient `∫ Y_{l1 m1} Y_{l2 m2} Y_{l3 m3} dΩ`
/// `= sqrt((2l1+1)(2l2+1)(2l3+1)/4π) (l1 l2 l3; 0 0 0) (l1 l2 l3; m1 m2 m3)`.
pub fn gaunt(l1: i32, m1: i32, l2: i32, m2: i32, l3: i32, m3: i32) -> FourPiScaled {
    let ls = [l1, l2, l3].map(HalfInt::int);
    let zero = HalfInt::ZERO;
    let parity = wigner_3j(ls[0], ls[1], ls[2], zero, zero, zero);
    let projected = wigner_3j(ls[0], ls[1], ls[2], HalfInt::int(m1), HalfInt::int(m2), HalfInt::int(m3));
    let dims = i64::from((2 * l1 + 1) * (2 * l2 + 1) * (2 * l3 + 1));
    let coeff = &(&SqrtRational::sqrt(Rational::from_integer(BigInt::from(dims))) * &parity) * &projected;
    FourPiScaled { coeff, power: -1 }
}

/// `<l||C^2||l> = (-1)^l (2l+1) (l 2 l; 0 0 0)` for `C^2_q = sqrt(4π/5) Y_{2q}`.
pub fn reduced_c2(l: i32) -> SqrtRational {
    let lh = HalfInt::int(l);
    let zero = HalfInt::ZERO;
    wigner_3j(lh, HalfInt::int(2), lh, zero, zero, zero).scale(i64::from(parity_sign(i64::from(l)) * (2 * l + 1)))
}

/// Reduced matrix element of the rank-2 tensor normalized like `C^2`, for any
/// spin `j`: `-sqrt((2j+1) j(j+1) / ((2j-1)(2j+3)))`.
///
/// For integer `j` this equals [`reduced_c2`]; for half-integer `j` it is the
/// formal continuation used for real-atom spin multiplets. Vanishes when `j`
/// cannot couple to rank 2 (`j < 1`).
pub fn reduced_rank2(j: HalfInt) -> SqrtRational {
    if !triangle(j, HalfInt::int(2), j) {
        return SqrtRational::zero();
    }
    let t = i64::from(j.twice());
    // (2j+1) j(j+1) / ((2j-1)(2j+3)) with 2j = t: (t+1) t (t+2) / (4 (t-1)(t+3))
    let radicand = Rational::new(BigInt::from((t + 1) * t * (t + 2)), BigInt::from(4 * (t - 1) * (t + 3)));
    SqrtRational::new(-1, radicand)
}
