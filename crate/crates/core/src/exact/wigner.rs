//! Clebsch-Gordan coefficients and Wigner 3j/6j symbols from the Racah
//! single-sum formulas, evaluated in exact integer arithmetic.
//!
//! Phases follow the Condon-Shortley convention. Every coupling that breaks a
//! triangle rule, a projection-sum rule, or asks for an impossible projection
//! evaluates to exact zero.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::halfint::{triangle, HalfInt};
use super::rational::{factorial, parity_sign, Rational};
use super::sqrt_rational::SqrtRational;

/// Factorial of a spin combination given as twice its value.
fn fact2(twice: i32) -> Option<BigInt> {
    (twice >= 0 && twice % 2 == 0).then(|| factorial((twice / 2) as u32))
}

/// Product of the factorials of several spin combinations (twice values),
/// `None` if any of them is negative.
fn fact2_product(args: &[i32]) -> Option<BigInt> {
    args.iter().try_fold(BigInt::one(), |acc, &a| fact2(a).map(|f| acc * f))
}

/// Triangle coefficient `(a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!`.
fn delta(a: HalfInt, b: HalfInt, c: HalfInt) -> Rational {
    let (a, b, c) = (a.twice(), b.twice(), c.twice());
    let num = fact2_product(&[a + b - c, a - b + c, -a + b + c]).expect("triangle checked by caller");
    let den = fact2(a + b + c + 2).expect("triangle checked by caller");
    Rational::new(num, den)
}

/// `sum_k (-1)^k / prod_i (base_i + sign_i * 2k)!` over every integer `k >= 0`
/// for which all factorial arguments are nonnegative. Arguments are twice
/// values; each entry is `(base, sign)` with `sign` in `{+1, -1}`.
fn alternating_sum(args: &[(i32, i32)]) -> Rational {
    let upper = args.iter().filter(|(_, s)| *s < 0).map(|(b, _)| b / 2).min().unwrap_or(0);
    let mut sum = Rational::zero();
    for k in 0..=upper.max(0) {
        let twice: Vec<i32> = args.iter().map(|(b, s)| b + s * 2 * k).collect();
        if let Some(den) = fact2_product(&twice) {
            sum += Rational::new(BigInt::from(parity_sign(i64::from(k))), den);
        }
    }
    sum
}

/// `phase * sign(sum) * sqrt(prefactor * sum^2)`.
fn assemble(phase: i32, prefactor: Rational, sum: Rational) -> SqrtRational {
    if sum.is_zero() {
        return SqrtRational::zero();
    }
    let sign = if sum.is_negative() { -phase } else { phase };
    SqrtRational::new(sign, prefactor * &sum * &sum)
}

fn projections_valid(pairs: &[(HalfInt, HalfInt)]) -> bool {
    pairs.iter().all(|&(j, m)| j.admits_projection(m))
}

/// `<j1 m1 j2 m2 | J M>`.
pub fn clebsch_gordan(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> SqrtRational {
    if !projections_valid(&[(j1, m1), (j2, m2), (j, m)]) || m1 + m2 != m || !triangle(j1, j2, j) {
        return SqrtRational::zero();
    }
    let (a, b, c) = (j1.twice(), j2.twice(), j.twice());
    let (ma, mb, mc) = (m1.twice(), m2.twice(), m.twice());
    let projections = fact2_product(&[a + ma, a - ma, b + mb, b - mb, c + mc, c - mc]).expect("valid projections");
    let prefactor = delta(j1, j2, j) * Rational::from_integer(projections * (c + 1));
    // k! (j1+j2-J-k)! (j1-m1-k)! (j2+m2-k)! (J-j2+m1+k)! (J-j1-m2+k)!
    let sum = alternating_sum(&[(0, 1), (a + b - c, -1), (a - ma, -1), (b + mb, -1), (c - b + ma, 1), (c - a - mb, 1)]);
    assemble(1, prefactor, sum)
}

/// Wigner 3j symbol `(j1 j2 j3; m1 m2 m3)`.
pub fn wigner_3j(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt, m3: HalfInt) -> SqrtRational {
    if !projections_valid(&[(j1, m1), (j2, m2), (j3, m3)]) || (m1 + m2 + m3) != HalfInt::ZERO || !triangle(j1, j2, j3) {
        return SqrtRational::zero();
    }
    let (a, b, c) = (j1.twice(), j2.twice(), j3.twice());
    let (ma, mb, mc) = (m1.twice(), m2.twice(), m3.twice());
    let projections = fact2_product(&[a + ma, a - ma, b + mb, b - mb, c + mc, c - mc]).expect("valid projections");
    let prefactor = delta(j1, j2, j3) * Rational::from_integer(projections);
    // k! (j3-j2+k+m1)! (j3-j1+k-m2)! (j1+j2-j3-k)! (j1-k-m1)! (j2-k+m2)!
    let sum = alternating_sum(&[(0, 1), (c - b + ma, 1), (c - a - mb, 1), (a + b - c, -1), (a - ma, -1), (b + mb, -1)]);
    let phase = parity_sign(i64::from((a - b - mc) / 2));
    assemble(phase, prefactor, sum)
}

/// Wigner 6j symbol `{j1 j2 j3; j4 j5 j6}`.
pub fn wigner_6j(j1: HalfInt, j2: HalfInt, j3: HalfInt, j4: HalfInt, j5: HalfInt, j6: HalfInt) -> SqrtRational {
    let triads = [(j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3)];
    if !triads.iter().all(|&(a, b, c)| triangle(a, b, c)) {
        return SqrtRational::zero();
    }
    let prefactor = triads.iter().map(|&(a, b, c)| delta(a, b, c)).fold(Rational::one(), |acc, d| acc * d);
    let tw = |x: HalfInt| x.twice();
    let lower: Vec<i32> = triads.iter().map(|&(a, b, c)| tw(a) + tw(b) + tw(c)).collect();
    let upper = [
        tw(j1) + tw(j2) + tw(j4) + tw(j5),
        tw(j2) + tw(j3) + tw(j5) + tw(j6),
        tw(j3) + tw(j1) + tw(j6) + tw(j4),
    ];
    let t_min = lower.iter().copied().max().unwrap_or(0) / 2;
    let t_max = upper.iter().copied().min().unwrap_or(0) / 2;
    let mut sum = Rational::zero();
    for t in t_min..=t_max {
        let mut den_args: Vec<i32> = lower.iter().map(|l| 2 * t - l).collect();
        den_args.extend(upper.iter().map(|u| u - 2 * t));
        if let Some(den) = fact2_product(&den_args) {
            let num = factorial((t + 1) as u32) * parity_sign(i64::from(t));
            sum += Rational::new(num, den);
        }
    }
    assemble(1, prefactor, sum)
}
