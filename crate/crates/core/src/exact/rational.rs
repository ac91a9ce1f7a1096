use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// `num / den` as an exact rational.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Exact `n!`.
pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(-1)^k` for any integer `k`.
pub fn parity_sign(k: i64) -> i32 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a nonnegative rational, if it is the square of a
/// rational.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    let num = exact_isqrt(q.numer())?;
    let den = exact_isqrt(q.denom())?;
    Some(Rational::new(num, den))
}

/// Writes `n = s^2 * d` with `d` squarefree and returns `(s, d)`.
///
/// Trial division; whenever the unfactored cofactor becomes a perfect square
/// it is absorbed at once, so radicands of the form (small primes) x (big
/// square) stay cheap.
pub fn squarefree_decompose(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p = BigUint::from(2u32);
    loop {
        let r = rest.sqrt();
        if &r * &r == rest {
            square *= r;
            break;
        }
        if &p * &p > rest {
            free *= rest;
            break;
        }
        let mut count = 0u32;
        loop {
            let (q, rem) = rest.div_rem(&p);
            if !rem.is_zero() {
                break;
            }
            rest = q;
            count += 1;
        }
        if count > 0 {
            square *= p.pow(count / 2);
            if count % 2 == 1 {
                free *= &p;
            }
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    (square, free)
}

/// Absolute value of a `BigInt` as `BigUint`.
pub(crate) fn magnitude(n: &BigInt) -> BigUint {
    n.magnitude().clone()
}

pub(crate) fn from_unsigned(n: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        let iterated: u64 = (1..=20u64).product();
        assert_eq!(iterated, 2_432_902_008_176_640_000);
        assert_eq!(factorial(20), BigInt::from(iterated));
    }

    #[test]
    fn lowest_terms() {
        let q = rat(-12, 150);
        assert_eq!(q.to_string(), "-2/25");
        assert_eq!(rat(6, -4).to_string(), "-3/2");
        assert_eq!(int(3).to_string(), "3");
    }

    #[test]
    fn squarefree_parts() {
        let cases: [(u64, u64, u64); 6] = [(1, 1, 1), (12, 2, 3), (72, 6, 2), (49, 7, 1), (30, 1, 30), (2 * 1_000_003u64.pow(2), 1_000_003, 2)];
        for (n, s, d) in cases {
            let (gs, gd) = squarefree_decompose(&BigUint::from(n));
            assert_eq!((gs, gd), (BigUint::from(s), BigUint::from(d)), "n = {n}");
        }
    }

    #[test]
    fn rational_sqrt() {
        assert_eq!(exact_sqrt(&rat(4, 9)), Some(rat(2, 3)));
        assert_eq!(exact_sqrt(&rat(2, 3)), None);
        assert_eq!(exact_sqrt(&int(0)), Some(int(0)));
    }
}
