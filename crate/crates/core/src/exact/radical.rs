use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::{from_unsigned, magnitude, squarefree_decompose, Rational};
use super::sqrt_rational::SqrtRational;

/// Exact element of the field generated by square roots of integers:
/// `sum_d coeff_d * sqrt(d)` over squarefree `d >= 1`.
///
/// Keys are squarefree and coefficients nonzero, so a value equal to a
/// rational carries at most the key `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RadicalSum {
    terms: BTreeMap<BigInt, Rational>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(BigInt::one(), q);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &Rational)> {
        self.terms.iter()
    }

    /// The value as a rational when only the `sqrt(1)` key is present.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&BigInt::one()).cloned(),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, c)| c.to_f64().unwrap_or(f64::NAN) * d.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum()
    }

    /// Adds `coeff * sqrt(d)` for an already squarefree `d`.
    fn add_term(&mut self, d: BigInt, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(d).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }
}

impl From<&SqrtRational> for RadicalSum {
    /// `sign * sqrt(n/m) = sign * (s/m) * sqrt(d)` where `n*m = s^2 * d`.
    fn from(v: &SqrtRational) -> Self {
        if v.is_zero() {
            return Self::zero();
        }
        let q = v.radicand();
        let (s, d) = squarefree_decompose(&(magnitude(q.numer()) * magnitude(q.denom())));
        let coeff = Rational::new(from_unsigned(s) * v.sign(), q.denom().clone());
        let mut out = Self::zero();
        out.add_term(from_unsigned(d), coeff);
        out
    }
}

impl AddAssign<&RadicalSum> for RadicalSum {
    fn add_assign(&mut self, rhs: &RadicalSum) {
        for (d, c) in &rhs.terms {
            self.add_term(d.clone(), c.clone());
        }
    }
}

impl Add for &RadicalSum {
    type Output = RadicalSum;
    fn add(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul for &RadicalSum {
    type Output = RadicalSum;
    /// `sqrt(a) sqrt(b) = g sqrt(a b / g^2)` with `g = gcd(a, b)` keeps keys
    /// squarefree.
    fn mul(self, rhs: &RadicalSum) -> RadicalSum {
        use num_integer::Integer;
        let mut out = RadicalSum::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let g = a.gcd(b);
                let key = (a / &g) * (b / &g);
                out.add_term(key, ca * cb * Rational::from_integer(g));
            }
        }
        out
    }
}
