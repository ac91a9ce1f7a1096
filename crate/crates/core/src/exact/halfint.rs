use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// An integer or half-integer, stored as twice its value so that spins like
/// 3/2 are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt(i32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not an integer or half-integer: {0:?}")]
pub struct ParseHalfIntError(pub String);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn int(value: i32) -> Self {
        HalfInt(2 * value)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer value, if there is one.
    pub fn as_integer(self) -> Option<i32> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// `j(j+1)`, exact in binary floating point for all representable spins.
    pub fn casimir(self) -> f64 {
        let j = self.as_f64();
        j * (j + 1.0)
    }

    /// `2j + 1`.
    pub fn multiplicity(self) -> i32 {
        self.0 + 1
    }

    /// Projections `-j, -j+1, ..., j`.
    pub fn projections(self) -> impl Iterator<Item = HalfInt> {
        let j2 = self.0;
        (-j2..=j2).step_by(2).map(HalfInt)
    }

    /// Whether `m` is a valid projection of `self`.
    pub fn admits_projection(self, m: HalfInt) -> bool {
        self.0 >= 0 && m.0.abs() <= self.0 && (self.0 - m.0) % 2 == 0
    }
}

/// Triangle rule `|a - b| <= c <= a + b` with `a + b + c` integer.
pub fn triangle(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
    let (a, b, c) = (a.0, b.0, c.0);
    a >= 0 && b >= 0 && c >= 0 && c <= a + b && c >= (a - b).abs() && (a + b + c) % 2 == 0
}

/// `|a - b|, |a - b| + 1, ..., a + b`.
pub fn coupled_values(a: HalfInt, b: HalfInt) -> impl Iterator<Item = HalfInt> {
    let lo = (a.0 - b.0).abs();
    let hi = a.0 + b.0;
    (lo..=hi).step_by(2).map(HalfInt)
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl From<i32> for HalfInt {
    fn from(v: i32) -> Self {
        HalfInt::int(v)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    /// Accepts `"2"`, `"-1"`, `"3/2"`, `"-1/2"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseHalfIntError(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            None => t.parse::<i32>().map(HalfInt::int).map_err(|_| err()),
            Some((num, den)) => {
                let num: i32 = num.trim().parse().map_err(|_| err())?;
                match den.trim() {
                    "2" => Ok(HalfInt(num)),
                    "1" => Ok(HalfInt::int(num)),
                    _ => Err(err()),
                }
            }
        }
    }
}

/// Integers serialize as JSON numbers, half-integers as `"3/2"` strings.
impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.as_integer() {
            Some(v) => serializer.serialize_i32(v),
            None => serializer.collect_str(self),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(3));
        assert_eq!("-1/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(-1));
        assert_eq!(" 4 ".parse::<HalfInt>().unwrap(), HalfInt::int(4));
        assert_eq!("4/2".parse::<HalfInt>().unwrap(), HalfInt::int(2));
        assert!("2.7".parse::<HalfInt>().is_err());
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("".parse::<HalfInt>().is_err());
        assert_eq!(HalfInt::from_twice(5).to_string(), "5/2");
        assert_eq!(HalfInt::int(-3).to_string(), "-3");
    }

    #[test]
    fn projections_and_triangle() {
        let m: Vec<_> = HalfInt::from_twice(3).projections().map(|m| m.twice()).collect();
        assert_eq!(m, vec![-3, -1, 1, 3]);
        assert!(triangle(HalfInt::int(1), HalfInt::int(1), HalfInt::int(2)));
        assert!(!triangle(HalfInt::int(1), HalfInt::int(1), HalfInt::int(3)));
        assert!(!triangle(HalfInt::int(1), HalfInt::HALF, HalfInt::int(1)));
        let js: Vec<_> = coupled_values(HalfInt::int(2), HalfInt::from_twice(3)).collect();
        assert_eq!(js, vec![HalfInt::from_twice(1), HalfInt::from_twice(3), HalfInt::from_twice(5), HalfInt::from_twice(7)]);
        assert!(HalfInt::int(1).admits_projection(HalfInt::int(-1)));
        assert!(!HalfInt::int(1).admits_projection(HalfInt::HALF));
    }
}
