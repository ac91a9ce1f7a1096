//! Exact arithmetic and angular-momentum coupling coefficients.
//!
//! Nothing in here touches floating point except the `to_f64` conversions.
//! All functions are pure and thread-safe.

mod gaunt;
mod halfint;
mod radical;
mod rational;
mod sqrt_rational;
mod wigner;

pub use gaunt::{gaunt, reduced_c2, reduced_rank2, FourPiScaled};
pub use halfint::{coupled_values, triangle, HalfInt, ParseHalfIntError};
pub use radical::RadicalSum;
pub use rational::{exact_sqrt, factorial, int, parity_sign, rat, squarefree_decompose, Rational};
pub use sqrt_rational::SqrtRational;
pub use wigner::{clebsch_gordan, wigner_3j, wigner_6j};
