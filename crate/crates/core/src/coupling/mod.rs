//! Diagonal matrix elements of `f = 4 - 6 sin²β = 4 P₂(cos β)` in
//! Russell-Saunders states `|(L S) J M>`.
//!
//! Two independent routes are provided. [`f_expectation_6j`] uses the
//! scalar-product theorem for the rank-2 tensors `C²(L-sphere) · C²(S-sphere)`;
//! [`f_expectation_msum`] expands the coupled state in the product basis with
//! Clebsch-Gordan coefficients and sums Gaunt-coefficient products in exact
//! radical arithmetic. They must agree exactly.

mod claim;
mod table;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{
    clebsch_gordan, coupled_values, gaunt, parity_sign, rat, reduced_rank2, triangle, wigner_6j, HalfInt, RadicalSum,
    Rational, SqrtRational,
};

pub use claim::{
    bipolar_combination, fit_proportionality, verify_cg_claim, verify_cg_normalization_claim, CgClaimReport,
    ProportionalityFit,
};
pub use table::{multiplet_rows, table1, table1_discrepancies, Discrepancy, FTableRow, PublishedRow, PUBLISHED_TABLE1};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CouplingError {
    #[error("L = {l}, S = {s} cannot couple to J = {j}")]
    InvalidCoupling { l: HalfInt, s: HalfInt, j: HalfInt },
    #[error("matrix element for {0} is not rational: {1}")]
    IrrationalResult(String, String),
    #[error("the spherical-harmonic route needs integer L and S, got L = {l}, S = {s}")]
    NotOrbital { l: HalfInt, s: HalfInt },
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
}

/// A Russell-Saunders fine-structure level `(L S) J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoupledLevel {
    #[serde(rename = "L")]
    l: HalfInt,
    #[serde(rename = "S")]
    s: HalfInt,
    #[serde(rename = "J")]
    j: HalfInt,
}

impl CoupledLevel {
    pub fn new(l: HalfInt, s: HalfInt, j: HalfInt) -> Result<Self, CouplingError> {
        if !triangle(l, s, j) {
            return Err(CouplingError::InvalidCoupling { l, s, j });
        }
        Ok(CoupledLevel { l, s, j })
    }

    /// Integer quantum numbers, for the common orbital case.
    pub fn from_ints(l: i32, s: i32, j: i32) -> Result<Self, CouplingError> {
        Self::new(HalfInt::int(l), HalfInt::int(s), HalfInt::int(j))
    }

    pub fn l(&self) -> HalfInt {
        self.l
    }

    pub fn s(&self) -> HalfInt {
        self.s
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    /// All levels of the `(L, S)` multiplet, in increasing `J`.
    pub fn multiplet(l: HalfInt, s: HalfInt) -> Vec<CoupledLevel> {
        coupled_values(l, s).map(|j| CoupledLevel { l, s, j }).collect()
    }
}

impl std::fmt::Display for CoupledLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(L={}, S={}, J={})", self.l, self.s, self.j)
    }
}

/// `f(β) = 4 - 6 sin²β`.
pub fn f_classical(beta: f64) -> f64 {
    let s = beta.sin();
    4.0 - 6.0 * s * s
}

/// `<(L S) J | f | (L S) J> = 4 (-1)^{L+S+J} {L S J; S L 2} <L||C²||L> <S||C²||S>`.
///
/// Half-integer `L` or `S` go through the formal rank-2 continuation of
/// [`reduced_rank2`].
pub fn f_expectation_6j(level: CoupledLevel) -> Result<Rational, CouplingError> {
    let CoupledLevel { l, s, j } = level;
    if !triangle(l, s, j) {
        return Err(CouplingError::InvalidCoupling { l, s, j });
    }
    let phase = parity_sign(i64::from((l + s + j).twice() / 2));
    let six_j = wigner_6j(l, s, j, s, l, HalfInt::int(2));
    let value = (&(&six_j * &reduced_rank2(l)) * &reduced_rank2(s)).scale(i64::from(4 * phase));
    value.as_rational().ok_or_else(|| CouplingError::IrrationalResult(level.to_string(), value.to_string()))
}

/// Same matrix element as [`f_expectation_6j`], evaluated at `M = J` by the
/// product-basis expansion with `f = (16π/5) Σ_q (-1)^q Y_{2q}(Ω) Y_{2,-q}(Ω')`.
pub fn f_expectation_msum(level: CoupledLevel) -> Result<Rational, CouplingError> {
    f_matrix_element_msum(level, level.j)
}

/// `<(L S) J M | f | (L S) J M>` by the m-sum; independent of `M`.
pub fn f_matrix_element_msum(level: CoupledLevel, m: HalfInt) -> Result<Rational, CouplingError> {
    let CoupledLevel { l, s, j } = level;
    let (Some(li), Some(si)) = (l.as_integer(), s.as_integer()) else {
        return Err(CouplingError::NotOrbital { l, s });
    };
    if !triangle(l, s, j) || !j.admits_projection(m) {
        return Err(CouplingError::InvalidCoupling { l, s, j });
    }
    let mi = m.as_integer().expect("integer L, S give integer M");
    let four_fifths = SqrtRational::from_rational(rat(4, 5));
    let mut total = RadicalSum::zero();
    for ml in -li..=li {
        let ms = mi - ml;
        if ms.abs() > si {
            continue;
        }
        let ket = clebsch_gordan(l, HalfInt::int(ml), s, HalfInt::int(ms), j, m);
        if ket.is_zero() {
            continue;
        }
        for q in -2..=2 {
            let (ml2, ms2) = (ml + q, ms - q);
            if ml2.abs() > li || ms2.abs() > si {
                continue;
            }
            let bra = clebsch_gordan(l, HalfInt::int(ml2), s, HalfInt::int(ms2), j, m);
            if bra.is_zero() {
                continue;
            }
            // <l m'| Y_{2q} |l m> = (-1)^{m'} Gaunt(l, -m'; 2, q; l, m)
            let orbital = gaunt(li, -ml2, 2, q, li, ml);
            let spin = gaunt(si, -ms2, 2, -q, si, ms);
            let angular = (&orbital * &spin)
                .times_four_pi(1)
                .into_algebraic()
                .expect("two Gaunt coefficients carry exactly one 1/(4π)");
            let phase = parity_sign(i64::from(q + ml2 + ms2));
            let term = (&(&(&bra * &ket) * &angular) * &four_fifths).scale(i64::from(phase));
            total += &RadicalSum::from(&term);
        }
    }
    total.as_rational().ok_or_else(|| CouplingError::IrrationalResult(level.to_string(), format!("{:?}", total)))
}

/// `(⟨f⟩_J - ⟨f⟩_{J-1}) / J`.
pub fn interval_factor(f_j: &Rational, f_prev: &Rational, j: HalfInt) -> Rational {
    (f_j - f_prev) / Rational::new(BigInt::from(j.twice()), BigInt::from(2))
}

/// `Σ_J (2J+1) ⟨f⟩_J` over a multiplet.
pub fn multiplet_trace(l: HalfInt, s: HalfInt) -> Result<Rational, CouplingError> {
    CoupledLevel::multiplet(l, s).into_iter().try_fold(Rational::zero(), |acc, level| {
        Ok(acc + f_expectation_6j(level)? * Rational::from_integer(BigInt::from(level.j.multiplicity())))
    })
}
