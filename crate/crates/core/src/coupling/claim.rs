//! Numerical check of how `f(β)` relates to Clebsch-Gordan combinations of
//! spherical harmonics on the two spheres.
//!
//! The `(J, M) = (2, 0)` coupling of `Y_1 ⊗ Y_1` is not rotation invariant,
//! so it cannot be a function of the relative angle alone. The rotation
//! invariant `(0, 0)` coupling of `Y_2 ⊗ Y_2` is, and by the addition theorem
//! it equals `sqrt(5)/(16π) · f`. Both readings are measured.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::exact::{clebsch_gordan, HalfInt};
use crate::harmonics::{angles, spherical_harmonic};

use super::{f_classical, CouplingError};

/// Least-squares fit `y ≈ constant · x` through the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProportionalityFit {
    pub constant: f64,
    /// `1 / constant`, i.e. the factor in `x ≈ inverse · y`.
    pub inverse: f64,
    pub residual_rms: f64,
    /// `residual_rms / rms(y)`.
    pub relative_residual: f64,
}

pub fn fit_proportionality(xs: &[f64], ys: &[f64]) -> Result<ProportionalityFit, CouplingError> {
    assert_eq!(xs.len(), ys.len());
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    if xs.is_empty() || sxx == 0.0 {
        return Err(CouplingError::DegenerateGrid("regressor vanishes on every sample".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let constant = sxy / sxx;
    let n = xs.len() as f64;
    let residual_rms = (xs.iter().zip(ys).map(|(x, y)| (y - constant * x).powi(2)).sum::<f64>() / n).sqrt();
    let y_rms = (ys.iter().map(|y| y * y).sum::<f64>() / n).sqrt();
    let relative_residual = if y_rms > 0.0 { residual_rms / y_rms } else { 0.0 };
    Ok(ProportionalityFit { constant, inverse: 1.0 / constant, residual_rms, relative_residual })
}

/// `Σ_m <l m l (M-m) | J M> Y_{lm}(Ω) Y_{l,M-m}(Ω')`.
pub fn bipolar_combination(l: u32, j: u32, m: i32, omega: (f64, f64), omega_p: (f64, f64)) -> Complex64 {
    let (lh, jh, mh) = (HalfInt::int(l as i32), HalfInt::int(j as i32), HalfInt::int(m));
    let li = l as i32;
    (-li..=li)
        .filter(|m1| (m - m1).abs() <= li)
        .map(|m1| {
            let cg = clebsch_gordan(lh, HalfInt::int(m1), lh, HalfInt::int(m - m1), jh, mh).to_f64();
            cg * spherical_harmonic(l, m1, omega.0, omega.1) * spherical_harmonic(l, m - m1, omega_p.0, omega_p.1)
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CgClaimReport {
    /// `f ≈ constant · {Y_1 ⊗ Y_1}_{2,0}`.
    pub literal: ProportionalityFit,
    /// `f ≈ constant · {Y_2 ⊗ Y_2}_{0,0}`.
    pub addition_theorem: ProportionalityFit,
    /// `sqrt(5) / (16π)`.
    pub quoted_constant: f64,
    pub samples: usize,
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Orthonormal pairs `(x, e)`; the second point sits at `cos β x + sin β e`.
fn orientations() -> [([f64; 3], [f64; 3]); 4] {
    [
        ([0.0, 0.0, 1.0], [1.0, 0.0, 0.0]),
        ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
        (normalize([1.0, 1.0, 1.0]), normalize([1.0, -1.0, 0.0])),
        (normalize([0.3, -0.8, 0.5]), normalize([0.8, 0.3, 0.0])),
    ]
}

/// Samples both couplings at every `β` in several orientations and fits
/// `f(β)` against each.
pub fn verify_cg_claim(betas: &[f64]) -> Result<CgClaimReport, CouplingError> {
    let first = betas.first().ok_or_else(|| CouplingError::DegenerateGrid("empty grid".into()))?;
    if betas.iter().all(|b| b == first) {
        return Err(CouplingError::DegenerateGrid("all samples share one relative angle".into()));
    }
    let mut f = Vec::new();
    let mut literal = Vec::new();
    let mut invariant = Vec::new();
    for &beta in betas {
        for (x, e) in orientations() {
            let xp = [0, 1, 2].map(|i| beta.cos() * x[i] + beta.sin() * e[i]);
            let (a, b) = (angles(x), angles(xp));
            f.push(f_classical(beta));
            literal.push(bipolar_combination(1, 2, 0, a, b).re);
            invariant.push(bipolar_combination(2, 0, 0, a, b).re);
        }
    }
    Ok(CgClaimReport {
        literal: fit_proportionality(&literal, &f)?,
        addition_theorem: fit_proportionality(&invariant, &f)?,
        quoted_constant: 5f64.sqrt() / (16.0 * PI),
        samples: f.len(),
    })
}

/// [`verify_cg_claim`] on `grid_size` midpoints of `(0, π)`.
pub fn verify_cg_normalization_claim(grid_size: usize) -> Result<CgClaimReport, CouplingError> {
    if grid_size < 8 {
        return Err(CouplingError::DegenerateGrid(format!("grid of {grid_size} points, need at least 8")));
    }
    let betas: Vec<f64> = (0..grid_size).map(|i| PI * (i as f64 + 0.5) / grid_size as f64).collect();
    verify_cg_claim(&betas)
}
