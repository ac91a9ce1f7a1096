use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, Matrix3};
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::exact::HalfInt;

use super::{f_value, Multiplet, SpectraError};

pub const DEFAULT_LANDE_THRESHOLD: f64 = 0.05;

/// Weighted fit of `E_J = E0 + A J(J+1)/2 + C ⟨f⟩_J`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitResult {
    pub label: String,
    pub e0: f64,
    pub a: f64,
    pub c: f64,
    /// Covariance of `(E0, A, C)`. Scaled by the residual variance
    /// `χ²/dof` when `dof > 0`; the bare `(XᵀWX)⁻¹` otherwise.
    #[serde(serialize_with = "ser_matrix3")]
    pub covariance: Matrix3<f64>,
    pub dof: usize,
    pub confidence: f64,
    /// Two-sided Student-t interval for `C`; absent when `dof = 0`.
    pub c_kappa_bound: Option<(f64, f64)>,
    pub residuals: BTreeMap<HalfInt, f64>,
    /// Ratio of extreme singular values of the weighted design.
    pub condition: f64,
}

fn ser_matrix3<S: serde::Serializer>(m: &Matrix3<f64>, s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<[f64; 3]> = (0..3).map(|i| [m[(i, 0)], m[(i, 1)], m[(i, 2)]]).collect();
    rows.serialize(s)
}

impl FitResult {
    /// `c = C / (ħ² κ)` and its interval, under an assumed curvature
    /// coefficient `κ`.
    pub fn implied_c(&self, kappa: f64, hbar_sq: f64) -> (f64, Option<(f64, f64)>) {
        let scale = hbar_sq * kappa;
        let bound = self.c_kappa_bound.map(|(lo, hi)| {
            let (a, b) = (lo / scale, hi / scale);
            (a.min(b), a.max(b))
        });
        (self.c / scale, bound)
    }
}

fn weights(m: &Multiplet) -> Result<Vec<f64>, SpectraError> {
    let zeros = m.levels.values().filter(|(_, u)| *u == 0.0).count();
    match zeros {
        0 => Ok(m.levels.values().map(|(_, u)| 1.0 / (u * u)).collect()),
        n if n == m.levels.len() => Ok(vec![1.0; n]),
        _ => Err(SpectraError::InvalidMultiplet(format!(
            "{}: uncertainties must be all positive or all zero, {zeros} of {} are zero",
            m.label,
            m.levels.len()
        ))),
    }
}

pub fn fit_multiplet(m: &Multiplet) -> Result<FitResult, SpectraError> {
    fit_multiplet_with(m, 0.95)
}

/// Weighted least squares with weights `1/σ²` (unit weights when every
/// uncertainty is zero) and a Student-t interval at `confidence` for `C`.
pub fn fit_multiplet_with(m: &Multiplet, confidence: f64) -> Result<FitResult, SpectraError> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(SpectraError::InvalidMultiplet(format!("confidence {confidence} is not inside (0, 1)")));
    }
    let n = m.levels.len();
    if n < 3 {
        return Err(SpectraError::InsufficientLevels { have: n, need: 3 });
    }
    let w = weights(m)?;
    let mut design = DMatrix::zeros(n, 3);
    let mut y = DVector::zeros(n);
    for (i, (&j, &(e, _))) in m.levels.iter().enumerate() {
        let (_, f) = f_value(m.level(j))?;
        let root = w[i].sqrt();
        design[(i, 0)] = root;
        design[(i, 1)] = root * j.casimir() / 2.0;
        design[(i, 2)] = root * f;
        y[i] = root * e;
    }
    let svd = design.clone().svd(true, true);
    let (smax, smin) = (svd.singular_values.max(), svd.singular_values.min());
    let condition = smax / smin;
    if !(smin > 1e-10 * smax) {
        let v_t = svd.v_t.as_ref().expect("requested");
        let idx = svd.singular_values.imin();
        let null = v_t.row(idx);
        return Err(SpectraError::SingularDesign {
            condition,
            detail: format!(
                "{}: columns (1, J(J+1)/2, ⟨f⟩_J) are collinear with weights ({:.3}, {:.3}, {:.3})",
                m.label, null[0], null[1], null[2]
            ),
        });
    }
    let beta = svd.solve(&y, 0.0).expect("SVD was computed with U and V");
    let fitted = &design * &beta;
    let dof = n - 3;
    let rss = (&y - &fitted).norm_squared();
    let xtx_inv = (design.transpose() * &design).try_inverse().ok_or_else(|| SpectraError::SingularDesign {
        condition,
        detail: format!("{}: normal matrix is not invertible", m.label),
    })?;
    let mut covariance: Matrix3<f64> = Matrix3::from_iterator(xtx_inv.iter().copied());
    let mut c_kappa_bound = None;
    if dof > 0 {
        covariance *= rss / dof as f64;
        let t = StudentsT::new(0.0, 1.0, dof as f64).expect("positive dof").inverse_cdf(0.5 + confidence / 2.0);
        let half = t * covariance[(2, 2)].sqrt();
        c_kappa_bound = Some((beta[2] - half, beta[2] + half));
    }
    let residuals = m
        .levels
        .iter()
        .enumerate()
        .map(|(i, (&j, &(e, _)))| (j, e - fitted[i] / w[i].sqrt()))
        .collect();
    Ok(FitResult {
        label: m.label.clone(),
        e0: beta[0],
        a: beta[1],
        c: beta[2],
        covariance,
        dof,
        confidence,
        c_kappa_bound,
        residuals,
        condition,
    })
}

/// Empirical interval-rule slopes of a multiplet.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LandeReport {
    pub label: String,
    /// `(J, (E_J - E_{J-1}) / J)` for each adjacent pair present.
    pub ratios: Vec<(HalfInt, f64)>,
    /// `(max - min) / |mean|` of the ratios.
    pub spread: f64,
    pub threshold: f64,
    pub flagged: bool,
}

pub fn lande_report(m: &Multiplet, threshold: f64) -> Result<LandeReport, SpectraError> {
    if m.levels.len() < 3 {
        return Err(SpectraError::InsufficientLevels { have: m.levels.len(), need: 3 });
    }
    let levels: Vec<(HalfInt, f64)> = m.levels.iter().map(|(j, (e, _))| (*j, *e)).collect();
    let ratios: Vec<(HalfInt, f64)> = levels
        .windows(2)
        .filter(|w| (w[1].0 - w[0].0) == HalfInt::ONE)
        .map(|w| (w[1].0, (w[1].1 - w[0].1) / w[1].0.as_f64()))
        .collect();
    if ratios.len() < 2 {
        return Err(SpectraError::InsufficientLevels { have: ratios.len() + 1, need: 3 });
    }
    let mean = ratios.iter().map(|r| r.1).sum::<f64>() / ratios.len() as f64;
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r.1), hi.max(r.1)));
    let spread = if hi == lo { 0.0 } else { (hi - lo) / mean.abs() };
    Ok(LandeReport { label: m.label.clone(), ratios, spread, threshold, flagged: spread > threshold })
}
