use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::coupling::f_classical;

use super::manifold::{ConfigPoint, InertiaTriple, ProductSpheres};
use super::{scalar_curvature, GeometryError, Numerics};

/// Both spheres on the equator, azimuths `β` apart.
pub fn equator_point(beta: f64) -> Result<ConfigPoint, GeometryError> {
    ConfigPoint::new(FRAC_PI_2, beta, FRAC_PI_2, 0.0)
}

/// Both points on the meridian `φ = 0`, symmetric about the equator.
pub fn meridian_point(beta: f64) -> Result<ConfigPoint, GeometryError> {
    ConfigPoint::new(FRAC_PI_2 - beta / 2.0, 0.0, FRAC_PI_2 + beta / 2.0, 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfilePoint {
    pub beta: f64,
    pub f: f64,
    pub r_equator: f64,
    pub r_meridian: f64,
    /// Sum of the two curvature error estimates.
    pub est_error: f64,
}

/// Scalar curvature against relative angle, in two parametrizations.
pub fn curvature_profile(inertia: &InertiaTriple, betas: &[f64], numerics: &Numerics) -> Result<Vec<ProfilePoint>, GeometryError> {
    betas
        .par_iter()
        .map(|&beta| {
            let eq = scalar_curvature(inertia, &equator_point(beta)?, numerics)?;
            let mer = scalar_curvature(inertia, &meridian_point(beta)?, numerics)?;
            Ok(ProfilePoint {
                beta,
                f: f_classical(beta),
                r_equator: eq.scalar_r,
                r_meridian: mer.scalar_r,
                est_error: eq.est_error + mer.est_error,
            })
        })
        .collect()
}

/// `R(β) ≈ R0 + κ (f(β) - 1)` at one coupling strength.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionFit {
    pub inertia: InertiaTriple,
    pub r0: f64,
    pub kappa: f64,
    pub residual_rms: f64,
    pub beta_samples: Vec<(f64, f64)>,
}

/// `κ ≈ coefficient · (1/I_LS)^power` across the coupling list.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowerLawCheck {
    pub power: i32,
    /// Least-squares coefficient through the origin.
    pub coefficient: f64,
    /// `(max - min) / |mean|` of `κ / (1/I_LS)^power` over nonzero couplings.
    pub relative_spread: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionSummary {
    pub fits: Vec<ExpansionFit>,
    /// `κ ∝ 1/I_LS`; its coefficient is `κ₁`.
    pub linear: Option<PowerLawCheck>,
    /// `κ ∝ 1/I_LS²`.
    pub quadratic: Option<PowerLawCheck>,
    /// Log-log slope of `|κ|` against `|1/I_LS|`.
    pub exponent: Option<f64>,
    /// The closed-form first-order coefficient `(16/3)(I_L + I_S)` that the
    /// measured `κ₁` is compared with.
    pub quoted_linear_coefficient: f64,
}

fn least_squares(design: &DMatrix<f64>, y: &DVector<f64>) -> Result<DVector<f64>, GeometryError> {
    let svd = design.clone().svd(true, true);
    let max = svd.singular_values.max();
    if !(svd.singular_values.min() > 1e-12 * max) {
        return Err(GeometryError::DegenerateGrid("curvature samples do not determine the fit".into()));
    }
    svd.solve(y, 0.0).map_err(|e| GeometryError::DegenerateGrid(e.to_string()))
}

/// Fits `R0, κ` to equator samples of the curvature.
pub fn fit_profile(inertia: &InertiaTriple, betas: &[f64], numerics: &Numerics) -> Result<ExpansionFit, GeometryError> {
    check_grid(betas)?;
    let field = ProductSpheres { inertia: *inertia };
    let samples: Vec<(f64, f64)> = betas
        .par_iter()
        .map(|&beta| {
            let q = equator_point(beta)?;
            super::curvature::scalar_curvature_at_step(&field, &q.coords(), numerics.step, numerics.det_tol).map(|r| (beta, r))
        })
        .collect::<Result<_, _>>()?;
    let n = samples.len();
    let design = DMatrix::from_fn(n, 2, |i, j| if j == 0 { 1.0 } else { f_classical(samples[i].0) - 1.0 });
    let y = DVector::from_iterator(n, samples.iter().map(|s| s.1));
    let coef = least_squares(&design, &y)?;
    let residual = &design * &coef - &y;
    Ok(ExpansionFit {
        inertia: *inertia,
        r0: coef[0],
        kappa: coef[1],
        residual_rms: (residual.norm_squared() / n as f64).sqrt(),
        beta_samples: samples,
    })
}

fn check_grid(betas: &[f64]) -> Result<(), GeometryError> {
    if betas.len() < 4 {
        return Err(GeometryError::DegenerateGrid(format!("{} relative angles given, need at least 4", betas.len())));
    }
    if betas.iter().all(|b| *b == betas[0]) {
        return Err(GeometryError::DegenerateGrid("all relative angles are equal".into()));
    }
    Ok(())
}

fn power_law(fits: &[ExpansionFit], power: i32) -> Option<PowerLawCheck> {
    let pts: Vec<(f64, f64)> = fits
        .iter()
        .filter(|f| f.inertia.inv_i_ls != 0.0)
        .map(|f| (f.inertia.inv_i_ls.powi(power), f.kappa))
        .collect();
    if pts.is_empty() {
        return None;
    }
    let coefficient = pts.iter().map(|(x, k)| x * k).sum::<f64>() / pts.iter().map(|(x, _)| x * x).sum::<f64>();
    let ratios: Vec<f64> = pts.iter().map(|(x, k)| k / x).collect();
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(*r), hi.max(*r)));
    Some(PowerLawCheck { power, coefficient, relative_spread: (hi - lo) / mean.abs() })
}

fn log_slope(fits: &[ExpansionFit]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = fits
        .iter()
        .filter(|f| f.inertia.inv_i_ls != 0.0 && f.kappa != 0.0)
        .map(|f| (f.inertia.inv_i_ls.abs().ln(), f.kappa.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}

/// Fits the curvature expansion at each coupling in `inv_i_ls_list` and
/// checks how `κ` scales with `1/I_LS`.
pub fn fit_expansion(
    i_l: f64,
    i_s: f64,
    inv_i_ls_list: &[f64],
    betas: &[f64],
    numerics: &Numerics,
) -> Result<ExpansionSummary, GeometryError> {
    check_grid(betas)?;
    let fits = inv_i_ls_list
        .iter()
        .map(|&k| fit_profile(&InertiaTriple::new(i_l, i_s, k)?, betas, numerics))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExpansionSummary {
        linear: power_law(&fits, 1),
        quadratic: power_law(&fits, 2),
        exponent: log_slope(&fits),
        quoted_linear_coefficient: 16.0 / 3.0 * (i_l + i_s),
        fits,
    })
}

/// `n` evenly spaced relative angles strictly inside `(margin, π - margin)`.
pub fn beta_grid(n: usize, margin: f64) -> Vec<f64> {
    let span = std::f64::consts::PI - 2.0 * margin;
    (0..n).map(|i| margin + span * (i as f64 + 0.5) / n as f64).collect()
}
