use super::curvature::check_margin;
use super::diff::{richardson_gradient, richardson_partial};
use super::manifold::MetricField;
use super::{GeometryError, Numerics};

/// A smooth function on the chart.
pub trait ScalarField: Sync {
    fn value(&self, x: &[f64]) -> f64;
}

impl<F: Fn(&[f64]) -> f64 + Sync> ScalarField for F {
    fn value(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

/// `sqrt(det g_{μν}) = 1 / sqrt(det g^{μν})`.
fn sqrt_det_metric(field: &dyn MetricField, x: &[f64]) -> Result<f64, GeometryError> {
    let inv = field.inverse_metric_at(x);
    let det = inv.determinant();
    if !(det > 0.0) {
        return Err(GeometryError::DegenerateMetric { det, scale: inv.amax() });
    }
    Ok(1.0 / det.sqrt())
}

/// `Δψ = g^{-1/2} ∂_μ (g^{1/2} g^{μν} ∂_ν ψ)` by nested Richardson
/// differences of step `numerics.step`.
pub fn laplace_beltrami_at(
    field: &dyn MetricField,
    psi: &dyn ScalarField,
    x: &[f64],
    numerics: &Numerics,
) -> Result<f64, GeometryError> {
    let h = numerics.step;
    check_margin(field, x, h)?;
    let flux = |y: &[f64]| -> Result<Vec<f64>, GeometryError> {
        let grad = richardson_gradient(|z| psi.value(z), y, h);
        let ginv = field.inverse_metric_at(y);
        let root = sqrt_det_metric(field, y)?;
        Ok((0..y.len()).map(|mu| root * (0..y.len()).map(|nu| ginv[(mu, nu)] * grad[nu]).sum::<f64>()).collect())
    };
    let mut divergence = 0.0;
    for mu in 0..x.len() {
        divergence += richardson_partial(flux, x, mu, h)?[mu];
    }
    Ok(divergence / sqrt_det_metric(field, x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::manifold::{Flat, Sphere};
    use crate::harmonics::real_spherical_harmonic;

    #[test]
    fn constant_field() {
        let v = laplace_beltrami_at(&Sphere { inertia: 2.0 }, &|_: &[f64]| 3.0, &[1.0, 0.5], &Numerics::default()).unwrap();
        assert!(v.abs() < 1e-8);
    }

    #[test]
    fn sphere_eigenfunctions() {
        let inertia = 1.7;
        let field = Sphere { inertia };
        let x = [1.1, 0.3];
        for (l, m) in (0..=3u32).flat_map(|l| (-(l as i32)..=l as i32).map(move |m| (l, m))) {
            let y = move |p: &[f64]| real_spherical_harmonic(l, m, p[0], p[1]);
            let lap = laplace_beltrami_at(&field, &y, &x, &Numerics::default()).unwrap();
            let expect = -f64::from(l * (l + 1)) / inertia * y(&x);
            assert!((lap - expect).abs() <= 1e-6 * expect.abs().max(1e-3), "l={l} m={m}: {lap} vs {expect}");
        }
    }

    #[test]
    fn flat_laplacian() {
        let psi = |p: &[f64]| p[0] * p[0] + 3.0 * p[1] * p[1] - p[0] * p[1];
        let v = laplace_beltrami_at(&Flat { dim: 2 }, &psi, &[0.3, -0.8], &Numerics::default()).unwrap();
        assert!((v - 8.0).abs() < 1e-6);
    }
}
