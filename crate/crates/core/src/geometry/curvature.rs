use nalgebra::DMatrix;
use serde::Serialize;

use super::diff::richardson_partial;
use super::manifold::{metric_at, MetricField};
use super::{GeometryError, Numerics};

/// Christoffel symbols of the second kind, `Γ^λ_{μν}`, stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct Christoffel {
    dim: usize,
    data: Vec<f64>,
}

impl Christoffel {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Γ^l_{mn}`.
    pub fn get(&self, l: usize, m: usize, n: usize) -> f64 {
        self.data[(l * self.dim + m) * self.dim + n]
    }

    fn set(&mut self, l: usize, m: usize, n: usize, v: f64) {
        self.data[(l * self.dim + m) * self.dim + n] = v;
    }

    /// Nested `[λ][μ][ν]` arrays.
    pub fn to_nested(&self) -> Vec<Vec<Vec<f64>>> {
        let n = self.dim;
        (0..n).map(|l| (0..n).map(|m| (0..n).map(|k| self.get(l, m, k)).collect()).collect()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureReport {
    #[serde(serialize_with = "ser_christoffel")]
    pub christoffel: Christoffel,
    #[serde(serialize_with = "ser_matrix")]
    pub ricci: DMatrix<f64>,
    pub scalar_r: f64,
    pub step_h: f64,
    /// Larger of `|R(h) - R(h/2)|` and the largest antisymmetric part of the
    /// Ricci tensor.
    pub est_error: f64,
}

fn ser_christoffel<S: serde::Serializer>(c: &Christoffel, s: S) -> Result<S::Ok, S::Error> {
    c.to_nested().serialize(s)
}

pub(crate) fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn ser_matrix<S: serde::Serializer>(m: &DMatrix<f64>, s: S) -> Result<S::Ok, S::Error> {
    matrix_rows(m).serialize(s)
}

/// Fails unless every stencil point stays inside the chart.
pub(crate) fn check_margin(field: &dyn MetricField, x: &[f64], h: f64) -> Result<(), GeometryError> {
    if x.len() != field.dim() {
        return Err(GeometryError::OutOfChart(format!("expected {} coordinates, got {}", field.dim(), x.len())));
    }
    let margin = field.chart_margin(x);
    if !(h > 0.0 && h.is_finite()) || margin < 2.0 * h {
        return Err(GeometryError::StepTooLarge { margin, step: h });
    }
    Ok(())
}

fn flat_metric(field: &dyn MetricField, det_tol: f64) -> impl Fn(&[f64]) -> Result<Vec<f64>, GeometryError> + '_ {
    move |y: &[f64]| metric_at(field, y, det_tol).map(|m| m.metric.as_slice().to_vec())
}

/// `Γ^λ_{μν} = ½ g^{λρ} (∂_μ g_{ρν} + ∂_ν g_{ρμ} - ∂_ρ g_{μν})` without the
/// chart check.
fn christoffel_unchecked(field: &dyn MetricField, x: &[f64], h: f64, det_tol: f64) -> Result<Christoffel, GeometryError> {
    let n = field.dim();
    let metric = flat_metric(field, det_tol);
    // dg[c][(a, b)] = ∂_c g_{ab}; column-major storage, symmetric anyway
    let dg: Vec<Vec<f64>> = (0..n).map(|c| richardson_partial(&metric, x, c, h)).collect::<Result<_, _>>()?;
    let d = |c: usize, a: usize, b: usize| dg[c][a + b * n];
    let ginv = field.inverse_metric_at(x);
    let mut gamma = Christoffel { dim: n, data: vec![0.0; n * n * n] };
    for l in 0..n {
        for m in 0..n {
            for k in m..n {
                let v = 0.5 * (0..n).map(|r| ginv[(l, r)] * (d(m, r, k) + d(k, r, m) - d(r, m, k))).sum::<f64>();
                gamma.set(l, m, k, v);
                gamma.set(l, k, m, v);
            }
        }
    }
    Ok(gamma)
}

/// Christoffel symbols at `x` with the metric derivatives taken by
/// Richardson-extrapolated central differences of step `numerics.step`.
pub fn christoffel_at(field: &dyn MetricField, x: &[f64], numerics: &Numerics) -> Result<Christoffel, GeometryError> {
    check_margin(field, x, numerics.step)?;
    christoffel_unchecked(field, x, numerics.step, numerics.det_tol)
}

struct Contraction {
    gamma: Christoffel,
    ricci: DMatrix<f64>,
    scalar: f64,
}

/// `R^ρ_{σμν} = ∂_μ Γ^ρ_{νσ} - ∂_ν Γ^ρ_{μσ} + Γ^ρ_{μλ} Γ^λ_{νσ} - Γ^ρ_{νλ} Γ^λ_{μσ}`,
/// contracted to `R_{σν} = R^ρ_{σρν}` and `R = g^{σν} R_{σν}`.
fn contract(field: &dyn MetricField, x: &[f64], h: f64, det_tol: f64) -> Result<Contraction, GeometryError> {
    let n = field.dim();
    let gamma = christoffel_unchecked(field, x, h, det_tol)?;
    let gamma_of = |y: &[f64]| christoffel_unchecked(field, y, h, det_tol).map(|g| g.data);
    let dgamma: Vec<Vec<f64>> = (0..n).map(|a| richardson_partial(gamma_of, x, a, h)).collect::<Result<_, _>>()?;
    let dg = |a: usize, l: usize, m: usize, k: usize| dgamma[a][(l * n + m) * n + k];
    let g = |l, m, k| gamma.get(l, m, k);
    let mut ricci = DMatrix::zeros(n, n);
    for s in 0..n {
        for v in 0..n {
            let mut acc = 0.0;
            for r in 0..n {
                acc += dg(r, r, v, s) - dg(v, r, r, s);
                for l in 0..n {
                    acc += g(r, r, l) * g(l, v, s) - g(r, v, l) * g(l, r, s);
                }
            }
            ricci[(s, v)] = acc;
        }
    }
    let ginv = field.inverse_metric_at(x);
    let scalar = ginv.component_mul(&ricci).sum();
    Ok(Contraction { gamma, ricci, scalar })
}

/// Christoffel symbols, Ricci tensor and scalar curvature at `x`.
///
/// The stencils reach `2h` from `x`; the error estimate compares the result
/// at step `h` with a second evaluation at `h/2`.
pub fn curvature_at(field: &dyn MetricField, x: &[f64], numerics: &Numerics) -> Result<CurvatureReport, GeometryError> {
    let h = numerics.step;
    check_margin(field, x, h)?;
    let coarse = contract(field, x, h, numerics.det_tol)?;
    let fine = contract(field, x, h / 2.0, numerics.det_tol)?;
    let asym = (&coarse.ricci - coarse.ricci.transpose()).amax() / 2.0;
    Ok(CurvatureReport {
        est_error: (coarse.scalar - fine.scalar).abs().max(asym),
        christoffel: coarse.gamma,
        ricci: coarse.ricci,
        scalar_r: coarse.scalar,
        step_h: h,
    })
}

/// Scalar curvature alone at step `h`, without the error estimate.
pub fn scalar_curvature_at_step(field: &dyn MetricField, x: &[f64], h: f64, det_tol: f64) -> Result<f64, GeometryError> {
    check_margin(field, x, h)?;
    contract(field, x, h, det_tol).map(|c| c.scalar)
}
