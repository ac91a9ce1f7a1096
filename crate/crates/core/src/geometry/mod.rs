//! Curvature of the configuration space `S² × S²` whose metric is defined by
//! the rotor Hamiltonian, plus the generic finite-difference machinery
//! (Christoffel symbols, Ricci and scalar curvature, Laplace-Beltrami
//! operator) for any metric supplied as a [`MetricField`].
//!
//! Derivatives are central differences with one Richardson step. The chart
//! excludes the poles `θ ∈ {0, π}`; every stencil must stay `2h` away.

mod curvature;
mod diff;
mod expansion;
mod laplace;
mod manifold;

use serde::Serialize;
use thiserror::Error;

pub use curvature::{christoffel_at, curvature_at, scalar_curvature_at_step, Christoffel, CurvatureReport};
pub use diff::{richardson_gradient, richardson_partial};
pub use expansion::{
    beta_grid, curvature_profile, equator_point, fit_expansion, fit_profile, meridian_point, ExpansionFit,
    ExpansionSummary, PowerLawCheck, ProfilePoint,
};
pub use laplace::{laplace_beltrami_at, ScalarField};
pub use manifold::{
    metric_at, ConfigPoint, Flat, InertiaTriple, InverseMetric, MetricAt, MetricField, ProductSpheres, Sphere,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("invalid inertia: {0}")]
    InvalidInertia(String),
    #[error("point outside the coordinate chart: {0}")]
    OutOfChart(String),
    #[error("step {step} needs a chart margin of {}, only {margin} available", 2.0 * step)]
    StepTooLarge { margin: f64, step: f64 },
    #[error("metric is degenerate or not positive definite (det g^μν = {det:e}, largest entry {scale:e})")]
    DegenerateMetric { det: f64, scale: f64 },
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
}

/// Finite-difference settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Numerics {
    /// Base step `h` in radians.
    pub step: f64,
    /// Relative determinant threshold for declaring the metric degenerate.
    pub det_tol: f64,
}

impl Default for Numerics {
    fn default() -> Self {
        Numerics { step: 1e-3, det_tol: 1e-12 }
    }
}

/// `g^{μν}` of the coupled-rotor configuration space at `q`.
pub fn inverse_metric(inertia: &InertiaTriple, q: &ConfigPoint) -> InverseMetric {
    InverseMetric { entries: ProductSpheres { inertia: *inertia }.inverse_metric_at(&q.coords()) }
}

/// `g_{μν}` and `det g_{μν}` at `q`.
pub fn metric(inertia: &InertiaTriple, q: &ConfigPoint, det_tol: f64) -> Result<MetricAt, GeometryError> {
    metric_at(&ProductSpheres { inertia: *inertia }, &q.coords(), det_tol)
}

pub fn christoffel(inertia: &InertiaTriple, q: &ConfigPoint, numerics: &Numerics) -> Result<Christoffel, GeometryError> {
    christoffel_at(&ProductSpheres { inertia: *inertia }, &q.coords(), numerics)
}

pub fn scalar_curvature(inertia: &InertiaTriple, q: &ConfigPoint, numerics: &Numerics) -> Result<CurvatureReport, GeometryError> {
    curvature_at(&ProductSpheres { inertia: *inertia }, &q.coords(), numerics)
}

pub fn laplace_beltrami(
    field: &dyn ScalarField,
    inertia: &InertiaTriple,
    q: &ConfigPoint,
    numerics: &Numerics,
) -> Result<f64, GeometryError> {
    laplace_beltrami_at(&ProductSpheres { inertia: *inertia }, field, &q.coords(), numerics)
}
