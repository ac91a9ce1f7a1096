use nalgebra::DMatrix;
use serde::Serialize;

use super::GeometryError;

/// A Riemannian metric on a coordinate chart, given through its inverse
/// `g^{μν}` (the form in which a Hamiltonian `½ g^{μν} p_μ p_ν` supplies it).
pub trait MetricField: Sync {
    fn dim(&self) -> usize;

    fn inverse_metric_at(&self, x: &[f64]) -> DMatrix<f64>;

    /// Coordinate distance from `x` to the edge of the chart.
    fn chart_margin(&self, _x: &[f64]) -> f64 {
        f64::INFINITY
    }
}

/// Coupling constants of `H = L²/2I_L + S²/2I_S + (L·S)/I_LS`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InertiaTriple {
    pub i_l: f64,
    pub i_s: f64,
    /// `1/I_LS`; zero is the decoupled limit, negative values are allowed.
    pub inv_i_ls: f64,
}

impl InertiaTriple {
    pub fn new(i_l: f64, i_s: f64, inv_i_ls: f64) -> Result<Self, GeometryError> {
        if !(i_l > 0.0 && i_l.is_finite() && i_s > 0.0 && i_s.is_finite()) {
            return Err(GeometryError::InvalidInertia(format!("moments must be positive and finite, got I_L = {i_l}, I_S = {i_s}")));
        }
        if !inv_i_ls.is_finite() {
            return Err(GeometryError::InvalidInertia(format!("1/I_LS must be finite, got {inv_i_ls}")));
        }
        Ok(InertiaTriple { i_l, i_s, inv_i_ls })
    }

    /// `2 (1/I_L + 1/I_S)`, the curvature of the decoupled product of spheres.
    pub fn decoupled_curvature(&self) -> f64 {
        2.0 * (1.0 / self.i_l + 1.0 / self.i_s)
    }
}

/// A point `(θ, φ, θ', φ')` of the two-sphere configuration space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConfigPoint {
    pub theta: f64,
    pub phi: f64,
    pub theta_p: f64,
    pub phi_p: f64,
}

impl ConfigPoint {
    /// Both polar angles must lie strictly inside `(0, π)`.
    pub fn new(theta: f64, phi: f64, theta_p: f64, phi_p: f64) -> Result<Self, GeometryError> {
        for t in [theta, theta_p] {
            if !(t > 0.0 && t < std::f64::consts::PI) {
                return Err(GeometryError::OutOfChart(format!("polar angle {t} is not inside (0, π)")));
            }
        }
        Ok(ConfigPoint { theta, phi, theta_p, phi_p })
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.theta, self.phi, self.theta_p, self.phi_p]
    }

    /// Angle between the unit vectors of the two spheres.
    pub fn relative_angle(&self) -> f64 {
        let a = crate::harmonics::unit_vector(self.theta, self.phi);
        let b = crate::harmonics::unit_vector(self.theta_p, self.phi_p);
        let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        dot.clamp(-1.0, 1.0).acos()
    }
}

fn polar_margin(theta: f64) -> f64 {
    theta.min(std::f64::consts::PI - theta)
}

/// Sphere of radius `sqrt(I)`: `g = I (dθ² + sin²θ dφ²)`.
#[derive(Clone, Copy, Debug)]
pub struct Sphere {
    pub inertia: f64,
}

impl MetricField for Sphere {
    fn dim(&self) -> usize {
        2
    }

    fn inverse_metric_at(&self, x: &[f64]) -> DMatrix<f64> {
        let s = x[0].sin();
        DMatrix::from_row_slice(2, 2, &[1.0 / self.inertia, 0.0, 0.0, 1.0 / (self.inertia * s * s)])
    }

    fn chart_margin(&self, x: &[f64]) -> f64 {
        polar_margin(x[0])
    }
}

/// Euclidean metric in Cartesian coordinates.
#[derive(Clone, Copy, Debug)]
pub struct Flat {
    pub dim: usize,
}

impl MetricField for Flat {
    fn dim(&self) -> usize {
        self.dim
    }

    fn inverse_metric_at(&self, _x: &[f64]) -> DMatrix<f64> {
        DMatrix::identity(self.dim, self.dim)
    }
}

/// The configuration space of two rotors coupled by `L·S/I_LS`.
///
/// Substituting the momentum form of the angular momentum,
/// `L = (-sin φ p_θ - cot θ cos φ p_φ, cos φ p_θ - cot θ sin φ p_φ, p_φ)`,
/// and the same for `S` in the primed angles, into the Hamiltonian and
/// reading off `H = ½ g^{μν} p_μ p_ν` gives
///
/// ```text
/// g^{θθ}   = 1/I_L            g^{φφ}   = 1/(I_L sin²θ)
/// g^{θ'θ'} = 1/I_S            g^{φ'φ'} = 1/(I_S sin²θ')
/// g^{θθ'}  = k cos Δφ         g^{θφ'}  = k cot θ' sin Δφ
/// g^{φθ'}  = -k cot θ sin Δφ  g^{φφ'}  = k (cot θ cot θ' cos Δφ + 1)
/// ```
///
/// with `k = 1/I_LS` and `Δφ = φ - φ'`.
#[derive(Clone, Copy, Debug)]
pub struct ProductSpheres {
    pub inertia: InertiaTriple,
}

impl MetricField for ProductSpheres {
    fn dim(&self) -> usize {
        4
    }

    fn inverse_metric_at(&self, x: &[f64]) -> DMatrix<f64> {
        let InertiaTriple { i_l, i_s, inv_i_ls: k } = self.inertia;
        let (t, tp, d) = (x[0], x[2], x[1] - x[3]);
        let (st, stp) = (t.sin(), tp.sin());
        let (ct, ctp) = (t.cos() / st, tp.cos() / stp);
        let (sd, cd) = d.sin_cos();
        let mut g = DMatrix::zeros(4, 4);
        g[(0, 0)] = 1.0 / i_l;
        g[(1, 1)] = 1.0 / (i_l * st * st);
        g[(2, 2)] = 1.0 / i_s;
        g[(3, 3)] = 1.0 / (i_s * stp * stp);
        let cross = [[cd, ctp * sd], [-ct * sd, ct * ctp * cd + 1.0]];
        for (a, row) in cross.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                g[(a, 2 + b)] = k * v;
                g[(2 + b, a)] = k * v;
            }
        }
        g
    }

    fn chart_margin(&self, x: &[f64]) -> f64 {
        polar_margin(x[0]).min(polar_margin(x[2]))
    }
}

/// `g^{μν}` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct InverseMetric {
    pub entries: DMatrix<f64>,
}

/// `g_{μν}` at one point with its determinant `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricAt {
    pub metric: DMatrix<f64>,
    pub det: f64,
}

/// Inverts `g^{μν}`, refusing matrices that are numerically singular
/// (`|det g^{μν}| < det_tol · scale^n`, `scale` the largest entry) or not
/// positive definite.
pub fn metric_at(field: &dyn MetricField, x: &[f64], det_tol: f64) -> Result<MetricAt, GeometryError> {
    let inv = field.inverse_metric_at(x);
    let n = inv.nrows() as i32;
    let scale = inv.amax();
    let det_inv = inv.determinant();
    if !(det_inv.abs() >= det_tol * scale.powi(n)) {
        return Err(GeometryError::DegenerateMetric { det: det_inv, scale });
    }
    let chol = inv.clone().cholesky().ok_or(GeometryError::DegenerateMetric { det: det_inv, scale })?;
    Ok(MetricAt { metric: chol.inverse(), det: 1.0 / det_inv })
}
