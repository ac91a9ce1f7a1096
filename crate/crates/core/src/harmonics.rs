//! Numerical spherical harmonics, Condon-Shortley phase.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Legendre polynomial `P_l(x)`.
pub fn legendre(l: u32, x: f64) -> f64 {
    associated_legendre(l, 0, x)
}

/// `P_l^m(x)` for `0 <= m <= l`, including the `(-1)^m` phase.
pub fn associated_legendre(l: u32, m: u32, x: f64) -> f64 {
    assert!(m <= l, "m = {m} exceeds l = {l}");
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= -f64::from(2 * k - 1) * s;
    }
    if l == m {
        return pmm;
    }
    let mut prev = pmm;
    let mut cur = x * f64::from(2 * m + 1) * pmm;
    for ll in (m + 2)..=l {
        let next = (f64::from(2 * ll - 1) * x * cur - f64::from(ll + m - 1) * prev) / f64::from(ll - m);
        prev = cur;
        cur = next;
    }
    cur
}

fn norm(l: u32, m: u32) -> f64 {
    let ratio: f64 = ((l - m + 1)..=(l + m)).map(f64::from).product();
    ((2.0 * f64::from(l) + 1.0) / (4.0 * PI) / ratio).sqrt()
}

/// `Y_lm(θ, φ)`.
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    let am = m.unsigned_abs();
    let base = norm(l, am) * associated_legendre(l, am, theta.cos());
    let y = Complex64::from_polar(base, f64::from(am as i32) * phi);
    if m >= 0 {
        y
    } else if am.is_multiple_of(2) {
        y.conj()
    } else {
        -y.conj()
    }
}

/// Real spherical harmonic: `sqrt(2) Re Y_lm` for `m > 0`, `sqrt(2) Im Y_l|m|`
/// for `m < 0`, `Y_l0` for `m = 0`.
pub fn real_spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> f64 {
    let y = spherical_harmonic(l, m.abs(), theta, phi);
    match m.signum() {
        0 => y.re,
        1 => std::f64::consts::SQRT_2 * y.re,
        _ => std::f64::consts::SQRT_2 * y.im,
    }
}

/// Unit vector for polar angle `θ` and azimuth `φ`.
pub fn unit_vector(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// Polar and azimuthal angle of a nonzero vector.
pub fn angles(v: [f64; 3]) -> (f64, f64) {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    ((v[2] / r).clamp(-1.0, 1.0).acos(), v[1].atan2(v[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_closed_forms() {
        let (t, p) = (0.7, 1.3);
        let y10 = spherical_harmonic(1, 0, t, p);
        assert!((y10.re - (3.0 / (4.0 * PI)).sqrt() * t.cos()).abs() < 1e-14);
        let y11 = spherical_harmonic(1, 1, t, p);
        let expect = -(3.0 / (8.0 * PI)).sqrt() * t.sin();
        assert!((y11 - Complex64::from_polar(expect, p)).norm() < 1e-14);
        let y1m1 = spherical_harmonic(1, -1, t, p);
        assert!((y1m1 - Complex64::from_polar(-expect, -p)).norm() < 1e-14);
        let y21 = spherical_harmonic(2, 1, t, p);
        let expect = -(15.0 / (8.0 * PI)).sqrt() * t.sin() * t.cos();
        assert!((y21 - Complex64::from_polar(expect, p)).norm() < 1e-14);
        assert!((legendre(2, 0.3) - (3.0 * 0.09 - 1.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn addition_theorem() {
        let (a, b) = ((0.4, 2.0), (1.9, -0.7));
        let va = unit_vector(a.0, a.1);
        let vb = unit_vector(b.0, b.1);
        let cos_g: f64 = va.iter().zip(vb).map(|(x, y)| x * y).sum();
        for l in 0..5u32 {
            let sum: Complex64 = (-(l as i32)..=l as i32)
                .map(|m| spherical_harmonic(l, m, a.0, a.1).conj() * spherical_harmonic(l, m, b.0, b.1))
                .sum();
            let lhs = legendre(l, cos_g);
            assert!((sum.re * 4.0 * PI / f64::from(2 * l + 1) - lhs).abs() < 1e-13);
            assert!(sum.im.abs() < 1e-13);
        }
    }
}
