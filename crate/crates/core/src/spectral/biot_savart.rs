//! Velocity recovery from vorticity: `Δψ = ω`, `u = ∇⊥ψ = (-∂₂ψ, ∂₁ψ)`.

use std::sync::Arc;

use num_complex::Complex64;

use super::field::{VelocityField, VorticityField};
use crate::error::{Error, Result};

/// Relative size of the mean mode below which it is treated as roundoff.
const MEAN_TOLERANCE: f64 = 1e-12;

pub(crate) fn check_zero_mean(omega: &VorticityField) -> Result<()> {
    let scale = omega
        .spectral()
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
        .max(1.0);
    let mean = omega.mean();
    if mean.abs() > MEAN_TOLERANCE * scale {
        return Err(Error::NonZeroMean(mean));
    }
    Ok(())
}

/// `u_k = (i k_y, -i k_x) ω_k / |k|²`, with `u_0 = 0`.
pub fn biot_savart(omega: &VorticityField) -> Result<VelocityField> {
    check_zero_mean(omega)?;
    let g = omega.grid();
    let w = omega.spectral();
    let mut u1 = Vec::with_capacity(g.modes());
    let mut u2 = Vec::with_capacity(g.modes());
    for i in 0..g.modes() {
        let k2 = g.k_sq()[i];
        if k2 == 0.0 {
            u1.push(Complex64::new(0.0, 0.0));
            u2.push(Complex64::new(0.0, 0.0));
        } else {
            let s = w[i] / k2;
            u1.push(Complex64::i() * g.ky()[i] * s);
            u2.push(-Complex64::i() * g.kx()[i] * s);
        }
    }
    VelocityField::from_spectral(g, u1, u2)
}

/// Stream function with zero mean, `ψ_k = -ω_k / |k|²`.
pub fn stream_function(omega: &VorticityField) -> Result<VorticityField> {
    check_zero_mean(omega)?;
    let g = omega.grid();
    let spectral = omega
        .spectral()
        .iter()
        .zip(g.k_sq())
        .map(|(w, &k2)| if k2 == 0.0 { Complex64::new(0.0, 0.0) } else { -w / k2 })
        .collect();
    Ok(VorticityField::from_parts(Arc::clone(g), spectral))
}

/// Collocation values of the four entries `∂_j u^i` of the velocity gradient,
/// ordered `[∂₁u¹, ∂₂u¹, ∂₁u², ∂₂u²]`.
pub fn velocity_gradient(omega: &VorticityField) -> Result<[Vec<f64>; 4]> {
    let u = biot_savart(omega)?;
    let g = omega.grid();
    let d = |c: &[Complex64], k: &[f64]| -> Vec<Complex64> {
        c.iter().zip(k).map(|(v, &kk)| Complex64::i() * kk * v).collect()
    };
    let d1u1 = d(u.spectral_u1(), g.kx());
    let d2u1 = d(u.spectral_u1(), g.ky());
    let d1u2 = d(u.spectral_u2(), g.kx());
    let d2u2 = d(u.spectral_u2(), g.ky());
    let pair = |a: &[Complex64], b: &[Complex64]| -> (Vec<f64>, Vec<f64>) {
        let mut data: Vec<Complex64> =
            a.iter().zip(b).map(|(x, y)| x + Complex64::i() * y).collect();
        g.inverse(&mut data);
        data.into_iter().map(|c| (c.re, c.im)).unzip()
    };
    let (a, b) = pair(&d1u1, &d2u1);
    let (c, e) = pair(&d1u2, &d2u2);
    Ok([a, b, c, e])
}

/// `||∇u||_{L^p}` of the pointwise Frobenius norm `|∇u|`, rectangle rule.
pub fn velocity_gradient_lp(omega: &VorticityField, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(format!("p = {p}")));
    }
    let grad = velocity_gradient(omega)?;
    let n2 = omega.grid().modes();
    let area = omega.grid().cell_area();
    let frob = (0..n2).map(|j| grad.iter().map(|c| c[j] * c[j]).sum::<f64>().sqrt());
    if p.is_infinite() {
        return Ok(frob.fold(0.0, f64::max));
    }
    Ok((area * frob.map(|v| v.powf(p)).sum::<f64>()).powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::grid::SpectralGrid;
    use std::f64::consts::PI;

    #[test]
    fn shear_velocity() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let omega = VorticityField::from_fn(&g, |_, y| -y.cos());
        let u = biot_savart(&omega).unwrap();
        let (u1, u2) = u.to_physical();
        for iy in 0..16 {
            let y = g.coordinate(iy);
            for ix in 0..16 {
                assert!((u1[iy * 16 + ix] - y.sin()).abs() < 1e-14);
                assert!(u2[iy * 16 + ix].abs() < 1e-14);
            }
        }
    }

    #[test]
    fn zero_field() {
        let g = SpectralGrid::new(8, 1.0).unwrap();
        let u = biot_savart(&VorticityField::zeros(&g)).unwrap();
        assert_eq!(u.l2_sq(), 0.0);
    }

    #[test]
    fn rejects_mean() {
        let g = SpectralGrid::new(8, 1.0).unwrap();
        let omega = VorticityField::from_fn(&g, |_, _| 1.0);
        assert!(matches!(biot_savart(&omega), Err(Error::NonZeroMean(_))));
        assert!(stream_function(&omega).is_err());
    }

    #[test]
    fn stream_function_of_cosine() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let omega = VorticityField::from_fn(&g, |x, _| -(2.0 * x).cos());
        let psi = stream_function(&omega).unwrap().to_physical();
        for ix in 0..16 {
            let x = g.coordinate(ix);
            assert!((psi[ix] - 0.25 * (2.0 * x).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn gradient_of_shear() {
        // u = (sin y, 0): only ∂₂u¹ = cos y is nonzero, and |∇u|_{L^2}^2 = 2π².
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let omega = VorticityField::from_fn(&g, |_, y| -y.cos());
        let l2 = velocity_gradient_lp(&omega, 2.0).unwrap();
        assert!((l2 * l2 - 2.0 * PI * PI).abs() < 1e-11);
        let linf = velocity_gradient_lp(&omega, f64::INFINITY).unwrap();
        assert!((linf - 1.0).abs() < 1e-14);
    }
}
