//! Pseudo-spectral evaluation of the transport term `(u·∇)ω`.
//!
//! Products are formed on the collocation grid. With the 2/3-rule mask on
//! both the input and the output the result is the exact Galerkin projection
//! of the product, which is what makes the discrete energy and enstrophy
//! balances hold to roundoff.

use std::sync::Arc;

use num_complex::Complex64;

use super::biot_savart::check_zero_mean;
use super::field::{enforce_hermitian, VelocityField, VorticityField};
use super::grid::SpectralGrid;
use crate::error::Result;

/// Whether the product is projected back onto the retained modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dealias {
    On,
    /// Raw aliased product; only useful as a negative control.
    Off,
}

/// `(u·∇)ω` with `u` recovered from `ω`.
pub fn nonlinear_term(omega: &VorticityField) -> Result<VorticityField> {
    nonlinear_term_with(omega, Dealias::On)
}

pub fn nonlinear_term_with(omega: &VorticityField, dealias: Dealias) -> Result<VorticityField> {
    check_zero_mean(omega)?;
    let (spectral, _) = advect(omega.grid(), omega.spectral(), dealias);
    Ok(VorticityField::from_parts(Arc::clone(omega.grid()), spectral))
}

/// Core kernel shared with the time stepper. Returns the transport term and
/// the largest collocation speed `max |u|`.
pub(crate) fn advect(
    grid: &SpectralGrid,
    w: &[Complex64],
    dealias: Dealias,
) -> (Vec<Complex64>, f64) {
    let (kx, ky, k2) = (grid.kx(), grid.ky(), grid.k_sq());
    let zero = Complex64::new(0.0, 0.0);

    // Pack two real fields per complex transform: (u1 + i u2) and (ω_x + i ω_y).
    // With u = (i ky, -i kx) ω / |k|², u1 + i u2 = (i ky + kx) ω / |k|², and
    // ω_x + i ω_y = (i kx - ky) ω.
    let mut vel: Vec<Complex64> = w
        .iter()
        .zip(kx.iter().zip(ky).zip(k2))
        .map(|(w, ((&a, &b), &q))| {
            if q == 0.0 {
                zero
            } else {
                Complex64::new(a, b) * (w / q)
            }
        })
        .collect();
    let mut grad: Vec<Complex64> = w
        .iter()
        .zip(kx.iter().zip(ky))
        .map(|(w, (&a, &b))| Complex64::new(-b, a) * w)
        .collect();
    grid.inverse(&mut vel);
    grid.inverse(&mut grad);

    let mut max_sq: f64 = 0.0;
    let mut prod: Vec<Complex64> = vel
        .iter()
        .zip(&grad)
        .map(|(v, d)| {
            max_sq = max_sq.max(v.norm_sqr());
            Complex64::new(v.re * d.re + v.im * d.im, 0.0)
        })
        .collect();
    let max_speed = max_sq.sqrt();
    grid.forward(&mut prod);
    if dealias == Dealias::On {
        grid.apply_mask(&mut prod);
    }
    prod[0] = Complex64::new(0.0, 0.0);
    enforce_hermitian(grid, &mut prod);
    (prod, max_speed)
}

/// Velocity-form advection `(u·∇)u`, used by the orthogonality checks.
pub fn velocity_advection(u: &VelocityField, dealias: Dealias) -> VelocityField {
    let g = u.grid();
    let i = Complex64::i();
    let (kx, ky) = (g.kx(), g.ky());
    let deriv = |c: &[Complex64], k: &[f64]| -> Vec<Complex64> {
        c.iter().zip(k).map(|(v, &kk)| i * kk * v).collect()
    };
    let to_phys = |a: &[Complex64], b: &[Complex64]| -> Vec<Complex64> {
        let mut data: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x + i * y).collect();
        g.inverse(&mut data);
        data
    };
    let vel = to_phys(u.spectral_u1(), u.spectral_u2());
    let grad1 = to_phys(&deriv(u.spectral_u1(), kx), &deriv(u.spectral_u1(), ky));
    let grad2 = to_phys(&deriv(u.spectral_u2(), kx), &deriv(u.spectral_u2(), ky));

    let mut a1 = Vec::with_capacity(g.modes());
    let mut a2 = Vec::with_capacity(g.modes());
    for m in 0..g.modes() {
        let (v1, v2) = (vel[m].re, vel[m].im);
        a1.push(Complex64::new(v1 * grad1[m].re + v2 * grad1[m].im, 0.0));
        a2.push(Complex64::new(v1 * grad2[m].re + v2 * grad2[m].im, 0.0));
    }
    g.forward(&mut a1);
    g.forward(&mut a2);
    if dealias == Dealias::On {
        g.apply_mask(&mut a1);
        g.apply_mask(&mut a2);
    }
    enforce_hermitian(g, &mut a1);
    enforce_hermitian(g, &mut a2);
    VelocityField::from_spectral(g, a1, a2).expect("sizes match")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::biot_savart::biot_savart;
    use std::f64::consts::PI;

    #[test]
    fn shear_is_steady() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let omega = VorticityField::from_fn(&g, |_, y| -y.cos()).dealiased();
        let nl = nonlinear_term(&omega).unwrap();
        let max = nl.spectral().iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(max < 1e-15, "{max}");
    }

    #[test]
    fn zero_in_zero_out() {
        let g = SpectralGrid::new(8, 1.0).unwrap();
        let nl = nonlinear_term(&VorticityField::zeros(&g)).unwrap();
        assert!(nl.spectral().iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn cos_x_plus_cos_y_closed_form() {
        // ω = cos x + cos y gives ψ = -(cos x + cos y), u = (-sin y, sin x),
        // (u·∇)ω = sin y sin x - sin x sin y = 0.
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let omega = VorticityField::from_fn(&g, |x, y| x.cos() + y.cos()).dealiased();
        let nl = nonlinear_term(&omega).unwrap();
        let max = nl.spectral().iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(max < 1e-15, "{max}");
    }

    #[test]
    fn known_product() {
        // ω = cos x + cos 2y: u = (-½ sin 2y, sin x), ω_x = -sin x, ω_y = -2 sin 2y.
        // (u·∇)ω = ½ sin 2y sin x - 2 sin x sin 2y = -1.5 sin x sin 2y.
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let omega = VorticityField::from_fn(&g, |x, y| x.cos() + (2.0 * y).cos()).dealiased();
        let nl = nonlinear_term(&omega).unwrap().to_physical();
        for iy in 0..16 {
            for ix in 0..16 {
                let (x, y) = (g.coordinate(ix), g.coordinate(iy));
                let expect = -1.5 * x.sin() * (2.0 * y).sin();
                assert!((nl[iy * 16 + ix] - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn velocity_form_of_shear_vanishes() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let omega = VorticityField::from_fn(&g, |_, y| -y.cos()).dealiased();
        let u = biot_savart(&omega).unwrap();
        let adv = velocity_advection(&u, Dealias::On);
        assert!(adv.l2_sq() < 1e-28);
    }
}
