//! Integrating-factor RK4 (Lawson) for `ω' = Λω + N(ω)` with the diagonal
//! linear part `Λ_k = -(r + ν|k|²)` applied exactly through `e^{Λ dt}` and
//! `N(ω) = -(u·∇)ω + curl g`.

use std::sync::Arc;

use num_complex::Complex64;

use super::params::SimParams;
use crate::error::{Error, Result};
use crate::spectral::{advect, Dealias, VorticityField};

/// Full right-hand side `-(u·∇)ω - (r + ν|k|²)ω + curl g`, dealiased.
pub fn rhs(omega: &VorticityField, params: &SimParams) -> Result<VorticityField> {
    let (nl, _) = nonlinear_part(omega, params)?;
    let lin = params.linear_operator();
    let spectral = nl
        .iter()
        .zip(omega.spectral())
        .zip(&lin)
        .map(|((n, w), l)| n + l * w)
        .collect();
    Ok(VorticityField::from_parts(Arc::clone(omega.grid()), spectral))
}

/// `N(ω) = -(u·∇)ω + curl g`, split out for integrating-factor stepping.
pub fn nonlinear_part(
    omega: &VorticityField,
    params: &SimParams,
) -> Result<(Vec<Complex64>, f64)> {
    if !omega.grid().same_as(&params.grid) {
        return Err(Error::GridMismatch);
    }
    crate::spectral::biot_savart(omega).map(|_| ())?;
    Ok(Stepper::new(params).eval(omega.spectral()))
}

/// Cached per-mode integrating factors for one parameter set.
pub struct Stepper<'a> {
    params: &'a SimParams,
    full: Vec<f64>,
    half: Vec<f64>,
}

impl<'a> Stepper<'a> {
    pub fn new(params: &'a SimParams) -> Self {
        let lin = params.linear_operator();
        let full = lin.iter().map(|l| (l * params.dt).exp()).collect();
        let half = lin.iter().map(|l| (l * 0.5 * params.dt).exp()).collect();
        Stepper { params, full, half }
    }

    fn eval(&self, w: &[Complex64]) -> (Vec<Complex64>, f64) {
        let forcing = self.params.forcing.curl().spectral();
        if self.params.linear_only {
            return (forcing.to_vec(), 0.0);
        }
        let (mut adv, speed) = advect(&self.params.grid, w, Dealias::On);
        for (a, f) in adv.iter_mut().zip(forcing) {
            *a = f - *a;
        }
        (adv, speed)
    }

    /// Advances the coefficients by one step in place and returns `max |u|`
    /// at the start of the step.
    pub fn advance(&self, w: &mut [Complex64]) -> f64 {
        let dt = self.params.dt;
        let (e, e2) = (&self.full, &self.half);
        let m = w.len();

        let (k1, speed) = self.eval(w);
        let a: Vec<Complex64> = (0..m).map(|i| e2[i] * (w[i] + 0.5 * dt * k1[i])).collect();
        let (k2, _) = self.eval(&a);
        let b: Vec<Complex64> = (0..m).map(|i| e2[i] * w[i] + 0.5 * dt * k2[i]).collect();
        let (k3, _) = self.eval(&b);
        let c: Vec<Complex64> = (0..m).map(|i| e[i] * w[i] + dt * e2[i] * k3[i]).collect();
        let (k4, _) = self.eval(&c);

        for i in 0..m {
            w[i] = e[i] * w[i]
                + dt / 6.0 * (e[i] * k1[i] + 2.0 * e2[i] * (k2[i] + k3[i]) + k4[i]);
        }
        speed
    }
}

/// One step from `omega`. Non-finite output is reported as a blow-up.
pub fn step(omega: &VorticityField, params: &SimParams) -> Result<VorticityField> {
    params.validate()?;
    if !omega.grid().same_as(&params.grid) {
        return Err(Error::GridMismatch);
    }
    crate::spectral::biot_savart(omega)?;
    let mut w = omega.spectral().to_vec();
    params.grid.apply_mask(&mut w);
    let speed = Stepper::new(params).advance(&mut w);
    let cfl = params.dt * speed * params.grid.k_max();
    if cfl > super::params::CFL_LIMIT {
        log::warn!("CFL number {cfl:.3} exceeds {}", super::params::CFL_LIMIT);
    }
    let out = VorticityField::from_parts(Arc::clone(omega.grid()), w);
    if !out.is_finite() {
        return Err(Error::NumericalBlowUp {
            step: 1,
            time: params.dt,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{ForcingSpec, InitialCondition};
    use crate::spectral::SpectralGrid;
    use std::f64::consts::PI;

    #[test]
    fn shear_rhs_vanishes() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let r = 0.7;
        let p = SimParams::new(&g, r, 0.0, 1e-3, 1.0).with_forcing(ForcingSpec::shear(&g, r));
        let w = InitialCondition::Shear { amplitude: 1.0 }.build(&g).unwrap();
        let f = rhs(&w, &p).unwrap();
        assert!(f.spectral().iter().all(|c| c.norm() < 1e-15));
    }

    #[test]
    fn rhs_mode_by_mode() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let (r, nu) = (0.3, 0.01);
        let p = SimParams::new(&g, r, nu, 1e-3, 1.0);
        let w = crate::dynamics::band_limited_field(&g, 5, 1.0, 4.0).unwrap();
        let f = rhs(&w, &p).unwrap();
        let nl = crate::spectral::nonlinear_term(&w).unwrap();
        for i in 0..g.modes() {
            let expect = -nl.spectral()[i] - (r + nu * g.k_sq()[i]) * w.spectral()[i];
            assert!((f.spectral()[i] - expect).norm() < 1e-15);
        }
    }

    #[test]
    fn rhs_pure_forcing() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let curl = VorticityField::from_fn(&g, |x, _| x.cos());
        let forcing = ForcingSpec::new(
            crate::dynamics::ForcingKind::Explicit {
                curl: curl.spectral().to_vec(),
            },
            &g,
        )
        .unwrap();
        let p = SimParams::new(&g, 1.0, 0.0, 1e-3, 1.0).with_forcing(forcing);
        let f = rhs(&VorticityField::zeros(&g), &p).unwrap().to_physical();
        for ix in 0..16 {
            assert!((f[ix] - g.coordinate(ix).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn single_mode_decays_exactly() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let (r, nu, dt) = (0.2, 0.05, 0.01);
        let p = SimParams::new(&g, r, nu, dt, 1.0);
        let w = InitialCondition::Mode { kx: 1, ky: 0, amplitude: 1.3 }.build(&g).unwrap();
        let next = step(&w, &p).unwrap();
        let idx = g.index_of(1, 0).unwrap();
        let expect = w.spectral()[idx] * (-(r + nu) * dt).exp();
        assert_eq!(next.spectral()[idx], expect);
    }

    #[test]
    fn shear_is_fixed_point() {
        let g = SpectralGrid::new(32, 2.0 * PI).unwrap();
        let r = 1.0;
        let p = SimParams::new(&g, r, 0.0, 1e-3, 1.0).with_forcing(ForcingSpec::shear(&g, r));
        let w = InitialCondition::Shear { amplitude: 1.0 }.build(&g).unwrap();
        let next = step(&w, &p).unwrap();
        let diff = (&next - &w).spectral().iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(diff <= 1e-13, "{diff}");
    }

    #[test]
    fn structure_preserved() {
        let g = SpectralGrid::new(32, 2.0 * PI).unwrap();
        let p = SimParams::new(&g, 0.1, 0.0, 1e-2, 1.0);
        let mut w = crate::dynamics::band_limited_field(&g, 9, 1.0, 8.0).unwrap();
        for _ in 0..5 {
            w = step(&w, &p).unwrap();
            assert_eq!(w.mean(), 0.0);
            assert!(w.is_dealiased());
            assert_eq!(w.hermitian_defect(), 0.0);
        }
    }

    #[test]
    fn blow_up_detected() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let p = SimParams::new(&g, 0.1, 0.0, 1.0, 1.0);
        let w = crate::dynamics::band_limited_field(&g, 1, 1.0, 5.0).unwrap().scaled(1e200);
        assert!(matches!(step(&w, &p), Err(Error::NumericalBlowUp { .. })));
    }
}
