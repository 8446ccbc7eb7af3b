//! Distance between viscous runs and the inviscid run from the same data.

use rayon::prelude::*;

use super::distance::h1_distance;
use crate::dynamics::{simulate, ForcingSpec, SimParams};
use crate::error::{Error, Result};
use crate::spectral::VorticityField;

/// `(ν, ||u_ν(T) - u_0(T)||₁)` for each `ν`, with the forcing of `base`
/// shared by every run.
pub fn vanishing_viscosity(
    omega0: &VorticityField,
    base: &SimParams,
    nu_list: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let forcing = base.forcing.clone();
    vanishing_viscosity_with(omega0, base, nu_list, |_| Ok(forcing.clone()))
}

/// As [`vanishing_viscosity`] with a per-`ν` forcing; the inviscid reference
/// uses `forcing_for(0.0)`.
pub fn vanishing_viscosity_with<F>(
    omega0: &VorticityField,
    base: &SimParams,
    nu_list: &[f64],
    forcing_for: F,
) -> Result<Vec<(f64, f64)>>
where
    F: Fn(f64) -> Result<ForcingSpec> + Sync,
{
    if let Some(nu) = nu_list.iter().find(|nu| !(**nu >= 0.0) || !nu.is_finite()) {
        return Err(Error::InvalidParameter(format!("nu must be >= 0, got {nu}")));
    }
    let steps = base.steps().max(1);
    let run = |nu: f64| -> Result<VorticityField> {
        let p = base
            .clone()
            .with_nu(nu)
            .with_forcing(forcing_for(nu)?)
            .with_record_every(steps);
        let rec = simulate(omega0, &p)?;
        if let Some(f) = &rec.failure {
            return Err(Error::NumericalBlowUp { step: f.step, time: f.time });
        }
        Ok(rec.final_snapshot().expect("final snapshot is always kept").clone())
    };
    let mut all = vec![0.0];
    all.extend_from_slice(nu_list);
    let finals: Result<Vec<VorticityField>> = all.par_iter().map(|&nu| run(nu)).collect();
    let finals = finals?;
    nu_list
        .iter()
        .zip(&finals[1..])
        .map(|(&nu, w)| Ok((nu, h1_distance(w, &finals[0])?)))
        .collect()
}
