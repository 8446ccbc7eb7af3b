//! Attraction ladder: distances from a shifted probe family to a harvested
//! reference, in `H¹` and in `C([0, M]; H¹)`.

use super::distance::{h1_semidistance, trajectory_semidistance};
use super::harvest::AttractorApprox;
use crate::dynamics::{band_limited_field, run_ensemble, scale_to_h1, SimParams, TrajectoryRecord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LadderPlan {
    /// Shifts `h`, increasing.
    pub shifts: Vec<f64>,
    pub probes: usize,
    /// `H¹` norm of the probe initial data.
    pub probe_h1: f64,
    pub seed: u64,
    /// Window length `M` of the trajectory comparison.
    pub horizon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderRung {
    pub shift: f64,
    /// `dist_{H¹}(S(h)B, A)`.
    pub h1: f64,
    /// `dist_{C([0,M];H¹)}(T(h)B, K)`.
    pub trajectory: f64,
}

/// Runs the probe family to `max h + M`, sampling on the reference stride,
/// and measures both semidistances at each shift.
pub fn attraction_ladder(
    params: &SimParams,
    reference: &AttractorApprox,
    plan: &LadderPlan,
) -> Result<Vec<LadderRung>> {
    if plan.probes == 0 || plan.shifts.is_empty() {
        return Err(Error::InvalidParameter("need at least one probe and one shift".into()));
    }
    if plan.shifts.windows(2).any(|w| w[1] <= w[0]) || plan.shifts[0] < 0.0 {
        return Err(Error::InvalidParameter("shifts must be >= 0 and increasing".into()));
    }
    if reference.reference_set.is_empty() {
        return Err(Error::InvalidParameter("empty reference set".into()));
    }
    let dt = params.dt;
    let interval = reference.stride as f64 * dt;
    for h in plan.shifts.iter().chain([&plan.horizon]) {
        let q = h / interval;
        if (q - q.round()).abs() > 1e-6 {
            return Err(Error::TimeGridMismatch(format!(
                "{h} is not a multiple of the sampling interval {interval}"
            )));
        }
    }
    let reference_pieces = reference.reference_trajectories(plan.horizon, dt);
    if reference_pieces.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "no reference run has room for a window of length {}",
            plan.horizon
        )));
    }

    let k_max = (params.grid.cutoff() as f64).min(4.0);
    let initials = (0..plan.probes)
        .map(|i| {
            let w = band_limited_field(&params.grid, plan.seed.wrapping_add(i as u64), 1.0, k_max)?;
            scale_to_h1(&w, plan.probe_h1)
        })
        .collect::<Result<Vec<_>>>()?;
    let t_end = plan.shifts.last().unwrap() + plan.horizon;
    let mut run_params = params.clone().with_t_end(t_end).with_record_every(reference.stride);
    run_params.snapshot_every = reference.stride;
    let runs: Vec<TrajectoryRecord> = run_ensemble(&initials, &run_params)?
        .into_iter()
        .map(|r| {
            let r = r?;
            match &r.failure {
                Some(f) => Err(Error::NumericalBlowUp { step: f.step, time: f.time }),
                None => Ok(r),
            }
        })
        .collect::<Result<_>>()?;

    plan.shifts
        .iter()
        .map(|&h| {
            let sections = runs
                .iter()
                .map(|r| {
                    r.snapshot_at(h, dt).cloned().ok_or_else(|| {
                        Error::TimeGridMismatch(format!("probe has no snapshot at t = {h}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let windows: Vec<TrajectoryRecord> =
                runs.iter().map(|r| r.window(h, plan.horizon, dt)).collect();
            Ok(LadderRung {
                shift: h,
                h1: h1_semidistance(&sections, reference)?,
                trajectory: trajectory_semidistance(&windows, &reference_pieces, plan.horizon)?,
            })
        })
        .collect()
}

/// Both distances are nonincreasing along the ladder.
pub fn is_nonincreasing(rungs: &[LadderRung]) -> bool {
    rungs
        .windows(2)
        .all(|w| w[1].h1 <= w[0].h1 && w[1].trajectory <= w[0].trajectory)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attractor::{harvest_attractor, HarvestPlan};
    use crate::dynamics::ForcingSpec;
    use crate::spectral::SpectralGrid;
    use std::f64::consts::PI;

    #[test]
    fn zero_forcing_ladder_shrinks() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let r = 1.0;
        let p = SimParams::new(&g, r, 0.0, 1e-2, 0.0).with_forcing(ForcingSpec::zero(&g));
        let approx = harvest_attractor(&p, &HarvestPlan::new(1, 1, 20.0, 22.0, 50)).unwrap();
        let plan = LadderPlan {
            shifts: vec![1.0, 2.0, 4.0],
            probes: 2,
            probe_h1: 3.0,
            seed: 9,
            horizon: 1.0,
        };
        let rungs = attraction_ladder(&p, &approx, &plan).unwrap();
        assert_eq!(rungs.len(), 3);
        assert!(is_nonincreasing(&rungs));
        // The reference sits at ~e^{-20}; probe H¹ norms decay like e^{-rt}
        // or faster.
        assert!(rungs[0].h1 <= 3.0 * (-r * 1.0).exp() + 1e-6);
        assert!(rungs[2].trajectory < rungs[0].trajectory);
    }

    #[test]
    fn off_grid_shift_is_rejected() {
        let g = SpectralGrid::new(8, 2.0 * PI).unwrap();
        let p = SimParams::new(&g, 1.0, 0.0, 1e-2, 0.0);
        let approx = harvest_attractor(&p, &HarvestPlan::new(1, 1, 20.0, 21.0, 10)).unwrap();
        let plan = LadderPlan { shifts: vec![0.25], probes: 1, probe_h1: 1.0, seed: 0, horizon: 0.1 };
        assert!(matches!(
            attraction_ladder(&p, &approx, &plan),
            Err(Error::TimeGridMismatch(_))
        ));
    }
}
