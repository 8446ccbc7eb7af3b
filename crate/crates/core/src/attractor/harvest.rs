//! Reference sections of the global attractor harvested from long runs.

use std::hash::{Hash, Hasher};

use crate::dynamics::{band_limited_field, run_ensemble, scale_to_h1, SimParams, TrajectoryRecord};
use crate::error::{Error, Result};
use crate::spectral::{biot_savart, lp_of_values, VorticityField};

/// How to seed and sample the reference runs.
#[derive(Debug, Clone, PartialEq)]
pub struct HarvestPlan {
    pub n_init: usize,
    pub seed: u64,
    /// Harvesting starts at `t_burn`...
    pub t_burn: f64,
    /// ...and ends at `t_collect`, the horizon of the reference runs.
    pub t_collect: f64,
    /// Steps between harvested sections.
    pub stride: usize,
    /// Initial data live on the shell `1 <= |k| <= init_k_max`...
    pub init_k_max: f64,
    /// ...with this `H¹` norm; `None` uses the absorbing radius, or unit RMS
    /// vorticity when the forcing vanishes.
    pub init_h1: Option<f64>,
    /// Slack on the attractor bounds used to screen sections.
    pub slack: f64,
}

impl HarvestPlan {
    pub fn new(n_init: usize, seed: u64, t_burn: f64, t_collect: f64, stride: usize) -> Self {
        HarvestPlan {
            n_init,
            seed,
            t_burn,
            t_collect,
            stride,
            init_k_max: 4.0,
            init_h1: None,
            slack: 1e-6,
        }
    }

    /// Seeded initial fields, one per member.
    pub fn initials(&self, params: &SimParams) -> Result<Vec<VorticityField>> {
        (0..self.n_init)
            .map(|i| {
                let w = band_limited_field(&params.grid, self.seed + i as u64, 1.0, self.init_k_max)?;
                let target = self.init_h1.unwrap_or_else(|| params.absorbing_radius());
                if target > 0.0 {
                    scale_to_h1(&w, target)
                } else {
                    Ok(w)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct AttractorApprox {
    pub reference_set: Vec<VorticityField>,
    pub harvest_times: Vec<f64>,
    /// Member index of each section.
    pub members: Vec<usize>,
    pub params_hash: u64,
    /// Steps between harvested sections.
    pub stride: usize,
    /// Sections dropped for breaking an attractor bound.
    pub rejected: usize,
    /// Reference runs, kept for trajectory-space comparisons.
    pub runs: Vec<TrajectoryRecord>,
}

impl AttractorApprox {
    /// Pieces `[t_h, t_h + m]` of the reference runs, re-based to start at 0,
    /// for every harvest time with room for the whole piece.
    pub fn reference_trajectories(&self, m: f64, dt: f64) -> Vec<TrajectoryRecord> {
        let mut out = Vec::new();
        for run in &self.runs {
            let end = run.times.last().copied().unwrap_or(0.0);
            let starts: Vec<f64> = run
                .snapshot_times
                .iter()
                .copied()
                .filter(|t| self.harvest_times.iter().any(|h| (h - t).abs() <= 0.5 * dt))
                .filter(|t| t + m <= end + 0.5 * dt)
                .collect();
            for t in starts {
                out.push(run.window(t, m, dt));
            }
        }
        out
    }
}

/// Fingerprint of the grid, coefficients and forcing of a parameter set.
pub fn params_fingerprint(params: &SimParams) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    params.grid.n().hash(&mut h);
    for v in [params.grid.length(), params.r, params.nu, params.dt] {
        v.to_bits().hash(&mut h);
    }
    for c in params.forcing.curl().spectral() {
        c.re.to_bits().hash(&mut h);
        c.im.to_bits().hash(&mut h);
    }
    h.finish()
}

/// `||u||₁ <= r⁻¹||g||₁` and `||ω||_p <= r⁻¹||curl g||_p` for the recorded
/// exponents and `p = ∞`, each within `slack`.
fn within_bounds(w: &VorticityField, params: &SimParams, slack: f64) -> Result<bool> {
    let r = params.r;
    let u = biot_savart(w)?;
    if (u.l2_sq() + w.l2_sq()).sqrt() > params.forcing.h1_norm() / r + slack {
        return Ok(false);
    }
    let area = params.grid.cell_area();
    let phys = w.to_physical();
    let curl_g = params.forcing.curl().to_physical();
    for p in params.p_list.iter().copied().chain([f64::INFINITY]) {
        let lhs = lp_of_values(phys.iter().copied(), p, area);
        let rhs = lp_of_values(curl_g.iter().copied(), p, area) / r;
        if lhs > rhs + slack {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs `plan.n_init` seeded trajectories to `plan.t_collect` and keeps every
/// `plan.stride`-th step from `plan.t_burn` on. Sections breaking the
/// attractor bounds are dropped with a warning; failed members are skipped.
pub fn harvest_attractor(params: &SimParams, plan: &HarvestPlan) -> Result<AttractorApprox> {
    if plan.n_init == 0 {
        return Err(Error::InvalidParameter("n_init must be >= 1".into()));
    }
    if plan.stride == 0 || !(plan.t_collect >= plan.t_burn) || !(plan.t_burn >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need stride > 0 and 0 <= t_burn <= t_collect, got stride {}, t_burn {}, t_collect {}",
            plan.stride, plan.t_burn, plan.t_collect
        )));
    }
    let run_params = params
        .clone()
        .with_t_end(plan.t_collect)
        .with_record_every(plan.stride);
    let initials = plan.initials(params)?;
    let results = run_ensemble(&initials, &run_params)?;

    let mut approx = AttractorApprox {
        reference_set: Vec::new(),
        harvest_times: Vec::new(),
        members: Vec::new(),
        params_hash: params_fingerprint(params),
        stride: plan.stride,
        rejected: 0,
        runs: Vec::new(),
    };
    let tol = 0.5 * params.dt;
    for (member, res) in results.into_iter().enumerate() {
        let rec = match res {
            Ok(rec) if !rec.failed() => rec,
            Ok(rec) => {
                log::warn!("member {member} failed: {:?}", rec.failure);
                continue;
            }
            Err(e) => {
                log::warn!("member {member} failed: {e}");
                continue;
            }
        };
        for (t, w) in rec.snapshot_times.iter().zip(&rec.snapshots) {
            if *t < plan.t_burn - tol {
                continue;
            }
            if within_bounds(w, params, plan.slack)? {
                approx.reference_set.push(w.clone());
                approx.harvest_times.push(*t);
                approx.members.push(member);
            } else {
                log::warn!("member {member}: section at t = {t} breaks the attractor bounds");
                approx.rejected += 1;
            }
        }
        approx.runs.push(rec);
    }
    if approx.runs.is_empty() {
        return Err(Error::AllMembersFailed);
    }
    Ok(approx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::ForcingSpec;
    use crate::spectral::SpectralGrid;
    use std::f64::consts::PI;

    #[test]
    fn zero_forcing_collapses_to_origin() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let r = 1.0;
        let p = SimParams::new(&g, r, 0.0, 2e-2, 0.0);
        let plan = HarvestPlan::new(2, 5, 40.0 / r, 42.0 / r, 50);
        let a = harvest_attractor(&p, &plan).unwrap();
        assert!(!a.reference_set.is_empty());
        for w in &a.reference_set {
            let h1 = (biot_savart(w).unwrap().l2_sq() + w.l2_sq()).sqrt();
            assert!(h1 <= 1e-6, "{h1}");
        }
        assert!(a.harvest_times.iter().all(|t| *t >= 40.0 - 1e-9));
    }

    #[test]
    fn reference_pieces_share_a_grid() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let p = SimParams::new(&g, 1.0, 0.0, 1e-2, 0.0).with_forcing(ForcingSpec::shear(&g, 1.0));
        let plan = HarvestPlan::new(1, 1, 20.0, 21.0, 10);
        let a = harvest_attractor(&p, &plan).unwrap();
        assert_eq!(a.rejected, 0);
        let pieces = a.reference_trajectories(0.5, p.dt);
        assert_eq!(pieces.len(), 6);
        for piece in &pieces {
            assert_eq!(piece.snapshot_times.len(), 6);
            assert_eq!(piece.snapshot_times[0], 0.0);
        }
    }

    #[test]
    fn fingerprint_tracks_parameters() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let a = SimParams::new(&g, 1.0, 0.0, 1e-2, 1.0);
        let b = a.clone().with_nu(1e-3);
        assert_eq!(params_fingerprint(&a), params_fingerprint(&a.clone()));
        assert_ne!(params_fingerprint(&a), params_fingerprint(&b));
    }

    #[test]
    fn zero_members_rejected() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let p = SimParams::new(&g, 1.0, 0.0, 1e-2, 1.0);
        assert!(harvest_attractor(&p, &HarvestPlan::new(0, 1, 0.0, 1.0, 1)).is_err());
    }
}
