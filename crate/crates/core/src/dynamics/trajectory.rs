//! Trajectory recording.

use super::params::{SimParams, CFL_LIMIT};
use super::stepper::Stepper;
use crate::error::{Error, Result};
use crate::spectral::{biot_savart, lp_of_values, VorticityField};

/// Series recorded for one exponent `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSeries {
    pub p: f64,
    /// `||ω||_{L^p}`.
    pub norm: Vec<f64>,
    /// `∫ ω|ω|^{p-2} curl g`.
    pub work: Vec<f64>,
    /// `∫ ω|ω|^{p-2} Δω`; left at zero when `ν = 0`.
    pub diffusion: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunFailure {
    pub step: usize,
    pub time: f64,
    pub message: String,
}

/// Time series of one run: scalar diagnostics at every recorded time and
/// vorticity snapshots at the snapshot stride.
#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    pub times: Vec<f64>,
    /// `||u||²`.
    pub energy: Vec<f64>,
    /// `||ω||²`.
    pub enstrophy: Vec<f64>,
    /// `||u||² + ||ω||²`.
    pub h1_sq: Vec<f64>,
    /// `||∇ω||²`.
    pub palinstrophy: Vec<f64>,
    /// `(g, u)`.
    pub energy_work: Vec<f64>,
    /// `(ω, curl g)`.
    pub enstrophy_work: Vec<f64>,
    pub lp: Vec<LpSeries>,
    pub linf: Vec<f64>,
    pub snapshot_times: Vec<f64>,
    pub snapshots: Vec<VorticityField>,
    /// Largest `dt · max|u| · k_max` seen.
    pub max_cfl: f64,
    pub cfl_warnings: usize,
    pub failure: Option<RunFailure>,
}

impl TrajectoryRecord {
    fn empty(p_list: &[f64]) -> Self {
        TrajectoryRecord {
            times: Vec::new(),
            energy: Vec::new(),
            enstrophy: Vec::new(),
            h1_sq: Vec::new(),
            palinstrophy: Vec::new(),
            energy_work: Vec::new(),
            enstrophy_work: Vec::new(),
            lp: p_list
                .iter()
                .map(|&p| LpSeries {
                    p,
                    norm: Vec::new(),
                    work: Vec::new(),
                    diffusion: Vec::new(),
                })
                .collect(),
            linf: Vec::new(),
            snapshot_times: Vec::new(),
            snapshots: Vec::new(),
            max_cfl: 0.0,
            cfl_warnings: 0,
            failure: None,
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }

    pub fn lp_series(&self, p: f64) -> Option<&LpSeries> {
        self.lp.iter().find(|s| s.p == p)
    }

    pub fn final_snapshot(&self) -> Option<&VorticityField> {
        self.snapshots.last()
    }

    /// Snapshot whose time is within half a step of `t`.
    pub fn snapshot_at(&self, t: f64, dt: f64) -> Option<&VorticityField> {
        self.snapshot_times
            .iter()
            .position(|&s| (s - t).abs() <= 0.5 * dt)
            .map(|i| &self.snapshots[i])
    }

    /// Rebuilds every diagnostic from a list of snapshots, e.g. reloaded files.
    pub fn from_snapshots(
        times: Vec<f64>,
        snapshots: Vec<VorticityField>,
        params: &SimParams,
    ) -> Result<Self> {
        if times.len() != snapshots.len() {
            return Err(Error::InvalidParameter(
                "times and snapshots differ in length".into(),
            ));
        }
        let mut rec = TrajectoryRecord::empty(&params.p_list);
        for (t, w) in times.iter().zip(&snapshots) {
            if !w.grid().same_as(&params.grid) {
                return Err(Error::GridMismatch);
            }
            rec.push_scalars(*t, w, params)?;
        }
        rec.snapshot_times = times;
        rec.snapshots = snapshots;
        Ok(rec)
    }

    fn push_scalars(&mut self, t: f64, w: &VorticityField, params: &SimParams) -> Result<()> {
        let u = biot_savart(w)?;
        let forcing = &params.forcing;
        let energy = u.l2_sq();
        let enstrophy = w.l2_sq();
        self.times.push(t);
        self.energy.push(energy);
        self.enstrophy.push(enstrophy);
        self.h1_sq.push(energy + enstrophy);
        self.palinstrophy.push(w.grad_l2_sq());
        self.energy_work.push(u.inner(forcing.velocity()));
        self.enstrophy_work.push(w.inner(forcing.curl()));

        let area = params.grid.cell_area();
        let phys = w.to_physical();
        let lap = if params.nu > 0.0 {
            Some(w.laplacian().to_physical())
        } else {
            None
        };
        let curl_g = forcing.curl_physical();
        for series in &mut self.lp {
            let p = series.p;
            series.norm.push(lp_of_values(phys.iter().copied(), p, area));
            let weight = |v: f64| v * v.abs().powf(p - 2.0);
            let work: f64 = phys.iter().zip(curl_g).map(|(&v, &c)| weight(v) * c).sum();
            series.work.push(work * area);
            let diffusion = match &lap {
                Some(l) => phys.iter().zip(l).map(|(&v, &d)| weight(v) * d).sum::<f64>() * area,
                None => 0.0,
            };
            series.diffusion.push(diffusion);
        }
        self.linf.push(lp_of_values(phys.iter().copied(), f64::INFINITY, area));
        Ok(())
    }

    /// Portion of the record with `h <= t <= h + m`, re-based to start at 0.
    /// Snapshot-only quantities are kept; scalar series are sliced alike.
    pub fn window(&self, h: f64, m: f64, dt: f64) -> TrajectoryRecord {
        let tol = 0.5 * dt;
        let keep = |t: f64| t >= h - tol && t <= h + m + tol;
        let idx: Vec<usize> = (0..self.times.len()).filter(|&i| keep(self.times[i])).collect();
        let pick = |v: &Vec<f64>| idx.iter().map(|&i| v[i]).collect::<Vec<_>>();
        let sidx: Vec<usize> = (0..self.snapshot_times.len())
            .filter(|&i| keep(self.snapshot_times[i]))
            .collect();
        TrajectoryRecord {
            times: idx.iter().map(|&i| self.times[i] - h).collect(),
            energy: pick(&self.energy),
            enstrophy: pick(&self.enstrophy),
            h1_sq: pick(&self.h1_sq),
            palinstrophy: pick(&self.palinstrophy),
            energy_work: pick(&self.energy_work),
            enstrophy_work: pick(&self.enstrophy_work),
            lp: self
                .lp
                .iter()
                .map(|s| LpSeries {
                    p: s.p,
                    norm: pick(&s.norm),
                    work: pick(&s.work),
                    diffusion: pick(&s.diffusion),
                })
                .collect(),
            linf: pick(&self.linf),
            snapshot_times: sidx.iter().map(|&i| self.snapshot_times[i] - h).collect(),
            snapshots: sidx.iter().map(|&i| self.snapshots[i].clone()).collect(),
            max_cfl: self.max_cfl,
            cfl_warnings: self.cfl_warnings,
            failure: self.failure.clone(),
        }
    }

    /// Keeps every `factor`-th recorded sample (snapshots untouched).
    pub fn subsample(&self, factor: usize) -> TrajectoryRecord {
        assert!(factor > 0);
        let pick = |v: &Vec<f64>| v.iter().copied().step_by(factor).collect::<Vec<_>>();
        TrajectoryRecord {
            times: pick(&self.times),
            energy: pick(&self.energy),
            enstrophy: pick(&self.enstrophy),
            h1_sq: pick(&self.h1_sq),
            palinstrophy: pick(&self.palinstrophy),
            energy_work: pick(&self.energy_work),
            enstrophy_work: pick(&self.enstrophy_work),
            lp: self
                .lp
                .iter()
                .map(|s| LpSeries {
                    p: s.p,
                    norm: pick(&s.norm),
                    work: pick(&s.work),
                    diffusion: pick(&s.diffusion),
                })
                .collect(),
            linf: pick(&self.linf),
            snapshot_times: self.snapshot_times.clone(),
            snapshots: self.snapshots.clone(),
            max_cfl: self.max_cfl,
            cfl_warnings: self.cfl_warnings,
            failure: self.failure.clone(),
        }
    }
}

/// Integrates from `omega0` to `params.t_end`.
///
/// `omega0` is projected onto the retained modes; a nonzero mean is an error.
/// A non-finite state stops the run and returns the partial record with
/// `failure` set.
pub fn simulate(omega0: &VorticityField, params: &SimParams) -> Result<TrajectoryRecord> {
    params.validate()?;
    if !omega0.grid().same_as(&params.grid) {
        return Err(Error::GridMismatch);
    }
    biot_savart(omega0)?;

    let mut w = omega0.clone();
    w.remove_mean();
    w.dealias();
    let mut rec = TrajectoryRecord::empty(&params.p_list);
    let steps = params.steps();
    let stepper = Stepper::new(params);
    let k_max = params.grid.k_max();

    for n in 0..=steps {
        let t = n as f64 * params.dt;
        let last = n == steps;
        if n % params.record_every == 0 || last {
            rec.push_scalars(t, &w, params)?;
        }
        let snap = params.snapshot_every > 0 && n % params.snapshot_every == 0;
        if snap || last {
            rec.snapshot_times.push(t);
            rec.snapshots.push(w.clone());
        }
        if last {
            break;
        }
        let speed = stepper.advance(w.spectral_mut());
        let cfl = params.dt * speed * k_max;
        if cfl > rec.max_cfl {
            rec.max_cfl = cfl;
        }
        if cfl > CFL_LIMIT {
            if rec.cfl_warnings == 0 {
                log::warn!("t = {t}: CFL number {cfl:.3} exceeds advisory limit {CFL_LIMIT}");
            }
            rec.cfl_warnings += 1;
        }
        if !w.is_finite() {
            let failure = RunFailure {
                step: n + 1,
                time: t + params.dt,
                message: Error::NumericalBlowUp {
                    step: n + 1,
                    time: t + params.dt,
                }
                .to_string(),
            };
            log::error!("{}", failure.message);
            rec.failure = Some(failure);
            break;
        }
    }
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{band_limited_field, ForcingSpec, InitialCondition};
    use crate::spectral::SpectralGrid;
    use std::f64::consts::PI;

    #[test]
    fn record_layout() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let p = SimParams::new(&g, 0.5, 0.0, 0.01, 0.95)
            .with_record_every(10)
            .with_snapshot_every(30);
        let w = band_limited_field(&g, 1, 1.0, 3.0).unwrap();
        let rec = simulate(&w, &p).unwrap();
        // 95 steps: samples at 0, 10, ..., 90 and the final step 95.
        assert_eq!(rec.len(), 11);
        assert_eq!(rec.times[0], 0.0);
        assert!((rec.times[10] - 0.95).abs() < 1e-12);
        assert!(rec.times.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(rec.snapshots.len(), 5);
        for s in &rec.snapshots {
            assert!(s.is_dealiased());
            assert_eq!(s.mean(), 0.0);
            assert_eq!(s.hermitian_defect(), 0.0);
        }
        assert!(!rec.failed());
    }

    #[test]
    fn unforced_enstrophy_decays() {
        let g = SpectralGrid::new(32, 2.0 * PI).unwrap();
        let r = 0.3;
        let p = SimParams::new(&g, r, 0.0, 1e-2, 2.0).with_record_every(20);
        let w = band_limited_field(&g, 4, 1.0, 6.0).unwrap();
        let rec = simulate(&w, &p).unwrap();
        for (t, z) in rec.times.iter().zip(&rec.enstrophy) {
            let expect = rec.enstrophy[0] * (-2.0 * r * t).exp();
            assert!(((z - expect) / expect).abs() < 1e-8);
        }
    }

    #[test]
    fn failure_is_flagged() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let p = SimParams::new(&g, 0.1, 0.0, 0.5, 50.0);
        let w = band_limited_field(&g, 1, 1.0, 5.0).unwrap().scaled(1e3);
        let rec = simulate(&w, &p).unwrap();
        assert!(rec.failed());
        assert!(rec.len() >= 1);
        assert!(rec.cfl_warnings > 0);
    }

    #[test]
    fn rejects_mean_and_mismatch() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let p = SimParams::new(&g, 0.1, 0.0, 0.1, 1.0);
        let w = VorticityField::from_fn(&g, |_, _| 1.0);
        assert!(simulate(&w, &p).is_err());
        let other = SpectralGrid::new(8, 2.0 * PI).unwrap();
        assert!(simulate(&VorticityField::zeros(&other), &p).is_err());
    }

    #[test]
    fn rebuild_from_snapshots_matches() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let p = SimParams::new(&g, 0.5, 0.01, 0.01, 0.5)
            .with_forcing(ForcingSpec::shear(&g, 0.2))
            .with_record_every(5);
        let w = InitialCondition::Random { seed: 3, k_min: 1.0, k_max: 4.0, amplitude: 1.0 }
            .build(&g)
            .unwrap();
        let rec = simulate(&w, &p).unwrap();
        let again =
            TrajectoryRecord::from_snapshots(rec.snapshot_times.clone(), rec.snapshots.clone(), &p)
                .unwrap();
        assert_eq!(rec.energy, again.energy);
        assert_eq!(rec.lp, again.lp);
    }

    #[test]
    fn window_rebases_time() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let p = SimParams::new(&g, 0.5, 0.0, 0.1, 3.0).with_record_every(2);
        let w = band_limited_field(&g, 2, 1.0, 3.0).unwrap();
        let rec = simulate(&w, &p).unwrap();
        let win = rec.window(1.0, 1.0, p.dt);
        assert!((win.times[0]).abs() < 1e-12);
        assert!((win.times.last().unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(win.snapshots.len(), win.times.len());
        assert_eq!(rec.subsample(2).len(), 8);
    }
}
