use std::sync::Arc;

use super::forcing::ForcingSpec;
use crate::error::{Error, Result};
use crate::spectral::SpectralGrid;

/// Advisory limit on `dt · max|u| · k_max`.
pub const CFL_LIMIT: f64 = 0.5;

/// Physical and numerical parameters of one run.
#[derive(Debug, Clone)]
pub struct SimParams {
    pub grid: Arc<SpectralGrid>,
    /// Ekman damping rate, strictly positive.
    pub r: f64,
    /// Viscosity; zero is the inviscid damped Euler system.
    pub nu: f64,
    pub dt: f64,
    pub t_end: f64,
    pub forcing: ForcingSpec,
    /// Scalars are recorded every `record_every` steps.
    pub record_every: usize,
    /// Snapshots are kept every `snapshot_every` steps (a multiple of
    /// `record_every`); the final state is always kept.
    pub snapshot_every: usize,
    /// Exponents whose `L^p` norms and balance terms are recorded.
    pub p_list: Vec<f64>,
    /// Test hook: drop the transport term and integrate the linear part only.
    pub linear_only: bool,
}

impl SimParams {
    /// Unforced run recording every step, keeping every snapshot, `p ∈ {2, 4, 8}`.
    pub fn new(grid: &Arc<SpectralGrid>, r: f64, nu: f64, dt: f64, t_end: f64) -> Self {
        SimParams {
            grid: Arc::clone(grid),
            r,
            nu,
            dt,
            t_end,
            forcing: ForcingSpec::zero(grid),
            record_every: 1,
            snapshot_every: 1,
            p_list: vec![2.0, 4.0, 8.0],
            linear_only: false,
        }
    }

    pub fn with_forcing(mut self, forcing: ForcingSpec) -> Self {
        self.forcing = forcing;
        self
    }

    /// Sets the scalar stride and keeps a snapshot at every recorded time.
    pub fn with_record_every(mut self, every: usize) -> Self {
        self.record_every = every;
        self.snapshot_every = every;
        self
    }

    pub fn with_snapshot_every(mut self, every: usize) -> Self {
        self.snapshot_every = every;
        self
    }

    pub fn with_p_list(mut self, p_list: Vec<f64>) -> Self {
        self.p_list = p_list;
        self
    }

    pub fn with_t_end(mut self, t_end: f64) -> Self {
        self.t_end = t_end;
        self
    }

    pub fn with_nu(mut self, nu: f64) -> Self {
        self.nu = nu;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !(self.r > 0.0) || !self.r.is_finite() {
            return bad(format!("r must be > 0, got {}", self.r));
        }
        if !(self.nu >= 0.0) || !self.nu.is_finite() {
            return bad(format!("nu must be >= 0, got {}", self.nu));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return bad(format!("dt must be > 0, got {}", self.dt));
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return bad(format!("t_end must be >= 0, got {}", self.t_end));
        }
        if self.record_every == 0 {
            return bad("record_every must be positive".into());
        }
        if !self.snapshot_every.is_multiple_of(self.record_every) {
            return bad(format!(
                "snapshot_every ({}) must be a multiple of record_every ({})",
                self.snapshot_every, self.record_every
            ));
        }
        if let Some(p) = self.p_list.iter().find(|p| !(**p >= 2.0) || p.is_infinite()) {
            return bad(format!("recorded exponents must be finite and >= 2, got {p}"));
        }
        if !self.forcing.grid().same_as(&self.grid) {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }

    /// Time between consecutive recorded samples.
    pub fn record_interval(&self) -> f64 {
        self.dt * self.record_every as f64
    }

    /// Per-mode exponent `-(r + ν|k|²)`.
    pub fn linear_operator(&self) -> Vec<f64> {
        self.grid
            .k_sq()
            .iter()
            .map(|k2| -(self.r + self.nu * k2))
            .collect()
    }

    /// Absorbing-ball radius `√2 r⁻¹ ||g||₁`.
    pub fn absorbing_radius(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.forcing.h1_norm() / self.r
    }
}
