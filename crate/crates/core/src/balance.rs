//! Balance-law residuals and envelope checks over recorded trajectories.
//!
//! The norm identities are exact ODEs; the checks discretise only the
//! reporting. Time derivatives use the three-point second-order stencil on
//! the recorded times, so residual series live on interior samples only and
//! the endpoints never enter a verdict.

use std::fmt;

use crate::dynamics::{SimParams, TrajectoryRecord};
use crate::error::{Error, Result};
use num_complex::Complex64;

use crate::spectral::{
    biot_savart, lp_of_values, nonlinear_term_with, velocity_advection, velocity_gradient_lp,
    Dealias, VelocityField, VorticityField,
};

/// Default tolerance for balance residuals at the reference configuration.
pub const DEFAULT_BALANCE_TOL: f64 = 1e-5;
/// Default relative slack for the dissipative envelope.
pub const DEFAULT_ENVELOPE_TOL: f64 = 1e-10;
/// Default absolute slack for attractor bounds.
pub const DEFAULT_BOUND_SLACK: f64 = 1e-6;
/// Default relative tolerance for the orthogonality relations.
pub const DEFAULT_ORTHOGONALITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Law {
    Energy,
    Enstrophy,
    /// Sum of energy and enstrophy balances.
    H1,
    Lp(f64),
    H1Envelope,
    AbsorbingBall,
    LinfBound,
    LpAttractorBound(f64),
    WpYudovich,
    Orthogonality,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::Energy => write!(f, "energy"),
            Law::Enstrophy => write!(f, "enstrophy"),
            Law::H1 => write!(f, "h1"),
            Law::Lp(p) => write!(f, "lp_{p}"),
            Law::H1Envelope => write!(f, "h1_envelope"),
            Law::AbsorbingBall => write!(f, "absorbing_ball"),
            Law::LinfBound => write!(f, "linf_bound"),
            Law::LpAttractorBound(p) => write!(f, "lp_attractor_bound_{p}"),
            Law::WpYudovich => write!(f, "wp_yudovich"),
            Law::Orthogonality => write!(f, "orthogonality"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone)]
pub struct BalanceReport {
    pub law: Law,
    pub times: Vec<f64>,
    /// Normalised residuals, one per entry of `times`.
    pub residual_series: Vec<f64>,
    /// Residuals before normalisation.
    pub raw_residuals: Vec<f64>,
    pub scale: f64,
    pub max_abs_residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    /// Law-specific extras (entry times, bounds, ratios).
    pub details: Vec<(String, f64)>,
}

impl BalanceReport {
    fn new(law: Law, times: Vec<f64>, raw: Vec<f64>, scale: f64, tolerance: f64) -> Self {
        let scale = if scale > 0.0 && scale.is_finite() { scale } else { 1.0 };
        let residual_series: Vec<f64> = raw.iter().map(|v| v / scale).collect();
        let max_abs_residual = residual_series.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let bad = residual_series.iter().any(|v| !v.is_finite());
        let verdict = if !bad && max_abs_residual <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        BalanceReport {
            law,
            times,
            residual_series,
            raw_residuals: raw,
            scale,
            max_abs_residual,
            tolerance,
            verdict,
            details: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn detail(&self, key: &str) -> Option<f64> {
        self.details.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    fn fail_unless(mut self, ok: bool) -> Self {
        if !ok {
            self.verdict = Verdict::Fail;
        }
        self
    }
}

impl fmt::Display for BalanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<24} {} max residual {:.3e} (tol {:.1e})",
            self.law.to_string(),
            if self.passed() { "PASS" } else { "FAIL" },
            self.max_abs_residual,
            self.tolerance
        )?;
        for (k, v) in &self.details {
            write!(f, " {k}={v:.6e}")?;
        }
        Ok(())
    }
}

/// Second-order derivative of `q` at interior samples (three-point stencil,
/// valid on non-uniform spacing).
pub fn interior_derivative(times: &[f64], q: &[f64]) -> Result<Vec<f64>> {
    if times.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: times.len(),
        });
    }
    Ok((1..times.len() - 1)
        .map(|i| {
            let h1 = times[i] - times[i - 1];
            let h2 = times[i + 1] - times[i];
            -h2 / (h1 * (h1 + h2)) * q[i - 1]
                + (h2 - h1) / (h1 * h2) * q[i]
                + h1 / (h2 * (h1 + h2)) * q[i + 1]
        })
        .collect())
}

/// Residual of `(1/k) dQ/dt + r Q + D - W` at interior samples.
#[allow(clippy::too_many_arguments)]
fn balance(
    law: Law,
    traj: &TrajectoryRecord,
    params: &SimParams,
    k: f64,
    q: &[f64],
    dissipation: &[f64],
    work: &[f64],
    tol: f64,
) -> Result<BalanceReport> {
    let dq = interior_derivative(&traj.times, q)?;
    let raw: Vec<f64> = dq
        .iter()
        .enumerate()
        .map(|(j, d)| {
            let i = j + 1;
            d / k + params.r * q[i] + dissipation[i] - work[i]
        })
        .collect();
    let scale = params.r * q.iter().copied().fold(0.0, f64::max);
    let times = traj.times[1..traj.times.len() - 1].to_vec();
    Ok(BalanceReport::new(law, times, raw, scale, tol))
}

/// `½ d/dt ||u||² + r ||u||² + ν ||ω||² = (g, u)`.
pub fn energy_residual(traj: &TrajectoryRecord, params: &SimParams, tol: f64) -> Result<BalanceReport> {
    let visc: Vec<f64> = traj.enstrophy.iter().map(|z| params.nu * z).collect();
    balance(Law::Energy, traj, params, 2.0, &traj.energy, &visc, &traj.energy_work, tol)
}

/// `½ d/dt ||ω||² + r ||ω||² + ν ||∇ω||² = (ω, curl g)`.
pub fn enstrophy_residual(
    traj: &TrajectoryRecord,
    params: &SimParams,
    tol: f64,
) -> Result<BalanceReport> {
    let visc: Vec<f64> = traj.palinstrophy.iter().map(|p| params.nu * p).collect();
    balance(Law::Enstrophy, traj, params, 2.0, &traj.enstrophy, &visc, &traj.enstrophy_work, tol)
}

/// Full `H¹` balance, `½ d/dt ||u||₁² + r ||u||₁² + ν(...) = (u, g)₁`.
pub fn h1_residual(traj: &TrajectoryRecord, params: &SimParams, tol: f64) -> Result<BalanceReport> {
    let visc: Vec<f64> = traj
        .enstrophy
        .iter()
        .zip(&traj.palinstrophy)
        .map(|(z, p)| params.nu * (z + p))
        .collect();
    let work: Vec<f64> = traj
        .energy_work
        .iter()
        .zip(&traj.enstrophy_work)
        .map(|(a, b)| a + b)
        .collect();
    balance(Law::H1, traj, params, 2.0, &traj.h1_sq, &visc, &work, tol)
}

/// `(1/p) d/dt ||ω||_p^p + r ||ω||_p^p - ν ∫ω|ω|^{p-2}Δω = ∫ω|ω|^{p-2} curl g`.
pub fn lp_residual(
    traj: &TrajectoryRecord,
    params: &SimParams,
    p: f64,
    tol: f64,
) -> Result<BalanceReport> {
    if !(p >= 2.0) || p.fract() != 0.0 || !(p as u64).is_multiple_of(2) {
        return Err(Error::InvalidExponent(format!(
            "L^p balance needs an even integer p >= 2, got {p}"
        )));
    }
    let series = traj.lp_series(p).ok_or(Error::MissingExponent(p))?;
    let q: Vec<f64> = series.norm.iter().map(|v| v.powi(p as i32)).collect();
    let visc: Vec<f64> = series.diffusion.iter().map(|d| -params.nu * d).collect();
    balance(Law::Lp(p), traj, params, p, &q, &visc, &series.work, tol)
}

/// `||u(t)||₁² <= ||u(0)||₁² e^{-rt} + r⁻² ||g||₁²` at every recorded time.
/// Violations are measured relative to `1 + ||u(0)||₁²`.
pub fn h1_envelope(traj: &TrajectoryRecord, params: &SimParams, tol: f64) -> Result<BalanceReport> {
    if traj.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let g1 = params.forcing.h1_norm();
    let x0 = traj.h1_sq[0];
    let raw: Vec<f64> = traj
        .times
        .iter()
        .zip(&traj.h1_sq)
        .map(|(t, x)| (x - (x0 * (-params.r * t).exp() + g1 * g1 / (params.r * params.r))).max(0.0))
        .collect();
    let mut rep = BalanceReport::new(Law::H1Envelope, traj.times.clone(), raw, 1.0 + x0, tol);
    let violations = rep.residual_series.iter().filter(|v| **v > tol).count();
    rep.details.push(("violations".into(), violations as f64));
    Ok(rep)
}

/// Entry into the absorbing ball `||u||₁ <= R₀ = √2 r⁻¹ ||g||₁`.
///
/// The measured entry time `t*` (first sample after which the trajectory
/// stays inside) must not exceed `h₁ = r⁻¹ ln(||u(0)||₁² r² / ||g||₁²)` by more
/// than one recording interval, and no sample after `h₁` may leave the ball by
/// more than `tol` relative to `R₀`. With `g = 0` the ball degenerates to the
/// origin and the check becomes `||u(t)||₁ <= ||u(0)||₁ e^{-rt/2}`.
pub fn absorbing_ball_check(
    traj: &TrajectoryRecord,
    params: &SimParams,
    tol: f64,
) -> Result<BalanceReport> {
    if traj.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let r = params.r;
    let norms: Vec<f64> = traj.h1_sq.iter().map(|x| x.sqrt()).collect();
    let u0 = norms[0];
    let g1 = params.forcing.h1_norm();
    let radius = params.absorbing_radius();

    if radius == 0.0 {
        let raw: Vec<f64> = traj
            .times
            .iter()
            .zip(&norms)
            .map(|(t, v)| (v - u0 * (-0.5 * r * t).exp()).max(0.0))
            .collect();
        let mut rep = BalanceReport::new(Law::AbsorbingBall, traj.times.clone(), raw, 1.0 + u0, tol);
        rep.details.push(("radius".into(), 0.0));
        return Ok(rep);
    }

    let entry_bound = if u0 * r > g1 {
        ((u0 * r / g1).powi(2)).ln() / r
    } else {
        0.0
    };
    let entry_index = match norms.iter().rposition(|v| *v > radius) {
        None => Some(0),
        Some(i) if i + 1 < norms.len() => Some(i + 1),
        Some(_) => None,
    };
    let entry_time = entry_index.map(|i| traj.times[i]).unwrap_or(f64::INFINITY);

    let after: Vec<usize> = (0..norms.len())
        .filter(|&i| traj.times[i] >= entry_bound)
        .collect();
    let times = after.iter().map(|&i| traj.times[i]).collect();
    let raw = after.iter().map(|&i| (norms[i] - radius).max(0.0)).collect();
    let interval = traj
        .times
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0, f64::max);
    let mut rep = BalanceReport::new(Law::AbsorbingBall, times, raw, radius, tol)
        .fail_unless(entry_time <= entry_bound + interval + 1e-12);
    rep.details.push(("radius".into(), radius));
    rep.details.push(("entry_time".into(), entry_time));
    rep.details.push(("entry_bound".into(), entry_bound));
    Ok(rep)
}

/// `||ω(t)||_{L^p} <= r⁻¹ ||curl g||_{L^p}` for `t >= t_burn`, one report per
/// exponent (plus `L^∞` when requested). Residuals are absolute excesses.
pub fn attractor_bounds(
    traj: &TrajectoryRecord,
    params: &SimParams,
    p_list: &[f64],
    with_linf: bool,
    t_burn: f64,
    slack: f64,
) -> Result<Vec<BalanceReport>> {
    let area = params.grid.cell_area();
    let curl_g = params.forcing.curl().to_physical();
    let window: Vec<usize> = (0..traj.len()).filter(|&i| traj.times[i] >= t_burn).collect();
    let times: Vec<f64> = window.iter().map(|&i| traj.times[i]).collect();

    let mut cases: Vec<(Law, f64, &[f64])> = Vec::new();
    for &p in p_list {
        let series = traj.lp_series(p).ok_or(Error::MissingExponent(p))?;
        cases.push((Law::LpAttractorBound(p), p, &series.norm));
    }
    if with_linf {
        cases.push((Law::LinfBound, f64::INFINITY, &traj.linf));
    }

    Ok(cases
        .into_iter()
        .map(|(law, p, norm)| {
            let bound = lp_of_values(curl_g.iter().copied(), p, area) / params.r;
            let raw = window.iter().map(|&i| (norm[i] - bound).max(0.0)).collect();
            let peak = window.iter().map(|&i| norm[i]).fold(0.0, f64::max);
            let mut rep = BalanceReport::new(law, times.clone(), raw, 1.0, slack);
            rep.details.push(("bound".into(), bound));
            rep.details.push(("max_norm".into(), peak));
            rep
        })
        .collect())
}

/// Discrete forms of `((u·∇)u, u) = 0`, `((u·∇)u, Δu) = 0` and
/// `((u·∇)ω, ω) = 0`, each relative to `||u||₁ ||ω||²`.
pub fn orthogonality_check(omega: &VorticityField, tol: f64) -> Result<BalanceReport> {
    orthogonality_check_with(omega, Dealias::On, tol)
}

/// As [`orthogonality_check`]; `Dealias::Off` skips the output projection,
/// which for a field populating modes past the 2/3 band exposes aliasing.
pub fn orthogonality_check_with(
    omega: &VorticityField,
    dealias: Dealias,
    tol: f64,
) -> Result<BalanceReport> {
    let u = biot_savart(omega)?;
    let adv = velocity_advection(&u, dealias);
    let g = omega.grid();
    let lap = |c: &[Complex64]| -> Vec<Complex64> {
        c.iter().zip(g.k_sq()).map(|(v, k2)| -k2 * v).collect()
    };
    let lap_u = VelocityField::from_spectral(g, lap(u.spectral_u1()), lap(u.spectral_u2()))?;
    let transport = nonlinear_term_with(omega, dealias)?;
    let forms = vec![adv.inner(&u), adv.inner(&lap_u), transport.inner(omega)];
    let scale = (u.l2_sq() + omega.l2_sq()).sqrt() * omega.l2_sq();
    let mut rep = BalanceReport::new(Law::Orthogonality, vec![0.0; 3], forms, scale, tol);
    for (k, v) in ["energy_form", "enstrophy_form", "vorticity_form"]
        .iter()
        .zip(rep.residual_series.clone())
    {
        rep.details.push((k.to_string(), v));
    }
    Ok(rep)
}

/// Ratios `||∇u||_{L^p} / (p ||ω||_{L^p})` against a `p`-independent constant.
pub fn wp_yudovich_check(
    omega: &VorticityField,
    p_list: &[f64],
    constant: f64,
) -> Result<BalanceReport> {
    let phys = omega.to_physical();
    let area = omega.grid().cell_area();
    let mut ratios = Vec::with_capacity(p_list.len());
    for &p in p_list {
        if !(p >= 2.0) {
            return Err(Error::InvalidExponent(format!("p = {p}")));
        }
        let w = lp_of_values(phys.iter().copied(), p, area);
        let grad = velocity_gradient_lp(omega, p)?;
        ratios.push(if w == 0.0 { 0.0 } else { grad / (p * w) });
    }
    Ok(BalanceReport::new(Law::WpYudovich, p_list.to_vec(), ratios, 1.0, constant))
}

/// Least-squares slope of `log(err)` against `log(h)`.
pub fn convergence_slope(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|(h, _)| h.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, e)| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Max residual of `check` on the record subsampled by each factor, paired
/// with the resulting recording interval.
pub fn stride_ladder<F>(
    traj: &TrajectoryRecord,
    params: &SimParams,
    factors: &[usize],
    check: F,
) -> Result<Vec<(f64, f64)>>
where
    F: Fn(&TrajectoryRecord, &SimParams) -> Result<BalanceReport>,
{
    factors
        .iter()
        .map(|&f| {
            let sub = traj.subsample(f);
            let rep = check(&sub, params)?;
            Ok((params.record_interval() * f as f64, rep.max_abs_residual))
        })
        .collect()
}
