//! Growth of the gap between two solutions started a tiny distance apart,
//! compared with the double-exponential envelope
//! `E(t) <= K (E(0)/K)^{exp(-C₃ t)}`.

use crate::dynamics::{band_limited_field, simulate, SimParams};
use crate::error::{Error, Result};
use crate::spectral::{biot_savart, VorticityField};

/// Relative slack granted to the fitted envelope.
pub const YUDOVICH_SLACK: f64 = 0.05;

#[derive(Debug, Clone)]
pub struct GapSeries {
    pub times: Vec<f64>,
    /// `E(t) = ||u₁(t) - u₂(t)||²`.
    pub gap: Vec<f64>,
    /// Fitted rate, clamped at zero.
    pub c3: f64,
    /// `K = 10 max E`.
    pub k: f64,
    /// Envelope values at `times`.
    pub envelope: Vec<f64>,
    /// `max E / envelope`.
    pub max_ratio: f64,
    pub envelope_ok: bool,
    /// Samples below this level are roundoff and were dropped.
    pub floor: f64,
    pub truncated: bool,
    /// Both runs were bit-identical throughout.
    pub identical: bool,
}

/// Least-squares `C₃` for `ln ln(K/E(t)) = ln ln(K/E(0)) - C₃ t`, and the
/// envelope it implies. Needs `E(0) > 0` and `K > max E`.
pub fn fit_envelope(times: &[f64], gap: &[f64], k: f64) -> (f64, Vec<f64>) {
    let l0 = (k / gap[0]).ln();
    let (mut sty, mut stt) = (0.0, 0.0);
    for (t, e) in times.iter().zip(gap).skip(1) {
        let y = ((k / e).ln() / l0).ln();
        sty += t * y;
        stt += t * t;
    }
    let c3 = if stt > 0.0 { (-sty / stt).max(0.0) } else { 0.0 };
    let env = times
        .iter()
        .map(|t| k * (gap[0] / k).powf((-c3 * t).exp()))
        .collect();
    (c3, env)
}

/// Runs `u₁` from `omega0` and `u₂` from `omega0 + δω`, where `δω` is a seeded
/// band-limited field with `||δω||_{L²} = delta`, and fits the envelope to the
/// recorded gap.
pub fn yudovich_experiment(
    omega0: &VorticityField,
    delta: f64,
    seed: u64,
    params: &SimParams,
) -> Result<GapSeries> {
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter(format!("delta must be >= 0, got {delta}")));
    }
    let grid = &params.grid;
    let mut p = params.clone();
    p.snapshot_every = p.record_every;
    let second = if delta > 0.0 {
        let k_max = (grid.cutoff() as f64).min(8.0);
        let dir = band_limited_field(grid, seed, 1.0, k_max)?;
        let dir = dir.scaled(delta / dir.l2_sq().sqrt());
        &omega0.clone().dealiased() + &dir
    } else {
        omega0.clone()
    };
    let (a, b) = rayon::join(|| simulate(omega0, &p), || simulate(&second, &p));
    let (a, b) = (a?, b?);
    for rec in [&a, &b] {
        if let Some(f) = &rec.failure {
            return Err(Error::NumericalBlowUp { step: f.step, time: f.time });
        }
    }

    let mut gap = Vec::with_capacity(a.snapshots.len());
    let mut speed: f64 = 0.0;
    let mut identical = true;
    for (x, y) in a.snapshots.iter().zip(&b.snapshots) {
        identical &= x.bit_eq(y);
        gap.push(biot_savart(&(x - y))?.l2_sq());
        speed = speed.max(biot_savart(x)?.l2_sq().sqrt());
    }
    let times = a.snapshot_times.clone();
    let floor = (64.0 * f64::EPSILON * speed).powi(2);

    if identical || gap[0] == 0.0 {
        let envelope = vec![0.0; gap.len()];
        let ok = gap.iter().all(|e| *e == 0.0);
        return Ok(GapSeries {
            times,
            gap,
            c3: 0.0,
            k: 0.0,
            envelope,
            max_ratio: if ok { 0.0 } else { f64::INFINITY },
            envelope_ok: ok,
            floor,
            truncated: false,
            identical,
        });
    }

    let keep = gap.iter().position(|e| *e < floor).unwrap_or(gap.len());
    let truncated = keep < gap.len();
    if truncated {
        log::warn!("gap reached the roundoff floor {floor:.3e} at t = {}", times[keep]);
    }
    let (times, gap) = (times[..keep].to_vec(), gap[..keep].to_vec());
    if gap.len() < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: gap.len() });
    }
    let k = 10.0 * gap.iter().copied().fold(0.0, f64::max);
    let (c3, envelope) = fit_envelope(&times, &gap, k);
    let max_ratio = gap.iter().zip(&envelope).map(|(e, v)| e / v).fold(0.0, f64::max);
    Ok(GapSeries {
        times,
        gap,
        c3,
        k,
        envelope,
        max_ratio,
        envelope_ok: max_ratio <= 1.0 + YUDOVICH_SLACK,
        floor,
        truncated,
        identical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{ForcingSpec, InitialCondition};
    use crate::spectral::SpectralGrid;
    use std::f64::consts::PI;

    #[test]
    fn fit_recovers_exact_envelope() {
        let (k, e0, c3): (f64, f64, f64) = (1.0, 1e-12, 0.7);
        let times: Vec<f64> = (0..20).map(|i| 0.1 * i as f64).collect();
        let gap: Vec<f64> = times.iter().map(|t| k * (e0 / k).powf((-c3 * t).exp())).collect();
        let (fit, env) = fit_envelope(&times, &gap, k);
        assert!((fit - c3).abs() < 1e-10);
        for (a, b) in gap.iter().zip(&env) {
            assert!((a / b - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_delta_is_bit_identical() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let p = SimParams::new(&g, 0.5, 0.0, 1e-2, 1.0).with_record_every(10);
        let w = crate::dynamics::band_limited_field(&g, 3, 1.0, 4.0).unwrap();
        let s = yudovich_experiment(&w, 0.0, 1, &p).unwrap();
        assert!(s.identical && s.envelope_ok);
        assert!(s.gap.iter().all(|e| *e == 0.0));
    }

    #[test]
    fn shear_gap_decays() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let r = 1.0;
        let p = SimParams::new(&g, r, 0.0, 1e-2, 3.0)
            .with_forcing(ForcingSpec::shear(&g, r))
            .with_record_every(10);
        let w = InitialCondition::Shear { amplitude: 1.0 }.build(&g).unwrap();
        let s = yudovich_experiment(&w, 1e-6, 2, &p).unwrap();
        assert!(s.envelope_ok);
        assert_eq!(s.c3, 0.0);
        // Shear production caps the decay: E(t) <= E(0) e^{2(|∇U|_∞ - r)t},
        // and |∇U|_∞ = 1 = r here.
        for e in &s.gap {
            assert!(*e <= s.gap[0] * (1.0 + 1e-9));
        }
        assert!(*s.gap.last().unwrap() < 0.01 * s.gap[0]);
    }
}
