//! An ensemble started far outside the absorbing ball `||u||₁ <= √2 ||g||₁ / r`:
//! every member obeys the dissipative envelope and enters the ball no later
//! than `r⁻¹ ln(||u₀||₁² r² / ||g||₁²)`.
//!
//! cargo run --release --example absorbing_ball -- [members] [factor]

use std::f64::consts::PI;

use ekeu::balance::{absorbing_ball_check, h1_envelope};
use ekeu::dynamics::{band_limited_field, run_ensemble, scale_to_h1, ForcingKind, ForcingSpec, SimParams};
use ekeu::spectral::SpectralGrid;

fn main() -> ekeu::Result<()> {
    let members: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let factor: f64 = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(10.0);
    let r = 0.5;

    let grid = SpectralGrid::new(32, 2.0 * PI)?;
    let forcing = ForcingSpec::new(
        ForcingKind::BandLimitedRandom { seed: 7, k_min: 1.0, k_max: 4.0, amplitude: 0.2 },
        &grid,
    )?;
    let params = SimParams::new(&grid, r, 0.0, 2e-3, 15.0 / r)
        .with_forcing(forcing)
        .with_record_every(10)
        .with_snapshot_every(0);
    let r0 = params.absorbing_radius();
    println!("absorbing radius R0 = {r0:.4}");

    let initials = (0..members)
        .map(|i| {
            let w = band_limited_field(&grid, 100 + i as u64, 1.0, 4.0)?;
            scale_to_h1(&w, factor * r0 * (i + 1) as f64 / members as f64)
        })
        .collect::<ekeu::Result<Vec<_>>>()?;

    println!("{:>6} {:>10} {:>10} {:>10} {:>8}", "member", "|u0|_1", "entry", "bound", "verdict");
    for (i, res) in run_ensemble(&initials, &params)?.into_iter().enumerate() {
        let rec = res?;
        let env = h1_envelope(&rec, &params, 1e-10)?;
        let ball = absorbing_ball_check(&rec, &params, 1e-10)?;
        println!(
            "{i:>6} {:>10.3} {:>10.3} {:>10.3} {:>8}",
            rec.h1_sq[0].sqrt(),
            ball.detail("entry_time").unwrap_or(f64::NAN),
            ball.detail("entry_bound").unwrap_or(f64::NAN),
            if env.passed() && ball.passed() { "PASS" } else { "FAIL" }
        );
    }
    Ok(())
}
