//! Two forced runs started `delta` apart: the gap `E(t) = ||u₁ - u₂||²`
//! against the fitted double-exponential envelope.
//!
//! cargo run --release --example yudovich_gap -- [n] [r] [amplitude] [delta] [horizon_r]

use ekeu::attractor::yudovich_experiment;
use ekeu::dynamics::{simulate, ForcingKind, ForcingSpec, SimParams};
use ekeu::spectral::make_grid;

fn arg(i: usize, default: f64) -> f64 {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> ekeu::Result<()> {
    let n = arg(1, 64.0) as usize;
    let r = arg(2, 0.5);
    let amplitude = arg(3, 0.2);
    let delta = arg(4, 1e-8);
    let horizon = arg(5, 5.0) / r;

    let grid = make_grid(n, 2.0 * std::f64::consts::PI)?;
    let forcing = ForcingSpec::new(
        ForcingKind::BandLimitedRandom { seed: 7, k_min: 1.0, k_max: 4.0, amplitude },
        &grid,
    )?;
    let params = SimParams::new(&grid, r, 0.0, 1e-3, 10.0 / r)
        .with_forcing(forcing)
        .with_record_every(100)
        .with_snapshot_every(0);

    // Spin up to a generic forced state first.
    let spin = simulate(&params.forcing.curl().scaled(1.0 / r), &params)?;
    let state = spin.final_snapshot().expect("final snapshot").clone();

    let s = yudovich_experiment(&state, delta, 1, &params.clone().with_t_end(horizon))?;
    println!("delta = {delta:e}: C3 = {:.4}, K = {:.3e}, max E/env = {:.4}, ok = {}", s.c3, s.k, s.max_ratio, s.envelope_ok);
    println!("{:>8} {:>12} {:>12} {:>8}", "t", "E", "envelope", "ratio");
    for i in (0..s.times.len()).step_by((s.times.len() / 25).max(1)) {
        println!(
            "{:>8.2} {:>12.4e} {:>12.4e} {:>8.4}",
            s.times[i],
            s.gap[i],
            s.envelope[i],
            s.gap[i] / s.envelope[i]
        );
    }
    let same = yudovich_experiment(&state, 0.0, 1, &params.with_t_end(1.0))?;
    println!("delta = 0: bit-identical = {}", same.identical);
    Ok(())
}
