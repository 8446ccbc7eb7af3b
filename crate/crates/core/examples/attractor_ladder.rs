//! Harvest a reference attractor from long runs, then watch a family of
//! large initial data approach it in `H¹` and in `C([0, M]; H¹)`.

use std::f64::consts::PI;

use ekeu::attractor::{attraction_ladder, harvest_attractor, is_nonincreasing, HarvestPlan, LadderPlan};
use ekeu::dynamics::{ForcingKind, ForcingSpec, SimParams};
use ekeu::spectral::SpectralGrid;

fn main() -> ekeu::Result<()> {
    let r = 0.5;
    let horizon = 1.0 / r;
    let grid = SpectralGrid::new(32, 2.0 * PI)?;
    let forcing = ForcingSpec::new(
        ForcingKind::BandLimitedRandom { seed: 7, k_min: 1.0, k_max: 4.0, amplitude: 0.2 },
        &grid,
    )?;
    let params = SimParams::new(&grid, r, 0.0, 5e-3, 0.0).with_forcing(forcing);

    let approx = harvest_attractor(&params, &HarvestPlan::new(2, 11, 10.0 / r, 20.0 / r + horizon, 100))?;
    println!(
        "reference: {} sections from t = {} to {}, {} rejected",
        approx.reference_set.len(),
        approx.harvest_times.first().unwrap_or(&f64::NAN),
        approx.harvest_times.last().unwrap_or(&f64::NAN),
        approx.rejected
    );

    let plan = LadderPlan {
        shifts: [1.0, 2.5, 5.0, 10.0, 20.0].iter().map(|m| m / r).collect(),
        probes: 4,
        probe_h1: 10.0 * params.absorbing_radius(),
        seed: 500,
        horizon,
    };
    let rungs = attraction_ladder(&params, &approx, &plan)?;
    println!("{:>8} {:>14} {:>14}", "shift", "H1", "C([0,M];H1)");
    for g in &rungs {
        println!("{:>8.1} {:>14.4e} {:>14.4e}", g.shift, g.h1, g.trajectory);
    }
    println!("nonincreasing: {}", is_nonincreasing(&rungs));
    Ok(())
}
