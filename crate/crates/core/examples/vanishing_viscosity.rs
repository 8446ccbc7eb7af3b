//! Viscous solutions converge to the damped Euler solution as `ν → 0`.
//! The distance at the final time shrinks roughly linearly in `ν`.

use std::f64::consts::PI;

use ekeu::attractor::vanishing_viscosity;
use ekeu::dynamics::{band_limited_field, ForcingKind, ForcingSpec, SimParams};
use ekeu::spectral::SpectralGrid;

fn main() -> ekeu::Result<()> {
    let grid = SpectralGrid::new(64, 2.0 * PI)?;
    let forcing = ForcingSpec::new(
        ForcingKind::BandLimitedRandom { seed: 2, k_min: 1.0, k_max: 4.0, amplitude: 0.5 },
        &grid,
    )?;
    let base = SimParams::new(&grid, 0.5, 0.0, 5e-3, 4.0).with_forcing(forcing);
    let omega0 = band_limited_field(&grid, 8, 1.0, 6.0)?;

    let nu_list = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4];
    let rows = vanishing_viscosity(&omega0, &base, &nu_list)?;
    println!("{:>10} {:>14} {:>10}", "nu", "||u_nu - u||_1", "ratio/nu");
    for (nu, d) in rows {
        println!("{nu:>10.0e} {d:>14.4e} {:>10.4}", d / nu);
    }
    Ok(())
}
