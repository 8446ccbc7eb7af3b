//! Attractor dimension bounds for the shear forcing over the `s` family,
//! next to the gradient form.

use std::f64::consts::PI;

use ekeu::attractor::{dim_bound, dim_bound_gradient, dim_prefactor};
use ekeu::dynamics::ForcingSpec;
use ekeu::spectral::SpectralGrid;

fn main() -> ekeu::Result<()> {
    let grid = SpectralGrid::new(32, 2.0 * PI)?;
    let g = ForcingSpec::shear(&grid, 1.0);
    let r = 0.5;
    for nu in [1e-2, 1e-3] {
        println!("nu = {nu:e}, r = {r}");
        for s in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            println!("  s = {s:>4}: prefactor {:.6e}, bound {:.6e}", dim_prefactor(s), dim_bound(&g, nu, r, s)?);
        }
        println!("  gradient form: {:.6e}", dim_bound_gradient(&g, nu, r)?);
    }
    Ok(())
}
