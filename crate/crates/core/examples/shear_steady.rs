//! Manufactured shear: with `g = r (sin y, 0)` the shear `c(t) (sin y, 0)`
//! solves the system exactly, `c(t) = 1 + (c₀ - 1) e^{-rt}`.
//!
//! cargo run --release --example shear_steady -- [c0] [r]

use std::f64::consts::PI;

use ekeu::dynamics::{simulate, ForcingSpec, InitialCondition, SimParams};
use ekeu::spectral::SpectralGrid;

fn main() -> ekeu::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<f64>().unwrap_or(f64::NAN));
    let c0 = args.next().unwrap_or(3.0);
    let r = args.next().unwrap_or(1.0);

    let grid = SpectralGrid::new(64, 2.0 * PI)?;
    let params = SimParams::new(&grid, r, 0.0, 1e-3, 10.0 / r)
        .with_forcing(ForcingSpec::shear(&grid, r))
        .with_record_every(1000)
        .with_snapshot_every(1000);
    let omega0 = InitialCondition::Shear { amplitude: c0 }.build(&grid)?;
    let rec = simulate(&omega0, &params)?;

    let idx = grid.index_of(0, 1).expect("mode (0, 1)");
    println!("{:>6} {:>20} {:>20} {:>10}", "t", "c(t) measured", "c(t) exact", "rel err");
    for (t, w) in rec.snapshot_times.iter().zip(&rec.snapshots) {
        let c = -2.0 * w.spectral()[idx].re;
        let exact = 1.0 + (c0 - 1.0) * (-r * t).exp();
        println!("{t:>6.2} {c:>20.15} {exact:>20.15} {:>10.2e}", (c / exact - 1.0).abs());
    }
    Ok(())
}
