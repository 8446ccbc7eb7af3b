//! Energy, enstrophy, H¹ and L^p balance residuals on a forced run, plus the
//! stride-halving ladder for the centred stencil.
//!
//! cargo run --release --example balance_laws -- [n] [r] [amplitude] [nu] [t_end] [rest|forced]
//!
//! `forced` (the default) starts from the linear steady state `curl g / r`,
//! which skips the spin-up transient from rest.

use std::time::Instant;

use ekeu::balance::{
    convergence_slope, energy_residual, enstrophy_residual, h1_residual, lp_residual,
    stride_ladder,
};
use ekeu::dynamics::{simulate, ForcingKind, ForcingSpec, SimParams};
use ekeu::spectral::{make_grid, VorticityField};

fn arg(i: usize, default: f64) -> f64 {
    std::env::args()
        .nth(i)
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

fn main() -> ekeu::Result<()> {
    let n = arg(1, 64.0) as usize;
    let r = arg(2, 0.5);
    let amplitude = arg(3, 0.5);
    let nu = arg(4, 0.0);
    let t_end = arg(5, 20.0 / r);

    let start = std::env::args().nth(6).unwrap_or_else(|| "forced".into());

    let grid = make_grid(n, 2.0 * std::f64::consts::PI)?;
    let forcing = ForcingSpec::new(
        ForcingKind::BandLimitedRandom { seed: 7, k_min: 1.0, k_max: 4.0, amplitude },
        &grid,
    )?;
    let params = SimParams::new(&grid, r, nu, 1e-3, t_end)
        .with_forcing(forcing)
        .with_record_every(10)
        .with_snapshot_every(0)
        .with_p_list(vec![2.0, 4.0, 8.0]);

    let clock = Instant::now();
    let omega0 = match start.as_str() {
        "rest" => VorticityField::zeros(&grid),
        _ => params.forcing.curl().scaled(1.0 / r),
    };
    let traj = simulate(&omega0, &params)?;
    println!(
        "n = {n}, r = {r}, amplitude = {amplitude}, nu = {nu}, T = {t_end}: {} steps in {:.1?}, max CFL {:.3}",
        params.steps(),
        clock.elapsed(),
        traj.max_cfl
    );
    println!(
        "final energy {:.4e}, enstrophy {:.4e}, linf {:.4e}",
        traj.energy.last().unwrap(),
        traj.enstrophy.last().unwrap(),
        traj.linf.last().unwrap()
    );

    let mut reports = vec![
        energy_residual(&traj, &params, 1e-5)?,
        enstrophy_residual(&traj, &params, 1e-5)?,
        h1_residual(&traj, &params, 1e-5)?,
    ];
    for p in [2.0, 4.0, 8.0] {
        reports.push(lp_residual(&traj, &params, p, 1e-4)?);
    }
    for rep in &reports {
        let worst = (0..rep.times.len())
            .max_by(|&a, &b| rep.residual_series[a].abs().total_cmp(&rep.residual_series[b].abs()))
            .map(|i| rep.times[i])
            .unwrap_or(f64::NAN);
        println!("{rep} at t = {worst:.2}");
    }

    for (name, check) in [
        ("energy", energy_residual as fn(&_, &_, f64) -> _),
        ("enstrophy", enstrophy_residual),
    ] {
        let ladder = stride_ladder(&traj, &params, &[1, 2, 4], |t, p| check(t, p, 1.0))?;
        println!("{name} stride ladder {ladder:?} slope {:.3}", convergence_slope(&ladder));
    }
    let ladder = stride_ladder(&traj, &params, &[1, 2, 4], |t, p| lp_residual(t, p, 4.0, 1.0))?;
    println!("lp_4 stride ladder {ladder:?} slope {:.3}", convergence_slope(&ladder));
    Ok(())
}
