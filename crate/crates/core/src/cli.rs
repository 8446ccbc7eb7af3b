//! The `ekeu` command line.
//!
//! Every subcommand reads a run configuration, writes its outputs plus a
//! manifest into `--out`, and maps verdicts to the exit code: 0 when all
//! checks pass, 1 when any fails, 2 for usage and configuration problems,
//! 3 when the integration blows up.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::attractor::{
    attraction_ladder, dim_bound, dim_bound_gradient, harvest_attractor, is_nonincreasing,
    vanishing_viscosity_with, yudovich_experiment, HarvestPlan, LadderPlan,
};
use crate::balance::{
    absorbing_ball_check, attractor_bounds, energy_residual, enstrophy_residual, h1_envelope,
    h1_residual, lp_residual, orthogonality_check, BalanceReport,
};
use crate::dynamics::{run_ensemble, scale_to_h1, simulate, ForcingSpec, SimParams, TrajectoryRecord};
use crate::error::{Error, Result};
use crate::io::{
    read_config, read_manifest, write_manifest, write_table, write_timeseries, ForcingConfig,
    RunConfig, Snapshot, Timeseries,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment override for the worker thread count.
pub const THREADS_ENV: &str = "EKEU_THREADS";

#[derive(Debug, Parser)]
#[command(name = "ekeu", version, about = "Damped-driven 2D Euler laboratory")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Run configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long, global = true, value_name = "DIR", default_value = "ekeu-out")]
    out: PathBuf,
    /// Worker threads; overrides EKEU_THREADS and run.threads.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Experiment seed; overrides run.seed.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate and write the time series and snapshots.
    Simulate,
    /// Check every balance law on a fresh run or a saved one.
    Verify {
        /// Directory of a previous `simulate` run.
        #[arg(long, value_name = "DIR")]
        run: Option<PathBuf>,
    },
    /// Random ensemble against the dissipative envelope and absorbing ball.
    Ensemble,
    /// Harvest a reference attractor and measure the attraction ladder.
    Attractor,
    /// Gap growth between two nearby solutions.
    Uniqueness,
    /// Distance to the inviscid solution over a viscosity sweep.
    Viscosity,
    /// Attractor dimension bounds over the configured s grid.
    Dimbound,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Verify { .. } => "verify",
            Command::Ensemble => "ensemble",
            Command::Attractor => "attractor",
            Command::Uniqueness => "uniqueness",
            Command::Viscosity => "viscosity",
            Command::Dimbound => "dimbound",
        }
    }
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NumericalBlowUp { .. } | Error::AllMembersFailed => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit code. Messages go to stderr, summaries to stdout.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(&cli) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            eprintln!("ekeu {}: {e}", cli.command.name());
            exit_code(&e)
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = match (&cli.global.config, &cli.command) {
        (Some(path), _) => read_config(path)?,
        (None, Command::Verify { run: Some(dir) }) => read_manifest(dir)?,
        (None, _) => {
            return Err(Error::InvalidParameter("--config PATH is required".into()));
        }
    };
    if let Some(seed) = cli.global.seed {
        config.run.seed = seed;
    }
    let env_threads = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| {
            Error::InvalidParameter(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))
        })?),
        Err(_) => None,
    };
    let threads = cli
        .global
        .threads
        .or(env_threads)
        .or(config.run.threads)
        .unwrap_or(1);
    if threads == 0 {
        return Err(Error::InvalidParameter("thread count must be >= 1".into()));
    }
    config.run.threads = Some(threads);
    Ok(config)
}

fn execute(cli: &Cli) -> Result<bool> {
    let config = load_config(cli)?;
    let out = &cli.global.out;
    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.run.threads.unwrap_or(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    write_manifest(out, &config, cli.command.name())?;
    log::info!("{} -> {}", cli.command.name(), out.display());
    pool.install(|| match &cli.command {
        Command::Simulate => cmd_simulate(&config, out),
        Command::Verify { run } => cmd_verify(&config, out, run.as_deref()),
        Command::Ensemble => cmd_ensemble(&config, out),
        Command::Attractor => cmd_attractor(&config, out),
        Command::Uniqueness => cmd_uniqueness(&config, out),
        Command::Viscosity => cmd_viscosity(&config, out),
        Command::Dimbound => cmd_dimbound(&config, out),
    })
}

fn snapshot_name(i: usize) -> String {
    format!("snap_{i:06}.ekeu")
}

fn write_snapshots(rec: &TrajectoryRecord, dir: &Path) -> Result<()> {
    for (i, (t, w)) in rec.snapshot_times.iter().zip(&rec.snapshots).enumerate() {
        Snapshot::from_field(w, *t).write(dir.join(snapshot_name(i)))?;
    }
    Ok(())
}

fn read_snapshots(dir: &Path, params: &SimParams) -> Result<TrajectoryRecord> {
    let mut times = Vec::new();
    let mut fields = Vec::new();
    for i in 0.. {
        let path = dir.join(snapshot_name(i));
        if !path.exists() {
            break;
        }
        let snap = Snapshot::read(&path)?;
        times.push(snap.time);
        fields.push(snap.to_field(Some(&params.grid))?);
    }
    TrajectoryRecord::from_snapshots(times, fields, params)
}

fn fail_on_blowup(rec: &TrajectoryRecord) -> Result<()> {
    match &rec.failure {
        Some(f) => Err(Error::NumericalBlowUp { step: f.step, time: f.time }),
        None => Ok(()),
    }
}

fn print_reports(reports: &[BalanceReport]) -> bool {
    for rep in reports {
        println!("{rep}");
    }
    reports.iter().all(BalanceReport::passed)
}

fn cmd_simulate(config: &RunConfig, out: &Path) -> Result<bool> {
    let params = config.sim_params()?;
    let omega0 = config.initial_field(&params.grid)?;
    let rec = simulate(&omega0, &params)?;
    write_timeseries(&rec, &[], out.join("timeseries.csv"))?;
    write_snapshots(&rec, out)?;
    fail_on_blowup(&rec)?;
    println!(
        "simulated {} steps to t = {}, max CFL {:.3}",
        params.steps(),
        rec.times.last().copied().unwrap_or(0.0),
        rec.max_cfl
    );
    Ok(true)
}

/// All balance and envelope checks that apply to a record.
pub fn verify_reports(
    rec: &TrajectoryRecord,
    params: &SimParams,
    config: &RunConfig,
) -> Result<Vec<BalanceReport>> {
    let d = &config.diagnostics;
    let mut reports = vec![
        energy_residual(rec, params, d.balance_tol)?,
        enstrophy_residual(rec, params, d.balance_tol)?,
        h1_residual(rec, params, d.balance_tol)?,
    ];
    for &p in &d.p_list {
        if p >= 2.0 && p.fract() == 0.0 && (p as i64) % 2 == 0 {
            reports.push(lp_residual(rec, params, p, d.lp_tol)?);
        }
    }
    reports.push(h1_envelope(rec, params, d.envelope_tol)?);
    reports.push(absorbing_ball_check(rec, params, d.envelope_tol)?);
    let t_burn = config.t_burn();
    if rec.times.last().is_some_and(|t| *t >= t_burn) {
        reports.extend(attractor_bounds(rec, params, &d.p_list, true, t_burn, d.bound_slack)?);
    }
    for w in [rec.snapshots.first(), rec.snapshots.last()].into_iter().flatten() {
        reports.push(orthogonality_check(w, d.orthogonality_tol)?);
    }
    Ok(reports)
}

fn cmd_verify(config: &RunConfig, out: &Path, run: Option<&Path>) -> Result<bool> {
    let params = config.sim_params()?;
    let rec = match run {
        Some(dir) => {
            let rec = read_snapshots(dir, &params)?;
            if rec.len() < 3 {
                return Err(Error::InvalidParameter(format!(
                    "{} holds {} snapshots; verify needs at least 3 \
                     (set params.snapshot_every = params.record_every)",
                    dir.display(),
                    rec.len()
                )));
            }
            rec
        }
        None => {
            let rec = simulate(&config.initial_field(&params.grid)?, &params)?;
            fail_on_blowup(&rec)?;
            rec
        }
    };
    let reports = verify_reports(&rec, &params, config)?;
    let series: Vec<BalanceReport> =
        reports.iter().filter(|r| r.times.len() + 2 == rec.len()).cloned().collect();
    write_timeseries(&rec, &series, out.join("verify.csv"))?;
    let text: String = reports.iter().map(|r| format!("{r}\n")).collect();
    std::fs::write(out.join("report.txt"), text).map_err(|e| Error::io(out.join("report.txt"), e))?;
    Ok(print_reports(&reports))
}

fn probe_h1(params: &SimParams, factor: f64) -> f64 {
    let r0 = params.absorbing_radius();
    if r0 > 0.0 { factor * r0 } else { factor }
}

fn cmd_ensemble(config: &RunConfig, out: &Path) -> Result<bool> {
    let params = config.sim_params()?;
    let size = config.ensemble.size;
    let top = probe_h1(&params, config.ensemble.h1_factor);
    let k_max = (params.grid.cutoff() as f64).min(4.0);
    let initials = (0..size)
        .map(|i| {
            let w = crate::dynamics::band_limited_field(
                &params.grid,
                config.run.seed.wrapping_add(i as u64),
                1.0,
                k_max,
            )?;
            scale_to_h1(&w, top * (i + 1) as f64 / size as f64)
        })
        .collect::<Result<Vec<_>>>()?;
    let results = run_ensemble(&initials, &params)?;
    let mut summary = Timeseries {
        columns: ["member", "h1_0", "entry_time", "entry_bound", "violations", "pass"]
            .map(String::from)
            .to_vec(),
        rows: Vec::new(),
    };
    let mut all = true;
    let mut blown = 0;
    for (i, res) in results.into_iter().enumerate() {
        let rec = res?;
        if rec.failed() {
            log::warn!("member {i} failed: {:?}", rec.failure);
            blown += 1;
            continue;
        }
        let env = h1_envelope(&rec, &params, config.diagnostics.envelope_tol)?;
        let ball = absorbing_ball_check(&rec, &params, config.diagnostics.envelope_tol)?;
        let ok = env.passed() && ball.passed();
        all &= ok;
        println!("member {i}: {env}");
        println!("member {i}: {ball}");
        summary.rows.push(vec![
            i as f64,
            rec.h1_sq[0].sqrt(),
            ball.detail("entry_time").unwrap_or(f64::NAN),
            ball.detail("entry_bound").unwrap_or(f64::NAN),
            env.detail("violations").unwrap_or(f64::NAN),
            if ok { 1.0 } else { 0.0 },
        ]);
        write_timeseries(&rec, &[], out.join(format!("member_{i:03}.csv")))?;
    }
    write_table(&summary, out.join("ensemble.csv"))?;
    if blown == size {
        return Err(Error::AllMembersFailed);
    }
    Ok(all && blown == 0)
}

fn cmd_attractor(config: &RunConfig, out: &Path) -> Result<bool> {
    let params = config.sim_params()?;
    let a = &config.attractor;
    let r = params.r;
    let horizon = a.horizon.unwrap_or(1.0 / r);
    let t_burn = a.t_burn.unwrap_or_else(|| config.t_burn());
    let t_collect = a.t_collect.unwrap_or(t_burn + 2.0 * horizon);
    let plan = HarvestPlan::new(a.n_init, config.run.seed, t_burn, t_collect, a.stride);
    let approx = harvest_attractor(&params, &plan)?;
    for (i, w) in approx.reference_set.iter().enumerate() {
        Snapshot::from_field(w, approx.harvest_times[i]).write(out.join(format!("ref_{i:06}.ekeu")))?;
    }
    let ladder = LadderPlan {
        shifts: a.shift_multiples.iter().map(|m| m / r).collect(),
        probes: a.probes,
        probe_h1: probe_h1(&params, config.ensemble.h1_factor),
        seed: config.run.seed.wrapping_add(1 << 32),
        horizon,
    };
    let rungs = attraction_ladder(&params, &approx, &ladder)?;
    let table = Timeseries {
        columns: ["shift", "h1_semidistance", "trajectory_semidistance"].map(String::from).to_vec(),
        rows: rungs.iter().map(|g| vec![g.shift, g.h1, g.trajectory]).collect(),
    };
    write_table(&table, out.join("ladder.csv"))?;
    println!(
        "reference: {} sections, {} rejected",
        approx.reference_set.len(),
        approx.rejected
    );
    for g in &rungs {
        println!("h = {:<8} H1 {:.6e}  C([0,M];H1) {:.6e}", g.shift, g.h1, g.trajectory);
    }
    let ok = is_nonincreasing(&rungs);
    println!("ladder nonincreasing: {}", if ok { "PASS" } else { "FAIL" });
    Ok(ok)
}

fn cmd_uniqueness(config: &RunConfig, out: &Path) -> Result<bool> {
    let horizon = config.uniqueness.horizon.unwrap_or(5.0 / config.params.r);
    let params = config.sim_params()?.with_t_end(horizon);
    let omega0 = config.initial_field(&params.grid)?;
    let s = yudovich_experiment(&omega0, config.uniqueness.delta, config.run.seed, &params)?;
    let table = Timeseries {
        columns: ["time", "gap", "envelope"].map(String::from).to_vec(),
        rows: (0..s.times.len()).map(|i| vec![s.times[i], s.gap[i], s.envelope[i]]).collect(),
    };
    write_table(&table, out.join("gap.csv"))?;
    println!(
        "C3 = {:.6e}, K = {:.6e}, max E/envelope = {:.6}, identical = {}, truncated = {}",
        s.c3, s.k, s.max_ratio, s.identical, s.truncated
    );
    println!("envelope: {}", if s.envelope_ok { "PASS" } else { "FAIL" });
    Ok(s.envelope_ok)
}

fn cmd_viscosity(config: &RunConfig, out: &Path) -> Result<bool> {
    let mut params = config.sim_params()?;
    if let Some(t) = config.viscosity.horizon {
        params = params.with_t_end(t);
    }
    let omega0 = config.initial_field(&params.grid)?;
    let adjust = config.viscosity.adjust_forcing && config.forcing == ForcingConfig::SteadyShear;
    let (grid, r) = (params.grid.clone(), params.r);
    let fixed = params.forcing.clone();
    let rows = vanishing_viscosity_with(&omega0, &params, &config.viscosity.nu_list, |nu| {
        Ok(if adjust { ForcingSpec::steady_shear(&grid, r, nu) } else { fixed.clone() })
    })?;
    let table = Timeseries {
        columns: ["nu", "h1_distance"].map(String::from).to_vec(),
        rows: rows.iter().map(|(nu, d)| vec![*nu, *d]).collect(),
    };
    write_table(&table, out.join("viscosity.csv"))?;
    for (nu, d) in &rows {
        println!("nu = {nu:<10} distance {d:.6e}");
    }
    let mut sorted = rows.clone();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));
    let ok = sorted.windows(2).all(|w| w[1].1 <= w[0].1);
    println!("distance shrinks with nu: {}", if ok { "PASS" } else { "FAIL" });
    Ok(ok)
}

fn cmd_dimbound(config: &RunConfig, out: &Path) -> Result<bool> {
    let grid = config.grid()?;
    let g = config.forcing_spec(&grid)?;
    let nu = config.dimbound.nu.unwrap_or(config.params.nu);
    let r = config.params.r;
    let mut rows = Vec::new();
    for &s in &config.dimbound.s_list {
        let b = dim_bound(&g, nu, r, s)?;
        println!("s = {s:<6} bound {b:.16e}");
        rows.push(vec![s, b]);
    }
    let grad = dim_bound_gradient(&g, nu, r)?;
    println!("gradient bound {grad:.16e}");
    let table = Timeseries {
        columns: ["s", "bound"].map(String::from).to_vec(),
        rows,
    };
    write_table(&table, out.join("dimbound.csv"))?;
    Ok(true)
}
