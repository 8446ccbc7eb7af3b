//! Line-oriented `key = value` run configuration.
//!
//! ```text
//! # comment
//! grid.n = 128
//! grid.L = 6.283185307179586
//! params.r = 0.5
//! params.dt = 1e-3
//! params.t_end = 40
//! forcing.kind = band_limited_random
//! diagnostics.p_list = 2, 4, 8
//! ```
//!
//! `grid.n`, `params.r`, `params.dt` and `params.t_end` are required; every
//! other key has a default. Parsing reports all problems at once, each with
//! its line number.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::dynamics::{ForcingKind, ForcingSpec, InitialCondition, SimParams};
use crate::error::{ConfigIssue, Error, Result};
use crate::spectral::{SpectralGrid, VorticityField};

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub n: usize,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamsConfig {
    pub r: f64,
    pub nu: f64,
    pub dt: f64,
    pub t_end: f64,
    pub record_every: usize,
    /// Zero keeps only the final snapshot on disk.
    pub snapshot_every: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ForcingConfig {
    Zero,
    Shear { amplitude: f64 },
    /// Shear with amplitude `r + ν κ²`, for which the unit shear is steady.
    SteadyShear,
    Random { seed: u64, k_min: f64, k_max: f64, amplitude: f64 },
    /// Snapshot file holding `curl g`.
    File { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsConfig {
    pub p_list: Vec<f64>,
    pub balance_tol: f64,
    pub lp_tol: f64,
    pub envelope_tol: f64,
    pub bound_slack: f64,
    pub orthogonality_tol: f64,
    /// Defaults to `10/r`.
    pub t_burn: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleConfig {
    pub size: usize,
    /// Member `i` of `m` starts at `||u0||₁ = h1_factor R₀ (i+1)/m`.
    pub h1_factor: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttractorConfig {
    pub n_init: usize,
    /// Defaults to `20/r`.
    pub t_burn: Option<f64>,
    /// Defaults to `t_burn + 10/r`.
    pub t_collect: Option<f64>,
    /// Steps between harvested sections.
    pub stride: usize,
    /// Shift ladder in units of `1/r`.
    pub shift_multiples: Vec<f64>,
    /// Members of each shifted ensemble.
    pub probes: usize,
    /// Trajectory horizon `M`; defaults to `1/r`.
    pub horizon: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessConfig {
    pub delta: f64,
    /// Defaults to `5/r`.
    pub horizon: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViscosityConfig {
    pub nu_list: Vec<f64>,
    /// Use the per-`ν` steady-shear forcing instead of the configured one.
    pub adjust_forcing: bool,
    /// Defaults to `1/r`.
    pub horizon: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimboundConfig {
    pub s_list: Vec<f64>,
    /// Defaults to `params.nu`.
    pub nu: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSection {
    pub seed: u64,
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid: GridConfig,
    pub params: ParamsConfig,
    pub forcing: ForcingConfig,
    pub initial: InitialCondition,
    pub diagnostics: DiagnosticsConfig,
    pub ensemble: EnsembleConfig,
    pub attractor: AttractorConfig,
    pub uniqueness: UniquenessConfig,
    pub viscosity: ViscosityConfig,
    pub dimbound: DimboundConfig,
    pub run: RunSection,
}

const KNOWN_KEYS: &[&str] = &[
    "grid.n",
    "grid.L",
    "params.r",
    "params.nu",
    "params.dt",
    "params.t_end",
    "params.record_every",
    "params.snapshot_every",
    "forcing.kind",
    "forcing.amplitude",
    "forcing.seed",
    "forcing.k_min",
    "forcing.k_max",
    "forcing.path",
    "initial.kind",
    "initial.amplitude",
    "initial.seed",
    "initial.k_min",
    "initial.k_max",
    "initial.kx",
    "initial.ky",
    "initial.path",
    "diagnostics.p_list",
    "diagnostics.balance_tol",
    "diagnostics.lp_tol",
    "diagnostics.envelope_tol",
    "diagnostics.bound_slack",
    "diagnostics.orthogonality_tol",
    "diagnostics.t_burn",
    "ensemble.size",
    "ensemble.h1_factor",
    "attractor.n_init",
    "attractor.t_burn",
    "attractor.t_collect",
    "attractor.stride",
    "attractor.shift_multiples",
    "attractor.probes",
    "attractor.horizon",
    "uniqueness.delta",
    "uniqueness.horizon",
    "viscosity.nu_list",
    "viscosity.adjust_forcing",
    "viscosity.horizon",
    "dimbound.s_list",
    "dimbound.nu",
    "run.seed",
    "run.threads",
];

struct Reader {
    entries: BTreeMap<String, (usize, String)>,
    issues: Vec<ConfigIssue>,
}

impl Reader {
    fn issue(&mut self, key: &str, message: String) {
        let line = self.entries.get(key).map(|e| e.0).unwrap_or(0);
        self.issues.push(ConfigIssue {
            line,
            key: key.to_string(),
            message,
        });
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.1.as_str())
    }

    fn parsed<T: std::str::FromStr>(&mut self, key: &str, what: &str) -> Option<T> {
        let text = self.raw(key)?.to_string();
        match text.parse() {
            Ok(v) => Some(v),
            Err(_) => {
                self.issue(key, format!("{key} expects {what}, got '{text}'"));
                None
            }
        }
    }

    fn f64_or(&mut self, key: &str, default: f64) -> f64 {
        self.parsed(key, "a number").unwrap_or(default)
    }

    fn opt_f64(&mut self, key: &str) -> Option<f64> {
        self.parsed(key, "a number")
    }

    fn usize_or(&mut self, key: &str, default: usize) -> usize {
        self.parsed(key, "a non-negative integer").unwrap_or(default)
    }

    fn u64_or(&mut self, key: &str, default: u64) -> u64 {
        self.parsed(key, "a non-negative integer").unwrap_or(default)
    }

    fn i64_or(&mut self, key: &str, default: i64) -> i64 {
        self.parsed(key, "an integer").unwrap_or(default)
    }

    fn bool_or(&mut self, key: &str, default: bool) -> bool {
        self.parsed(key, "true or false").unwrap_or(default)
    }

    fn required_f64(&mut self, key: &str) -> f64 {
        if self.raw(key).is_none() {
            self.issue(key, format!("{key} is required"));
            return f64::NAN;
        }
        self.f64_or(key, f64::NAN)
    }

    fn list_or(&mut self, key: &str, default: &[f64]) -> Vec<f64> {
        let Some(text) = self.raw(key).map(str::to_string) else {
            return default.to_vec();
        };
        let items: std::result::Result<Vec<f64>, _> = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect();
        match items {
            Ok(v) => v,
            Err(_) => {
                self.issue(key, format!("{key} expects a comma-separated list of numbers, got '{text}'"));
                default.to_vec()
            }
        }
    }

    fn check(&mut self, ok: bool, key: &str, message: impl Into<String>) {
        if !ok {
            self.issue(key, message.into());
        }
    }
}

fn tokenize(text: &str) -> Reader {
    let mut reader = Reader {
        entries: BTreeMap::new(),
        issues: Vec::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            reader.issues.push(ConfigIssue {
                line,
                key: String::new(),
                message: format!("expected 'key = value', got '{content}'"),
            });
            continue;
        };
        let (key, value) = (key.trim().to_string(), value.trim().to_string());
        if !KNOWN_KEYS.contains(&key.as_str()) {
            reader.issues.push(ConfigIssue {
                line,
                message: format!("unknown key {key}"),
                key,
            });
            continue;
        }
        if let Some((first, _)) = reader.entries.get(&key) {
            reader.issues.push(ConfigIssue {
                line,
                message: format!("{key} repeats the value from line {first}"),
                key,
            });
            continue;
        }
        reader.entries.insert(key, (line, value));
    }
    reader
}

/// Parses and validates a configuration; all problems are returned together.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut rd = tokenize(text);

    let n = if rd.raw("grid.n").is_none() {
        rd.issue("grid.n", "grid.n is required".into());
        0
    } else {
        rd.parsed::<usize>("grid.n", "a positive integer").unwrap_or(0)
    };
    if rd.raw("grid.n").is_some() && rd.issues.iter().all(|i| i.key != "grid.n") {
        rd.check(n % 2 == 0, "grid.n", format!("grid.n must be even, got {n}"));
        rd.check(n >= 8, "grid.n", format!("grid.n must be >= 8, got {n}"));
    }
    let grid = GridConfig {
        n,
        length: rd.f64_or("grid.L", 2.0 * PI),
    };
    rd.check(grid.length > 0.0 && grid.length.is_finite(), "grid.L", "grid.L must be > 0");

    let params = ParamsConfig {
        r: rd.required_f64("params.r"),
        nu: rd.f64_or("params.nu", 0.0),
        dt: rd.required_f64("params.dt"),
        t_end: rd.required_f64("params.t_end"),
        record_every: rd.usize_or("params.record_every", 10),
        snapshot_every: rd.usize_or("params.snapshot_every", 0),
    };
    let r = params.r;
    let present = |rd: &Reader, k: &str| rd.raw(k).is_some();
    if present(&rd, "params.r") {
        rd.check(r > 0.0 && r.is_finite(), "params.r", "params.r must be > 0");
    }
    rd.check(params.nu >= 0.0 && params.nu.is_finite(), "params.nu", "params.nu must be >= 0");
    if present(&rd, "params.dt") {
        rd.check(params.dt > 0.0 && params.dt.is_finite(), "params.dt", "params.dt must be > 0");
    }
    if present(&rd, "params.t_end") {
        rd.check(
            params.t_end >= 0.0 && params.t_end.is_finite(),
            "params.t_end",
            "params.t_end must be >= 0",
        );
    }
    rd.check(params.record_every > 0, "params.record_every", "params.record_every must be > 0");
    rd.check(
        params.record_every == 0 || params.snapshot_every.is_multiple_of(params.record_every),
        "params.snapshot_every",
        "params.snapshot_every must be a multiple of params.record_every",
    );

    let forcing = match rd.raw("forcing.kind").unwrap_or("zero").to_string().as_str() {
        "zero" => ForcingConfig::Zero,
        "shear" => ForcingConfig::Shear {
            amplitude: rd.f64_or("forcing.amplitude", 1.0),
        },
        "steady_shear" => ForcingConfig::SteadyShear,
        "band_limited_random" => ForcingConfig::Random {
            seed: rd.u64_or("forcing.seed", 0),
            k_min: rd.f64_or("forcing.k_min", 1.0),
            k_max: rd.f64_or("forcing.k_max", 4.0),
            amplitude: rd.f64_or("forcing.amplitude", 1.0),
        },
        "file" => match rd.raw("forcing.path") {
            Some(p) => ForcingConfig::File { path: PathBuf::from(p) },
            None => {
                rd.issue("forcing.path", "forcing.path is required for forcing.kind = file".into());
                ForcingConfig::Zero
            }
        },
        other => {
            rd.issue(
                "forcing.kind",
                format!("forcing.kind must be zero, shear, steady_shear, band_limited_random or file, got '{other}'"),
            );
            ForcingConfig::Zero
        }
    };
    if let ForcingConfig::Random { k_min, k_max, .. } = forcing {
        rd.check(k_min >= 0.0 && k_max >= k_min, "forcing.k_max", "forcing.k_max must be >= forcing.k_min >= 0");
    }

    let initial = match rd.raw("initial.kind").unwrap_or("zero").to_string().as_str() {
        "zero" => InitialCondition::Zero,
        "shear" => InitialCondition::Shear {
            amplitude: rd.f64_or("initial.amplitude", 1.0),
        },
        "mode" => InitialCondition::Mode {
            kx: rd.i64_or("initial.kx", 1),
            ky: rd.i64_or("initial.ky", 0),
            amplitude: rd.f64_or("initial.amplitude", 1.0),
        },
        "random" => InitialCondition::Random {
            seed: rd.u64_or("initial.seed", 0),
            k_min: rd.f64_or("initial.k_min", 1.0),
            k_max: rd.f64_or("initial.k_max", 4.0),
            amplitude: rd.f64_or("initial.amplitude", 1.0),
        },
        "file" => match rd.raw("initial.path") {
            Some(p) => InitialCondition::File { path: PathBuf::from(p) },
            None => {
                rd.issue("initial.path", "initial.path is required for initial.kind = file".into());
                InitialCondition::Zero
            }
        },
        other => {
            rd.issue(
                "initial.kind",
                format!("initial.kind must be zero, shear, mode, random or file, got '{other}'"),
            );
            InitialCondition::Zero
        }
    };

    let diagnostics = DiagnosticsConfig {
        p_list: rd.list_or("diagnostics.p_list", &[2.0, 4.0, 8.0]),
        balance_tol: rd.f64_or("diagnostics.balance_tol", 1e-5),
        lp_tol: rd.f64_or("diagnostics.lp_tol", 1e-4),
        envelope_tol: rd.f64_or("diagnostics.envelope_tol", 1e-10),
        bound_slack: rd.f64_or("diagnostics.bound_slack", 1e-6),
        orthogonality_tol: rd.f64_or("diagnostics.orthogonality_tol", 1e-12),
        t_burn: rd.opt_f64("diagnostics.t_burn"),
    };
    let bad_p = diagnostics.p_list.iter().any(|p| !(*p >= 2.0) || p.is_infinite());
    rd.check(!bad_p, "diagnostics.p_list", "diagnostics.p_list entries must be finite and >= 2");
    for (key, v) in [
        ("diagnostics.balance_tol", diagnostics.balance_tol),
        ("diagnostics.lp_tol", diagnostics.lp_tol),
        ("diagnostics.envelope_tol", diagnostics.envelope_tol),
        ("diagnostics.bound_slack", diagnostics.bound_slack),
        ("diagnostics.orthogonality_tol", diagnostics.orthogonality_tol),
    ] {
        rd.check(v >= 0.0, key, format!("{key} must be >= 0"));
    }

    let ensemble = EnsembleConfig {
        size: rd.usize_or("ensemble.size", 8),
        h1_factor: rd.f64_or("ensemble.h1_factor", 10.0),
    };
    rd.check(ensemble.size >= 1, "ensemble.size", "ensemble.size must be >= 1");
    rd.check(ensemble.h1_factor > 0.0, "ensemble.h1_factor", "ensemble.h1_factor must be > 0");

    let attractor = AttractorConfig {
        n_init: rd.usize_or("attractor.n_init", 4),
        t_burn: rd.opt_f64("attractor.t_burn"),
        t_collect: rd.opt_f64("attractor.t_collect"),
        stride: rd.usize_or("attractor.stride", 100),
        shift_multiples: rd.list_or("attractor.shift_multiples", &[5.0, 10.0, 20.0]),
        probes: rd.usize_or("attractor.probes", 4),
        horizon: rd.opt_f64("attractor.horizon"),
    };
    rd.check(attractor.n_init >= 1, "attractor.n_init", "attractor.n_init must be >= 1");
    rd.check(attractor.stride >= 1, "attractor.stride", "attractor.stride must be >= 1");
    rd.check(attractor.probes >= 1, "attractor.probes", "attractor.probes must be >= 1");

    let uniqueness = UniquenessConfig {
        delta: rd.f64_or("uniqueness.delta", 1e-8),
        horizon: rd.opt_f64("uniqueness.horizon"),
    };
    rd.check(uniqueness.delta >= 0.0, "uniqueness.delta", "uniqueness.delta must be >= 0");

    let viscosity = ViscosityConfig {
        nu_list: rd.list_or("viscosity.nu_list", &[1e-2, 1e-3, 1e-4]),
        adjust_forcing: rd.bool_or("viscosity.adjust_forcing", false),
        horizon: rd.opt_f64("viscosity.horizon"),
    };
    rd.check(
        viscosity.nu_list.iter().all(|v| *v >= 0.0),
        "viscosity.nu_list",
        "viscosity.nu_list entries must be >= 0",
    );

    let dimbound = DimboundConfig {
        s_list: rd.list_or("dimbound.s_list", &[-1.0, -0.5, 0.0, 0.5, 1.0]),
        nu: rd.opt_f64("dimbound.nu"),
    };
    rd.check(
        dimbound.s_list.iter().all(|s| (-1.0..=1.0).contains(s)),
        "dimbound.s_list",
        "dimbound.s_list entries must lie in [-1, 1]",
    );

    let run = RunSection {
        seed: rd.u64_or("run.seed", 0),
        threads: rd.parsed("run.threads", "a positive integer"),
    };
    rd.check(run.threads != Some(0), "run.threads", "run.threads must be >= 1");

    for key in [
        "diagnostics.t_burn",
        "attractor.t_burn",
        "attractor.t_collect",
        "attractor.horizon",
        "uniqueness.horizon",
        "viscosity.horizon",
    ] {
        if let Some(v) = rd.raw(key).and_then(|s| s.parse::<f64>().ok()) {
            rd.check(v >= 0.0 && v.is_finite(), key, format!("{key} must be >= 0"));
        }
    }
    if let Some(v) = dimbound.nu {
        rd.check(v > 0.0, "dimbound.nu", "dimbound.nu must be > 0");
    }

    if !rd.issues.is_empty() {
        rd.issues.sort_by_key(|i| i.line);
        return Err(Error::Config(rd.issues));
    }
    Ok(RunConfig {
        grid,
        params,
        forcing,
        initial,
        diagnostics,
        ensemble,
        attractor,
        uniqueness,
        viscosity,
        dimbound,
        run,
    })
}

/// Reads and parses a configuration file.
pub fn read_config(path: impl AsRef<Path>) -> Result<RunConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}

fn list(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl RunConfig {
    /// Canonical text form; `parse_config(&c.to_text()) == Ok(c)`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("grid.n", self.grid.n.to_string());
        kv("grid.L", self.grid.length.to_string());
        let p = &self.params;
        kv("params.r", p.r.to_string());
        kv("params.nu", p.nu.to_string());
        kv("params.dt", p.dt.to_string());
        kv("params.t_end", p.t_end.to_string());
        kv("params.record_every", p.record_every.to_string());
        kv("params.snapshot_every", p.snapshot_every.to_string());
        match &self.forcing {
            ForcingConfig::Zero => kv("forcing.kind", "zero".into()),
            ForcingConfig::Shear { amplitude } => {
                kv("forcing.kind", "shear".into());
                kv("forcing.amplitude", amplitude.to_string());
            }
            ForcingConfig::SteadyShear => kv("forcing.kind", "steady_shear".into()),
            ForcingConfig::Random { seed, k_min, k_max, amplitude } => {
                kv("forcing.kind", "band_limited_random".into());
                kv("forcing.seed", seed.to_string());
                kv("forcing.k_min", k_min.to_string());
                kv("forcing.k_max", k_max.to_string());
                kv("forcing.amplitude", amplitude.to_string());
            }
            ForcingConfig::File { path } => {
                kv("forcing.kind", "file".into());
                kv("forcing.path", path.display().to_string());
            }
        }
        match &self.initial {
            InitialCondition::Zero => kv("initial.kind", "zero".into()),
            InitialCondition::Shear { amplitude } => {
                kv("initial.kind", "shear".into());
                kv("initial.amplitude", amplitude.to_string());
            }
            InitialCondition::Mode { kx, ky, amplitude } => {
                kv("initial.kind", "mode".into());
                kv("initial.kx", kx.to_string());
                kv("initial.ky", ky.to_string());
                kv("initial.amplitude", amplitude.to_string());
            }
            InitialCondition::Random { seed, k_min, k_max, amplitude } => {
                kv("initial.kind", "random".into());
                kv("initial.seed", seed.to_string());
                kv("initial.k_min", k_min.to_string());
                kv("initial.k_max", k_max.to_string());
                kv("initial.amplitude", amplitude.to_string());
            }
            InitialCondition::File { path } => {
                kv("initial.kind", "file".into());
                kv("initial.path", path.display().to_string());
            }
        }
        let d = &self.diagnostics;
        kv("diagnostics.p_list", list(&d.p_list));
        kv("diagnostics.balance_tol", d.balance_tol.to_string());
        kv("diagnostics.lp_tol", d.lp_tol.to_string());
        kv("diagnostics.envelope_tol", d.envelope_tol.to_string());
        kv("diagnostics.bound_slack", d.bound_slack.to_string());
        kv("diagnostics.orthogonality_tol", d.orthogonality_tol.to_string());
        if let Some(t) = d.t_burn {
            kv("diagnostics.t_burn", t.to_string());
        }
        kv("ensemble.size", self.ensemble.size.to_string());
        kv("ensemble.h1_factor", self.ensemble.h1_factor.to_string());
        let a = &self.attractor;
        kv("attractor.n_init", a.n_init.to_string());
        if let Some(t) = a.t_burn {
            kv("attractor.t_burn", t.to_string());
        }
        if let Some(t) = a.t_collect {
            kv("attractor.t_collect", t.to_string());
        }
        kv("attractor.stride", a.stride.to_string());
        kv("attractor.shift_multiples", list(&a.shift_multiples));
        kv("attractor.probes", a.probes.to_string());
        if let Some(t) = a.horizon {
            kv("attractor.horizon", t.to_string());
        }
        kv("uniqueness.delta", self.uniqueness.delta.to_string());
        if let Some(t) = self.uniqueness.horizon {
            kv("uniqueness.horizon", t.to_string());
        }
        kv("viscosity.nu_list", list(&self.viscosity.nu_list));
        kv("viscosity.adjust_forcing", self.viscosity.adjust_forcing.to_string());
        if let Some(t) = self.viscosity.horizon {
            kv("viscosity.horizon", t.to_string());
        }
        kv("dimbound.s_list", list(&self.dimbound.s_list));
        if let Some(v) = self.dimbound.nu {
            kv("dimbound.nu", v.to_string());
        }
        kv("run.seed", self.run.seed.to_string());
        if let Some(t) = self.run.threads {
            kv("run.threads", t.to_string());
        }
        s
    }

    pub fn grid(&self) -> Result<Arc<SpectralGrid>> {
        SpectralGrid::new(self.grid.n, self.grid.length)
    }

    pub fn forcing_spec(&self, grid: &Arc<SpectralGrid>) -> Result<ForcingSpec> {
        match &self.forcing {
            ForcingConfig::Zero => Ok(ForcingSpec::zero(grid)),
            ForcingConfig::Shear { amplitude } => Ok(ForcingSpec::shear(grid, *amplitude)),
            ForcingConfig::SteadyShear => {
                Ok(ForcingSpec::steady_shear(grid, self.params.r, self.params.nu))
            }
            ForcingConfig::Random { seed, k_min, k_max, amplitude } => ForcingSpec::new(
                ForcingKind::BandLimitedRandom {
                    seed: *seed,
                    k_min: *k_min,
                    k_max: *k_max,
                    amplitude: *amplitude,
                },
                grid,
            ),
            ForcingConfig::File { path } => {
                let curl = crate::io::Snapshot::read(path)?.to_field(Some(grid))?;
                ForcingSpec::new(ForcingKind::Explicit { curl: curl.into_spectral() }, grid)
            }
        }
    }

    /// Simulation parameters on a fresh grid.
    pub fn sim_params(&self) -> Result<SimParams> {
        let grid = self.grid()?;
        let p = &self.params;
        let params = SimParams::new(&grid, p.r, p.nu, p.dt, p.t_end)
            .with_forcing(self.forcing_spec(&grid)?)
            .with_record_every(p.record_every)
            .with_snapshot_every(p.snapshot_every)
            .with_p_list(self.diagnostics.p_list.clone());
        params.validate()?;
        Ok(params)
    }

    pub fn initial_field(&self, grid: &Arc<SpectralGrid>) -> Result<VorticityField> {
        self.initial.build(grid)
    }

    pub fn t_burn(&self) -> f64 {
        self.diagnostics.t_burn.unwrap_or(10.0 / self.params.r)
    }
}
