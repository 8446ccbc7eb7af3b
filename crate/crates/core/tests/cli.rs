use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ekeu::io::{read_timeseries, MANIFEST_FILE};

const STEADY_SHEAR: &str = "\
grid.n = 16
params.r = 0.5
params.dt = 0.01
params.t_end = 1
params.record_every = 10
params.snapshot_every = 10
forcing.kind = steady_shear
initial.kind = shear
initial.amplitude = 1
diagnostics.balance_tol = 1e-12
diagnostics.lp_tol = 1e-12
";

const GENERIC: &str = "\
grid.n = 16
params.r = 0.5
params.dt = 0.01
params.t_end = 1
params.record_every = 5
params.snapshot_every = 20
forcing.kind = band_limited_random
forcing.seed = 4
forcing.amplitude = 0.5
initial.kind = random
initial.seed = 9
initial.amplitude = 1
";

fn ekeu(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ekeu"));
    cmd.args(args).env_remove("EKEU_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn simulate_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "g.cfg", GENERIC);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = ekeu(&["simulate", "--config", s(&cfg), "--out", s(out), "--threads", "2"], &[]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let fa = files(&a);
    assert_eq!(fa, files(&b));
    let names: Vec<&str> = fa.iter().map(|(n, _)| n.as_str()).collect();
    assert!(names.contains(&MANIFEST_FILE));
    assert!(names.contains(&"timeseries.csv"));
    assert_eq!(names.iter().filter(|n| n.ends_with(".ekeu")).count(), 6);

    // The manifest alone reruns the experiment.
    let c = dir.path().join("c");
    let o = ekeu(&["simulate", "--config", s(&a.join(MANIFEST_FILE)), "--out", s(&c)], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fa, files(&c));
}

#[test]
fn steady_shear_verifies_to_roundoff() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "s.cfg", STEADY_SHEAR);
    let out = dir.path().join("v");
    let o = ekeu(&["verify", "--config", s(&cfg), "--out", s(&out)], &[]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{stdout}");
    assert!(!stdout.contains("FAIL"));
    let t = read_timeseries(out.join("verify.csv")).unwrap();
    for col in ["res_energy", "res_enstrophy", "res_lp_2", "res_lp_4", "res_lp_8"] {
        let v = t.column(col).unwrap();
        assert!(v.iter().filter(|x| x.is_finite()).all(|x| x.abs() <= 1e-12), "{col}");
    }
}

#[test]
fn zero_tolerance_fails_generic_run() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!("{GENERIC}diagnostics.balance_tol = 0\n");
    let cfg = config(dir.path(), "z.cfg", &text);
    let o = ekeu(&["verify", "--config", s(&cfg), "--out", s(&dir.path().join("v"))], &[]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_saved_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "s.cfg", STEADY_SHEAR);
    let run = dir.path().join("run");
    assert_eq!(ekeu(&["simulate", "--config", s(&cfg), "--out", s(&run)], &[]).status.code(), Some(0));
    let o = ekeu(&["verify", "--run", s(&run), "--out", s(&dir.path().join("v"))], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    // Too few snapshots on disk is a usage error.
    let sparse = config(dir.path(), "g.cfg", &GENERIC.replace("snapshot_every = 20", "snapshot_every = 0"));
    let run2 = dir.path().join("run2");
    assert_eq!(ekeu(&["simulate", "--config", s(&sparse), "--out", s(&run2)], &[]).status.code(), Some(0));
    let o = ekeu(&["verify", "--run", s(&run2), "--out", s(&dir.path().join("v2"))], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dimbound_prints_zero_without_forcing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(
        dir.path(),
        "d.cfg",
        "grid.n = 16\nparams.r = 0.5\nparams.nu = 0.01\nparams.dt = 0.01\nparams.t_end = 1\n",
    );
    let o = ekeu(&["dimbound", "--config", s(&cfg), "--out", s(&dir.path().join("d"))], &[]);
    assert_eq!(o.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(stdout.matches("bound 0.0000000000000000e0").count(), 6, "{stdout}");
}

#[test]
fn usage_and_config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = s(&dir.path().join("o")).to_string();
    assert_eq!(ekeu(&["simulate", "--out", &out], &[]).status.code(), Some(2));
    assert_eq!(ekeu(&["frobnicate"], &[]).status.code(), Some(2));
    let bad = config(dir.path(), "b.cfg", "grid.n = 127\nparams.r = -1\nparams.dt = 0.01\nparams.t_end = 1\n");
    let o = ekeu(&["simulate", "--config", s(&bad), "--out", &out], &[]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("params.r must be > 0") && err.contains("grid.n"), "{err}");
    let good = config(dir.path(), "g.cfg", GENERIC);
    let o = ekeu(&["simulate", "--config", s(&good), "--out", &out], &[("EKEU_THREADS", "many")]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(ekeu(&["--help"], &[]).status.code(), Some(0));
}

#[test]
fn threads_recorded_in_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "g.cfg", GENERIC);
    let out = dir.path().join("o");
    let o = ekeu(&["dimbound", "--config", s(&cfg), "--out", s(&out), "--seed", "77"], &[("EKEU_THREADS", "3")]);
    // nu = 0 has no dimension bound.
    assert_eq!(o.status.code(), Some(2));
    let m = std::fs::read_to_string(out.join(MANIFEST_FILE)).unwrap();
    assert!(m.contains("run.threads = 3") && m.contains("run.seed = 77"), "{m}");
}

#[test]
fn blow_up_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(
        dir.path(),
        "x.cfg",
        "grid.n = 16\nparams.r = 0.1\nparams.dt = 5\nparams.t_end = 500\n\
         initial.kind = random\ninitial.seed = 1\ninitial.k_max = 7\ninitial.amplitude = 100\n",
    );
    let o = ekeu(&["simulate", "--config", s(&cfg), "--out", s(&dir.path().join("o"))], &[]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}
