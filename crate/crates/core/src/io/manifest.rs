//! Run manifests. A manifest is the resolved configuration preceded by
//! comment lines naming the tool version and command, so it parses as a
//! configuration and reruns the experiment as is.

use std::path::Path;

use super::config::{parse_config, RunConfig};
use crate::error::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.txt";

pub fn manifest_text(config: &RunConfig, command: &str) -> String {
    format!(
        "# ekeu {}\n# command = {command}\n{}",
        env!("CARGO_PKG_VERSION"),
        config.to_text()
    )
}

/// Writes `dir/manifest.txt`; `config.run` should already hold the seed and
/// thread count actually used.
pub fn write_manifest(dir: impl AsRef<Path>, config: &RunConfig, command: &str) -> Result<()> {
    let path = dir.as_ref().join(MANIFEST_FILE);
    std::fs::write(&path, manifest_text(config, command)).map_err(|e| Error::io(&path, e))
}

pub fn read_manifest(dir: impl AsRef<Path>) -> Result<RunConfig> {
    let path = dir.as_ref().join(MANIFEST_FILE);
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_reparses_to_config() {
        let mut c = parse_config("grid.n = 16\nparams.r = 0.5\nparams.dt = 0.01\nparams.t_end = 1\n").unwrap();
        c.run.seed = 42;
        c.run.threads = Some(1);
        let dir = tempfile::tempdir().unwrap();
        write_manifest(dir.path(), &c, "simulate").unwrap();
        assert_eq!(read_manifest(dir.path()).unwrap(), c);
        let text = std::fs::read_to_string(dir.path().join(MANIFEST_FILE)).unwrap();
        assert!(text.starts_with("# ekeu "));
        assert!(text.contains("run.seed = 42"));
    }
}
