//! Configuration text, CSV series, snapshot files and run manifests.

mod config;
mod manifest;
mod snapshot;
mod timeseries;

pub use config::{
    parse_config, read_config, AttractorConfig, DiagnosticsConfig, DimboundConfig,
    EnsembleConfig, ForcingConfig, GridConfig, ParamsConfig, RunConfig, RunSection,
    UniquenessConfig, ViscosityConfig,
};
pub use manifest::{manifest_text, read_manifest, write_manifest, MANIFEST_FILE};
pub use snapshot::{Snapshot, FORMAT_VERSION, MAGIC};
pub use timeseries::{read_timeseries, timeseries_table, write_table, write_timeseries, Timeseries};
