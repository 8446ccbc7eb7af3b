//! Torus geometry, spectral operators, velocity recovery and norms.

mod advection;
mod biot_savart;
mod field;
mod grid;
mod norms;
mod oracle;

pub use advection::{nonlinear_term, nonlinear_term_with, velocity_advection, Dealias};
pub(crate) use advection::advect;
pub use biot_savart::{biot_savart, stream_function, velocity_gradient, velocity_gradient_lp};
pub use field::{VelocityField, VorticityField};
pub use grid::SpectralGrid;
pub use norms::{interpolation_bound, lp_of_values, norms, FieldRef, NormBundle};
pub use oracle::{oracle_nonlinear, ORACLE_MAX_N};

use std::sync::Arc;

use crate::error::Result;

/// Convenience constructor mirroring [`SpectralGrid::new`].
pub fn make_grid(n: usize, length: f64) -> Result<Arc<SpectralGrid>> {
    SpectralGrid::new(n, length)
}
