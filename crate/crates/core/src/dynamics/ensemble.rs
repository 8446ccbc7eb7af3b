use rayon::prelude::*;

use super::params::SimParams;
use super::trajectory::{simulate, TrajectoryRecord};
use crate::error::{Error, Result};
use crate::spectral::VorticityField;

/// Runs one independent trajectory per initial field, concurrently on the
/// current rayon pool. Results keep the input order; a member that fails
/// validation comes back as `Err` without affecting the others, and a member
/// that blows up comes back as a record with `failure` set.
pub fn run_ensemble(
    initials: &[VorticityField],
    params: &SimParams,
) -> Result<Vec<Result<TrajectoryRecord>>> {
    params.validate()?;
    if initials.iter().any(|w| !w.grid().same_as(&params.grid)) {
        return Err(Error::GridMismatch);
    }
    Ok(initials.par_iter().map(|w| simulate(w, params)).collect())
}
