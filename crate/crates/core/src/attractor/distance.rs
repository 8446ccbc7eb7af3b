//! `H¹` distances and Hausdorff semidistances between sections and between
//! trajectory pieces.

use rayon::prelude::*;

use super::harvest::AttractorApprox;
use crate::dynamics::TrajectoryRecord;
use crate::error::{Error, Result};
use crate::spectral::{biot_savart, VorticityField};

/// `||u_a - u_b||₁` for the velocities of two vorticity fields.
pub fn h1_distance(a: &VorticityField, b: &VorticityField) -> Result<f64> {
    if !a.grid().same_as(b.grid()) {
        return Err(Error::GridMismatch);
    }
    let d = a - b;
    let u = biot_savart(&d)?;
    Ok((u.l2_sq() + d.l2_sq()).sqrt())
}

/// `sup_{x ∈ X} inf_{y ∈ Y} ||x - y||₁`. Empty `X` gives 0; empty `Y` with
/// nonempty `X` gives infinity.
pub fn semidistance(xs: &[VorticityField], ys: &[VorticityField]) -> Result<f64> {
    let per: Result<Vec<f64>> = xs
        .par_iter()
        .map(|x| {
            ys.iter()
                .try_fold(f64::INFINITY, |best, y| Ok(best.min(h1_distance(x, y)?)))
        })
        .collect();
    Ok(per?.into_iter().fold(0.0, f64::max))
}

/// Semidistance from `sections` to the harvested reference set.
pub fn h1_semidistance(sections: &[VorticityField], reference: &AttractorApprox) -> Result<f64> {
    semidistance(sections, &reference.reference_set)
}

/// Snapshots of `rec` with `t <= m`, paired with their times.
fn window(rec: &TrajectoryRecord, m: f64) -> (Vec<f64>, Vec<&VorticityField>) {
    let tol = 1e-9 * (1.0 + m.abs());
    rec.snapshot_times
        .iter()
        .zip(&rec.snapshots)
        .filter(|(t, _)| **t <= m + tol)
        .map(|(t, s)| (*t, s))
        .unzip()
}

/// `sup_c inf_r sup_{t ∈ [0, M]} ||c(t) - r(t)||₁` over snapshot times.
///
/// Records are expected to start at `t = 0` (see [`TrajectoryRecord::window`])
/// and to share the snapshot grid on `[0, M]`; a mismatch is an error.
pub fn trajectory_semidistance(
    candidates: &[TrajectoryRecord],
    reference: &[TrajectoryRecord],
    m: f64,
) -> Result<f64> {
    if !(m >= 0.0) {
        return Err(Error::InvalidParameter(format!("horizon M must be >= 0, got {m}")));
    }
    let per: Result<Vec<f64>> = candidates
        .par_iter()
        .map(|c| {
            let (tc, sc) = window(c, m);
            if tc.is_empty() {
                return Err(Error::TimeGridMismatch("candidate has no snapshot in [0, M]".into()));
            }
            let mut best = f64::INFINITY;
            for r in reference {
                let (tr, sr) = window(r, m);
                let same = tr.len() == tc.len()
                    && tr.iter().zip(&tc).all(|(a, b)| (a - b).abs() <= 1e-9 * (1.0 + b.abs()));
                if !same {
                    return Err(Error::TimeGridMismatch(format!(
                        "{} candidate snapshots against {} reference snapshots on [0, {m}]",
                        tc.len(),
                        tr.len()
                    )));
                }
                let mut sup: f64 = 0.0;
                for (a, b) in sc.iter().zip(&sr) {
                    sup = sup.max(h1_distance(a, b)?);
                }
                best = best.min(sup);
            }
            Ok(best)
        })
        .collect();
    Ok(per?.into_iter().fold(0.0, f64::max))
}
