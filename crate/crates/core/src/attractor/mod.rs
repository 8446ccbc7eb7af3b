//! Finite-time, finite-ensemble stand-ins for the attractor statements,
//! plus the uniqueness, vanishing-viscosity and dimension-bound tools.

mod dimension;
mod distance;
mod harvest;
mod ladder;
mod viscosity;
mod yudovich;

pub use dimension::{dim_bound, dim_bound_gradient, dim_prefactor};
pub use distance::{h1_distance, h1_semidistance, semidistance, trajectory_semidistance};
pub use harvest::{harvest_attractor, params_fingerprint, AttractorApprox, HarvestPlan};
pub use ladder::{attraction_ladder, is_nonincreasing, LadderPlan, LadderRung};
pub use viscosity::{vanishing_viscosity, vanishing_viscosity_with};
pub use yudovich::{fit_envelope, yudovich_experiment, GapSeries, YUDOVICH_SLACK};
