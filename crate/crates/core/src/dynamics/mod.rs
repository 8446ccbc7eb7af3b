//! Time integration of the damped(-viscous) vorticity equation.

mod ensemble;
mod forcing;
mod initial;
mod params;
mod stepper;
mod trajectory;

pub use ensemble::run_ensemble;
pub use forcing::{ForcingKind, ForcingSpec};
pub use initial::{band_limited_field, scale_to_h1, InitialCondition};
pub use params::{SimParams, CFL_LIMIT};
pub use stepper::{nonlinear_part, rhs, step, Stepper};
pub use trajectory::{simulate, LpSeries, RunFailure, TrajectoryRecord};
