//! Pseudo-spectral laboratory for the damped-driven 2D Euler equations
//!
//! ```text
//! ∂t ω + (u·∇)ω + r ω = ν Δω + curl g,   u = ∇⊥Δ⁻¹ω
//! ```
//!
//! on the periodic square `[0, L)²`. The crate integrates the vorticity
//! equation with an integrating-factor RK4 scheme and turns each norm
//! identity and dissipative estimate of the system into a residual check
//! over recorded trajectories.
//!
//! Modules:
//! - [`spectral`]: grid, FFTs, Biot–Savart, transport term, norms.
//! - [`dynamics`]: forcing, time stepping, trajectories and ensembles.
//! - [`balance`]: energy/enstrophy/L^p balance residuals and envelopes.
//! - [`attractor`]: attractor harvesting, semidistances, uniqueness and
//!   viscosity experiments, dimension bounds.
//! - [`io`]: configuration, CSV series, snapshot files, manifests.
//! - [`cli`]: the `ekeu` command line.

// `!(x > 0.0)` guards are deliberate: they reject NaN along with bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod attractor;
pub mod balance;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod spectral;

pub use error::{Error, Result};
