//! Time-independent, divergence-free body force `g` and its curl.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::initial::band_limited_field;
use crate::error::{Error, Result};
use crate::spectral::{biot_savart, SpectralGrid, VelocityField, VorticityField};

#[derive(Debug, Clone, PartialEq)]
pub enum ForcingKind {
    Zero,
    /// `g = A (sin κy, 0)`, `curl g = -A κ cos κy`, `κ = 2π/L`.
    Shear { amplitude: f64 },
    /// Random `curl g` on an integer shell with RMS `amplitude`.
    BandLimitedRandom {
        seed: u64,
        k_min: f64,
        k_max: f64,
        amplitude: f64,
    },
    /// Normalised coefficients of `curl g`.
    Explicit { curl: Vec<Complex64> },
}

/// Forcing with cached `curl g` and `g` on a grid. `g` is recovered from its
/// curl by Biot–Savart, so it is divergence-free and mean-free.
#[derive(Debug, Clone)]
pub struct ForcingSpec {
    kind: ForcingKind,
    curl: VorticityField,
    velocity: VelocityField,
    curl_physical: Vec<f64>,
}

impl ForcingSpec {
    pub fn new(kind: ForcingKind, grid: &Arc<SpectralGrid>) -> Result<Self> {
        let kappa = 2.0 * PI / grid.length();
        let curl = match &kind {
            ForcingKind::Zero => VorticityField::zeros(grid),
            ForcingKind::Shear { amplitude } => {
                let a = *amplitude;
                VorticityField::from_fn(grid, |_, y| -a * kappa * (kappa * y).cos())
            }
            ForcingKind::BandLimitedRandom {
                seed,
                k_min,
                k_max,
                amplitude,
            } => band_limited_field(grid, *seed, *k_min, *k_max)?.scaled(*amplitude),
            ForcingKind::Explicit { curl } => {
                VorticityField::from_spectral(grid, curl.clone())?
            }
        }
        .dealiased();
        let velocity = match biot_savart(&curl) {
            Ok(v) => v,
            Err(Error::NonZeroMean(m)) => {
                return Err(Error::InvalidParameter(format!(
                    "curl g must have zero mean, got {m:e}"
                )))
            }
            Err(e) => return Err(e),
        };
        let curl_physical = curl.to_physical();
        Ok(ForcingSpec {
            kind,
            curl,
            velocity,
            curl_physical,
        })
    }

    pub fn zero(grid: &Arc<SpectralGrid>) -> Self {
        ForcingSpec::new(ForcingKind::Zero, grid).expect("zero forcing is valid")
    }

    /// `g = amplitude (sin κy, 0)`.
    pub fn shear(grid: &Arc<SpectralGrid>, amplitude: f64) -> Self {
        ForcingSpec::new(ForcingKind::Shear { amplitude }, grid).expect("shear forcing is valid")
    }

    /// Shear forcing that keeps the unit-amplitude shear velocity `(sin κy, 0)`
    /// an exact steady state for damping `r` and viscosity `nu`.
    pub fn steady_shear(grid: &Arc<SpectralGrid>, r: f64, nu: f64) -> Self {
        let kappa = 2.0 * PI / grid.length();
        ForcingSpec::shear(grid, r + nu * kappa * kappa)
    }

    pub fn kind(&self) -> &ForcingKind {
        &self.kind
    }

    pub fn grid(&self) -> &Arc<SpectralGrid> {
        self.curl.grid()
    }

    /// `curl g`.
    pub fn curl(&self) -> &VorticityField {
        &self.curl
    }

    /// `g`.
    pub fn velocity(&self) -> &VelocityField {
        &self.velocity
    }

    pub(crate) fn curl_physical(&self) -> &[f64] {
        &self.curl_physical
    }

    /// `||g||_1 = (||g||² + ||curl g||²)^{1/2}`.
    pub fn h1_norm(&self) -> f64 {
        (self.velocity.l2_sq() + self.curl.l2_sq()).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.curl.spectral().iter().all(|c| c.norm() == 0.0)
    }

    /// Same forcing with every amplitude multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let kind = match &self.kind {
            ForcingKind::Zero => ForcingKind::Zero,
            ForcingKind::Shear { amplitude } => ForcingKind::Shear {
                amplitude: amplitude * factor,
            },
            ForcingKind::BandLimitedRandom {
                seed,
                k_min,
                k_max,
                amplitude,
            } => ForcingKind::BandLimitedRandom {
                seed: *seed,
                k_min: *k_min,
                k_max: *k_max,
                amplitude: amplitude * factor,
            },
            ForcingKind::Explicit { curl } => ForcingKind::Explicit {
                curl: curl.iter().map(|c| c * factor).collect(),
            },
        };
        ForcingSpec::new(kind, self.grid()).expect("scaling preserves validity")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shear_norms() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let f = ForcingSpec::shear(&g, 1.0);
        assert!((f.velocity().l2_sq() - 2.0 * PI * PI).abs() < 1e-12);
        assert!((f.curl().l2_sq() - 2.0 * PI * PI).abs() < 1e-12);
        let (g1, g2) = f.velocity().to_physical();
        assert!((g1[16 * 4] - g.coordinate(4).sin()).abs() < 1e-14);
        assert!(g2.iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn divergence_free_and_mean_free() {
        let g = SpectralGrid::new(32, 2.0 * PI).unwrap();
        let f = ForcingSpec::new(
            ForcingKind::BandLimitedRandom {
                seed: 11,
                k_min: 2.0,
                k_max: 5.0,
                amplitude: 0.3,
            },
            &g,
        )
        .unwrap();
        assert!(f.velocity().divergence().iter().all(|d| d.norm() < 1e-15));
        assert_eq!(f.curl().mean(), 0.0);
        let back = f.velocity().curl();
        for (a, b) in back.spectral().iter().zip(f.curl().spectral()) {
            assert!((a - b).norm() < 1e-15);
        }
        assert!(!f.is_zero());
        assert!(ForcingSpec::zero(&g).is_zero());
    }

    #[test]
    fn explicit_rejects_mean() {
        let g = SpectralGrid::new(8, 1.0).unwrap();
        let mut c = vec![Complex64::new(0.0, 0.0); 64];
        c[0] = Complex64::new(1.0, 0.0);
        assert!(ForcingSpec::new(ForcingKind::Explicit { curl: c }, &g).is_err());
    }

    #[test]
    fn scaling_is_linear() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let f = ForcingSpec::shear(&g, 1.0);
        let f3 = f.scaled(3.0);
        assert!((f3.h1_norm() - 3.0 * f.h1_norm()).abs() < 1e-12);
    }
}
