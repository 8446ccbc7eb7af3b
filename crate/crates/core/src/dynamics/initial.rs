//! Initial vorticity fields.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::spectral::{biot_savart, SpectralGrid, VorticityField};

/// Seeded random field with independent Gaussian coefficients on the integer
/// shell `k_min <= |k| <= k_max`, dealiased, mean-free, with unit RMS
/// (`||f||_{L²} / L = 1`).
pub fn band_limited_field(
    grid: &Arc<SpectralGrid>,
    seed: u64,
    k_min: f64,
    k_max: f64,
) -> Result<VorticityField> {
    if !(k_min >= 0.0) || !(k_max >= k_min) {
        return Err(Error::InvalidParameter(format!(
            "band [{k_min}, {k_max}] is empty"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spec = vec![Complex64::new(0.0, 0.0); grid.modes()];
    let mut any = false;
    for idx in 0..grid.modes() {
        let c = grid.conjugate_index(idx);
        if c <= idx || !grid.mask()[idx] {
            continue;
        }
        let (a, b) = grid.integer_wavenumber(idx);
        let k = ((a * a + b * b) as f64).sqrt();
        if k == 0.0 || k < k_min || k > k_max {
            continue;
        }
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        spec[idx] = Complex64::new(re, im);
        spec[c] = Complex64::new(re, -im);
        any = true;
    }
    if !any {
        return Err(Error::InvalidParameter(format!(
            "no retained modes in band [{k_min}, {k_max}]"
        )));
    }
    let field = VorticityField::from_spectral(grid, spec)?;
    let rms = field.l2_sq().sqrt() / grid.length();
    Ok(field.scaled(1.0 / rms))
}

/// Recipe for `ω(0)`.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialCondition {
    Zero,
    /// Velocity `c (sin κy, 0)`, vorticity `-c κ cos κy`, with `κ = 2π/L`.
    Shear { amplitude: f64 },
    /// `a cos(κ (kx x + ky y))`.
    Mode { kx: i64, ky: i64, amplitude: f64 },
    /// [`band_limited_field`] scaled to the given RMS vorticity.
    Random { seed: u64, k_min: f64, k_max: f64, amplitude: f64 },
    /// EKEU snapshot file.
    File { path: PathBuf },
}

impl InitialCondition {
    pub fn build(&self, grid: &Arc<SpectralGrid>) -> Result<VorticityField> {
        let kappa = 2.0 * PI / grid.length();
        let field = match self {
            InitialCondition::Zero => VorticityField::zeros(grid),
            InitialCondition::Shear { amplitude } => {
                let a = *amplitude;
                VorticityField::from_fn(grid, |_, y| -a * kappa * (kappa * y).cos())
            }
            InitialCondition::Mode { kx, ky, amplitude } => {
                let (a, b, amp) = (*kx as f64, *ky as f64, *amplitude);
                VorticityField::from_fn(grid, |x, y| amp * (kappa * (a * x + b * y)).cos())
            }
            InitialCondition::Random {
                seed,
                k_min,
                k_max,
                amplitude,
            } => band_limited_field(grid, *seed, *k_min, *k_max)?.scaled(*amplitude),
            InitialCondition::File { path } => {
                let snap = crate::io::Snapshot::read(path)?;
                snap.to_field(Some(grid))?
            }
        };
        Ok(field.dealiased())
    }
}

/// Rescales `omega` so that its velocity has `||u||_1 = target`.
pub fn scale_to_h1(omega: &VorticityField, target: f64) -> Result<VorticityField> {
    let h1 = (biot_savart(omega)?.l2_sq() + omega.l2_sq()).sqrt();
    if h1 == 0.0 {
        return Err(Error::InvalidParameter("cannot rescale a zero field".into()));
    }
    Ok(omega.scaled(target / h1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_limited_is_reproducible_and_clean() {
        let g = SpectralGrid::new(32, 2.0 * PI).unwrap();
        let a = band_limited_field(&g, 7, 1.0, 4.0).unwrap();
        let b = band_limited_field(&g, 7, 1.0, 4.0).unwrap();
        let c = band_limited_field(&g, 8, 1.0, 4.0).unwrap();
        assert!(a.bit_eq(&b));
        assert!(!a.bit_eq(&c));
        assert_eq!(a.mean(), 0.0);
        assert!(a.is_dealiased());
        assert_eq!(a.hermitian_defect(), 0.0);
        assert!((a.l2_sq().sqrt() / g.length() - 1.0).abs() < 1e-12);
        for (idx, v) in a.spectral().iter().enumerate() {
            let (kx, ky) = g.integer_wavenumber(idx);
            let k = ((kx * kx + ky * ky) as f64).sqrt();
            if v.norm() > 0.0 {
                assert!((1.0..=4.0).contains(&k));
            }
        }
    }

    #[test]
    fn empty_band_rejected() {
        let g = SpectralGrid::new(8, 1.0).unwrap();
        assert!(band_limited_field(&g, 1, 5.0, 6.0).is_err());
        assert!(band_limited_field(&g, 1, 3.0, 2.0).is_err());
    }

    #[test]
    fn shear_and_mode() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let w = InitialCondition::Shear { amplitude: 2.0 }.build(&g).unwrap();
        let phys = w.to_physical();
        assert!((phys[0] + 2.0).abs() < 1e-14);
        let m = InitialCondition::Mode { kx: 1, ky: 0, amplitude: 0.5 }.build(&g).unwrap();
        let c = m.spectral()[g.index_of(1, 0).unwrap()];
        assert!((c.re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn rescale_h1() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let w = band_limited_field(&g, 3, 1.0, 3.0).unwrap();
        let s = scale_to_h1(&w, 5.0).unwrap();
        let h1 = (biot_savart(&s).unwrap().l2_sq() + s.l2_sq()).sqrt();
        assert!((h1 - 5.0).abs() < 1e-12);
        assert!(scale_to_h1(&VorticityField::zeros(&g), 1.0).is_err());
    }
}
