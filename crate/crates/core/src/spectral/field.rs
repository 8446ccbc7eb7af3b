//! Scalar vorticity and vector velocity fields held as Fourier coefficients.

use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use super::grid::SpectralGrid;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Scalar vorticity `omega = d1 u2 - d2 u1` on a periodic grid.
#[derive(Debug, Clone)]
pub struct VorticityField {
    grid: Arc<SpectralGrid>,
    spectral: Vec<Complex64>,
}

impl VorticityField {
    pub fn zeros(grid: &Arc<SpectralGrid>) -> Self {
        VorticityField {
            grid: Arc::clone(grid),
            spectral: vec![ZERO; grid.modes()],
        }
    }

    /// Wraps normalised coefficients. Conjugate symmetry is enforced; the mask is not.
    pub fn from_spectral(grid: &Arc<SpectralGrid>, spectral: Vec<Complex64>) -> Result<Self> {
        if spectral.len() != grid.modes() {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients, got {}",
                grid.modes(),
                spectral.len()
            )));
        }
        let mut f = VorticityField {
            grid: Arc::clone(grid),
            spectral,
        };
        f.enforce_hermitian();
        Ok(f)
    }

    /// Forward transform of collocation values (row-major, rows over `y`).
    pub fn from_physical(grid: &Arc<SpectralGrid>, values: &[f64]) -> Result<Self> {
        if values.len() != grid.modes() {
            return Err(Error::InvalidParameter(format!(
                "expected {} grid values, got {}",
                grid.modes(),
                values.len()
            )));
        }
        let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        grid.forward(&mut data);
        VorticityField::from_spectral(grid, data)
    }

    /// Samples `f(x, y)` on the collocation points.
    pub fn from_fn(grid: &Arc<SpectralGrid>, f: impl Fn(f64, f64) -> f64) -> Self {
        let n = grid.n();
        let mut values = Vec::with_capacity(n * n);
        for iy in 0..n {
            let y = grid.coordinate(iy);
            for ix in 0..n {
                values.push(f(grid.coordinate(ix), y));
            }
        }
        VorticityField::from_physical(grid, &values).expect("sizes match by construction")
    }

    pub fn grid(&self) -> &Arc<SpectralGrid> {
        &self.grid
    }

    pub fn spectral(&self) -> &[Complex64] {
        &self.spectral
    }

    pub fn spectral_mut(&mut self) -> &mut [Complex64] {
        &mut self.spectral
    }

    pub fn into_spectral(self) -> Vec<Complex64> {
        self.spectral
    }

    /// Coefficient of the `k = 0` mode, i.e. the spatial average.
    pub fn mean(&self) -> f64 {
        self.spectral[0].re
    }

    pub fn to_physical(&self) -> Vec<f64> {
        let mut data = self.spectral.clone();
        self.grid.inverse(&mut data);
        data.into_iter().map(|c| c.re).collect()
    }

    /// Applies the 2/3-rule mask in place.
    pub fn dealias(&mut self) {
        self.grid.apply_mask(&mut self.spectral);
    }

    pub fn dealiased(mut self) -> Self {
        self.dealias();
        self
    }

    /// Drops the mean mode.
    pub fn remove_mean(&mut self) {
        self.spectral[0] = ZERO;
    }

    pub fn is_dealiased(&self) -> bool {
        self.spectral
            .iter()
            .zip(self.grid.mask())
            .all(|(c, &keep)| keep || (c.re == 0.0 && c.im == 0.0))
    }

    /// Largest violation of `c(-k) = conj(c(k))`.
    pub fn hermitian_defect(&self) -> f64 {
        hermitian_defect(&self.grid, &self.spectral)
    }

    pub fn enforce_hermitian(&mut self) {
        enforce_hermitian(&self.grid, &mut self.spectral);
    }

    /// `L^2` inner product over the torus.
    pub fn inner(&self, other: &VorticityField) -> f64 {
        debug_assert!(self.grid.same_as(&other.grid));
        inner(&self.grid, &self.spectral, &other.spectral)
    }

    /// `||omega||^2` by Parseval.
    pub fn l2_sq(&self) -> f64 {
        self.inner(self)
    }

    /// `||grad omega||^2` by Parseval.
    pub fn grad_l2_sq(&self) -> f64 {
        let area = self.grid.length().powi(2);
        area * self
            .spectral
            .iter()
            .zip(self.grid.k_sq())
            .map(|(c, k2)| k2 * c.norm_sqr())
            .sum::<f64>()
    }

    /// Laplacian, `-|k|^2 omega_k`.
    pub fn laplacian(&self) -> VorticityField {
        let spectral = self
            .spectral
            .iter()
            .zip(self.grid.k_sq())
            .map(|(c, k2)| -k2 * c)
            .collect();
        VorticityField {
            grid: Arc::clone(&self.grid),
            spectral,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.spectral.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn scaled(&self, factor: f64) -> VorticityField {
        VorticityField {
            grid: Arc::clone(&self.grid),
            spectral: self.spectral.iter().map(|c| c * factor).collect(),
        }
    }

    /// Bitwise equality of the coefficients.
    pub fn bit_eq(&self, other: &VorticityField) -> bool {
        self.grid.same_as(&other.grid)
            && self
                .spectral
                .iter()
                .zip(&other.spectral)
                .all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits())
    }

    pub(crate) fn from_parts(grid: Arc<SpectralGrid>, spectral: Vec<Complex64>) -> Self {
        VorticityField { grid, spectral }
    }
}

impl Add for &VorticityField {
    type Output = VorticityField;

    fn add(self, rhs: &VorticityField) -> VorticityField {
        assert!(self.grid.same_as(&rhs.grid), "grid mismatch");
        VorticityField {
            grid: Arc::clone(&self.grid),
            spectral: self.spectral.iter().zip(&rhs.spectral).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &VorticityField {
    type Output = VorticityField;

    fn sub(self, rhs: &VorticityField) -> VorticityField {
        assert!(self.grid.same_as(&rhs.grid), "grid mismatch");
        VorticityField {
            grid: Arc::clone(&self.grid),
            spectral: self.spectral.iter().zip(&rhs.spectral).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<f64> for &VorticityField {
    type Output = VorticityField;

    fn mul(self, rhs: f64) -> VorticityField {
        self.scaled(rhs)
    }
}

/// Divergence-free velocity `u = (u1, u2)` on a periodic grid.
#[derive(Debug, Clone)]
pub struct VelocityField {
    grid: Arc<SpectralGrid>,
    u1: Vec<Complex64>,
    u2: Vec<Complex64>,
}

impl VelocityField {
    pub fn zeros(grid: &Arc<SpectralGrid>) -> Self {
        VelocityField {
            grid: Arc::clone(grid),
            u1: vec![ZERO; grid.modes()],
            u2: vec![ZERO; grid.modes()],
        }
    }

    pub fn from_spectral(
        grid: &Arc<SpectralGrid>,
        u1: Vec<Complex64>,
        u2: Vec<Complex64>,
    ) -> Result<Self> {
        if u1.len() != grid.modes() || u2.len() != grid.modes() {
            return Err(Error::InvalidParameter("velocity coefficient length".into()));
        }
        Ok(VelocityField {
            grid: Arc::clone(grid),
            u1,
            u2,
        })
    }

    pub fn grid(&self) -> &Arc<SpectralGrid> {
        &self.grid
    }

    pub fn spectral_u1(&self) -> &[Complex64] {
        &self.u1
    }

    pub fn spectral_u2(&self) -> &[Complex64] {
        &self.u2
    }

    /// Collocation values of both components.
    pub fn to_physical(&self) -> (Vec<f64>, Vec<f64>) {
        // u1 + i u2 has real part u1 and imaginary part u2 since both are real fields.
        let mut data: Vec<Complex64> = self
            .u1
            .iter()
            .zip(&self.u2)
            .map(|(a, b)| a + Complex64::i() * b)
            .collect();
        self.grid.inverse(&mut data);
        data.into_iter().map(|c| (c.re, c.im)).unzip()
    }

    /// `curl u = d1 u2 - d2 u1`.
    pub fn curl(&self) -> VorticityField {
        let g = &self.grid;
        let spectral = (0..g.modes())
            .map(|i| Complex64::i() * (g.kx()[i] * self.u2[i] - g.ky()[i] * self.u1[i]))
            .collect();
        VorticityField::from_parts(Arc::clone(g), spectral)
    }

    /// Spectral divergence `i (kx u1 + ky u2)` per mode.
    pub fn divergence(&self) -> Vec<Complex64> {
        let g = &self.grid;
        (0..g.modes())
            .map(|i| Complex64::i() * (g.kx()[i] * self.u1[i] + g.ky()[i] * self.u2[i]))
            .collect()
    }

    pub fn inner(&self, other: &VelocityField) -> f64 {
        debug_assert!(self.grid.same_as(&other.grid));
        inner(&self.grid, &self.u1, &other.u1) + inner(&self.grid, &self.u2, &other.u2)
    }

    /// `||u||^2`.
    pub fn l2_sq(&self) -> f64 {
        self.inner(self)
    }

    /// `||grad u||^2`, summed over both components.
    pub fn grad_l2_sq(&self) -> f64 {
        let area = self.grid.length().powi(2);
        area * (0..self.grid.modes())
            .map(|i| self.grid.k_sq()[i] * (self.u1[i].norm_sqr() + self.u2[i].norm_sqr()))
            .sum::<f64>()
    }

    pub fn scaled(&self, factor: f64) -> VelocityField {
        VelocityField {
            grid: Arc::clone(&self.grid),
            u1: self.u1.iter().map(|c| c * factor).collect(),
            u2: self.u2.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn hermitian_defect(&self) -> f64 {
        hermitian_defect(&self.grid, &self.u1).max(hermitian_defect(&self.grid, &self.u2))
    }
}

impl Sub for &VelocityField {
    type Output = VelocityField;

    fn sub(self, rhs: &VelocityField) -> VelocityField {
        assert!(self.grid.same_as(&rhs.grid), "grid mismatch");
        VelocityField {
            grid: Arc::clone(&self.grid),
            u1: self.u1.iter().zip(&rhs.u1).map(|(a, b)| a - b).collect(),
            u2: self.u2.iter().zip(&rhs.u2).map(|(a, b)| a - b).collect(),
        }
    }
}

pub(crate) fn inner(grid: &SpectralGrid, a: &[Complex64], b: &[Complex64]) -> f64 {
    let area = grid.length().powi(2);
    area * a.iter().zip(b).map(|(x, y)| (x * y.conj()).re).sum::<f64>()
}

pub(crate) fn enforce_hermitian(grid: &SpectralGrid, data: &mut [Complex64]) {
    for idx in 0..data.len() {
        let c = grid.conjugate_index(idx);
        if c < idx {
            continue;
        }
        if c == idx {
            data[idx].im = 0.0;
        } else {
            let avg = (data[idx] + data[c].conj()) * 0.5;
            data[idx] = avg;
            data[c] = avg.conj();
        }
    }
}

fn hermitian_defect(grid: &SpectralGrid, data: &[Complex64]) -> f64 {
    (0..data.len())
        .map(|i| (data[i] - data[grid.conjugate_index(i)].conj()).norm())
        .fold(0.0, f64::max)
}
