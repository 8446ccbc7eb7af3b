//! Periodic square grid, wavenumber tables, dealiasing mask and 2D FFTs.
//!
//! Modes are stored row-major with the row index running over `y` and the
//! column index over `x`, so mode `(ix, iy)` lives at `iy * n + ix`. Index `i`
//! maps to the integer wavenumber `i` for `i < n/2` and `i - n` otherwise, so
//! the Nyquist index `n/2` carries wavenumber `-n/2`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

pub struct SpectralGrid {
    n: usize,
    length: f64,
    /// Integer wavenumber per 1D index.
    k_int: Vec<i64>,
    /// Physical wavenumber per mode, x component.
    kx: Vec<f64>,
    /// Physical wavenumber per mode, y component.
    ky: Vec<f64>,
    k_sq: Vec<f64>,
    mask: Vec<bool>,
    conj: Vec<usize>,
    cutoff: i64,
    fft: Fft2,
}

impl SpectralGrid {
    /// Builds an `n x n` grid on the torus `[0, length)^2`.
    pub fn new(n: usize, length: f64) -> Result<Arc<Self>> {
        if n < 8 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "n must be even and >= 8, got {n}"
            )));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "period length must be positive, got {length}"
            )));
        }
        let k_int: Vec<i64> = (0..n)
            .map(|i| if i < n / 2 { i as i64 } else { i as i64 - n as i64 })
            .collect();
        // Strictly below n/3: a pair of modes at exactly n/3 folds back onto -n/3.
        let cutoff = ((n - 1) / 3) as i64;
        let scale = 2.0 * PI / length;

        let mut kx = Vec::with_capacity(n * n);
        let mut ky = Vec::with_capacity(n * n);
        let mut k_sq = Vec::with_capacity(n * n);
        let mut mask = Vec::with_capacity(n * n);
        for iy in 0..n {
            for ix in 0..n {
                let (a, b) = (k_int[ix], k_int[iy]);
                let (fx, fy) = (a as f64 * scale, b as f64 * scale);
                kx.push(fx);
                ky.push(fy);
                k_sq.push(fx * fx + fy * fy);
                mask.push(a.abs() <= cutoff && b.abs() <= cutoff);
            }
        }

        let neg = |i: usize| (n - i) % n;
        let conj = (0..n * n).map(|idx| neg(idx / n) * n + neg(idx % n)).collect();

        Ok(Arc::new(SpectralGrid {
            n,
            length,
            k_int,
            kx,
            ky,
            k_sq,
            mask,
            conj,
            cutoff,
            fft: Fft2::new(n),
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn modes(&self) -> usize {
        self.n * self.n
    }

    /// Largest retained integer wavenumber per axis, the largest `K` with `3K < n`.
    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    /// `2 pi / L`.
    pub fn k_scale(&self) -> f64 {
        2.0 * PI / self.length
    }

    /// Largest retained physical wavenumber magnitude.
    pub fn k_max(&self) -> f64 {
        self.k_scale() * (2.0f64).sqrt() * self.cutoff as f64
    }

    /// Integer wavenumber pair of the mode at flat index `idx`.
    pub fn integer_wavenumber(&self, idx: usize) -> (i64, i64) {
        (self.k_int[idx % self.n], self.k_int[idx / self.n])
    }

    /// Flat index of the integer wavenumber pair, if it lies on the grid.
    pub fn index_of(&self, kx: i64, ky: i64) -> Option<usize> {
        let half = (self.n / 2) as i64;
        if kx < -half || kx >= half || ky < -half || ky >= half {
            return None;
        }
        let wrap = |k: i64| if k < 0 { (k + self.n as i64) as usize } else { k as usize };
        Some(wrap(ky) * self.n + wrap(kx))
    }

    /// Flat index of `-k`.
    pub fn conjugate_index(&self, idx: usize) -> usize {
        self.conj[idx]
    }

    pub fn kx(&self) -> &[f64] {
        &self.kx
    }

    pub fn ky(&self) -> &[f64] {
        &self.ky
    }

    pub fn k_sq(&self) -> &[f64] {
        &self.k_sq
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Zeroes every mode outside the 2/3-rule mask.
    pub fn apply_mask(&self, spectral: &mut [Complex64]) {
        for (c, &keep) in spectral.iter_mut().zip(&self.mask) {
            if !keep {
                *c = Complex64::new(0.0, 0.0);
            }
        }
    }

    /// Area element of the rectangle rule, `(L/n)^2`.
    pub fn cell_area(&self) -> f64 {
        let h = self.length / self.n as f64;
        h * h
    }

    /// Collocation point coordinates, `x_j = j L / n`.
    pub fn coordinate(&self, j: usize) -> f64 {
        j as f64 * self.length / self.n as f64
    }

    /// Same resolution and period.
    pub fn same_as(&self, other: &SpectralGrid) -> bool {
        self.n == other.n && self.length == other.length
    }

    /// Physical values to normalised coefficients, `f_k = n^-2 sum_j f_j e^{-i k x_j}`.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.fft.forward(data);
        let norm = 1.0 / (self.n * self.n) as f64;
        for c in data.iter_mut() {
            *c *= norm;
        }
    }

    /// Coefficients to physical values, `f_j = sum_k f_k e^{i k x_j}`.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.fft.inverse(data);
    }
}

impl fmt::Debug for SpectralGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralGrid")
            .field("n", &self.n)
            .field("length", &self.length)
            .field("cutoff", &self.cutoff)
            .finish()
    }
}

/// Square 2D complex FFT built from 1D row transforms and in-place transposes.
struct Fft2 {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Fft2 {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    fn forward(&self, data: &mut [Complex64]) {
        self.run(&*self.forward, data);
    }

    fn inverse(&self, data: &mut [Complex64]) {
        self.run(&*self.inverse, data);
    }

    fn run(&self, plan: &dyn Fft<f64>, data: &mut [Complex64]) {
        let n = self.n;
        assert_eq!(data.len(), n * n);
        let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        // Rows that are identically zero (common for masked spectra) stay zero.
        let zero = Complex64::new(0.0, 0.0);
        let mut start = 0;
        while start < n {
            if data[start * n..(start + 1) * n].iter().all(|c| *c == zero) {
                start += 1;
                continue;
            }
            let mut end = start + 1;
            while end < n && data[end * n..(end + 1) * n].iter().any(|c| *c != zero) {
                end += 1;
            }
            plan.process_with_scratch(&mut data[start * n..end * n], &mut scratch);
            start = end;
        }
        transpose(data, n);
        plan.process_with_scratch(data, &mut scratch);
        transpose(data, self.n);
    }
}

fn transpose(data: &mut [Complex64], n: usize) {
    const B: usize = 16;
    for ib in (0..n).step_by(B) {
        for jb in (ib..n).step_by(B) {
            for i in ib..(ib + B).min(n) {
                let j0 = if ib == jb { i + 1 } else { jb };
                for j in j0..(jb + B).min(n) {
                    data.swap(i * n + j, j * n + i);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_tables() {
        let g = SpectralGrid::new(8, 2.0 * PI).unwrap();
        let ks: Vec<i64> = (0..8).map(|i| g.integer_wavenumber(i).0).collect();
        assert_eq!(ks, vec![0, 1, 2, 3, -4, -3, -2, -1]);
        assert_eq!(g.cutoff(), 2);
        let kept = g.mask().iter().filter(|&&m| m).count();
        assert_eq!(kept, 25);
        assert!(g.mask()[0]);
        // Nyquist rows and columns are dropped.
        let nyq = g.index_of(-4, 0).unwrap();
        assert!(!g.mask()[nyq]);
        assert!((g.kx()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cutoff_for_128() {
        let g = SpectralGrid::new(128, 2.0 * PI).unwrap();
        assert_eq!(g.cutoff(), 42);
        assert!(g.mask()[g.index_of(42, -42).unwrap()]);
        assert!(!g.mask()[g.index_of(43, 0).unwrap()]);
    }

    #[test]
    fn cutoff_when_three_divides_n() {
        assert_eq!(SpectralGrid::new(12, 2.0 * PI).unwrap().cutoff(), 3);
        assert_eq!(SpectralGrid::new(96, 2.0 * PI).unwrap().cutoff(), 31);
        assert_eq!(SpectralGrid::new(64, 2.0 * PI).unwrap().cutoff(), 21);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(SpectralGrid::new(7, 1.0).is_err());
        assert!(SpectralGrid::new(6, 1.0).is_err());
        assert!(SpectralGrid::new(8, 0.0).is_err());
        assert!(SpectralGrid::new(8, -1.0).is_err());
    }

    #[test]
    fn mask_symmetric_and_idempotent() {
        let g = SpectralGrid::new(16, 3.0).unwrap();
        for idx in 0..g.modes() {
            if g.mask()[idx] {
                let c = g.conjugate_index(idx);
                assert!(g.mask()[c]);
                assert_eq!(g.kx()[c], -g.kx()[idx]);
                assert_eq!(g.ky()[c], -g.ky()[idx]);
            }
        }
        let mut data: Vec<Complex64> = (0..g.modes())
            .map(|i| Complex64::new(i as f64, -(i as f64)))
            .collect();
        g.apply_mask(&mut data);
        let once = data.clone();
        g.apply_mask(&mut data);
        assert_eq!(once, data);
    }

    #[test]
    fn fft_round_trip() {
        let g = SpectralGrid::new(16, 1.0).unwrap();
        let orig: Vec<Complex64> = (0..g.modes())
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), 0.0))
            .collect();
        let mut data = orig.clone();
        g.forward(&mut data);
        g.inverse(&mut data);
        for (a, b) in data.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn forward_of_cosine() {
        let n = 16;
        let g = SpectralGrid::new(n, 2.0 * PI).unwrap();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for iy in 0..n {
            for ix in 0..n {
                data[iy * n + ix] = Complex64::new((3.0 * g.coordinate(ix)).cos(), 0.0);
            }
        }
        g.forward(&mut data);
        let p = g.index_of(3, 0).unwrap();
        let m = g.index_of(-3, 0).unwrap();
        assert!((data[p].re - 0.5).abs() < 1e-14);
        assert!((data[m].re - 0.5).abs() < 1e-14);
    }
}
