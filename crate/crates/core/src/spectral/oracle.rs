//! Brute-force convolution sum for the transport term. Test oracle only.

use std::sync::Arc;

use num_complex::Complex64;

use super::biot_savart::check_zero_mean;
use super::field::VorticityField;
use crate::error::{Error, Result};

/// Largest grid the O(n⁴) oracle accepts.
pub const ORACLE_MAX_N: usize = 32;

/// Exact Galerkin sum `Σ_{p+q=k} u_p · (i q) ω_q` over retained modes, with
/// `u_p = (i p_y, -i p_x) ω_p / |p|²` built independently of the FFT path.
pub fn oracle_nonlinear(omega: &VorticityField) -> Result<VorticityField> {
    let g = omega.grid();
    if g.n() > ORACLE_MAX_N {
        return Err(Error::OracleTooLarge(g.n()));
    }
    check_zero_mean(omega)?;
    let scale = g.k_scale();
    let w = omega.spectral();

    // Retained modes: (integer kx, integer ky, coefficient).
    let retained: Vec<(i64, i64, Complex64)> = (0..g.modes())
        .filter(|&m| g.mask()[m])
        .map(|m| {
            let (a, b) = g.integer_wavenumber(m);
            (a, b, w[m])
        })
        .collect();

    let mut out = vec![Complex64::new(0.0, 0.0); g.modes()];
    for &(px, py, wp) in &retained {
        if (px, py) == (0, 0) {
            continue;
        }
        let (fx, fy) = (px as f64 * scale, py as f64 * scale);
        let denom = fx * fx + fy * fy;
        let u1 = Complex64::i() * fy * wp / denom;
        let u2 = -Complex64::i() * fx * wp / denom;
        for &(qx, qy, wq) in &retained {
            let (kx, ky) = (px + qx, py + qy);
            if kx.abs() > g.cutoff() || ky.abs() > g.cutoff() || (kx, ky) == (0, 0) {
                continue;
            }
            let grad_x = Complex64::i() * (qx as f64 * scale) * wq;
            let grad_y = Complex64::i() * (qy as f64 * scale) * wq;
            let idx = g.index_of(kx, ky).expect("retained sum stays on grid");
            out[idx] += u1 * grad_x + u2 * grad_y;
        }
    }
    Ok(VorticityField::from_parts(Arc::clone(g), out))
}
