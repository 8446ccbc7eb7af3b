//! Upper bounds on the fractal dimension of the viscous attractor in terms of
//! homogeneous Sobolev norms of the forcing.

use crate::dynamics::ForcingSpec;
use crate::error::{Error, Result};
use crate::spectral::norms;

/// `(1 - s²)/(64√3) · ((1 + |s|)/(1 - |s|))^{|s|}`, with the closed form
/// `1/(16√3)` at `|s| = 1`.
pub fn dim_prefactor(s: f64) -> f64 {
    let a = s.abs();
    let root3 = 3f64.sqrt();
    if a == 1.0 {
        return 1.0 / (16.0 * root3);
    }
    (1.0 - s * s) / (64.0 * root3) * ((1.0 + a) / (1.0 - a)).powf(a)
}

fn check(nu: f64, r: f64) -> Result<()> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "the dimension bound needs nu > 0, got {nu}"
        )));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!("r must be > 0, got {r}")));
    }
    Ok(())
}

/// `dim ≤ prefactor(s) ||g||²_{Ḣ^s} / (r^{2+s} ν^{2-s})` for `s ∈ [-1, 1]`.
pub fn dim_bound(g: &ForcingSpec, nu: f64, r: f64, s: f64) -> Result<f64> {
    check(nu, r)?;
    if !(-1.0..=1.0).contains(&s) {
        return Err(Error::InvalidExponent(format!("s must lie in [-1, 1], got {s}")));
    }
    let hs = norms(g.velocity(), &[], &[s])?.hs[0].1;
    Ok(dim_prefactor(s) * hs * hs / (r.powf(2.0 + s) * nu.powf(2.0 - s)))
}

/// The gradient form `(3/8) ||∇g||² / (ν r³)`.
pub fn dim_bound_gradient(g: &ForcingSpec, nu: f64, r: f64) -> Result<f64> {
    check(nu, r)?;
    Ok(0.375 * g.velocity().grad_l2_sq() / (nu * r.powi(3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::SpectralGrid;
    use std::f64::consts::PI;

    #[test]
    fn prefactor_values() {
        let root3 = 3f64.sqrt();
        assert_eq!(dim_prefactor(0.0), 1.0 / (64.0 * root3));
        assert_eq!(dim_prefactor(1.0), dim_prefactor(-1.0));
        // The general expression tends to the closed form as |s| → 1.
        let near = dim_prefactor(1.0 - 1e-9);
        assert!((near / dim_prefactor(1.0) - 1.0).abs() < 1e-6);
        assert_eq!(dim_prefactor(0.5), dim_prefactor(-0.5));
    }

    #[test]
    fn shear_closed_forms() {
        let g = SpectralGrid::new(32, 2.0 * PI).unwrap();
        let f = ForcingSpec::shear(&g, 1.0);
        let two_pi_sq = 2.0 * PI * PI;
        let s1 = dim_bound(&f, 0.01, 1.0, 1.0).unwrap();
        let expect1 = two_pi_sq / (16.0 * 3f64.sqrt() * 0.01);
        assert!((s1 / expect1 - 1.0).abs() < 1e-12);
        let s0 = dim_bound(&f, 0.01, 1.0, 0.0).unwrap();
        let expect0 = two_pi_sq / (64.0 * 3f64.sqrt() * 1e-4);
        assert!((s0 / expect0 - 1.0).abs() < 1e-12);
        let grad = dim_bound_gradient(&f, 0.01, 1.0).unwrap();
        assert!((grad / (0.375 * two_pi_sq / 0.01) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_forcing_and_bad_inputs() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let f = ForcingSpec::zero(&g);
        for s in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            assert_eq!(dim_bound(&f, 0.1, 0.1, s).unwrap(), 0.0);
        }
        assert!(dim_bound(&f, 0.0, 1.0, 0.0).is_err());
        assert!(dim_bound(&f, 1.0, 0.0, 0.0).is_err());
        assert!(dim_bound(&f, 1.0, 1.0, 1.5).is_err());
    }
}
