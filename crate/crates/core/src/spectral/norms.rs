//! Norms of vorticity and velocity fields.
//!
//! `L²` and `Ḣ^s` come from Parseval; `L^p` and `L^∞` use the rectangle rule
//! on the collocation grid. The rule is spectrally accurate for even `p` on
//! band-limited fields; for other exponents it is only as good as the grid.

use super::biot_savart::{biot_savart, check_zero_mean};
use super::field::{VelocityField, VorticityField};
use super::grid::SpectralGrid;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub enum FieldRef<'a> {
    Vorticity(&'a VorticityField),
    Velocity(&'a VelocityField),
}

impl<'a> From<&'a VorticityField> for FieldRef<'a> {
    fn from(f: &'a VorticityField) -> Self {
        FieldRef::Vorticity(f)
    }
}

impl<'a> From<&'a VelocityField> for FieldRef<'a> {
    fn from(f: &'a VelocityField) -> Self {
        FieldRef::Velocity(f)
    }
}

/// Norms of one field. For a vorticity field, `l2`, `lp`, `linf` and `hs`
/// measure `ω` itself while `h1_sq` is `||u||² + ||ω||²` of its velocity.
#[derive(Debug, Clone, PartialEq)]
pub struct NormBundle {
    pub l2: f64,
    pub lp: Vec<(f64, f64)>,
    pub linf: f64,
    pub h1_sq: f64,
    pub hs: Vec<(f64, f64)>,
}

impl NormBundle {
    pub fn lp(&self, p: f64) -> Option<f64> {
        self.lp.iter().find(|(q, _)| *q == p).map(|(_, v)| *v)
    }

    pub fn hs(&self, s: f64) -> Option<f64> {
        self.hs.iter().find(|(t, _)| *t == s).map(|(_, v)| *v)
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 2.0 {
        return Err(Error::InvalidExponent(format!("L^p needs p >= 2, got {p}")));
    }
    Ok(())
}

fn check_smoothness(s: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&s) {
        return Err(Error::InvalidExponent(format!("H^s needs s in [-1, 1], got {s}")));
    }
    Ok(())
}

/// `(Σ |f_j|^p (L/n)²)^{1/p}`; `p = ∞` gives the max.
pub fn lp_of_values(values: impl Iterator<Item = f64>, p: f64, cell_area: f64) -> f64 {
    if p.is_infinite() {
        return values.map(f64::abs).fold(0.0, f64::max);
    }
    let sum: f64 = if p == 2.0 {
        values.map(|v| v * v).sum()
    } else if p.fract() == 0.0 && p <= 64.0 {
        let k = p as i32;
        values.map(|v| v.abs().powi(k)).sum()
    } else {
        values.map(|v| v.abs().powf(p)).sum()
    };
    (sum * cell_area).powf(1.0 / p)
}

/// Homogeneous Sobolev seminorm of a set of scalar coefficient arrays.
fn homogeneous(grid: &SpectralGrid, comps: &[&[num_complex::Complex64]], s: f64) -> f64 {
    let area = grid.length().powi(2);
    let mut total = 0.0;
    for c in comps {
        for (v, &k2) in c.iter().zip(grid.k_sq()) {
            if k2 == 0.0 {
                if s == 0.0 {
                    total += v.norm_sqr();
                }
                continue;
            }
            total += k2.powf(s) * v.norm_sqr();
        }
    }
    (area * total).sqrt()
}

pub fn norms<'a>(field: impl Into<FieldRef<'a>>, p_list: &[f64], s_list: &[f64]) -> Result<NormBundle> {
    for &p in p_list {
        check_exponent(p)?;
    }
    for &s in s_list {
        check_smoothness(s)?;
    }
    match field.into() {
        FieldRef::Vorticity(w) => {
            if s_list.iter().any(|&s| s < 0.0) {
                check_zero_mean(w)?;
            }
            let g = w.grid();
            let phys = w.to_physical();
            let area = g.cell_area();
            let lp = p_list
                .iter()
                .map(|&p| (p, lp_of_values(phys.iter().copied(), p, area)))
                .collect();
            let linf = lp_of_values(phys.iter().copied(), f64::INFINITY, area);
            let l2_sq = w.l2_sq();
            let u = biot_savart(w)?;
            let hs = s_list
                .iter()
                .map(|&s| (s, homogeneous(g, &[w.spectral()], s)))
                .collect();
            Ok(NormBundle {
                l2: l2_sq.sqrt(),
                lp,
                linf,
                h1_sq: u.l2_sq() + l2_sq,
                hs,
            })
        }
        FieldRef::Velocity(u) => {
            let g = u.grid();
            if s_list.iter().any(|&s| s < 0.0) {
                let m = u.spectral_u1()[0].norm().max(u.spectral_u2()[0].norm());
                if m > 1e-12 {
                    return Err(Error::NonZeroMean(m));
                }
            }
            let (u1, u2) = u.to_physical();
            let speed: Vec<f64> = u1.iter().zip(&u2).map(|(a, b)| a.hypot(*b)).collect();
            let area = g.cell_area();
            let lp = p_list
                .iter()
                .map(|&p| (p, lp_of_values(speed.iter().copied(), p, area)))
                .collect();
            let l2_sq = u.l2_sq();
            let hs = s_list
                .iter()
                .map(|&s| (s, homogeneous(g, &[u.spectral_u1(), u.spectral_u2()], s)))
                .collect();
            Ok(NormBundle {
                l2: l2_sq.sqrt(),
                lp,
                linf: lp_of_values(speed.iter().copied(), f64::INFINITY, area),
                h1_sq: l2_sq + u.curl().l2_sq(),
                hs,
            })
        }
    }
}

/// Right side of `||f||_p <= ||f||_2^{2/p} ||f||_∞^{1-2/p}`.
pub fn interpolation_bound(l2: f64, linf: f64, p: f64) -> f64 {
    l2.powf(2.0 / p) * linf.powf(1.0 - 2.0 / p)
}
