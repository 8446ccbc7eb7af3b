use std::f64::consts::PI;

use ekeu::dynamics::band_limited_field;
use ekeu::spectral::{
    biot_savart, interpolation_bound, lp_of_values, nonlinear_term, oracle_nonlinear, SpectralGrid,
    VorticityField,
};
use proptest::prelude::*;

fn max_abs_diff(a: &VorticityField, b: &VorticityField) -> f64 {
    a.spectral()
        .iter()
        .zip(b.spectral())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn max_abs(a: &VorticityField) -> f64 {
    a.spectral().iter().map(|x| x.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn biot_savart_round_trip(seed in any::<u64>(), n in prop::sample::select(vec![8usize, 16, 32, 64]),
                              length in 0.5f64..20.0, k_max in 1.0f64..12.0) {
        let g = SpectralGrid::new(n, length).unwrap();
        let w = match band_limited_field(&g, seed, 1.0, k_max) {
            Ok(w) => w,
            Err(_) => return Ok(()),
        };
        let u = biot_savart(&w).unwrap();
        prop_assert!(max_abs_diff(&u.curl(), &w) <= 1e-12 * max_abs(&w));
        let div = u.divergence().iter().map(|d| d.norm()).fold(0.0, f64::max);
        prop_assert!(div <= 1e-13 * (1.0 + max_abs(&w)));
        prop_assert!(u.hermitian_defect() <= 1e-14 * (1.0 + max_abs(&w)));
    }

    #[test]
    fn oracle_matches_fft_path(seed in any::<u64>(), n in prop::sample::select(vec![8usize, 12, 16]),
                               amp in 0.01f64..100.0) {
        let g = SpectralGrid::new(n, 2.0 * PI).unwrap();
        let w = match band_limited_field(&g, seed, 1.0, n as f64) {
            Ok(w) => w.scaled(amp),
            Err(_) => return Ok(()),
        };
        let fast = nonlinear_term(&w).unwrap();
        let slow = oracle_nonlinear(&w).unwrap();
        let scale = max_abs(&slow).max(f64::MIN_POSITIVE);
        prop_assert!(max_abs_diff(&fast, &slow) <= 1e-12 * scale.max(amp * amp * 1e-3));
    }

    #[test]
    fn dealias_is_idempotent(seed in any::<u64>(), n in prop::sample::select(vec![8usize, 10, 16, 30])) {
        let g = SpectralGrid::new(n, 2.0 * PI).unwrap();
        let vals: Vec<f64> = {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..n * n).map(|_| rng.random_range(-1.0..1.0)).collect()
        };
        let once = VorticityField::from_physical(&g, &vals).unwrap().dealiased();
        let twice = once.clone().dealiased();
        prop_assert!(once.bit_eq(&twice));
        prop_assert!(once.is_dealiased());
    }

    #[test]
    fn lp_respects_interpolation(seed in any::<u64>(), p in prop::sample::select(vec![2.0f64, 3.0, 4.0, 8.0, 16.0])) {
        let g = SpectralGrid::new(32, 2.0 * PI).unwrap();
        let w = band_limited_field(&g, seed, 1.0, 8.0).unwrap();
        let v = w.to_physical();
        let area = g.cell_area();
        let l2 = lp_of_values(v.iter().copied(), 2.0, area);
        let linf = lp_of_values(v.iter().copied(), f64::INFINITY, area);
        let lp = lp_of_values(v.iter().copied(), p, area);
        prop_assert!(lp <= interpolation_bound(l2, linf, p) * (1.0 + 1e-12));
        // Parseval against the quadrature.
        prop_assert!((l2 * l2 / w.l2_sq() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn oracle_on_single_triad() {
    // Two modes interact only into their sum and difference.
    let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
    let w = VorticityField::from_fn(&g, |x, y| x.cos() + (2.0 * y).sin());
    let fast = nonlinear_term(&w).unwrap();
    let slow = oracle_nonlinear(&w).unwrap();
    assert!(max_abs_diff(&fast, &slow) < 1e-13);
    for idx in 0..g.modes() {
        let (a, b) = g.integer_wavenumber(idx);
        if (a.abs(), b.abs()) != (1, 2) {
            assert!(slow.spectral()[idx].norm() < 1e-14, "({a},{b})");
        }
    }
}
