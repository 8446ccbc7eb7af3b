//! Write a vorticity snapshot, read it back and check the byte stream and
//! the spectral coefficients survive the trip.

use std::f64::consts::PI;

use ekeu::dynamics::band_limited_field;
use ekeu::io::Snapshot;
use ekeu::spectral::SpectralGrid;

fn main() -> ekeu::Result<()> {
    let grid = SpectralGrid::new(64, 2.0 * PI)?;
    let omega = band_limited_field(&grid, 42, 1.0, 10.0)?;
    let path = std::env::temp_dir().join("ekeu_example.ekeu");

    let snap = Snapshot::from_field(&omega, 1.25);
    snap.write(&path)?;
    let back = Snapshot::read(&path)?;
    let bytes = std::fs::read(&path).map_err(|e| ekeu::Error::Io { path: path.clone(), source: e })?;

    let field = back.to_field(Some(&grid))?;
    let worst = field
        .spectral()
        .iter()
        .zip(omega.spectral())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("{}: {} bytes, n = {}, L = {}, t = {}", path.display(), bytes.len(), back.n, back.length, back.time);
    println!("bytes reproduced: {}", back.to_bytes() == bytes);
    println!("max coefficient change: {worst:.2e}");
    let _ = std::fs::remove_file(&path);
    Ok(())
}
