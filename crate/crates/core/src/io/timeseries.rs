//! CSV time series: recorded scalars plus one residual column per report.
//!
//! Columns are `time, energy, enstrophy, h1_sq, lp_<p>..., linf`, then
//! `res_<law>` for each report. Values carry 17 significant digits, so a
//! binary64 survives the trip through text. Rows without a residual (the
//! stencil endpoints) hold `NaN`.

use std::path::Path;

use crate::balance::BalanceReport;
use crate::dynamics::TrajectoryRecord;
use crate::error::{Error, Result};

/// Parsed CSV: a header and numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Timeseries {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Timeseries {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

fn fmt(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

/// Builds the table for a trajectory and any reports over it.
pub fn timeseries_table(traj: &TrajectoryRecord, reports: &[BalanceReport]) -> Timeseries {
    let mut columns: Vec<String> = ["time", "energy", "enstrophy", "h1_sq"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for s in &traj.lp {
        columns.push(format!("lp_{}", s.p));
    }
    columns.push("linf".into());
    for rep in reports {
        columns.push(format!("res_{}", rep.law));
    }
    let rows = (0..traj.len())
        .map(|i| {
            let t = traj.times[i];
            let mut row = vec![t, traj.energy[i], traj.enstrophy[i], traj.h1_sq[i]];
            row.extend(traj.lp.iter().map(|s| s.norm[i]));
            row.push(traj.linf[i]);
            for rep in reports {
                let v = rep
                    .times
                    .iter()
                    .position(|&s| s == t)
                    .map(|j| rep.residual_series[j])
                    .unwrap_or(f64::NAN);
                row.push(v);
            }
            row
        })
        .collect();
    Timeseries { columns, rows }
}

pub fn write_table(table: &Timeseries, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|v| fmt(*v)))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes the trajectory scalars and report residuals to `path`.
pub fn write_timeseries(
    traj: &TrajectoryRecord,
    reports: &[BalanceReport],
    path: impl AsRef<Path>,
) -> Result<()> {
    write_table(&timeseries_table(traj, reports), path)
}

pub fn read_timeseries(path: impl AsRef<Path>) -> Result<Timeseries> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rd = csv::Reader::from_reader(file);
    let columns: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let row: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        rows.push(row.map_err(|e| Error::Format {
            path: path.to_path_buf(),
            message: format!("row {}: {e}", rows.len() + 1),
        })?);
    }
    Ok(Timeseries { columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::energy_residual;
    use crate::dynamics::{band_limited_field, simulate, SimParams};
    use crate::spectral::SpectralGrid;
    use std::f64::consts::PI;

    #[test]
    fn empty_trajectory_gives_header_only() {
        let g = SpectralGrid::new(8, 2.0 * PI).unwrap();
        let p = SimParams::new(&g, 1.0, 0.0, 0.1, 0.3);
        let mut rec = simulate(&crate::spectral::VorticityField::zeros(&g), &p).unwrap();
        rec = rec.window(10.0, 1.0, p.dt);
        assert!(rec.is_empty());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.csv");
        write_timeseries(&rec, &[], &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "time,energy,enstrophy,h1_sq,lp_2,lp_4,lp_8,linf\n");
        assert!(read_timeseries(&path).unwrap().rows.is_empty());
    }

    #[test]
    fn decay_run_reparses() {
        let g = SpectralGrid::new(16, 2.0 * PI).unwrap();
        let r = 0.3;
        let p = SimParams::new(&g, r, 0.0, 1e-2, 2.0).with_record_every(10);
        let w = band_limited_field(&g, 4, 1.0, 5.0).unwrap();
        let rec = simulate(&w, &p).unwrap();
        let rep = energy_residual(&rec, &p, 1.0).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        write_timeseries(&rec, &[rep.clone()], &path).unwrap();
        let back = read_timeseries(&path).unwrap();
        let z0 = rec.enstrophy[0];
        let times = back.column("time").unwrap();
        for (t, z) in times.iter().zip(back.column("enstrophy").unwrap()) {
            assert!((z / (z0 * (-2.0 * r * t).exp()) - 1.0).abs() < 1e-8);
        }
        let res = back.column("res_energy").unwrap();
        assert!(res[0].is_nan() && res.last().unwrap().is_nan());
        assert_eq!(&res[1..res.len() - 1], &rep.residual_series[..]);
        assert_eq!(back.column("energy").unwrap(), rec.energy);
    }
}
