//! EKEU snapshot files: physical-space vorticity on the collocation grid.
//!
//! ```text
//! offset  size      field
//! 0       4         magic "EKEU"
//! 4       4         format version, u32 LE
//! 8       4         n, u32 LE
//! 12      8         L, f64 LE
//! 20      8         time, f64 LE
//! 28      8 n²      ω values, f64 LE, row-major (rows over y)
//! ```

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::spectral::{SpectralGrid, VorticityField};

pub const MAGIC: &[u8; 4] = b"EKEU";
pub const FORMAT_VERSION: u32 = 1;
const HEADER_LEN: usize = 28;

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub version: u32,
    pub n: u32,
    pub length: f64,
    pub time: f64,
    pub values: Vec<f64>,
}

impl Snapshot {
    pub fn from_field(field: &VorticityField, time: f64) -> Self {
        Snapshot {
            version: FORMAT_VERSION,
            n: field.grid().n() as u32,
            length: field.grid().length(),
            time,
            values: field.to_physical(),
        }
    }

    /// Forward transform onto `grid`, or onto a fresh grid built from the
    /// header. The result is projected onto the retained modes.
    pub fn to_field(&self, grid: Option<&Arc<SpectralGrid>>) -> Result<VorticityField> {
        let grid = match grid {
            Some(g) => {
                if g.n() != self.n as usize || g.length() != self.length {
                    return Err(Error::GridMismatch);
                }
                Arc::clone(g)
            }
            None => SpectralGrid::new(self.n as usize, self.length)?,
        };
        Ok(VorticityField::from_physical(&grid, &self.values)?.dealiased())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 8 * self.values.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&self.version.to_le_bytes());
        out.extend_from_slice(&self.n.to_le_bytes());
        out.extend_from_slice(&self.length.to_le_bytes());
        out.extend_from_slice(&self.time.to_le_bytes());
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8], origin: &Path) -> Result<Self> {
        let fail = |message: String| Error::Format {
            path: origin.to_path_buf(),
            message,
        };
        if bytes.len() < HEADER_LEN {
            return Err(fail(format!("{} bytes is shorter than the header", bytes.len())));
        }
        if &bytes[0..4] != MAGIC {
            return Err(fail("bad magic".into()));
        }
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
        let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        let version = u32_at(4);
        if version != FORMAT_VERSION {
            return Err(fail(format!("unsupported version {version}")));
        }
        let n = u32_at(8);
        let expected = 8 * (n as usize) * (n as usize);
        if bytes.len() - HEADER_LEN != expected {
            return Err(fail(format!(
                "payload is {} bytes, expected {expected}",
                bytes.len() - HEADER_LEN
            )));
        }
        let values = bytes[HEADER_LEN..]
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(Snapshot {
            version,
            n,
            length: f64_at(12),
            time: f64_at(20),
            values,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Snapshot::from_bytes(&bytes, path)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_bytes()).map_err(|e| Error::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::band_limited_field;
    use std::f64::consts::PI;

    #[test]
    fn header_layout() {
        let g = SpectralGrid::new(8, 2.0 * PI).unwrap();
        let s = Snapshot::from_field(&VorticityField::zeros(&g), 1.5);
        let b = s.to_bytes();
        assert_eq!(b.len(), 28 + 8 * 64);
        assert_eq!(&b[0..4], b"EKEU");
        assert_eq!(&b[4..8], &1u32.to_le_bytes());
        assert_eq!(&b[8..12], &8u32.to_le_bytes());
        assert_eq!(&b[20..28], &1.5f64.to_le_bytes());
    }

    #[test]
    fn bytes_round_trip_exactly() {
        let g = SpectralGrid::new(16, 3.0).unwrap();
        let w = band_limited_field(&g, 4, 1.0, 4.0).unwrap();
        let bytes = Snapshot::from_field(&w, 0.25).to_bytes();
        let back = Snapshot::from_bytes(&bytes, Path::new("mem")).unwrap();
        assert_eq!(back.to_bytes(), bytes);
        let w2 = back.to_field(Some(&g)).unwrap();
        let err = (&w2 - &w).spectral().iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(err < 1e-15);
    }

    #[test]
    fn malformed_inputs() {
        let p = Path::new("x");
        assert!(Snapshot::from_bytes(b"EKE", p).is_err());
        let g = SpectralGrid::new(8, 1.0).unwrap();
        let mut b = Snapshot::from_field(&VorticityField::zeros(&g), 0.0).to_bytes();
        b.pop();
        assert!(Snapshot::from_bytes(&b, p).is_err());
        let mut b = Snapshot::from_field(&VorticityField::zeros(&g), 0.0).to_bytes();
        b[0] = b'X';
        assert!(Snapshot::from_bytes(&b, p).is_err());
        let s = Snapshot::from_field(&VorticityField::zeros(&g), 0.0);
        let other = SpectralGrid::new(16, 1.0).unwrap();
        assert!(s.to_field(Some(&other)).is_err());
    }
}
