//! Binary point-cloud and label files.
//!
//! LiDAR sweeps are stored the way nuScenes stores them: a headerless
//! sequence of little-endian f32 records `(x, y, z, intensity, ring)`,
//! 20 bytes per point. Semantic labels go to a companion file holding one
//! u8 per point in the same order.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

pub const POINT_RECORD_BYTES: u64 = 20;

/// One stored LiDAR return.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointRecord {
    pub x: f32,
    pub y: f32,
    pub z: f32,
    /// 255 * incidence cosine, in [0, 255].
    pub intensity: f32,
    /// Channel index of the beam.
    pub ring: u32,
}

pub fn write_point_bin(points: &[PointRecord], path: &Path) -> Result<()> {
    let mut buf = Vec::with_capacity(points.len() * POINT_RECORD_BYTES as usize);
    for p in points {
        buf.extend_from_slice(&p.x.to_le_bytes());
        buf.extend_from_slice(&p.y.to_le_bytes());
        buf.extend_from_slice(&p.z.to_le_bytes());
        buf.extend_from_slice(&p.intensity.to_le_bytes());
        buf.extend_from_slice(&(p.ring as f32).to_le_bytes());
    }
    let mut f = fs::File::create(path)?;
    f.write_all(&buf)?;
    Ok(())
}

pub fn read_point_bin(path: &Path) -> Result<Vec<PointRecord>> {
    let bytes = fs::read(path)?;
    if bytes.len() as u64 % POINT_RECORD_BYTES != 0 {
        return Err(Error::TruncatedFile {
            path: path.to_path_buf(),
            size: bytes.len() as u64,
            record: POINT_RECORD_BYTES,
        });
    }
    let mut points = Vec::with_capacity(bytes.len() / POINT_RECORD_BYTES as usize);
    for rec in bytes.chunks_exact(POINT_RECORD_BYTES as usize) {
        let f = |i: usize| f32::from_le_bytes([rec[i], rec[i + 1], rec[i + 2], rec[i + 3]]);
        points.push(PointRecord {
            x: f(0),
            y: f(4),
            z: f(8),
            intensity: f(12),
            ring: f(16) as u32,
        });
    }
    Ok(points)
}

/// One unsigned byte per point, same order and count as the companion bin.
pub fn write_lidarseg(labels: &[u8], path: &Path) -> Result<()> {
    fs::write(path, labels)?;
    Ok(())
}

pub fn read_lidarseg(path: &Path) -> Result<Vec<u8>> {
    Ok(fs::read(path)?)
}
