//! Snapshot exports: CSV for human inspection, raw little-endian binary
//! with a JSON sidecar for machine exchange.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::grid::{GridFunction, Space, TorusGrid};

#[derive(Debug, Serialize, Deserialize)]
struct SidecarHeader {
    dim: usize,
    #[serde(rename = "L")]
    side: f64,
    #[serde(rename = "M")]
    points: usize,
    space: String,
    count: usize,
    dtype: String,
    byte_order: String,
    fingerprint: u64,
}

/// Writes `(x..., Re u, Im u)` rows; one header line.
pub fn write_csv(f: &GridFunction, path: &Path) -> Result<()> {
    let phys = f.to_physical();
    let grid = phys.grid();
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    let coords: Vec<String> = (0..grid.dim()).map(|a| format!("x{a}")).collect();
    writeln!(out, "{},re,im", coords.join(","))?;
    for (i, v) in phys.values().iter().enumerate() {
        let p = grid.point_of(i);
        let cols: Vec<String> = (0..grid.dim()).map(|a| format!("{}", p[a])).collect();
        writeln!(out, "{},{},{}", cols.join(","), v.re, v.im)?;
    }
    Ok(())
}

/// Writes `<base>.bin` (interleaved re/im f64, little endian) and
/// `<base>.json` with the eight-field header.
pub fn write_binary(f: &GridFunction, base: &Path, fingerprint: u64) -> Result<()> {
    let grid = f.grid();
    let header = SidecarHeader {
        dim: grid.dim(),
        side: grid.side(),
        points: grid.points(),
        space: match f.space() {
            Space::Physical => "physical".into(),
            Space::Frequency => "frequency".into(),
        },
        count: f.values().len(),
        dtype: "f64".into(),
        byte_order: "little".into(),
        fingerprint,
    };
    std::fs::write(base.with_extension("json"), serde_json::to_string_pretty(&header)?)?;
    let mut bytes = Vec::with_capacity(f.values().len() * 16);
    for v in f.values() {
        bytes.extend_from_slice(&v.re.to_le_bytes());
        bytes.extend_from_slice(&v.im.to_le_bytes());
    }
    std::fs::write(base.with_extension("bin"), bytes)?;
    Ok(())
}

pub fn read_binary(base: &Path) -> Result<GridFunction> {
    let header: SidecarHeader =
        serde_json::from_str(&std::fs::read_to_string(base.with_extension("json"))?)?;
    let bytes = std::fs::read(base.with_extension("bin"))?;
    if bytes.len() != header.count * 16 {
        return Err(Error::config("binary payload does not match the sidecar count"));
    }
    let values: Vec<Complex64> = bytes
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[0..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..16].try_into().unwrap()),
            )
        })
        .collect();
    let grid = TorusGrid::new(header.dim, header.side, header.points)?;
    let space = match header.space.as_str() {
        "physical" => Space::Physical,
        "frequency" => Space::Frequency,
        other => return Err(Error::config(format!("unknown space tag '{other}'"))),
    };
    GridFunction::new(grid, space, values)
}
