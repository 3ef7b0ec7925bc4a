//! Density CSV, 8-bit graymap and summary document writers.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use spin_eraser::density::DensityField as Field;
use spin_eraser::{DensityField, Error, GridSpec, PhysParams};

use crate::error::{CliError, Result};

/// Density samples with their node coordinates, as stored in a CSV file.
///
/// Coordinates are kept verbatim so emit, parse and emit again is a fixed
/// point.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityTable {
    pub xs: Vec<f64>,
    pub zs: Vec<f64>,
    /// `values[j * xs.len() + i]` at `(xs[i], zs[j])`.
    pub values: Vec<f64>,
}

impl From<&DensityField> for DensityTable {
    fn from(d: &DensityField) -> Self {
        DensityTable { xs: d.grid.xs(), zs: d.grid.zs(), values: d.values.iter().copied().collect() }
    }
}

impl DensityTable {
    /// Rows of `x,z,density` with z the outer index. `f64` display output is
    /// the shortest string that parses back to the same value.
    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(self.values.len() * 48);
        s.push_str("x,z,density\n");
        for (j, z) in self.zs.iter().enumerate() {
            for (i, x) in self.xs.iter().enumerate() {
                let _ = writeln!(s, "{x},{z},{}", self.values[j * self.xs.len() + i]);
            }
        }
        s
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let bad = |m: String| CliError::Csv(m);
        let mut lines = text.lines();
        match lines.next() {
            Some("x,z,density") => {}
            other => return Err(bad(format!("unexpected header {other:?}"))),
        }
        let (mut xs, mut zs, mut values) = (Vec::new(), Vec::new(), Vec::new());
        for (n, line) in lines.enumerate() {
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(bad(format!("row {}: expected 3 columns", n + 2)));
            }
            let num = |v: &str| v.parse::<f64>().map_err(|e| bad(format!("row {}: {e}", n + 2)));
            let (x, z, v) = (num(cols[0])?, num(cols[1])?, num(cols[2])?);
            if zs.last() != Some(&z) {
                zs.push(z);
            }
            if zs.len() == 1 {
                xs.push(x);
            } else if xs.get(values.len() % xs.len().max(1)) != Some(&x) {
                return Err(bad(format!("row {}: x does not repeat the first row block", n + 2)));
            }
            values.push(v);
        }
        if xs.is_empty() || values.len() != xs.len() * zs.len() {
            return Err(bad("rows do not form a full grid".into()));
        }
        Ok(DensityTable { xs, zs, values })
    }

    /// Rebuilds a density field on the uniform grid spanned by the table.
    pub fn to_field(&self) -> Result<DensityField> {
        let (nx, nz) = (self.xs.len(), self.zs.len());
        let grid = GridSpec::new(self.xs[0], self.xs[nx - 1], nx, self.zs[0], self.zs[nz - 1], nz)?;
        let values = ndarray::Array2::from_shape_vec((nz, nx), self.values.clone())
            .map_err(|e| CliError::Csv(e.to_string()))?;
        Ok(Field::new(grid, values)?)
    }
}

/// Binary graymap (P5): pixel = round(255 v / max), one image row per z
/// node with z increasing downward.
pub fn pgm_bytes(d: &DensityField) -> Result<Vec<u8>> {
    let max = d.max_value();
    if !(max > 0.0) || !max.is_finite() {
        return Err(Error::EmptyDensity.into());
    }
    let mut out = format!("P5\n{} {}\n255\n", d.grid.nx, d.grid.nz).into_bytes();
    out.extend(d.values.iter().map(|&v| (v / max * 255.0).round().clamp(0.0, 255.0) as u8));
    Ok(out)
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| CliError::Io { path: path.to_owned(), source: e })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamsSummary {
    pub m: f64,
    pub hbar: f64,
    pub sigma: f64,
    pub omega: f64,
    pub z0: f64,
    pub t: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_i: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_e: Option<f64>,
}

impl ParamsSummary {
    /// Magnet settings are listed only when a magnet acts.
    pub fn new(p: &PhysParams, with_magnet: bool) -> Self {
        let opt = |v: f64| with_magnet.then_some(v);
        ParamsSummary {
            m: p.m,
            hbar: p.hbar,
            sigma: p.sigma,
            omega: p.omega,
            z0: p.z0,
            t: p.t,
            beta: opt(p.beta),
            b0: opt(p.b0),
            t_i: opt(p.t_i),
            t_e: opt(p.t_e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSummary {
    pub nx: usize,
    pub nz: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub z_min: f64,
    pub z_max: f64,
}

impl From<&GridSpec> for GridSummary {
    fn from(g: &GridSpec) -> Self {
        GridSummary { nx: g.nx, nz: g.nz, x_min: g.x_min, x_max: g.x_max, z_min: g.z_min, z_max: g.z_max }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSummary {
    pub dt: f64,
    pub residual: f64,
    pub norm_drift: f64,
    pub renormalization: f64,
    pub magnet_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SnapshotSummary {
    pub time: f64,
    pub csv: String,
    pub pgm: String,
    pub grid: GridSummary,
    pub lobe_centers: Vec<f64>,
    pub visibility_window: [f64; 2],
    pub visibility_per_lobe: Vec<f64>,
    pub single_lobe: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fringe_period: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complementarity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complementarity_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antiphase_offset_cells: Option<usize>,
    pub distinguishability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub scenario: String,
    /// Graymaps are scaled to their own maximum.
    pub image_normalization: String,
    pub strict_eq12: bool,
    pub params: ParamsSummary,
    /// Keyed by snapshot name (`screen`, or `intermediate` and `final`).
    pub snapshots: std::collections::BTreeMap<String, SnapshotSummary>,
}

impl Summary {
    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(f: impl Fn(f64, f64) -> f64) -> DensityField {
        Field::from_fn(GridSpec::new(-1.0, 2.0, 7, -3.0, 0.5, 5).unwrap(), f)
    }

    #[test]
    fn uniform_field_maps_to_white() {
        let bytes = pgm_bytes(&field(|_, _| 0.25)).unwrap();
        let header = b"P5\n7 5\n255\n";
        assert_eq!(&bytes[..header.len()], header);
        assert_eq!(bytes.len(), header.len() + 35);
        assert!(bytes[header.len()..].iter().all(|&p| p == 255));
    }

    #[test]
    fn zero_field_is_rejected() {
        let err = pgm_bytes(&field(|_, _| 0.0)).unwrap_err();
        assert_eq!(err.to_string(), "empty density");
    }

    #[test]
    fn pixels_scale_linearly() {
        let bytes = pgm_bytes(&field(|x, _| (x + 1.0) / 3.0)).unwrap();
        let row = &bytes[11..18];
        assert_eq!(row, &[0, 43, 85, 128, 170, 213, 255]);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let d = field(|x, z| (x * 1.3).sin().powi(2) * (-z * z).exp() / 7.0);
        let table = DensityTable::from(&d);
        let text = table.to_csv();
        assert!(text.starts_with("x,z,density\n-1,-3,"));
        let back = DensityTable::parse_csv(&text).unwrap();
        assert_eq!(back, table);
        assert_eq!(back.to_csv(), text);
        assert_eq!(back.to_field().unwrap().values, d.values);
    }

    #[test]
    fn malformed_csv() {
        assert!(DensityTable::parse_csv("a,b,c\n").is_err());
        assert!(DensityTable::parse_csv("x,z,density\n0,0,1\n1,0,1\n0,1,1\n").is_err());
        assert!(DensityTable::parse_csv("x,z,density\n0,0\n").is_err());
    }
}
