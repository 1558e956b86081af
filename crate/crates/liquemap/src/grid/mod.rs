//! Georeferenced raster grids with nodata semantics.
//!
//! A [`GeoGrid`] is a row-major array of scalars over square cells in
//! geographic degrees; row 0 is the northernmost row, matching ESRI ASCII
//! data order. Cells are either finite values or equal to the nodata
//! sentinel. Grids are immutable values once constructed and every
//! operation here is a pure function.

mod esri;

pub use esri::{read_esri_ascii, write_esri_ascii};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default nodata sentinel for grids constructed without an explicit one.
pub const DEFAULT_NODATA: f64 = -9999.0;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("invalid grid spec: {0}")]
    InvalidSpec(String),
    #[error("grid has {expected} cells but {found} values were supplied")]
    ValueCount { expected: usize, found: usize },
    #[error("grid specs differ in `{field}`: {left} vs {right}")]
    SpecMismatch {
        field: &'static str,
        left: String,
        right: String,
    },
    #[error("bilinear resampling requires at least 2 rows and 2 columns, source is {rows}x{cols}")]
    DegenerateSource { rows: usize, cols: usize },
    #[error("source and target extents do not overlap")]
    NonOverlappingExtents,
    #[error("combine of zero grids")]
    EmptyCombine,
    #[error("`difference` requires exactly 2 grids, got {0}")]
    DifferenceArity(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Geometry and nodata sentinel of a grid. `origin_lon`/`origin_lat` locate
/// the lower-left corner of the lower-left (southwestern) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_rows: usize,
    pub n_cols: usize,
    pub cell_size_deg: f64,
    pub origin_lon: f64,
    pub origin_lat: f64,
    pub nodata: f64,
}

impl GridSpec {
    pub fn new(
        n_rows: usize,
        n_cols: usize,
        cell_size_deg: f64,
        origin_lon: f64,
        origin_lat: f64,
    ) -> Result<Self, GridError> {
        Self::with_nodata(
            n_rows,
            n_cols,
            cell_size_deg,
            origin_lon,
            origin_lat,
            DEFAULT_NODATA,
        )
    }

    pub fn with_nodata(
        n_rows: usize,
        n_cols: usize,
        cell_size_deg: f64,
        origin_lon: f64,
        origin_lat: f64,
        nodata: f64,
    ) -> Result<Self, GridError> {
        let spec = GridSpec {
            n_rows,
            n_cols,
            cell_size_deg,
            origin_lon,
            origin_lat,
            nodata,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), GridError> {
        if self.n_rows < 1 || self.n_cols < 1 {
            return Err(GridError::InvalidSpec(format!(
                "dimensions must be at least 1x1, got {}x{}",
                self.n_rows, self.n_cols
            )));
        }
        if !(self.cell_size_deg > 0.0) || !self.cell_size_deg.is_finite() {
            return Err(GridError::InvalidSpec(format!(
                "cell size must be a positive finite number of degrees, got {}",
                self.cell_size_deg
            )));
        }
        if !self.origin_lon.is_finite() || !self.origin_lat.is_finite() {
            return Err(GridError::InvalidSpec("non-finite origin".into()));
        }
        if self.origin_lat < -90.0 {
            return Err(GridError::InvalidSpec(format!(
                "southern edge {} below -90 degrees",
                self.origin_lat
            )));
        }
        // Tiny tolerance so grids whose edge lands on the pole parse cleanly.
        if self.origin_lat + self.n_rows as f64 * self.cell_size_deg > 90.0 + 1e-9 {
            return Err(GridError::InvalidSpec(format!(
                "northern edge {} beyond 90 degrees",
                self.origin_lat + self.n_rows as f64 * self.cell_size_deg
            )));
        }
        if !self.nodata.is_finite() {
            return Err(GridError::InvalidSpec("non-finite nodata sentinel".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n_rows * self.n_cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Western edge of the raster.
    pub fn west(&self) -> f64 {
        self.origin_lon
    }

    pub fn east(&self) -> f64 {
        self.origin_lon + self.n_cols as f64 * self.cell_size_deg
    }

    pub fn south(&self) -> f64 {
        self.origin_lat
    }

    pub fn north(&self) -> f64 {
        self.origin_lat + self.n_rows as f64 * self.cell_size_deg
    }

    /// Longitude of the centre of column `col`.
    pub fn lon_at(&self, col: usize) -> f64 {
        self.origin_lon + (col as f64 + 0.5) * self.cell_size_deg
    }

    /// Latitude of the centre of row `row` (row 0 is northernmost).
    pub fn lat_at(&self, row: usize) -> f64 {
        self.origin_lat + (self.n_rows as f64 - row as f64 - 0.5) * self.cell_size_deg
    }

    /// Row/col of the cell containing a point, or `None` outside the extent.
    /// Points exactly on the eastern/northern edge fall in the last cell.
    pub fn cell_at(&self, lon: f64, lat: f64) -> Option<(usize, usize)> {
        if !lon.is_finite() || !lat.is_finite() {
            return None;
        }
        let fx = (lon - self.west()) / self.cell_size_deg;
        let fy = (self.north() - lat) / self.cell_size_deg;
        if fx < 0.0 || fy < 0.0 || fx > self.n_cols as f64 || fy > self.n_rows as f64 {
            return None;
        }
        let col = (fx as usize).min(self.n_cols - 1);
        let row = (fy as usize).min(self.n_rows - 1);
        Some((row, col))
    }

    /// Error naming the first differing field if the layouts differ.
    pub fn ensure_same_layout(&self, other: &GridSpec) -> Result<(), GridError> {
        fn mismatch<T: std::fmt::Display>(
            field: &'static str,
            left: T,
            right: T,
        ) -> Result<(), GridError> {
            Err(GridError::SpecMismatch {
                field,
                left: left.to_string(),
                right: right.to_string(),
            })
        }
        if self.n_rows != other.n_rows {
            return mismatch("n_rows", self.n_rows, other.n_rows);
        }
        if self.n_cols != other.n_cols {
            return mismatch("n_cols", self.n_cols, other.n_cols);
        }
        if self.cell_size_deg != other.cell_size_deg {
            return mismatch("cell_size_deg", self.cell_size_deg, other.cell_size_deg);
        }
        if self.origin_lon != other.origin_lon {
            return mismatch("origin_lon", self.origin_lon, other.origin_lon);
        }
        if self.origin_lat != other.origin_lat {
            return mismatch("origin_lat", self.origin_lat, other.origin_lat);
        }
        if self.nodata != other.nodata {
            return mismatch("nodata", self.nodata, other.nodata);
        }
        Ok(())
    }
}

/// One scalar field over a [`GridSpec`]. Values are stored row-major with
/// row 0 northernmost; each value is finite or equals the nodata sentinel.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoGrid {
    spec: GridSpec,
    values: Vec<f64>,
}

impl GeoGrid {
    /// Build a grid, normalizing non-finite values is *not* done here: any
    /// non-finite value is rejected so NaN/inf cannot enter a raster.
    pub fn new(spec: GridSpec, values: Vec<f64>) -> Result<Self, GridError> {
        spec.validate()?;
        if values.len() != spec.len() {
            return Err(GridError::ValueCount {
                expected: spec.len(),
                found: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(GridError::InvalidSpec(format!(
                "grid values must be finite or the nodata sentinel, found {bad}"
            )));
        }
        Ok(GeoGrid { spec, values })
    }

    /// Grid with every cell set to `value`.
    pub fn filled(spec: GridSpec, value: f64) -> Result<Self, GridError> {
        let n = spec.len();
        GeoGrid::new(spec, vec![value; n])
    }

    /// Grid with every cell nodata.
    pub fn empty(spec: GridSpec) -> Result<Self, GridError> {
        let nodata = spec.nodata;
        GeoGrid::filled(spec, nodata)
    }

    /// Build from a per-cell function returning `None` for nodata.
    pub fn from_fn(
        spec: GridSpec,
        mut f: impl FnMut(usize, usize) -> Option<f64>,
    ) -> Result<Self, GridError> {
        spec.validate()?;
        let nodata = spec.nodata;
        let mut values = Vec::with_capacity(spec.len());
        for row in 0..spec.n_rows {
            for col in 0..spec.n_cols {
                match f(row, col) {
                    Some(v) if v.is_finite() && v != nodata => values.push(v),
                    _ => values.push(nodata),
                }
            }
        }
        GeoGrid::new(spec, values)
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_nodata_value(&self, v: f64) -> bool {
        v == self.spec.nodata || !v.is_finite()
    }

    /// Value at (row, col); `None` for nodata.
    pub fn get(&self, row: usize, col: usize) -> Option<f64> {
        let v = self.values[row * self.spec.n_cols + col];
        if self.is_nodata_value(v) {
            None
        } else {
            Some(v)
        }
    }

    pub fn set(&mut self, row: usize, col: usize, value: Option<f64>) {
        let v = match value {
            Some(v) if v.is_finite() => v,
            _ => self.spec.nodata,
        };
        self.values[row * self.spec.n_cols + col] = v;
    }

    /// Number of non-nodata cells.
    pub fn valid_count(&self) -> usize {
        self.values
            .iter()
            .filter(|&&v| !self.is_nodata_value(v))
            .count()
    }

    /// Iterate `(row, col, Option<value>)` over all cells.
    pub fn iter_cells(&self) -> impl Iterator<Item = (usize, usize, Option<f64>)> + '_ {
        let n_cols = self.spec.n_cols;
        self.values.iter().enumerate().map(move |(i, &v)| {
            let value = if self.is_nodata_value(v) { None } else { Some(v) };
            (i / n_cols, i % n_cols, value)
        })
    }

    /// Cellwise map with nodata propagation; non-finite results become nodata.
    pub fn map(&self, mut f: impl FnMut(f64) -> f64) -> GeoGrid {
        let nodata = self.spec.nodata;
        let values = self
            .values
            .iter()
            .map(|&v| {
                if self.is_nodata_value(v) {
                    nodata
                } else {
                    let r = f(v);
                    if r.is_finite() {
                        r
                    } else {
                        nodata
                    }
                }
            })
            .collect();
        GeoGrid {
            spec: self.spec.clone(),
            values,
        }
    }

    /// Cellwise combination of two grids with the same layout.
    pub fn zip_map(
        &self,
        other: &GeoGrid,
        mut f: impl FnMut(f64, f64) -> f64,
    ) -> Result<GeoGrid, GridError> {
        self.spec.ensure_same_layout(&other.spec)?;
        let nodata = self.spec.nodata;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| {
                if self.is_nodata_value(a) || other.is_nodata_value(b) {
                    nodata
                } else {
                    let r = f(a, b);
                    if r.is_finite() {
                        r
                    } else {
                        nodata
                    }
                }
            })
            .collect();
        Ok(GeoGrid {
            spec: self.spec.clone(),
            values,
        })
    }
}

/// Elementwise reduction used by [`combine_grids`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CombineOp {
    Mean,
    Difference,
    Min,
    Max,
}

/// Cellwise reduction of grids sharing one spec. Any nodata input cell makes
/// the output cell nodata. `Difference` takes exactly two grids and returns
/// `grids[0] - grids[1]`.
pub fn combine_grids(grids: &[&GeoGrid], op: CombineOp) -> Result<GeoGrid, GridError> {
    let first = *grids.first().ok_or(GridError::EmptyCombine)?;
    for g in &grids[1..] {
        first.spec.ensure_same_layout(&g.spec)?;
    }
    if op == CombineOp::Difference && grids.len() != 2 {
        return Err(GridError::DifferenceArity(grids.len()));
    }
    let spec = first.spec.clone();
    let nodata = spec.nodata;
    let mut values = Vec::with_capacity(spec.len());
    for i in 0..spec.len() {
        let mut acc: Option<f64> = None;
        let mut any_nodata = false;
        for g in grids {
            let v = g.values[i];
            if g.is_nodata_value(v) {
                any_nodata = true;
                break;
            }
            acc = Some(match (acc, op) {
                (None, _) => v,
                (Some(a), CombineOp::Mean) => a + v,
                (Some(a), CombineOp::Difference) => a - v,
                (Some(a), CombineOp::Min) => a.min(v),
                (Some(a), CombineOp::Max) => a.max(v),
            });
        }
        let out = if any_nodata {
            nodata
        } else {
            let mut v = acc.expect("non-empty grid list");
            if op == CombineOp::Mean {
                v /= grids.len() as f64;
            }
            if v.is_finite() {
                v
            } else {
                nodata
            }
        };
        values.push(out);
    }
    GeoGrid::new(spec, values)
}

/// Point-sampling method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMethod {
    Nearest,
    Bilinear,
}

/// Sample a grid at a point. Returns `None` outside the extent, on nodata
/// cells, or (bilinear) outside the cell-centre hull / with a nodata corner.
pub fn sample_at_point(grid: &GeoGrid, lon: f64, lat: f64, method: SampleMethod) -> Option<f64> {
    match method {
        SampleMethod::Nearest => {
            let (row, col) = grid.spec.cell_at(lon, lat)?;
            grid.get(row, col)
        }
        SampleMethod::Bilinear => bilinear_at(grid, lon, lat),
    }
}

/// Bilinear interpolation at a point from the four surrounding cell centres.
fn bilinear_at(grid: &GeoGrid, lon: f64, lat: f64) -> Option<f64> {
    let spec = &grid.spec;
    if spec.n_rows < 2 || spec.n_cols < 2 {
        return None;
    }
    // Fractional position in cell-centre space; row axis points south.
    let fx = (lon - spec.lon_at(0)) / spec.cell_size_deg;
    let fy = (spec.lat_at(0) - lat) / spec.cell_size_deg;
    let max_x = (spec.n_cols - 1) as f64;
    let max_y = (spec.n_rows - 1) as f64;
    if fx < 0.0 || fy < 0.0 || fx > max_x || fy > max_y {
        return None;
    }
    let x0 = (fx.floor() as usize).min(spec.n_cols - 2);
    let y0 = (fy.floor() as usize).min(spec.n_rows - 2);
    let tx = fx - x0 as f64;
    let ty = fy - y0 as f64;
    let v00 = grid.get(y0, x0)?;
    let v01 = grid.get(y0, x0 + 1)?;
    let v10 = grid.get(y0 + 1, x0)?;
    let v11 = grid.get(y0 + 1, x0 + 1)?;
    let top = v00 + tx * (v01 - v00);
    let bottom = v10 + tx * (v11 - v10);
    Some(top + ty * (bottom - top))
}

/// Resample `src` onto `target` by bilinear interpolation of cell centres.
/// Target cells whose centre falls outside the source cell-centre hull, or
/// with any nodata corner, receive nodata.
pub fn resample_bilinear(src: &GeoGrid, target: &GridSpec) -> Result<GeoGrid, GridError> {
    target.validate()?;
    let s = src.spec();
    if s.n_rows < 2 || s.n_cols < 2 {
        return Err(GridError::DegenerateSource {
            rows: s.n_rows,
            cols: s.n_cols,
        });
    }
    let overlap = target.west() < s.east()
        && target.east() > s.west()
        && target.south() < s.north()
        && target.north() > s.south();
    if !overlap {
        return Err(GridError::NonOverlappingExtents);
    }
    GeoGrid::from_fn(target.clone(), |row, col| {
        bilinear_at(src, target.lon_at(col), target.lat_at(row))
    })
}
