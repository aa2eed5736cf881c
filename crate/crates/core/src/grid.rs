//! Rasters of non-negative values and their CSV form.
//!
//! Storage is row-major with row 0 at the top of the raster. Geometry puts
//! the center of cell `(row, col)` at `((col + 0.5)·s, (height − 1 − row + 0.5)·s)`
//! for cell size `s`, so row 0 sits at the largest `y`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::geometry::{Point, Window};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    width: usize,
    height: usize,
    cell_size: f64,
    values: Vec<f64>,
}

impl Grid {
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        Self::with_cell_size(width, height, 1.0, values)
    }

    pub fn with_cell_size(width: usize, height: usize, cell_size: f64, values: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyInput("grid has zero width or height"));
        }
        if values.len() != width * height {
            return Err(Error::param(
                "values",
                format!("expected {} values for a {width}x{height} grid, got {}", width * height, values.len()),
            ));
        }
        if !(cell_size > 0.0 && cell_size.is_finite()) {
            return Err(Error::param("cellSize", format!("must be positive, got {cell_size}")));
        }
        if let Some(i) = values.iter().position(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::NegativeCellValue { row: i / width, col: i % width, value: values[i] });
        }
        Ok(Grid { width, height, cell_size, values })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        assert!(width > 0 && height > 0);
        Grid { width, height, cell_size: 1.0, values: vec![0.0; width * height] }
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Self {
        assert!(width > 0 && height > 0 && value >= 0.0);
        Grid { width, height, cell_size: 1.0, values: vec![value; width * height] }
    }

    /// Builds a grid from rows (top row first).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let height = rows.len();
        if height == 0 {
            return Err(Error::EmptyInput("grid has no rows"));
        }
        let width = rows[0].len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != width {
                return Err(Error::NonRectangularGrid { row, found: r.len(), expected: width });
            }
        }
        Self::new(width, height, rows.concat())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.width + col
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[self.index(row, col)]
    }

    /// Replaces the values, keeping shape and cell size. Values are validated.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::with_cell_size(self.width, self.height, self.cell_size, values)
    }

    pub(crate) fn from_parts_unchecked(width: usize, height: usize, cell_size: f64, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), width * height);
        debug_assert!(values.iter().all(|v| *v >= 0.0));
        Grid { width, height, cell_size, values }
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Center of cell `index` in planar coordinates.
    pub fn cell_center(&self, index: usize) -> Point {
        let row = index / self.width;
        let col = index % self.width;
        let i = col as f64;
        let j = (self.height - 1 - row) as f64;
        Point::new((i + 0.5) * self.cell_size, (j + 0.5) * self.cell_size)
    }

    /// Planar extent `[0, width·s] × [0, height·s]`.
    pub fn extent(&self) -> Window {
        Window {
            xmin: 0.0,
            ymin: 0.0,
            xmax: self.width as f64 * self.cell_size,
            ymax: self.height as f64 * self.cell_size,
        }
    }

    pub fn diagonal(&self) -> f64 {
        self.extent().diagonal()
    }

    /// Cell containing `p`, using half-open `[x, x + s)` intervals; the far
    /// edges of the extent belong to the last row / column.
    pub fn cell_at(&self, p: Point) -> Option<usize> {
        let ext = self.extent();
        if !ext.contains(p) {
            return None;
        }
        let col = ((p.x / self.cell_size).floor() as usize).min(self.width - 1);
        let j = ((p.y / self.cell_size).floor() as usize).min(self.height - 1);
        let row = self.height - 1 - j;
        Some(self.index(row, col))
    }

    /// 4-connected neighbor indices of `index`.
    pub fn von_neumann(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        let row = index / self.width;
        let col = index % self.width;
        let (w, h) = (self.width, self.height);
        [
            (row > 0).then(|| index - w),
            (row + 1 < h).then(|| index + w),
            (col > 0).then(|| index - 1),
            (col + 1 < w).then(|| index + 1),
        ]
        .into_iter()
        .flatten()
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        if self.cell_size != 1.0 {
            let _ = writeln!(out, "# {},{},{}", self.width, self.height, self.cell_size);
        }
        for row in self.values.chunks(self.width) {
            let mut first = true;
            for v in row {
                if !first {
                    out.push(',');
                }
                first = false;
                // `Display` for f64 is the shortest string that round-trips
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, f64)> = None;
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                header = parse_header(rest).or(header);
                continue;
            }
            let mut row = Vec::new();
            for field in line.split(',') {
                let v: f64 = field.trim().parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    message: format!("not a number: {field:?}"),
                })?;
                if !(v >= 0.0) {
                    return Err(Error::NegativeCellValue { row: rows.len(), col: row.len(), value: v });
                }
                row.push(v);
            }
            if let Some(first) = rows.first() {
                if row.len() != first.len() {
                    return Err(Error::NonRectangularGrid { row: rows.len(), found: row.len(), expected: first.len() });
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::EmptyInput("grid file has no data rows"));
        }
        let (width, height) = (rows[0].len(), rows.len());
        let cell_size = match header {
            Some((w, h, s)) => {
                if w != width || h != height {
                    return Err(Error::Parse {
                        line: 1,
                        message: format!("header declares {w}x{h} but data is {width}x{height}"),
                    });
                }
                s
            }
            None => 1.0,
        };
        Self::with_cell_size(width, height, cell_size, rows.concat())
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_csv(&fs::read_to_string(path)?)
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_csv_string())?;
        Ok(())
    }
}

fn parse_header(rest: &str) -> Option<(usize, usize, f64)> {
    let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [w, h, s] => Some((w.parse().ok()?, h.parse().ok()?, s.parse().ok()?)),
        [w, h] => Some((w.parse().ok()?, h.parse().ok()?, 1.0)),
        _ => None,
    }
}
