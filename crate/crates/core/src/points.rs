use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::geometry::{Point, Window};
use crate::{Error, Result};

/// Finite set of planar points inside a rectangular window.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    window: Window,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(window: Window, points: Vec<Point>) -> Result<Self> {
        let window = Window::new(window.xmin, window.ymin, window.xmax, window.ymax)?;
        if let Some(p) = points.iter().find(|p| !window.contains(**p)) {
            return Err(Error::PointOutsideWindow(p.x, p.y));
        }
        Ok(PointSet { window, points })
    }

    pub fn empty(window: Window) -> Self {
        PointSet { window, points: Vec::new() }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_csv_string(&self) -> String {
        let w = self.window;
        let mut out = format!("# {},{},{},{}\nx,y\n", w.xmin, w.ymin, w.xmax, w.ymax);
        for p in &self.points {
            let _ = writeln!(out, "{},{}", p.x, p.y);
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut window = None;
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.eq_ignore_ascii_case("x,y") {
                continue;
            }
            let parse = |s: &str| -> Result<f64> {
                s.trim()
                    .parse()
                    .map_err(|_| Error::Parse { line: lineno + 1, message: format!("not a number: {s:?}") })
            };
            if let Some(rest) = line.strip_prefix('#') {
                let v: Vec<&str> = rest.split(',').collect();
                if v.len() == 4 {
                    if let (Ok(a), Ok(b), Ok(c), Ok(d)) = (parse(v[0]), parse(v[1]), parse(v[2]), parse(v[3])) {
                        window = Some(Window::new(a, b, c, d)?);
                    }
                }
                continue;
            }
            let (x, y) = line.split_once(',').ok_or_else(|| Error::Parse {
                line: lineno + 1,
                message: "expected two comma-separated values".into(),
            })?;
            points.push(Point::new(parse(x)?, parse(y)?));
        }
        let window = match window {
            Some(w) => w,
            None => {
                // no window line: bounding box of the points
                if points.is_empty() {
                    return Err(Error::EmptyInput("point file has neither window nor points"));
                }
                let (mut xmin, mut ymin, mut xmax, mut ymax) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
                for p in &points {
                    xmin = xmin.min(p.x);
                    ymin = ymin.min(p.y);
                    xmax = xmax.max(p.x);
                    ymax = ymax.max(p.y);
                }
                Window::new(xmin, ymin, xmax.max(xmin + 1.0), ymax.max(ymin + 1.0))?
            }
        };
        PointSet::new(window, points)
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_csv(&fs::read_to_string(path)?)
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_csv_string())?;
        Ok(())
    }
}
