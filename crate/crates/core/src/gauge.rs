//! Stitch gauge and the physical-space to stitch-grid mapping.
//!
//! Gauge is measured on plain fabric in the relaxed state and supplied via
//! config; there is no default. Row index grows in the wale direction (row 0
//! is knitted first, at the bottom), column index grows left to right along
//! the course.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::Point2;
use crate::pattern::CreasePattern;

/// Relaxed stitch dimensions: width per stitch and height per row, in mm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gauge {
    pub stitch_w: f64,
    pub stitch_h: f64,
}

impl Gauge {
    pub fn new(stitch_w: f64, stitch_h: f64) -> Result<Self, GridError> {
        if !(stitch_w > 0.0) || !(stitch_h > 0.0) {
            return Err(GridError::BadGauge { stitch_w, stitch_h });
        }
        Ok(Gauge { stitch_w, stitch_h })
    }
}

/// A stitch-level grid covering a pattern's bounding box. Cell `(r, c)` spans
/// the half-open box `[origin + (c·w, r·h), origin + ((c+1)·w, (r+1)·h))`;
/// the grid's own top and right boundaries map into the last row/column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
    pub origin: Point2,
    pub gauge: Gauge,
}

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("gauge must be positive, got {stitch_w} x {stitch_h} mm")]
    BadGauge { stitch_w: f64, stitch_h: f64 },
    #[error("pattern bounding box {width} x {height} mm has no area")]
    DegenerateBounds { width: f64, height: f64 },
    #[error("point ({x}, {y}) lies outside the grid")]
    OutsideGrid { x: f64, y: f64 },
    #[error("cell ({row}, {col}) is outside a {rows} x {cols} grid")]
    CellOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
}

/// Relative slack for boundary comparisons, in cell units.
const CELL_EPS: f64 = 1e-9;

fn cell_count(extent: f64, step: f64) -> usize {
    let ratio = extent / step;
    let snapped = ratio.round();
    let cells = if (ratio - snapped).abs() < CELL_EPS {
        snapped
    } else {
        ratio.ceil()
    };
    (cells as usize).max(1)
}

/// Builds the stitch grid covering the pattern's bounding box:
/// `rows = ceil(height / stitch_h)`, `cols = ceil(width / stitch_w)`, origin
/// at the box's lower-left corner.
pub fn build_grid(p: &CreasePattern, gauge: Gauge) -> Result<GridSpec, GridError> {
    Gauge::new(gauge.stitch_w, gauge.stitch_h)?;
    let (min, max) = p
        .bounding_box()
        .ok_or(GridError::DegenerateBounds { width: 0.0, height: 0.0 })?;
    let width = max.x - min.x;
    let height = max.y - min.y;
    if width <= 0.0 || height <= 0.0 {
        return Err(GridError::DegenerateBounds { width, height });
    }
    Ok(GridSpec {
        rows: cell_count(height, gauge.stitch_h),
        cols: cell_count(width, gauge.stitch_w),
        origin: min,
        gauge,
    })
}

/// Maps a physical point to the cell containing it. Cells are half-open;
/// points on the grid's top or right boundary clamp into the last cell.
pub fn to_cell(pt: Point2, grid: &GridSpec) -> Result<(usize, usize), GridError> {
    let fx = (pt.x - grid.origin.x) / grid.gauge.stitch_w;
    let fy = (pt.y - grid.origin.y) / grid.gauge.stitch_h;
    if fx < -CELL_EPS || fy < -CELL_EPS || fx > grid.cols as f64 + CELL_EPS || fy > grid.rows as f64 + CELL_EPS
    {
        return Err(GridError::OutsideGrid { x: pt.x, y: pt.y });
    }
    let col = (fx.floor().max(0.0) as usize).min(grid.cols - 1);
    let row = (fy.floor().max(0.0) as usize).min(grid.rows - 1);
    Ok((row, col))
}

/// Physical center of a cell.
pub fn cell_center(rc: (usize, usize), grid: &GridSpec) -> Result<Point2, GridError> {
    let (row, col) = rc;
    if row >= grid.rows || col >= grid.cols {
        return Err(GridError::CellOutOfRange {
            row,
            col,
            rows: grid.rows,
            cols: grid.cols,
        });
    }
    Ok(Point2::new(
        grid.origin.x + (col as f64 + 0.5) * grid.gauge.stitch_w,
        grid.origin.y + (row as f64 + 0.5) * grid.gauge.stitch_h,
    ))
}
