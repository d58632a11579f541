//! Crease rasterization: walk the cell grid along the crease and stamp the
//! stitch footprint at each anchor.

use super::rules::StitchPlan;
use super::{EdgeFault, FoldTrace, Orientation};
use crate::gauge::{to_cell, GridSpec};
use crate::geom::Point2;
use crate::pattern::FoldKind;

/// Error-accumulating midpoint walk between two cells, inclusive of both.
/// Anchors are 8-connected; an exact diagonal steps both axes together, so
/// axis-aligned and 45-degree creases reproduce their sampled supercover.
fn line_walk(a: (usize, usize), b: (usize, usize)) -> Vec<(usize, usize)> {
    let (mut r0, mut c0) = (a.0 as i64, a.1 as i64);
    let (r1, c1) = (b.0 as i64, b.1 as i64);
    let dc = (c1 - c0).abs();
    let dr = -(r1 - r0).abs();
    let sc = if c0 < c1 { 1 } else { -1 };
    let sr = if r0 < r1 { 1 } else { -1 };
    let mut err = dc + dr;
    let mut cells = Vec::new();
    loop {
        cells.push((r0 as usize, c0 as usize));
        if r0 == r1 && c0 == c1 {
            break;
        }
        let e2 = 2 * err;
        if e2 >= dr {
            err += dr;
            c0 += sc;
        }
        if e2 <= dc {
            err += dc;
            r0 += sr;
        }
    }
    cells
}

/// Rasterizes one oriented crease segment into a [`FoldTrace`].
///
/// The walk runs from `to_cell(p1)` to `to_cell(p2)`, normalized bottom-up
/// (then left-right) so footprints tile deterministically. Footprints that
/// extend along the walk direction advance the anchor stride to match, which
/// is how a vertical tuck line holds every other row. A footprint that would
/// leave the grid at the first or last anchor is clamped inward by one cell;
/// anywhere else it is an error.
pub fn rasterize_crease(
    edge: usize,
    p1: Point2,
    p2: Point2,
    orientation: Orientation,
    fold: FoldKind,
    plan: &StitchPlan,
    grid: &GridSpec,
) -> Result<FoldTrace, EdgeFault> {
    if grid.rows < plan.rows || grid.cols < plan.cols {
        return Err(EdgeFault::GridTooSmall {
            rows: plan.rows,
            cols: plan.cols,
        });
    }
    let outside = |p: Point2| EdgeFault::Outside { x: p.x, y: p.y };
    let mut a = to_cell(p1, grid).map_err(|_| outside(p1))?;
    let mut b = to_cell(p2, grid).map_err(|_| outside(p2))?;
    if b < a {
        std::mem::swap(&mut a, &mut b);
    }

    let walk = line_walk(a, b);
    let stride = match orientation {
        Orientation::Vertical => plan.rows,
        Orientation::Horizontal => plan.cols,
        _ => 1,
    }
    .max(1);
    let anchors: Vec<(usize, usize)> = walk.iter().copied().step_by(stride).collect();

    let mut cells = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let last = anchors.len() - 1;
    for (i, &(ar, ac)) in anchors.iter().enumerate() {
        let (mut r, mut c) = (ar, ac);
        if r + plan.rows > grid.rows || c + plan.cols > grid.cols {
            if i == 0 || i == last {
                r = r.min(grid.rows - plan.rows);
                c = c.min(grid.cols - plan.cols);
            } else {
                return Err(EdgeFault::FootprintOverflow { row: ar, col: ac });
            }
        }
        for fr in 0..plan.rows {
            for fc in 0..plan.cols {
                let cell = (r + fr, c + fc);
                if seen.insert(cell) {
                    cells.push(cell);
                }
            }
        }
    }

    Ok(FoldTrace {
        edge,
        orientation,
        fold,
        stitch: plan.stitch,
        anchors,
        cells,
    })
}
