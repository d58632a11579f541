//! Footprint conflict resolution and heat-fusible yarn placement.

use super::{CellOrigin, FoldTrace, RuleConfig, StitchCell, StitchType, YarnSpec};
use crate::gauge::GridSpec;

/// Merges all trace footprints into one stitch per cell; unclaimed cells
/// knit plain.
///
/// Where two diagonal creases share a cell the intersection stays knit:
/// twisting already-twisted loops overstretches the yarn. Where horizontal
/// and vertical creases meet, an identical required stitch stands, otherwise
/// purl wins for structural continuity. A diagonal never overrides an
/// axis-aligned stitch. Intersections are detected on cell footprints, not
/// geometric crossings, so creases that only share a vertex still resolve.
pub fn resolve_conflicts(traces: &[FoldTrace], grid: &GridSpec) -> Vec<StitchType> {
    let mut claims: Vec<Vec<usize>> = vec![Vec::new(); grid.rows * grid.cols];
    for (t, trace) in traces.iter().enumerate() {
        for &(r, c) in &trace.cells {
            claims[r * grid.cols + c].push(t);
        }
    }

    claims
        .into_iter()
        .map(|cell_claims| match cell_claims.len() {
            0 => StitchType::Knit,
            1 => traces[cell_claims[0]].stitch,
            _ => {
                let axes: Vec<&FoldTrace> = cell_claims
                    .iter()
                    .map(|&t| &traces[t])
                    .filter(|t| !t.orientation.is_diagonal())
                    .collect();
                if axes.is_empty() {
                    // Two or more diagonals and nothing else.
                    StitchType::Knit
                } else if axes.iter().all(|t| t.stitch == axes[0].stitch) {
                    axes[0].stitch
                } else {
                    StitchType::Purl
                }
            }
        })
        .collect()
}

/// Assigns yarn and origin per cell. Fold cells and their wale neighbors
/// within `cfg.wale_buffer` rows knit acrylic only; the rest of the fabric
/// carries the fusible strand. Ownership goes to the first trace stamping a
/// cell; buffers credit the nearest fold cell below, then above.
pub fn place_fusible(
    stitches: Vec<StitchType>,
    traces: &[FoldTrace],
    grid: &GridSpec,
    cfg: &RuleConfig,
) -> Vec<StitchCell> {
    let idx = |r: usize, c: usize| r * grid.cols + c;
    let mut fold_owner: Vec<Option<usize>> = vec![None; grid.rows * grid.cols];
    for trace in traces {
        for &(r, c) in &trace.cells {
            fold_owner[idx(r, c)].get_or_insert(trace.edge);
        }
    }

    let mut cells = Vec::with_capacity(stitches.len());
    for (i, stitch) in stitches.into_iter().enumerate() {
        let (r, c) = (i / grid.cols, i % grid.cols);
        let origin = if let Some(edge) = fold_owner[i] {
            CellOrigin::Fold(edge)
        } else {
            let mut buffer = None;
            'search: for d in 1..=cfg.wale_buffer {
                if r >= d {
                    if let Some(edge) = fold_owner[idx(r - d, c)] {
                        buffer = Some(edge);
                        break 'search;
                    }
                }
                if r + d < grid.rows {
                    if let Some(edge) = fold_owner[idx(r + d, c)] {
                        buffer = Some(edge);
                        break 'search;
                    }
                }
            }
            match buffer {
                Some(edge) => CellOrigin::FoldBuffer(edge),
                None => CellOrigin::Panel,
            }
        };
        let yarn = match origin {
            CellOrigin::Panel => YarnSpec::with_fusible(),
            _ => YarnSpec::acrylic_only(),
        };
        cells.push(StitchCell { stitch, yarn, origin });
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::Orientation;
    use crate::gauge::Gauge;
    use crate::geom::Point2;
    use crate::pattern::FoldKind;

    fn grid(rows: usize, cols: usize) -> GridSpec {
        GridSpec {
            rows,
            cols,
            origin: Point2::new(0.0, 0.0),
            gauge: Gauge::new(1.0, 1.0).unwrap(),
        }
    }

    fn trace(
        edge: usize,
        orientation: Orientation,
        stitch: StitchType,
        cells: Vec<(usize, usize)>,
    ) -> FoldTrace {
        FoldTrace {
            edge,
            orientation,
            fold: FoldKind::Mountain,
            stitch,
            anchors: cells.clone(),
            cells,
        }
    }

    #[test]
    fn horizontal_tuck_crossing_vertical_purl_yields_purl() {
        let g = grid(3, 3);
        let traces = vec![
            trace(0, Orientation::Horizontal, StitchType::Tuck, vec![(1, 0), (1, 1), (1, 2)]),
            trace(1, Orientation::Vertical, StitchType::Purl, vec![(0, 1), (1, 1), (2, 1)]),
        ];
        let s = resolve_conflicts(&traces, &g);
        assert_eq!(s[4], StitchType::Purl); // (1,1)
        assert_eq!(s[3], StitchType::Tuck); // (1,0)
        assert_eq!(s[1], StitchType::Purl); // (0,1)
        assert_eq!(s[0], StitchType::Knit);
    }

    #[test]
    fn crossing_diagonals_yield_knit() {
        let g = grid(3, 3);
        let traces = vec![
            trace(0, Orientation::DiagFwd, StitchType::TwistRight, vec![(0, 0), (1, 1), (2, 2)]),
            trace(1, Orientation::DiagBwd, StitchType::TwistLeft, vec![(2, 0), (1, 1), (0, 2)]),
        ];
        let s = resolve_conflicts(&traces, &g);
        assert_eq!(s[4], StitchType::Knit);
        assert_eq!(s[0], StitchType::TwistRight);
        assert_eq!(s[2], StitchType::TwistLeft);
    }

    #[test]
    fn identical_axis_stitches_stand() {
        let g = grid(3, 3);
        let traces = vec![
            trace(0, Orientation::Horizontal, StitchType::Purl, vec![(1, 0), (1, 1), (1, 2)]),
            trace(1, Orientation::Vertical, StitchType::Purl, vec![(0, 1), (1, 1), (2, 1)]),
        ];
        let s = resolve_conflicts(&traces, &g);
        assert_eq!(s[4], StitchType::Purl);
    }

    #[test]
    fn axis_beats_diagonal() {
        let g = grid(3, 3);
        let traces = vec![
            trace(0, Orientation::DiagFwd, StitchType::TwistRight, vec![(0, 0), (1, 1), (2, 2)]),
            trace(1, Orientation::Horizontal, StitchType::Tuck, vec![(1, 0), (1, 1), (1, 2)]),
        ];
        let s = resolve_conflicts(&traces, &g);
        assert_eq!(s[4], StitchType::Tuck);
    }

    #[test]
    fn three_claimants_resolve_pairwise_with_purl_fallback() {
        let g = grid(3, 3);
        let traces = vec![
            trace(0, Orientation::DiagFwd, StitchType::TwistRight, vec![(1, 1)]),
            trace(1, Orientation::DiagBwd, StitchType::TwistLeft, vec![(1, 1)]),
            trace(2, Orientation::Horizontal, StitchType::Tuck, vec![(1, 0), (1, 1), (1, 2)]),
            trace(3, Orientation::Vertical, StitchType::Purl, vec![(0, 1), (1, 1), (2, 1)]),
        ];
        let s = resolve_conflicts(&traces, &g);
        assert_eq!(s[4], StitchType::Purl);
    }

    #[test]
    fn purl_row_buffer_covers_wale_neighbors() {
        let g = grid(15, 4);
        let r = 7;
        let cells: Vec<_> = (0..4).map(|c| (r, c)).collect();
        let traces = vec![trace(3, Orientation::Horizontal, StitchType::Purl, cells)];
        let stitches = resolve_conflicts(&traces, &g);
        let cells = place_fusible(stitches, &traces, &g, &RuleConfig::default());
        for row in 0..15 {
            for col in 0..4 {
                let cell = &cells[row * 4 + col];
                let acrylic_only = (r - 1..=r + 1).contains(&row);
                assert_eq!(cell.yarn.with_fusible, !acrylic_only, "({row}, {col})");
                match cell.origin {
                    CellOrigin::Fold(e) => {
                        assert_eq!(row, r);
                        assert_eq!(e, 3);
                    }
                    CellOrigin::FoldBuffer(e) => {
                        assert!(row == r - 1 || row == r + 1);
                        assert_eq!(e, 3);
                    }
                    CellOrigin::Panel => assert!(!(r - 1..=r + 1).contains(&row)),
                }
            }
        }
    }

    #[test]
    fn purl_column_buffers_stay_inside_the_column() {
        let g = grid(6, 5);
        let c = 2;
        let cells: Vec<_> = (0..6).map(|r| (r, c)).collect();
        let traces = vec![trace(0, Orientation::Vertical, StitchType::Purl, cells)];
        let stitches = resolve_conflicts(&traces, &g);
        let out = place_fusible(stitches, &traces, &g, &RuleConfig::default());
        for row in 0..6 {
            for col in 0..5 {
                let cell = &out[row * 5 + col];
                assert_eq!(cell.yarn.with_fusible, col != c, "({row}, {col})");
            }
        }
    }

    #[test]
    fn zero_buffer_strips_only_fold_cells() {
        let g = grid(5, 3);
        let traces = vec![trace(0, Orientation::Horizontal, StitchType::Purl, vec![(2, 0), (2, 1), (2, 2)])];
        let cfg = RuleConfig {
            wale_buffer: 0,
            ..Default::default()
        };
        let stitches = resolve_conflicts(&traces, &g);
        let out = place_fusible(stitches, &traces, &g, &cfg);
        for row in 0..5 {
            for col in 0..3 {
                assert_eq!(out[row * 3 + col].yarn.with_fusible, row != 2);
            }
        }
    }
}
