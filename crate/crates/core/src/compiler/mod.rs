//! The crease-to-stitch translation pipeline.
//!
//! Each mountain/valley crease is classified into one of four orientations
//! in physical mm space, mapped to a stitch plan (purl rows and columns,
//! tuck rows and columns, twists on diagonals), rasterized onto the stitch
//! grid with its footprint, and merged with the other creases' stamps.
//! Cells that end up on or next to a fold (along the wale) carry acrylic
//! yarn only; everything else also carries the heat-fusible strand that
//! stiffens the panels after heat treatment.

mod classify;
mod raster;
mod resolve;
mod rules;

pub use classify::{classify_orientation, OffGridError};
pub use raster::rasterize_crease;
pub use resolve::{place_fusible, resolve_conflicts};
pub use rules::{stitch_rule, StitchPlan, TwistHand, TwistMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauge::{build_grid, Gauge, GridError, GridSpec};
use crate::pattern::{CreasePattern, FoldKind};

/// The four crease orientations with stitch rules. `DiagFwd` slants like a
/// forward slash, `DiagBwd` like a backslash.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Horizontal,
    Vertical,
    DiagFwd,
    DiagBwd,
}

impl Orientation {
    pub fn is_diagonal(self) -> bool {
        matches!(self, Orientation::DiagFwd | Orientation::DiagBwd)
    }
}

/// Stitch vocabulary of a chart cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StitchType {
    Knit,
    Purl,
    Tuck,
    TwistLeft,
    TwistRight,
}

/// Yarn content of a cell. `fusible_fraction` is the heat-fusible strand's
/// weight fraction relative to the acrylic, carried as metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YarnSpec {
    pub with_fusible: bool,
    pub fusible_fraction: f64,
}

/// Default heat-fusible weight fraction relative to the acrylic yarn.
pub const DEFAULT_FUSIBLE_FRACTION: f64 = 0.52;

impl YarnSpec {
    pub fn acrylic_only() -> Self {
        YarnSpec {
            with_fusible: false,
            fusible_fraction: DEFAULT_FUSIBLE_FRACTION,
        }
    }

    pub fn with_fusible() -> Self {
        YarnSpec {
            with_fusible: true,
            fusible_fraction: DEFAULT_FUSIBLE_FRACTION,
        }
    }
}

/// Why a cell carries the yarn it does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellOrigin {
    /// Rigid panel interior: acrylic plus fusible yarn.
    Panel,
    /// Part of a crease footprint (edge index): acrylic only.
    Fold(usize),
    /// Within the wale buffer of a fold cell (edge index): acrylic only,
    /// because vertically adjacent stitches pull on one another.
    FoldBuffer(usize),
}

/// One chart cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StitchCell {
    pub stitch: StitchType,
    pub yarn: YarnSpec,
    pub origin: CellOrigin,
}

/// Audit trail of one rasterized crease: the anchor walk plus every stamped
/// footprint cell, in stamping order.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldTrace {
    pub edge: usize,
    pub orientation: Orientation,
    pub fold: FoldKind,
    pub stitch: StitchType,
    /// Anchor cells of the line walk. Consecutive anchors are 8-connected
    /// except where a footprint taller than one cell tiles the walk (then
    /// they advance by the footprint height and the stamps bridge the gap).
    pub anchors: Vec<(usize, usize)>,
    /// All footprint cells, deduplicated, in stamping order.
    pub cells: Vec<(usize, usize)>,
}

/// Non-fatal findings attached to a compiled chart.
#[derive(Debug, Clone, PartialEq)]
pub struct CompileWarning {
    pub edge: usize,
    pub message: String,
}

/// What to do with a crease whose angle falls outside every orientation band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OffgridPolicy {
    /// Abort compilation naming the edge. The default: approximation must be
    /// opted into.
    #[default]
    Reject,
    /// Rotate the crease about its midpoint onto the nearest band.
    Snap,
    /// Decompose the crease into an axis-aligned run plus an exact diagonal.
    Staircase,
}

/// Tunable rule parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleConfig {
    /// Half-width of each orientation band, degrees. Must stay below 22.5 so
    /// the four bands cannot overlap.
    pub orientation_tol_deg: f64,
    pub offgrid_policy: OffgridPolicy,
    pub twist_map: TwistMap,
    /// Wale distance around fold cells kept free of fusible yarn.
    pub wale_buffer: usize,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            orientation_tol_deg: 10.0,
            offgrid_policy: OffgridPolicy::Reject,
            twist_map: TwistMap::default(),
            wale_buffer: 1,
        }
    }
}

impl RuleConfig {
    pub fn validate(&self) -> Result<(), CompileError> {
        if !(self.orientation_tol_deg > 0.0 && self.orientation_tol_deg < 22.5) {
            return Err(CompileError::Config(format!(
                "orientation_tol_deg must lie in (0, 22.5), got {}",
                self.orientation_tol_deg
            )));
        }
        Ok(())
    }
}

/// The compiled artifact: a fully populated rows x cols cell matrix plus the
/// per-crease traces retained for audit.
#[derive(Debug, Clone, PartialEq)]
pub struct StitchChart {
    pub grid: GridSpec,
    cells: Vec<StitchCell>,
    pub traces: Vec<FoldTrace>,
    pub warnings: Vec<CompileWarning>,
}

impl StitchChart {
    pub fn rows(&self) -> usize {
        self.grid.rows
    }

    pub fn cols(&self) -> usize {
        self.grid.cols
    }

    pub fn cell(&self, row: usize, col: usize) -> &StitchCell {
        &self.cells[row * self.grid.cols + col]
    }

    pub fn cells(&self) -> &[StitchCell] {
        &self.cells
    }

    /// Checks the chart's structural invariants; returns the first violation.
    ///
    /// Covers cell-count consistency, the fusible exclusion on fold and
    /// buffer cells, endpoint coverage and connectivity of every trace, and
    /// footprint pairing (tuck cells stack vertically, twist cells pair
    /// horizontally within their trace).
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.cells.len() != self.grid.rows * self.grid.cols {
            return Err(format!(
                "cell count {} does not match {} x {} grid",
                self.cells.len(),
                self.grid.rows,
                self.grid.cols
            ));
        }
        for (i, cell) in self.cells.iter().enumerate() {
            let on_fold = matches!(cell.origin, CellOrigin::Fold(_) | CellOrigin::FoldBuffer(_));
            if on_fold && cell.yarn.with_fusible {
                return Err(format!("cell {i} is on/near a fold but carries fusible yarn"));
            }
            if !(0.0..1.0).contains(&cell.yarn.fusible_fraction) {
                return Err(format!("cell {i} has fusible_fraction outside [0, 1)"));
            }
        }
        for (t, trace) in self.traces.iter().enumerate() {
            if trace.anchors.is_empty() || trace.cells.is_empty() {
                return Err(format!("trace {t} is empty"));
            }
            for w in trace.anchors.windows(2) {
                let dr = w[0].0.abs_diff(w[1].0);
                let dc = w[0].1.abs_diff(w[1].1);
                if dr.max(dc) > 2 {
                    return Err(format!("trace {t} anchors {:?} -> {:?} are disconnected", w[0], w[1]));
                }
            }
            if !cells_connected(&trace.cells) {
                return Err(format!("trace {t} footprint cells are not 8-connected"));
            }
            let set: std::collections::BTreeSet<_> = trace.cells.iter().copied().collect();
            match trace.stitch {
                StitchType::Tuck => {
                    for &(r, c) in &trace.cells {
                        if !(set.contains(&(r + 1, c)) || (r > 0 && set.contains(&(r - 1, c)))) {
                            return Err(format!("trace {t} tuck cell ({r}, {c}) has no vertical partner"));
                        }
                    }
                }
                StitchType::TwistLeft | StitchType::TwistRight => {
                    for &(r, c) in &trace.cells {
                        if !(set.contains(&(r, c + 1)) || (c > 0 && set.contains(&(r, c - 1)))) {
                            return Err(format!("trace {t} twist cell ({r}, {c}) has no horizontal partner"));
                        }
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }
}

fn cells_connected(cells: &[(usize, usize)]) -> bool {
    if cells.is_empty() {
        return false;
    }
    let set: std::collections::BTreeSet<_> = cells.iter().copied().collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut queue = vec![cells[0]];
    seen.insert(cells[0]);
    while let Some((r, c)) = queue.pop() {
        for dr in -1i64..=1 {
            for dc in -1i64..=1 {
                let (nr, nc) = (r as i64 + dr, c as i64 + dc);
                if nr < 0 || nc < 0 {
                    continue;
                }
                let cell = (nr as usize, nc as usize);
                if set.contains(&cell) && seen.insert(cell) {
                    queue.push(cell);
                }
            }
        }
    }
    seen.len() == set.len()
}

/// Per-edge compilation failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EdgeFault {
    #[error("crease at {angle_deg:.1} degrees lies outside every stitch band")]
    OffGrid { angle_deg: f64 },
    #[error("endpoint ({x}, {y}) lies outside the stitch grid")]
    Outside { x: f64, y: f64 },
    #[error("footprint at cell ({row}, {col}) would exceed the grid; crease too close to the top/right edge")]
    FootprintOverflow { row: usize, col: usize },
    #[error("grid too small for a {rows} x {cols} stitch footprint")]
    GridTooSmall { rows: usize, cols: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("edge {edge}: {fault}")]
pub struct EdgeError {
    pub edge: usize,
    pub fault: EdgeFault,
}

#[derive(Debug, Error)]
pub enum CompileError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("config: {0}")]
    Config(String),
    #[error("{}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Edges(Vec<EdgeError>),
}

/// Compiles a valid pattern into a stitch chart.
///
/// Deterministic pipeline: build the grid, classify and rasterize every
/// mountain/valley edge (boundary and seam edges carry no stitches), resolve
/// footprint conflicts, fill the rest with knit, then place the fusible
/// yarn. Per-edge failures are aggregated so one run reports every offending
/// edge.
pub fn compile(
    pattern: &CreasePattern,
    gauge: Gauge,
    cfg: &RuleConfig,
) -> Result<StitchChart, CompileError> {
    cfg.validate()?;
    let grid = build_grid(pattern, gauge)?;

    let mut traces = Vec::new();
    let mut warnings = Vec::new();
    let mut faults = Vec::new();
    for (edge, e) in pattern.edges.iter().enumerate() {
        let Some(fold) = e.assignment.fold_kind() else {
            continue;
        };
        let (p1, p2) = pattern.edge_endpoints(edge);
        let segments = match classify::oriented_segments(p1, p2, cfg) {
            Ok(segs) => segs,
            Err(fault) => {
                faults.push(EdgeError { edge, fault });
                continue;
            }
        };
        for (q1, q2, orientation) in segments {
            let plan = stitch_rule(orientation, fold, cfg);
            match rasterize_crease(edge, q1, q2, orientation, fold, &plan, &grid) {
                Ok(trace) => {
                    if orientation == Orientation::Vertical && plan.stitch == StitchType::Tuck {
                        warnings.push(CompileWarning {
                            edge,
                            message: format!(
                                "edge {edge}: vertical tuck line; tuck columns accumulate loops \
                                 and knit at higher tension, stiffening the crease"
                            ),
                        });
                    }
                    traces.push(trace);
                }
                Err(fault) => faults.push(EdgeError { edge, fault }),
            }
        }
    }
    if !faults.is_empty() {
        return Err(CompileError::Edges(faults));
    }

    let stitches = resolve_conflicts(&traces, &grid);
    let cells = place_fusible(stitches, &traces, &grid, cfg);

    let chart = StitchChart {
        grid,
        cells,
        traces,
        warnings,
    };
    debug_assert_eq!(chart.check_invariants(), Ok(()));
    Ok(chart)
}
