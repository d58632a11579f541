//! Parametric generators for deployable crease-pattern tessellations:
//! Miura-ori, Yoshimura, Kresling, and a kaleidocycle unit strip.
//!
//! Kresling and kaleidocycle patterns are generated as their flat
//! developments with a seam pair closing the ring, matching how the fabric
//! is knitted flat and stitched afterwards. With `snap45` set (the default)
//! a generator insists on parameters whose creases land exactly on the four
//! compilable orientations (axis-aligned or 45 degrees) and rejects anything
//! else; with `snap45` off, creases come out at their true angles and the
//! compiler's off-grid policy decides what happens.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::Point2;
use crate::pattern::{CreaseAssignment, CreasePattern, Edge, FoldKind};

/// Parameter rejected by a generator.
#[derive(Debug, Error, PartialEq)]
#[error("{0}")]
pub struct ParamError(pub String);

/// Mountain/valley polarity convention for generators whose source figures
/// leave it ambiguous. `Flipped` swaps every crease assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    #[default]
    Normal,
    Flipped,
}

impl Polarity {
    fn apply(self, kind: FoldKind) -> CreaseAssignment {
        let kind = match (self, kind) {
            (Polarity::Normal, k) => k,
            (Polarity::Flipped, FoldKind::Mountain) => FoldKind::Valley,
            (Polarity::Flipped, FoldKind::Valley) => FoldKind::Mountain,
        };
        match kind {
            FoldKind::Mountain => CreaseAssignment::Mountain,
            FoldKind::Valley => CreaseAssignment::Valley,
        }
    }
}

const ANGLE_EPS: f64 = 1e-9;

fn require(cond: bool, msg: impl Into<String>) -> Result<(), ParamError> {
    if cond {
        Ok(())
    } else {
        Err(ParamError(msg.into()))
    }
}

/// Miura-ori: a grid of parallelogram units. One unit is a 2 x 2 patch of
/// parallelograms, so `rows = cols = 1` yields a 3 x 3 vertex grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiuraParams {
    pub rows: usize,
    pub cols: usize,
    /// Parallelogram base along the course direction (mm).
    pub a: f64,
    /// Parallelogram height along the wale direction (mm).
    pub b: f64,
    /// Acute parallelogram angle in degrees, 0 < gamma < 90. At 45 the
    /// zigzags land exactly on grid diagonals.
    pub gamma_deg: f64,
    pub origin: Point2,
    pub snap45: bool,
}

impl Default for MiuraParams {
    fn default() -> Self {
        MiuraParams {
            rows: 2,
            cols: 2,
            a: 20.0,
            b: 20.0,
            gamma_deg: 45.0,
            origin: Point2::new(0.0, 0.0),
            snap45: true,
        }
    }
}

/// Generates a Miura-ori pattern. Interior horizontal creases alternate
/// mountain/valley by row; zigzag creases alternate within each row, so
/// every interior vertex carries three folds of one kind and one of the
/// other.
pub fn gen_miura(p: &MiuraParams) -> Result<CreasePattern, ParamError> {
    require(p.rows >= 1 && p.cols >= 1, "miura: rows and cols must be >= 1")?;
    require(p.a > 0.0 && p.b > 0.0, "miura: a and b must be positive")?;
    require(
        p.gamma_deg > 0.0 && p.gamma_deg < 90.0,
        format!(
            "miura: gamma must lie strictly between 0 and 90 degrees (got {}); \
             at 90 the pattern degenerates to a fold-free rectangular grid",
            p.gamma_deg
        ),
    )?;
    if p.snap45 {
        require(
            (p.gamma_deg - 45.0).abs() < ANGLE_EPS,
            format!(
                "miura: snap45 requires gamma = 45 so zigzags lie on grid diagonals \
                 (got {}); pass snap45 = false to generate true-angle creases",
                p.gamma_deg
            ),
        )?;
    }

    let (nr, nc) = (2 * p.rows, 2 * p.cols); // parallelogram grid
    let shear = p.b / p.gamma_deg.to_radians().tan();
    let vid = |i: usize, j: usize| j * (nc + 1) + i;

    let mut vertices = Vec::with_capacity((nr + 1) * (nc + 1));
    for j in 0..=nr {
        let off = if j % 2 == 1 { shear } else { 0.0 };
        for i in 0..=nc {
            vertices.push(Point2::new(
                p.origin.x + i as f64 * p.a + off,
                p.origin.y + j as f64 * p.b,
            ));
        }
    }

    let mut edges = Vec::new();
    for j in 0..=nr {
        for i in 0..nc {
            let assignment = if j == 0 || j == nr {
                CreaseAssignment::Boundary
            } else if j % 2 == 1 {
                CreaseAssignment::Mountain
            } else {
                CreaseAssignment::Valley
            };
            edges.push(Edge::new(vid(i, j), vid(i + 1, j), assignment));
        }
    }
    for i in 0..=nc {
        for j in 0..nr {
            let assignment = if i == 0 || i == nc {
                CreaseAssignment::Boundary
            } else if (i + j) % 2 == 0 {
                CreaseAssignment::Mountain
            } else {
                CreaseAssignment::Valley
            };
            edges.push(Edge::new(vid(i, j), vid(i, j + 1), assignment));
        }
    }

    Ok(CreasePattern::new(
        format!("miura_{}x{}", p.rows, p.cols),
        vertices,
        edges,
    ))
}

/// Yoshimura: alternating diamond-shaped cells on a `rows x cols` grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YoshimuraParams {
    pub rows: usize,
    pub cols: usize,
    /// Diamond width (mm).
    pub w: f64,
    /// Diamond height (mm).
    pub h: f64,
    pub origin: Point2,
    pub snap45: bool,
    pub polarity: Polarity,
}

impl Default for YoshimuraParams {
    fn default() -> Self {
        YoshimuraParams {
            rows: 2,
            cols: 3,
            w: 20.0,
            h: 20.0,
            origin: Point2::new(0.0, 0.0),
            snap45: true,
            polarity: Polarity::Normal,
        }
    }
}

/// Generates a Yoshimura pattern: horizontal row lines are mountains and the
/// checkerboard diagonals are valleys (under `Polarity::Normal`), forming
/// alternating diamonds.
pub fn gen_yoshimura(p: &YoshimuraParams) -> Result<CreasePattern, ParamError> {
    require(p.rows >= 1 && p.cols >= 1, "yoshimura: rows and cols must be >= 1")?;
    require(p.w > 0.0 && p.h > 0.0, "yoshimura: w and h must be positive")?;
    if p.snap45 {
        require(
            (p.w - p.h).abs() < ANGLE_EPS,
            format!(
                "yoshimura: snap45 requires w = h so diagonals lie at 45 degrees \
                 (got {} x {}); pass snap45 = false to generate true-angle creases",
                p.w, p.h
            ),
        )?;
    }

    let vid = |i: usize, j: usize| j * (p.cols + 1) + i;
    let mut vertices = Vec::with_capacity((p.rows + 1) * (p.cols + 1));
    for j in 0..=p.rows {
        for i in 0..=p.cols {
            vertices.push(Point2::new(
                p.origin.x + i as f64 * p.w,
                p.origin.y + j as f64 * p.h,
            ));
        }
    }

    let mut edges = Vec::new();
    for j in 0..=p.rows {
        for i in 0..p.cols {
            let assignment = if j == 0 || j == p.rows {
                CreaseAssignment::Boundary
            } else {
                p.polarity.apply(FoldKind::Mountain)
            };
            edges.push(Edge::new(vid(i, j), vid(i + 1, j), assignment));
        }
    }
    for &i in &[0, p.cols] {
        for j in 0..p.rows {
            edges.push(Edge::new(vid(i, j), vid(i, j + 1), CreaseAssignment::Boundary));
        }
    }
    for j in 0..p.rows {
        for i in 0..p.cols {
            let valley = p.polarity.apply(FoldKind::Valley);
            if (i + j) % 2 == 0 {
                edges.push(Edge::new(vid(i, j), vid(i + 1, j + 1), valley));
            } else {
                edges.push(Edge::new(vid(i, j + 1), vid(i + 1, j), valley));
            }
        }
    }

    Ok(CreasePattern::new(
        format!("yoshimura_{}x{}", p.rows, p.cols),
        vertices,
        edges,
    ))
}

/// Kresling: the flat development of a twist-collapsing cylinder, an n-panel
/// strip whose left and right edges form the closing seam pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KreslingParams {
    /// Number of side panels, n >= 3.
    pub n: usize,
    pub panel_w: f64,
    pub panel_h: f64,
    /// Horizontal offset of each panel diagonal's top end, 0 < shear < panel_w.
    pub shear: f64,
    pub origin: Point2,
    pub snap45: bool,
}

impl Default for KreslingParams {
    fn default() -> Self {
        KreslingParams {
            n: 6,
            panel_w: 30.0,
            panel_h: 20.0,
            shear: 20.0,
            origin: Point2::new(0.0, 0.0),
            snap45: true,
        }
    }
}

/// Generates a Kresling strip: one mountain diagonal per panel, valley
/// verticals between panels, and a seam pair on the strip ends.
pub fn gen_kresling(p: &KreslingParams) -> Result<CreasePattern, ParamError> {
    require(p.n >= 3, format!("kresling: need at least 3 panels (got {})", p.n))?;
    require(
        p.panel_w > 0.0 && p.panel_h > 0.0,
        "kresling: panel dimensions must be positive",
    )?;
    require(
        p.shear > 0.0 && p.shear < p.panel_w,
        format!(
            "kresling: shear must lie strictly between 0 and panel_w (got {} of {})",
            p.shear, p.panel_w
        ),
    )?;
    if p.snap45 {
        require(
            (p.shear - p.panel_h).abs() < ANGLE_EPS,
            format!(
                "kresling: snap45 requires shear = panel_h so diagonals lie at 45 degrees \
                 (got shear {} with panel_h {}); pass snap45 = false for true angles",
                p.shear, p.panel_h
            ),
        )?;
    }

    let n = p.n;
    let (w, h) = (p.panel_w, p.panel_h);
    let at = |x: f64, y: f64| Point2::new(p.origin.x + x, p.origin.y + y);

    // Vertex layout: bottom corners 0..=n, top corners n+1..=2n+1,
    // diagonal top ends 2n+2..=3n+1.
    let mut vertices = Vec::with_capacity(3 * n + 2);
    for k in 0..=n {
        vertices.push(at(k as f64 * w, 0.0));
    }
    for k in 0..=n {
        vertices.push(at(k as f64 * w, h));
    }
    for k in 0..n {
        vertices.push(at(k as f64 * w + p.shear, h));
    }
    let bot = |k: usize| k;
    let top = |k: usize| n + 1 + k;
    let diag_top = |k: usize| 2 * n + 2 + k;

    let mut edges = Vec::new();
    for k in 0..n {
        edges.push(Edge::new(bot(k), bot(k + 1), CreaseAssignment::Boundary));
    }
    for k in 0..n {
        edges.push(Edge::new(top(k), diag_top(k), CreaseAssignment::Boundary));
        edges.push(Edge::new(diag_top(k), top(k + 1), CreaseAssignment::Boundary));
    }
    edges.push(Edge::new(bot(0), top(0), CreaseAssignment::Seam(0)));
    edges.push(Edge::new(bot(n), top(n), CreaseAssignment::Seam(0)));
    for k in 1..n {
        edges.push(Edge::new(bot(k), top(k), CreaseAssignment::Valley));
    }
    for k in 0..n {
        edges.push(Edge::new(bot(k), diag_top(k), CreaseAssignment::Mountain));
    }

    Ok(CreasePattern::new(format!("kresling_{n}"), vertices, edges))
}

/// One ring of a kaleidocycle: `n` repeated rectangular units, each carrying
/// two crossing diagonals, knitted flat and closed by a seam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KaleidocycleParams {
    /// Number of tetrahedral units. Rings need more than six units' worth of
    /// freedom to rotate while some faces are folded closed, so n >= 6.
    pub n: usize,
    pub unit_w: f64,
    pub unit_h: f64,
    pub origin: Point2,
    pub snap45: bool,
    pub polarity: Polarity,
}

impl Default for KaleidocycleParams {
    fn default() -> Self {
        KaleidocycleParams {
            n: 8,
            unit_w: 30.0,
            unit_h: 30.0,
            origin: Point2::new(0.0, 0.0),
            snap45: true,
            polarity: Polarity::Normal,
        }
    }
}

/// Generates the kaleidocycle strip: per unit, two crossing mountain
/// diagonals split at a center vertex, valley borders between units, and a
/// seam pair on the strip ends.
pub fn gen_kaleidocycle(p: &KaleidocycleParams) -> Result<CreasePattern, ParamError> {
    require(
        p.n >= 6,
        format!(
            "kaleidocycle: need at least 6 tetrahedral units for ring mobility (got {})",
            p.n
        ),
    )?;
    require(
        p.unit_w > 0.0 && p.unit_h > 0.0,
        "kaleidocycle: unit dimensions must be positive",
    )?;
    if p.snap45 {
        require(
            (p.unit_w - p.unit_h).abs() < ANGLE_EPS,
            format!(
                "kaleidocycle: snap45 requires unit_w = unit_h so diagonals lie at 45 degrees \
                 (got {} x {}); pass snap45 = false for true angles",
                p.unit_w, p.unit_h
            ),
        )?;
    }

    let n = p.n;
    let (w, h) = (p.unit_w, p.unit_h);
    let at = |x: f64, y: f64| Point2::new(p.origin.x + x, p.origin.y + y);

    // Vertex layout: bottom corners 0..=n, top corners n+1..=2n+1,
    // unit centers 2n+2..=3n+1.
    let mut vertices = Vec::with_capacity(3 * n + 2);
    for k in 0..=n {
        vertices.push(at(k as f64 * w, 0.0));
    }
    for k in 0..=n {
        vertices.push(at(k as f64 * w, h));
    }
    for k in 0..n {
        vertices.push(at((k as f64 + 0.5) * w, h / 2.0));
    }
    let bot = |k: usize| k;
    let top = |k: usize| n + 1 + k;
    let center = |k: usize| 2 * n + 2 + k;

    let mountain = p.polarity.apply(FoldKind::Mountain);
    let valley = p.polarity.apply(FoldKind::Valley);

    let mut edges = Vec::new();
    for k in 0..n {
        edges.push(Edge::new(bot(k), bot(k + 1), CreaseAssignment::Boundary));
        edges.push(Edge::new(top(k), top(k + 1), CreaseAssignment::Boundary));
    }
    edges.push(Edge::new(bot(0), top(0), CreaseAssignment::Seam(0)));
    edges.push(Edge::new(bot(n), top(n), CreaseAssignment::Seam(0)));
    for k in 1..n {
        edges.push(Edge::new(bot(k), top(k), valley));
    }
    for k in 0..n {
        edges.push(Edge::new(bot(k), center(k), mountain));
        edges.push(Edge::new(bot(k + 1), center(k), mountain));
        edges.push(Edge::new(top(k), center(k), mountain));
        edges.push(Edge::new(top(k + 1), center(k), mountain));
    }

    Ok(CreasePattern::new(format!("kaleidocycle_{n}"), vertices, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{maekawa_lint, validate_pattern, CreaseAssignment as CA};

    fn count(p: &CreasePattern, pred: impl Fn(&CA) -> bool) -> usize {
        p.edges.iter().filter(|e| pred(&e.assignment)).count()
    }

    #[test]
    fn miura_unit_counts_match_hand_construction() {
        let p = gen_miura(&MiuraParams {
            rows: 1,
            cols: 1,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(p.vertices.len(), 9);
        assert_eq!(p.edges.len(), 12);
        let interior = count(&p, |a| !a.is_border());
        assert_eq!(interior, 4);
        assert!(validate_pattern(&p).is_empty());
        assert!(maekawa_lint(&p).is_empty());
    }

    #[test]
    fn miura_true_angle_passes_lint() {
        let p = gen_miura(&MiuraParams {
            rows: 2,
            cols: 2,
            gamma_deg: 60.0,
            snap45: false,
            ..Default::default()
        })
        .unwrap();
        assert!(validate_pattern(&p).is_empty());
        assert!(maekawa_lint(&p).is_empty());
    }

    #[test]
    fn miura_rejects_degenerate_gamma() {
        let err = gen_miura(&MiuraParams {
            gamma_deg: 90.0,
            snap45: false,
            ..Default::default()
        })
        .unwrap_err();
        assert!(err.0.contains("gamma"));
    }

    #[test]
    fn miura_snap45_rejects_off_diagonal_gamma() {
        assert!(gen_miura(&MiuraParams {
            gamma_deg: 60.0,
            ..Default::default()
        })
        .is_err());
    }

    #[test]
    fn yoshimura_counts_match_hand_construction() {
        let p = gen_yoshimura(&YoshimuraParams {
            rows: 1,
            cols: 2,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(p.vertices.len(), 6);
        assert_eq!(p.edges.len(), 8);
        assert_eq!(count(&p, |a| *a == CA::Valley), 2);
        assert!(validate_pattern(&p).is_empty());
    }

    #[test]
    fn yoshimura_validates_across_sizes() {
        for rows in 1..=3 {
            for cols in 1..=4 {
                let p = gen_yoshimura(&YoshimuraParams {
                    rows,
                    cols,
                    w: 15.0,
                    h: 10.0,
                    snap45: false,
                    ..Default::default()
                })
                .unwrap();
                assert!(validate_pattern(&p).is_empty(), "{rows}x{cols}");
                assert!(maekawa_lint(&p).is_empty(), "{rows}x{cols}");
            }
        }
    }

    #[test]
    fn yoshimura_rejects_zero_width() {
        assert!(gen_yoshimura(&YoshimuraParams {
            w: 0.0,
            snap45: false,
            ..Default::default()
        })
        .is_err());
    }

    #[test]
    fn kresling_counts_match_hand_construction() {
        let p = gen_kresling(&KreslingParams {
            n: 6,
            panel_w: 30.0,
            panel_h: 40.0,
            shear: 10.0,
            snap45: false,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(count(&p, |a| *a == CA::Mountain), 6);
        assert_eq!(count(&p, |a| *a == CA::Valley), 5);
        assert_eq!(count(&p, |a| matches!(a, CA::Seam(_))), 2);
        assert!(validate_pattern(&p).is_empty());
    }

    #[test]
    fn kresling_minimal_validates() {
        let p = gen_kresling(&KreslingParams {
            n: 3,
            ..Default::default()
        })
        .unwrap();
        assert!(validate_pattern(&p).is_empty());
    }

    #[test]
    fn kresling_rejects_shear_at_panel_width() {
        assert!(gen_kresling(&KreslingParams {
            shear: 30.0,
            panel_w: 30.0,
            snap45: false,
            ..Default::default()
        })
        .is_err());
    }

    #[test]
    fn kaleidocycle_counts() {
        let p = gen_kaleidocycle(&KaleidocycleParams::default()).unwrap();
        assert_eq!(p.vertices.len(), 3 * 8 + 2);
        // Per unit: 2 boundary runs + 4 diagonal half-edges, plus n-1
        // interior borders and the 2 seam edges.
        assert_eq!(p.edges.len(), 7 * 8 + 1);
        assert_eq!(count(&p, |a| *a == CA::Mountain), 32);
        assert_eq!(count(&p, |a| matches!(a, CA::Seam(_))), 2);
        assert!(validate_pattern(&p).is_empty());
    }

    #[test]
    fn kaleidocycle_minimum_is_six() {
        assert!(gen_kaleidocycle(&KaleidocycleParams {
            n: 6,
            ..Default::default()
        })
        .is_ok());
        let err = gen_kaleidocycle(&KaleidocycleParams {
            n: 4,
            ..Default::default()
        })
        .unwrap_err();
        assert!(err.0.contains("mobility"));
    }

    #[test]
    fn seam_pairs_have_exactly_equal_lengths() {
        for p in [
            gen_kresling(&KreslingParams::default()).unwrap(),
            gen_kaleidocycle(&KaleidocycleParams::default()).unwrap(),
        ] {
            let seams: Vec<usize> = p
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| matches!(e.assignment, CA::Seam(_)))
                .map(|(i, _)| i)
                .collect();
            assert_eq!(seams.len(), 2);
            assert_eq!(p.edge_length(seams[0]), p.edge_length(seams[1]));
        }
    }

    #[test]
    fn origin_shift_equals_translation() {
        let base = gen_miura(&MiuraParams::default()).unwrap();
        let shifted = gen_miura(&MiuraParams {
            origin: Point2::new(7.5, -2.0),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(shifted, base.translated(7.5, -2.0));
    }
}
