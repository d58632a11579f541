//! In-memory crease-pattern model plus structural validators and lints.
//!
//! A [`CreasePattern`] is a planar graph: vertices in millimeters and edges
//! labelled mountain, valley, boundary, or seam. Seam edges mark pattern
//! borders that are stitched together after knitting; like boundary edges
//! they carry no stitch programming.

mod io;

pub use io::{parse_pattern, serialize_pattern, FoldError};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::geom::{segments_intersect, Point2};

/// Edges shorter than this are rejected as degenerate (mm).
pub const MIN_EDGE_LEN: f64 = 1e-9;
/// Paired seam edges must match in length within this tolerance (mm).
pub const SEAM_LEN_TOL: f64 = 1e-6;
/// Clearance below which non-adjacent edges count as intersecting (mm).
const INTERSECT_EPS: f64 = 1e-9;

/// Fold polarity of a crease.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FoldKind {
    Mountain,
    Valley,
}

/// Label attached to each pattern edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CreaseAssignment {
    Mountain,
    Valley,
    Boundary,
    /// Seam edges come in pairs sharing an id; the two edges are stitched
    /// together after knitting and must have equal length.
    Seam(u32),
}

impl CreaseAssignment {
    pub fn fold_kind(&self) -> Option<FoldKind> {
        match self {
            CreaseAssignment::Mountain => Some(FoldKind::Mountain),
            CreaseAssignment::Valley => Some(FoldKind::Valley),
            _ => None,
        }
    }

    /// Boundary and seam edges delimit the pattern; they get no stitches.
    pub fn is_border(&self) -> bool {
        matches!(self, CreaseAssignment::Boundary | CreaseAssignment::Seam(_))
    }
}

/// An edge between two vertex indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub v1: usize,
    pub v2: usize,
    pub assignment: CreaseAssignment,
}

impl Edge {
    pub fn new(v1: usize, v2: usize, assignment: CreaseAssignment) -> Self {
        Edge { v1, v2, assignment }
    }

    fn shares_vertex(&self, other: &Edge) -> bool {
        self.v1 == other.v1 || self.v1 == other.v2 || self.v2 == other.v1 || self.v2 == other.v2
    }
}

/// A flat crease pattern. Units are fixed to millimeters.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CreasePattern {
    pub name: String,
    pub vertices: Vec<Point2>,
    pub edges: Vec<Edge>,
    /// Unknown top-level keys from a parsed document, preserved verbatim for
    /// round-tripping. The compiler ignores them.
    pub metadata: BTreeMap<String, Value>,
}

impl CreasePattern {
    pub fn new(name: impl Into<String>, vertices: Vec<Point2>, edges: Vec<Edge>) -> Self {
        CreasePattern {
            name: name.into(),
            vertices,
            edges,
            metadata: BTreeMap::new(),
        }
    }

    /// Axis-aligned bounding box as (min, max), or `None` with no vertices.
    pub fn bounding_box(&self) -> Option<(Point2, Point2)> {
        let first = self.vertices.first()?;
        let mut min = *first;
        let mut max = *first;
        for v in &self.vertices {
            min.x = min.x.min(v.x);
            min.y = min.y.min(v.y);
            max.x = max.x.max(v.x);
            max.y = max.y.max(v.y);
        }
        Some((min, max))
    }

    pub fn edge_endpoints(&self, edge: usize) -> (Point2, Point2) {
        let e = &self.edges[edge];
        (self.vertices[e.v1], self.vertices[e.v2])
    }

    pub fn edge_length(&self, edge: usize) -> f64 {
        let (a, b) = self.edge_endpoints(edge);
        a.distance(&b)
    }

    /// Same pattern with every vertex shifted by `(dx, dy)`.
    pub fn translated(&self, dx: f64, dy: f64) -> CreasePattern {
        CreasePattern {
            name: self.name.clone(),
            vertices: self.vertices.iter().map(|v| v.translated(dx, dy)).collect(),
            edges: self.edges.clone(),
            metadata: self.metadata.clone(),
        }
    }
}

/// How serious a diagnostic is. `Error` blocks compilation; `Warning` does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

/// A finding from a validator or lint, pointing at the offending entities.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Diagnostic {
    fn error(message: String, vertices: Vec<usize>, edges: Vec<usize>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            message,
            vertices,
            edges,
        }
    }

    fn warning(message: String, vertices: Vec<usize>, edges: Vec<usize>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            message,
            vertices,
            edges,
        }
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sev = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{sev}: {}", self.message)?;
        if !self.vertices.is_empty() {
            write!(f, " [vertices {:?}]", self.vertices)?;
        }
        if !self.edges.is_empty() {
            write!(f, " [edges {:?}]", self.edges)?;
        }
        Ok(())
    }
}

/// Checks every structural invariant and returns the violations.
///
/// Empty result means the pattern is valid: indices in range, no degenerate
/// edges, a planar embedding (non-adjacent edges never intersect), and seam
/// ids used exactly twice with matching lengths.
pub fn validate_pattern(p: &CreasePattern) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let nv = p.vertices.len();

    for (i, v) in p.vertices.iter().enumerate() {
        if !v.is_finite() {
            diags.push(Diagnostic::error(
                format!("vertex {i} has non-finite coordinates"),
                vec![i],
                vec![],
            ));
        }
    }

    // Edges that fail the basic checks are excluded from the geometric pass.
    let mut sound = Vec::new();
    for (i, e) in p.edges.iter().enumerate() {
        if e.v1 >= nv || e.v2 >= nv {
            diags.push(Diagnostic::error(
                format!(
                    "edge {i} references vertex {} but only {nv} vertices exist",
                    e.v1.max(e.v2)
                ),
                vec![],
                vec![i],
            ));
            continue;
        }
        if e.v1 == e.v2 {
            diags.push(Diagnostic::error(
                format!("edge {i} is a self-loop on vertex {}", e.v1),
                vec![e.v1],
                vec![i],
            ));
            continue;
        }
        if p.edge_length(i) <= MIN_EDGE_LEN {
            diags.push(Diagnostic::error(
                format!("edge {i} has zero length"),
                vec![e.v1, e.v2],
                vec![i],
            ));
            continue;
        }
        sound.push(i);
    }

    diags.extend(intersection_sweep(p, &sound));

    // Seam pairing: every pair id on exactly two edges, equal lengths.
    let mut seam_groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for &i in &sound {
        if let CreaseAssignment::Seam(id) = p.edges[i].assignment {
            seam_groups.entry(id).or_default().push(i);
        }
    }
    for (id, edges) in seam_groups {
        if edges.len() != 2 {
            diags.push(Diagnostic::error(
                format!("seam pair {id} appears on {} edges, expected 2", edges.len()),
                vec![],
                edges,
            ));
            continue;
        }
        let (la, lb) = (p.edge_length(edges[0]), p.edge_length(edges[1]));
        if (la - lb).abs() > SEAM_LEN_TOL {
            diags.push(Diagnostic::error(
                format!("seam pair {id} edges differ in length ({la} mm vs {lb} mm)"),
                vec![],
                edges,
            ));
        }
    }

    diags
}

/// Sweep over x: each segment is tested against the active set whose x-spans
/// overlap its own. Non-adjacent edges may not intersect or touch at all.
fn intersection_sweep(p: &CreasePattern, sound: &[usize]) -> Vec<Diagnostic> {
    let mut spans: Vec<(f64, f64, usize)> = sound
        .iter()
        .map(|&i| {
            let (a, b) = p.edge_endpoints(i);
            (a.x.min(b.x), a.x.max(b.x), i)
        })
        .collect();
    spans.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.2.cmp(&b.2)));

    let mut active: Vec<(f64, usize)> = Vec::new();
    let mut hits = std::collections::BTreeSet::new();
    for &(min_x, max_x, i) in &spans {
        active.retain(|&(mx, _)| mx >= min_x - INTERSECT_EPS);
        let (a1, a2) = p.edge_endpoints(i);
        for &(_, j) in &active {
            if p.edges[i].shares_vertex(&p.edges[j]) {
                continue;
            }
            let (b1, b2) = p.edge_endpoints(j);
            if segments_intersect(a1, a2, b1, b2, INTERSECT_EPS) {
                hits.insert((j.min(i), j.max(i)));
            }
        }
        active.push((max_x, i));
    }

    hits.into_iter()
        .map(|(i, j)| {
            Diagnostic::error(
                format!("non-adjacent edges {i} and {j} intersect"),
                vec![],
                vec![i, j],
            )
        })
        .collect()
}

/// Flat-foldability necessary condition at interior vertices: the mountain
/// and valley counts must differ by exactly two. Advisory only; a warning
/// never blocks compilation.
pub fn maekawa_lint(p: &CreasePattern) -> Vec<Diagnostic> {
    let nv = p.vertices.len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (i, e) in p.edges.iter().enumerate() {
        if e.v1 < nv && e.v2 < nv {
            incident[e.v1].push(i);
            incident[e.v2].push(i);
        }
    }

    let mut diags = Vec::new();
    for (v, edges) in incident.iter().enumerate() {
        if edges.is_empty() {
            continue;
        }
        if edges.iter().any(|&i| p.edges[i].assignment.is_border()) {
            continue; // boundary vertex
        }
        let mountains = edges
            .iter()
            .filter(|&&i| p.edges[i].assignment == CreaseAssignment::Mountain)
            .count() as i64;
        let valleys = edges
            .iter()
            .filter(|&&i| p.edges[i].assignment == CreaseAssignment::Valley)
            .count() as i64;
        if (mountains - valleys).abs() != 2 {
            diags.push(Diagnostic::warning(
                format!(
                    "interior vertex {v} has {mountains} mountain and {valleys} valley creases; \
                     flat-foldability needs a difference of exactly 2"
                ),
                vec![v],
                edges.clone(),
            ));
        }
    }
    diags
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_with_crossing() -> CreasePattern {
        // Unit square boundary plus the two full diagonals, which cross
        // without a shared vertex.
        let v = vec![
            Point2::new(0.0, 0.0),
            Point2::new(10.0, 0.0),
            Point2::new(10.0, 10.0),
            Point2::new(0.0, 10.0),
        ];
        let e = vec![
            Edge::new(0, 1, CreaseAssignment::Boundary),
            Edge::new(1, 2, CreaseAssignment::Boundary),
            Edge::new(2, 3, CreaseAssignment::Boundary),
            Edge::new(3, 0, CreaseAssignment::Boundary),
            Edge::new(0, 2, CreaseAssignment::Mountain),
            Edge::new(1, 3, CreaseAssignment::Valley),
        ];
        CreasePattern::new("crossing", v, e)
    }

    #[test]
    fn crossing_creases_flagged() {
        let diags = validate_pattern(&square_with_crossing());
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].severity, Severity::Error);
        assert_eq!(diags[0].edges, vec![4, 5]);
    }

    #[test]
    fn seam_length_mismatch_flagged() {
        let v = vec![
            Point2::new(0.0, 0.0),
            Point2::new(10.0, 0.0),
            Point2::new(0.0, 5.0),
            Point2::new(10.1, 5.0),
        ];
        let e = vec![
            Edge::new(0, 1, CreaseAssignment::Seam(0)),
            Edge::new(2, 3, CreaseAssignment::Seam(0)),
        ];
        let diags = validate_pattern(&CreasePattern::new("seams", v, e));
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("differ in length"));
    }

    #[test]
    fn seam_pair_must_have_two_edges() {
        let v = vec![Point2::new(0.0, 0.0), Point2::new(10.0, 0.0)];
        let e = vec![Edge::new(0, 1, CreaseAssignment::Seam(3))];
        let diags = validate_pattern(&CreasePattern::new("seam1", v, e));
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("expected 2"));
    }

    #[test]
    fn out_of_range_and_degenerate_edges() {
        let v = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)];
        let e = vec![
            Edge::new(0, 5, CreaseAssignment::Mountain),
            Edge::new(1, 1, CreaseAssignment::Valley),
        ];
        let diags = validate_pattern(&CreasePattern::new("bad", v, e));
        assert_eq!(diags.len(), 2);
    }

    #[test]
    fn maekawa_balanced_vertex_warns() {
        // Square frame with a degree-4 interior center vertex carrying
        // 2 mountains and 2 valleys. The edge midpoints touch the boundary
        // so only the center is linted.
        let v = vec![
            Point2::new(0.0, 0.0),
            Point2::new(20.0, 0.0),
            Point2::new(20.0, 20.0),
            Point2::new(0.0, 20.0),
            Point2::new(10.0, 0.0),
            Point2::new(20.0, 10.0),
            Point2::new(10.0, 20.0),
            Point2::new(0.0, 10.0),
            Point2::new(10.0, 10.0),
        ];
        let e = vec![
            Edge::new(0, 4, CreaseAssignment::Boundary),
            Edge::new(4, 1, CreaseAssignment::Boundary),
            Edge::new(1, 5, CreaseAssignment::Boundary),
            Edge::new(5, 2, CreaseAssignment::Boundary),
            Edge::new(2, 6, CreaseAssignment::Boundary),
            Edge::new(6, 3, CreaseAssignment::Boundary),
            Edge::new(3, 7, CreaseAssignment::Boundary),
            Edge::new(7, 0, CreaseAssignment::Boundary),
            Edge::new(8, 4, CreaseAssignment::Mountain),
            Edge::new(8, 5, CreaseAssignment::Mountain),
            Edge::new(8, 6, CreaseAssignment::Valley),
            Edge::new(8, 7, CreaseAssignment::Valley),
        ];
        let diags = maekawa_lint(&CreasePattern::new("cross", v, e));
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].severity, Severity::Warning);
        assert_eq!(diags[0].vertices, vec![8]);
    }

    #[test]
    fn maekawa_no_interior_vertices() {
        let v = vec![
            Point2::new(0.0, 0.0),
            Point2::new(10.0, 0.0),
            Point2::new(10.0, 10.0),
        ];
        let e = vec![
            Edge::new(0, 1, CreaseAssignment::Boundary),
            Edge::new(1, 2, CreaseAssignment::Boundary),
        ];
        assert!(maekawa_lint(&CreasePattern::new("tri", v, e)).is_empty());
    }

    #[test]
    fn translated_preserves_structure() {
        let p = square_with_crossing();
        let t = p.translated(5.0, -3.0);
        assert_eq!(t.edges, p.edges);
        assert_eq!(t.vertices[1], Point2::new(15.0, -3.0));
    }
}
