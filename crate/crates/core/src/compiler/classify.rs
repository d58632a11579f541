//! Crease orientation classification and off-grid handling.
//!
//! Angles are measured in physical mm space so the classification is
//! gauge-independent: stitch choice follows the fabric's course, wale, and
//! diagonal directions, not grid indices.

use thiserror::Error;

use super::{EdgeFault, OffgridPolicy, Orientation, RuleConfig};
use crate::geom::Point2;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("crease at {angle_deg:.1} degrees lies outside every stitch band")]
pub struct OffGridError {
    pub angle_deg: f64,
}

/// Edge angle from the +x axis folded into [0, 180).
pub(crate) fn angle_deg(p1: Point2, p2: Point2) -> f64 {
    let mut theta = (p2.y - p1.y).atan2(p2.x - p1.x).to_degrees();
    if theta < 0.0 {
        theta += 180.0;
    }
    if theta >= 180.0 {
        theta -= 180.0;
    }
    theta
}

fn band_of(theta: f64, tol: f64) -> Option<Orientation> {
    if theta <= tol || theta >= 180.0 - tol {
        Some(Orientation::Horizontal)
    } else if (theta - 45.0).abs() <= tol {
        Some(Orientation::DiagFwd)
    } else if (theta - 90.0).abs() <= tol {
        Some(Orientation::Vertical)
    } else if (theta - 135.0).abs() <= tol {
        Some(Orientation::DiagBwd)
    } else {
        None
    }
}

fn nearest_band(theta: f64) -> (Orientation, f64) {
    let candidates = [
        (Orientation::Horizontal, 0.0),
        (Orientation::DiagFwd, 45.0),
        (Orientation::Vertical, 90.0),
        (Orientation::DiagBwd, 135.0),
        (Orientation::Horizontal, 180.0),
    ];
    candidates
        .into_iter()
        .min_by(|a, b| {
            (theta - a.1)
                .abs()
                .partial_cmp(&(theta - b.1).abs())
                .unwrap()
        })
        .unwrap()
}

/// Classifies a crease into one of the four stitch-rule orientations.
///
/// Horizontal within `tol` of 0/180 degrees, vertical near 90, forward
/// diagonal near 45, backward diagonal near 135. Outside every band the
/// result follows the off-grid policy: `Reject` errors (the default), the
/// other policies report the nearest band, whose geometry handling happens
/// at rasterization.
pub fn classify_orientation(
    p1: Point2,
    p2: Point2,
    cfg: &RuleConfig,
) -> Result<Orientation, OffGridError> {
    let theta = angle_deg(p1, p2);
    match band_of(theta, cfg.orientation_tol_deg) {
        Some(o) => Ok(o),
        None => match cfg.offgrid_policy {
            OffgridPolicy::Reject => Err(OffGridError { angle_deg: theta }),
            OffgridPolicy::Snap | OffgridPolicy::Staircase => Ok(nearest_band(theta).0),
        },
    }
}

/// Resolves an edge into one or more exactly-oriented segments according to
/// the off-grid policy.
pub(crate) fn oriented_segments(
    p1: Point2,
    p2: Point2,
    cfg: &RuleConfig,
) -> Result<Vec<(Point2, Point2, Orientation)>, EdgeFault> {
    let theta = angle_deg(p1, p2);
    if let Some(o) = band_of(theta, cfg.orientation_tol_deg) {
        return Ok(vec![(p1, p2, o)]);
    }
    match cfg.offgrid_policy {
        OffgridPolicy::Reject => Err(EdgeFault::OffGrid { angle_deg: theta }),
        OffgridPolicy::Snap => Ok(vec![snap_segment(p1, p2, theta)]),
        OffgridPolicy::Staircase => Ok(staircase_segments(p1, p2, cfg)),
    }
}

/// Rotates the segment about its midpoint onto the nearest canonical angle,
/// preserving length and direction sense.
fn snap_segment(p1: Point2, p2: Point2, theta: f64) -> (Point2, Point2, Orientation) {
    let (orientation, canon) = nearest_band(theta);
    let mid = p1.midpoint(&p2);
    let half = p1.distance(&p2) / 2.0;
    let rad = canon.to_radians();
    let (dx, dy) = (rad.cos() * half, rad.sin() * half);
    // Keep p1's side of the midpoint on p1's side of the rotated axis.
    let forward = (p2.x - p1.x) * dx + (p2.y - p1.y) * dy >= 0.0;
    let (q1, q2) = if forward {
        (
            Point2::new(mid.x - dx, mid.y - dy),
            Point2::new(mid.x + dx, mid.y + dy),
        )
    } else {
        (
            Point2::new(mid.x + dx, mid.y + dy),
            Point2::new(mid.x - dx, mid.y - dy),
        )
    };
    (q1, q2, orientation)
}

/// Splits the segment into an axis-aligned run followed by an exact 45
/// degree run, preserving both endpoints.
fn staircase_segments(p1: Point2, p2: Point2, cfg: &RuleConfig) -> Vec<(Point2, Point2, Orientation)> {
    let dx = p2.x - p1.x;
    let dy = p2.y - p1.y;
    let mid = if dx.abs() >= dy.abs() {
        Point2::new(p1.x + dx.signum() * (dx.abs() - dy.abs()), p1.y)
    } else {
        Point2::new(p1.x, p1.y + dy.signum() * (dy.abs() - dx.abs()))
    };
    [(p1, mid), (mid, p2)]
        .into_iter()
        .filter(|(a, b)| a.distance(b) > 1e-12)
        .map(|(a, b)| {
            let o = band_of(angle_deg(a, b), cfg.orientation_tol_deg)
                .expect("staircase parts are exactly axis-aligned or 45 degrees");
            (a, b, o)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn canonical_directions() {
        let cfg = RuleConfig::default();
        assert_eq!(
            classify_orientation(p(0.0, 0.0), p(10.0, 0.0), &cfg).unwrap(),
            Orientation::Horizontal
        );
        assert_eq!(
            classify_orientation(p(10.0, 0.0), p(0.0, 0.0), &cfg).unwrap(),
            Orientation::Horizontal
        );
        assert_eq!(
            classify_orientation(p(0.0, 0.0), p(0.0, 10.0), &cfg).unwrap(),
            Orientation::Vertical
        );
        assert_eq!(
            classify_orientation(p(0.0, 0.0), p(10.0, 10.0), &cfg).unwrap(),
            Orientation::DiagFwd
        );
        assert_eq!(
            classify_orientation(p(0.0, 10.0), p(10.0, 0.0), &cfg).unwrap(),
            Orientation::DiagBwd
        );
    }

    #[test]
    fn tolerance_band_edges_inclusive() {
        let cfg = RuleConfig::default();
        assert_eq!(
            classify_orientation(p(0.0, 0.0), p(10.0, 10.0 * 10f64.to_radians().tan()), &cfg)
                .unwrap(),
            Orientation::Horizontal
        );
    }

    #[test]
    fn off_band_rejected_by_default() {
        let cfg = RuleConfig::default();
        let err = classify_orientation(p(0.0, 0.0), p(10.0, 3.0), &cfg).unwrap_err();
        assert!((err.angle_deg - 16.699).abs() < 0.01);
    }

    #[test]
    fn snap_policy_reports_nearest_band() {
        let cfg = RuleConfig {
            offgrid_policy: OffgridPolicy::Snap,
            ..Default::default()
        };
        assert_eq!(
            classify_orientation(p(0.0, 0.0), p(10.0, 3.0), &cfg).unwrap(),
            Orientation::Horizontal
        );
        assert_eq!(
            classify_orientation(p(0.0, 0.0), p(10.0, 7.0), &cfg).unwrap(),
            Orientation::DiagFwd
        );
    }

    #[test]
    fn snap_preserves_length_and_midpoint() {
        let (q1, q2, o) = snap_segment(p(0.0, 0.0), p(10.0, 3.0), angle_deg(p(0.0, 0.0), p(10.0, 3.0)));
        assert_eq!(o, Orientation::Horizontal);
        let len = 10.0f64.hypot(3.0);
        assert!((q1.distance(&q2) - len).abs() < 1e-12);
        let mid = q1.midpoint(&q2);
        assert!((mid.x - 5.0).abs() < 1e-12 && (mid.y - 1.5).abs() < 1e-12);
        assert!(q1.x < q2.x);
    }

    #[test]
    fn staircase_splits_into_axis_plus_diagonal() {
        let cfg = RuleConfig {
            offgrid_policy: OffgridPolicy::Staircase,
            ..Default::default()
        };
        let segs = oriented_segments(p(0.0, 0.0), p(10.0, 3.0), &cfg).unwrap();
        assert_eq!(segs.len(), 2);
        assert_eq!(segs[0].2, Orientation::Horizontal);
        assert_eq!(segs[1].2, Orientation::DiagFwd);
        assert_eq!(segs[0].0, p(0.0, 0.0));
        assert_eq!(segs[1].1, p(10.0, 3.0));
        assert_eq!(segs[0].1, segs[1].0);
    }
}
